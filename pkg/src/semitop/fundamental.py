"""Fundamental groups of action complexes and Schutzenberger-group presentations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from . import fpgroup
from .action import (PartialAction, QuotientAction, action_on_r_class, automorphism_group,
                     is_automorphism, quotient_action, validate_action)
from .complex import TwoComplex, build_action_complex
from .fpgroup import GroupAnalysis, GroupPresentation, free_reduce, inverse
from .green import (NONTRIVIAL, TRIVIAL, GreenData, green_relations, is_group,
                    no_nontrivial_group_image, schutzenberger_group)
from .semigroup import Semigroup, TransformationBackend, enumerate_semigroup
from .words import MONOID, Presentation

HOLDS = "holds"
FAILS = "fails-at-bound"
UNKNOWN = "unknown"


class HypothesisNotMet(RuntimeError):
    """A theorem's hypothesis could not be certified; the result is refused."""


def pi1_presentation(k: TwoComplex, base: int = 0) -> GroupPresentation:
    """pi_1(K, base): one generator per edge outside an undirected BFS
    spanning tree, one relator per face (boundary u . v^-1 with tree edges
    collapsed)."""
    adj = [[] for _ in range(k.n_vertices)]
    for e in k.edges:
        adj[e.src].append((e.id, e.dst))
        adj[e.dst].append((e.id, e.src))
    tree = set()
    seen = {base}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for eid, w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                tree.add(eid)
                queue.append(w)
    if len(seen) != k.n_vertices:
        raise ValueError("complex is not connected")
    others = [e for e in k.edges if e.id not in tree]
    labels = [k.alphabet[e.label] for e in others]
    names = labels
    if len(set(names)) != len(names):
        names = [f"{k.alphabet[e.label]}{e.src}" for e in others]
    if len(set(names)) != len(names):
        names = [f"e{e.id}" for e in others]
    edge_generator = [0] * len(k.edges)
    for i, e in enumerate(others):
        edge_generator[e.id] = i + 1
    rels, origin = [], []
    for fid, f in enumerate(k.faces):
        word = [edge_generator[e] for e in f.u_path if edge_generator[e]]
        word += [-edge_generator[e] for e in reversed(f.v_path) if edge_generator[e]]
        word = free_reduce(word)
        if word:
            rels.append(word)
            origin.append(fid)
    return GroupPresentation(tuple(names), tuple(rels), tuple(e.id for e in others),
                             tuple(origin), tuple(edge_generator))


def certify_trivial(p: GroupPresentation, coset_limit: int = fpgroup.DEFAULT_COSET_LIMIT):
    """Tiered triviality check: abelianization, Tietze, then Todd-Coxeter.

    Returns (status, method) with status one of "trivial", "nontrivial", "unknown".
    """
    if any(d != 1 for d in fpgroup.abelian_invariants(p)):
        return NONTRIVIAL, "abelianization"
    simple = fpgroup.tietze_simplify(p)
    if simple.rank == 0:
        return TRIVIAL, "tietze"
    try:
        table = fpgroup.todd_coxeter(simple, limit=coset_limit)
    except fpgroup.CosetLimitExceeded:
        return UNKNOWN, "coset limit"
    return (TRIVIAL if table.index == 1 else NONTRIVIAL), "todd-coxeter"


# ---------------------------------------------------------------------------
# the stabilizer condition

@dataclass
class StabilizerCheck:
    status: str
    vertex: int | None = None
    complete: bool = True
    members: list = field(default_factory=list)

    @property
    def certified(self) -> bool:
        return self.status == HOLDS and self.complete


def check_stabilizer_condition(s: Semigroup, a: PartialAction, max_len: int = 1000,
                               coset_limit: int = fpgroup.DEFAULT_COSET_LIMIT) -> StabilizerCheck:
    """Look for a vertex v whose stabilizer {s : vs = v} has only trivial
    homomorphisms into groups."""
    if s.alphabet != a.alphabet:
        raise ValueError("semigroup and action use different alphabets")
    enum = enumerate_semigroup(s, max_len)
    exact = enum.complete
    saw_unknown = False
    for v in range(a.vertex_count):
        members = [i for i, w in enumerate(enum.words) if a.act(v, w) == v]
        elements = [enum.elements[i] for i in members]
        closed = all(enum.product(i, j) is not None for i in members for j in members)
        if closed:
            verdict = no_nontrivial_group_image(elements, s.multiply, coset_limit)
        else:
            mult = s.multiply
            left_zero = any(all(mult(z, t) == z for t in elements) for z in elements)
            verdict = TRIVIAL if left_zero else UNKNOWN
        if verdict == TRIVIAL:
            return StabilizerCheck(HOLDS, v, exact, members)
        if verdict == UNKNOWN:
            saw_unknown = True
    return StabilizerCheck(UNKNOWN if saw_unknown else FAILS, None, exact)


# ---------------------------------------------------------------------------
# pipelines

@dataclass
class PipelineResult:
    presentation: GroupPresentation
    raw_presentation: GroupPresentation
    analysis: GroupAnalysis
    group_order: int
    quotient: QuotientAction
    complex: TwoComplex
    stabilizer: StabilizerCheck | None
    asserted: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        p = self.presentation
        return {
            "generators": list(p.generators),
            "relators": [p.format_word(r) for r in p.relators],
            "abelian_invariants": self.analysis.abelian_invariants,
            "order": self.analysis.order,
            "order_status": self.analysis.order_status,
            "group_order": self.group_order,
            "stabilizer_condition": {
                "status": self.stabilizer.status if self.stabilizer else None,
                "vertex": self.stabilizer.vertex if self.stabilizer else None,
                "certified": bool(self.stabilizer and self.stabilizer.certified),
                "asserted": self.asserted,
            },
            "provenance": {
                "raw_generators": list(self.raw_presentation.generators),
                "generator_edges": list(self.raw_presentation.generator_origin),
                "relator_faces": list(self.raw_presentation.relator_origin),
            },
            "notes": list(self.notes),
        }


def action_group_presentation(p: Presentation, a: PartialAction, group,
                              stabilizer: StabilizerCheck | None = None,
                              assert_stabilizer: bool = False,
                              coset_limit: int = fpgroup.DEFAULT_COSET_LIMIT) -> PipelineResult:
    """Present a group G of automorphisms of a transitive action as pi_1(K(G\\V))."""
    certified = stabilizer is not None and stabilizer.certified
    if not certified and not assert_stabilizer:
        status = stabilizer.status if stabilizer else "not checked"
        raise HypothesisNotMet(f"stabilizer condition not certified ({status}); "
                               "pass assert_stabilizer to proceed anyway")
    group = list(group)
    if not is_group(group):
        raise ValueError("automorphisms do not form a group")
    for g in group:
        if not is_automorphism(a, g):
            raise ValueError(f"{g} is not an automorphism of the action")
    q = quotient_action(a, group)
    k = build_action_complex(p, q.action)
    raw = pi1_presentation(k, 0)
    simple = fpgroup.tietze_simplify(raw)
    analysis = fpgroup.analyze_group(simple, coset_limit)
    notes = []
    if not certified:
        notes.append("stabilizer condition asserted by the caller, not certified")
    return PipelineResult(simple, raw, analysis, len(group), q, k, stabilizer,
                          assert_stabilizer and not certified, notes)


def schutzenberger_presentation(s: Semigroup, r_class, max_len: int = 1000,
                                assert_stabilizer: bool = False,
                                coset_limit: int = fpgroup.DEFAULT_COSET_LIMIT,
                                green: GreenData | None = None) -> PipelineResult:
    """Finite presentation of the Schutzenberger group G(R)."""
    if s.presentation is None:
        raise ValueError("semigroup has no presentation attached")
    green = green or green_relations(s, max_len)
    a = action_on_r_class(green, r_class)
    sg = schutzenberger_group(green, r_class)
    stab = check_stabilizer_condition(s, a, max_len, coset_limit)
    result = action_group_presentation(s.presentation, a, sg.permutations, stab,
                                       assert_stabilizer, coset_limit)
    aut = automorphism_group(a)
    if set(aut) == set(sg.permutations):
        result.notes.append("G(R) equals the automorphism group of the action")
    else:
        result.notes.append(f"G(R) (order {sg.order}) is a proper subgroup of "
                            f"Aut (order {len(aut)})")
    return result


def group_relators(p: Presentation):
    """Monoid relations u = v as group relators u v^-1."""
    return tuple(free_reduce(tuple(x + 1 for x in u) + inverse(tuple(x + 1 for x in v)))
                 for u, v in p.relations)


def positive_words(table: fpgroup.CosetTable, ngens: int) -> list:
    """Shortest words over the positive generators reaching each coset from 0."""
    words = [None] * table.index
    words[0] = ()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(ngens):
            d = table.table[c][2 * x]
            if words[d] is None:
                words[d] = words[c] + (x,)
                queue.append(d)
    if any(w is None for w in words):
        raise ValueError("positive generators do not reach every element")
    return words


def subgroup_order_by_closure(table: fpgroup.CosetTable, words) -> int:
    """|H| as the orbit of coset 0 under right multiplication by H's generators."""
    seen = {0}
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for w in words:
            d = table.act(c, [x + 1 for x in w])
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return len(seen)


@dataclass
class ReidemeisterResult:
    pipeline: PipelineResult
    group_order: int
    subgroup_order: int
    action: PartialAction
    subgroup: list = field(default_factory=list)


def reidemeister_subgroup_presentation(gp: Presentation, subgroup_words,
                                       coset_limit: int = fpgroup.DEFAULT_COSET_LIMIT
                                       ) -> ReidemeisterResult:
    """Presentation of a subgroup H of a finite group given as a monoid presentation.

    G acts on itself on the right; H acts on the left by automorphisms of
    that action, and pi_1 of the quotient complex presents H.
    """
    n = len(gp.alphabet)
    group = GroupPresentation(gp.alphabet, group_relators(gp))
    try:
        table = fpgroup.todd_coxeter(group, limit=coset_limit)
    except fpgroup.CosetLimitExceeded:
        raise HypothesisNotMet("group is not finite within the coset limit") from None
    maps = tuple(tuple(table.table[c][2 * x] for c in range(table.index)) for x in range(n))
    words = positive_words(table, n)
    from .semigroup import format_word
    a = PartialAction(gp.alphabet, maps, tuple(format_word(w, gp.alphabet) for w in words),
                      "right-regular")
    report = validate_action(gp, a)
    if not report:
        raise HypothesisNotMet(f"presentation does not define a group: {report}")
    subgroup_words = [tuple(w) for w in subgroup_words]
    gens = []
    for h in subgroup_words:
        hv = a.act(0, h)
        gens.append(tuple(a.act(hv, words[c]) for c in range(table.index)))
    identity = tuple(range(table.index))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = tuple(h[x] for x in g)
                if gh not in elements:
                    elements.add(gh)
                    nxt.append(gh)
        frontier = nxt
    hgroup = sorted(elements)
    # the regular representation is faithful, so it realizes G itself
    s = Semigroup(TransformationBackend(table.index, maps), gp.alphabet, MONOID, gp)
    stab = check_stabilizer_condition(s, a, coset_limit=coset_limit)
    result = action_group_presentation(gp, a, hgroup, stab, False, coset_limit)
    return ReidemeisterResult(result, table.index, subgroup_order_by_closure(table, subgroup_words),
                              a, hgroup)


# ---------------------------------------------------------------------------
# homotopy certificates

def find_derivation(p: Presentation, u, v, max_len: int | None = None, max_nodes: int = 200_000):
    """Shortest sequence of single relation applications turning u into v.

    Steps are (position, relation index, direction); direction +1 replaces
    the left side of the relation by the right side, -1 the reverse.
    """
    u, v = tuple(u), tuple(v)
    if max_len is None:
        longest = max((max(len(a), len(b)) for a, b in p.relations), default=0)
        max_len = max(len(u), len(v)) + longest
    prev = {u: None}
    queue = deque([u])
    while queue and len(prev) < max_nodes:
        w = queue.popleft()
        if w == v:
            break
        for r, (lhs, rhs) in enumerate(p.relations):
            for src, dst, d in ((lhs, rhs, 1), (rhs, lhs, -1)):
                k = len(src)
                for i in range(len(w) - k + 1):
                    if w[i:i + k] == src:
                        nw = w[:i] + dst + w[i + k:]
                        if len(nw) <= max_len and (nw or p.is_monoid) and nw not in prev:
                            prev[nw] = (w, (i, r, d))
                            queue.append(nw)
    if v not in prev:
        return None
    steps = []
    w = v
    while prev[w] is not None:
        w, step = prev[w]
        steps.append(step)
    return steps[::-1]


@dataclass
class HomotopyCertificate:
    """Faces witnessing that the paths spelling u and v from p are homotopic.

    Each step is (face index, prefix path, sign): the loop of the step is
    the face boundary conjugated by the prefix path, inverted when sign = -1.
    """

    p: int
    u_path: tuple
    v_path: tuple
    steps: list

    def loop_word(self, pres: GroupPresentation):
        return free_reduce(pres.edge_path_word(self.u_path) + inverse(pres.edge_path_word(self.v_path)))

    def product_word(self, k: TwoComplex, pres: GroupPresentation):
        out = []
        for fid, prefix, sign in self.steps:
            f = k.faces[fid]
            rel = pres.edge_path_word(f.u_path) + inverse(pres.edge_path_word(f.v_path))
            if sign < 0:
                rel = inverse(rel)
            c = pres.edge_path_word(prefix)
            out.extend(c + tuple(rel) + inverse(c))
        return free_reduce(out)

    def verify(self, k: TwoComplex, pres: GroupPresentation) -> bool:
        """The loop u . v^-1 equals the product of conjugated face boundaries in the free group."""
        return self.loop_word(pres) == self.product_word(k, pres)


def homotopy_witness(k: TwoComplex, p_: Presentation, base: int, u, v, derivation=None):
    """Certificate that the paths labelled u and v from ``base`` are homotopic,
    or None when no derivation (or no matching 2-cells) is available."""
    u, v = tuple(u), tuple(v)
    u_path, v_path = k.trace(base, u), k.trace(base, v)
    if u_path is None or v_path is None or k.path_end(base, u_path) != k.path_end(base, v_path):
        return None
    if derivation is None:
        derivation = find_derivation(p_, u, v)
        if derivation is None:
            return None
    faces = {(f.p, f.rel): i for i, f in enumerate(k.faces)}
    steps = []
    w = u
    for pos, r, d in derivation:
        lhs, rhs = p_.relations[r]
        src, dst = (lhs, rhs) if d > 0 else (rhs, lhs)
        if w[pos:pos + len(src)] != src:
            raise ValueError(f"derivation step {(pos, r, d)} does not apply to {w}")
        prefix = k.trace(base, w[:pos])
        if prefix is None:
            return None
        q = k.path_end(base, prefix)
        fid = faces.get((q, r))
        if fid is None:
            return None
        steps.append((fid, prefix, d))
        w = w[:pos] + dst + w[pos + len(src):]
        if k.trace(base, w) is None:
            return None
    if w != v:
        raise ValueError("derivation does not end at v")
    return HomotopyCertificate(base, u_path, v_path, steps)
