"""Green's relations, Schutzenberger groups, right stabilizers and L*."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import fpgroup
from .semigroup import COMPLETE, TRUNCATED, Enumeration, Semigroup, enumerate_semigroup

YES, NO, UNKNOWN = "yes", "no", "unknown"
TRIVIAL, NONTRIVIAL = "trivial", "nontrivial"


def strong_components(n: int, succ) -> list[int]:
    """Tarjan's algorithm, iterative.  Returns a component id per vertex.

    ``succ(v)`` yields successors (``None`` entries are skipped).
    """
    index = [None] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [None] * n
    stack: list = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] is not None:
            continue
        work = [(root, iter(succ(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w is None:
                    continue
                if index[w] is None:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ(w))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp


def _classes(labels) -> list[tuple[int, ...]]:
    groups: dict = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    return sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])


def _class_of(classes, n):
    out = [None] * n
    for k, cls in enumerate(classes):
        for i in cls:
            out[i] = k
    return out


@dataclass
class GreenData:
    enum: Enumeration
    r_classes: list
    l_classes: list
    h_classes: list
    d_classes: list
    idempotents: list
    completeness: str

    def __post_init__(self):
        n = len(self.enum)
        self.r_of = _class_of(self.r_classes, n)
        self.l_of = _class_of(self.l_classes, n)
        self.h_of = _class_of(self.h_classes, n)
        self.d_of = _class_of(self.d_classes, n)

    @property
    def semigroup(self) -> Semigroup:
        return self.enum.semigroup

    def r_class_of(self, i: int) -> tuple:
        return self.r_classes[self.r_of[i]]

    def h_classes_in(self, r_class) -> list:
        ids = sorted({self.h_of[i] for i in r_class})
        return [self.h_classes[k] for k in ids]

    def is_regular_class(self, r_class) -> bool:
        idem = set(self.idempotents)
        return any(i in idem for i in r_class)

    def to_json(self):
        e = self.enum
        return {
            "r_classes": [list(c) for c in self.r_classes],
            "l_classes": [list(c) for c in self.l_classes],
            "h_classes": [list(c) for c in self.h_classes],
            "d_classes": [list(c) for c in self.d_classes],
            "idempotents": list(self.idempotents),
            "completeness": self.completeness,
            "elements": {str(i): e.format(i) for i in range(len(e))},
        }


def green_relations(s: Semigroup | Enumeration, max_len: int = 1000) -> GreenData:
    """R, L, H, D classes via strong components of the Cayley graphs.

    s R t iff s and t are mutually reachable by right multiplication by
    generators (dually for L).  On a truncated enumeration classes may only
    be finer than the true ones, and the result is flagged.
    """
    enum = s if isinstance(s, Enumeration) else enumerate_semigroup(s, max_len)
    n = len(enum)
    r_comp = strong_components(n, lambda i: enum.right[i])
    l_comp = strong_components(n, lambda i: enum.left[i])
    r_classes = _classes(r_comp)
    l_classes = _classes(l_comp)
    h_classes = _classes(list(zip(r_comp, l_comp)))
    # D is the join of R and L
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cls in r_classes + l_classes:
        for i in cls[1:]:
            a, b = find(cls[0]), find(i)
            if a != b:
                parent[max(a, b)] = min(a, b)
    d_classes = _classes([find(i) for i in range(n)])
    mult = enum.semigroup.multiply
    idempotents = [i for i, x in enumerate(enum.elements) if mult(x, x) == x]
    return GreenData(enum, r_classes, l_classes, h_classes, d_classes, idempotents,
                     COMPLETE if enum.complete else (TRUNCATED if enum.status == TRUNCATED
                                                     else enum.status))


@dataclass
class SchutzenbergerGroup:
    """G(R) as permutations of the positions of ``r_class``.

    ``permutations[k][a] = b`` means the k-th group element sends
    ``r_class[a]`` to ``r_class[b]`` (acting on the left).
    """

    r_class: tuple
    permutations: list
    generators_from: list
    h_class_orbits: list

    @property
    def order(self) -> int:
        return len(self.permutations)


def compose(p, q):
    """Apply p, then q."""
    return tuple(q[x] for x in p)


def invert(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_group(perms) -> bool:
    pset = set(perms)
    if not perms or tuple(range(len(perms[0]))) not in pset:
        return False
    return all(compose(p, q) in pset for p in perms for q in perms) and \
        all(invert(p) in pset for p in perms)


def orbits(n: int, perms) -> list[tuple[int, ...]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return _classes([find(i) for i in range(n)])


def schutzenberger_group(green: GreenData, r_class) -> SchutzenbergerGroup:
    """Faithful image of stab R = {t in S^1 : tR in R} acting on R."""
    if not green.enum.complete:
        raise ValueError("R-class not complete: enumeration was truncated")
    enum = green.enum
    r_class = tuple(r_class)
    pos = {e: k for k, e in enumerate(r_class)}
    mult = enum.semigroup.multiply
    identity = tuple(range(len(r_class)))
    perms = {identity: None}  # the formal identity of S^1
    for t, elt in enumerate(enum.elements):
        image = []
        for r in r_class:
            k = pos.get(enum.index.get(mult(elt, enum.elements[r])))
            if k is None:
                break
            image.append(k)
        else:
            perms.setdefault(tuple(image), t)
    group = sorted(perms)
    if not is_group(group):
        raise AssertionError("induced permutations do not form a group")
    return SchutzenbergerGroup(r_class, group, [perms[p] for p in group],
                               [tuple(r_class[k] for k in orb) for orb in orbits(len(r_class), group)])


@dataclass
class RightStabilizer:
    base: int
    members: list
    complete: bool


def right_stabilizer(enum: Enumeration, s: int) -> RightStabilizer:
    """All enumerated t with s t = s."""
    mult = enum.semigroup.multiply
    x = enum.elements[s]
    members = [t for t, y in enumerate(enum.elements) if mult(x, y) == x]
    return RightStabilizer(s, members, enum.complete)


def _kernel_signature(enum: Enumeration, s: int, domain):
    """Partition of ``domain`` (indices into S^1, None = adjoined 1) by x -> s x."""
    mult = enum.semigroup.multiply
    x = enum.elements[s]
    first: dict = {}
    sig = []
    for k, t in enumerate(domain):
        val = x if t is None else mult(x, enum.elements[t])
        sig.append(first.setdefault(val, k))
    return tuple(sig)


def _s1(enum: Enumeration):
    # the adjoined identity is redundant when S already is a monoid
    return list(range(len(enum))) if enum.semigroup.is_monoid else [None] + list(range(len(enum)))


def lstar_related(enum: Enumeration, s: int, t: int):
    """Decide s L* t.  Returns (answer, witness pair or None).

    A "no" always comes with x, y in S^1 (``None`` is the adjoined identity)
    such that exactly one of sx = sy, tx = ty holds.
    """
    if s == t:
        return YES, None
    domain = _s1(enum)
    sig_s = _kernel_signature(enum, s, domain)
    sig_t = _kernel_signature(enum, t, domain)
    if sig_s != sig_t:
        if not enum.semigroup.exact:
            return UNKNOWN, None
        for a in range(len(domain)):
            for b in range(a + 1, len(domain)):
                if (sig_s[a] == sig_s[b]) != (sig_t[a] == sig_t[b]):
                    return NO, (domain[a], domain[b])
    return (YES, None) if enum.complete else (UNKNOWN, None)


def lstar_classes(enum: Enumeration) -> list[tuple[int, ...]]:
    domain = _s1(enum)
    return _classes([_kernel_signature(enum, s, domain) for s in range(len(enum))])


def is_right_abundant(enum: Enumeration):
    """Every L*-class contains an idempotent?  Returns (answer, classes lacking one)."""
    if not enum.complete:
        return UNKNOWN, []
    mult = enum.semigroup.multiply
    idem = {i for i, x in enumerate(enum.elements) if mult(x, x) == x}
    missing = [c for c in lstar_classes(enum) if not idem.intersection(c)]
    return (NO if missing else YES), missing


def universal_group(elements, multiply) -> fpgroup.GroupPresentation:
    """Presentation <T | x y = (xy)> of the universal group of a finite semigroup."""
    index = {x: i for i, x in enumerate(elements)}
    rels = []
    for (i, x), (j, y) in product(enumerate(elements), repeat=2):
        k = index.get(multiply(x, y))
        if k is None:
            raise ValueError("set is not closed under multiplication")
        rels.append((i + 1, j + 1, -(k + 1)))
    return fpgroup.GroupPresentation(tuple(f"t{i}" for i in range(len(elements))), tuple(rels))


def no_nontrivial_group_image(elements, multiply, coset_limit: int = fpgroup.DEFAULT_COSET_LIMIT):
    """Does the finite semigroup T admit only trivial homomorphisms into groups?

    Returns ``"trivial"``, ``"nontrivial"`` or ``"unknown"``.
    """
    elements = list(elements)
    if not elements:
        return TRIVIAL
    members = set(elements)
    for x in elements:
        for y in elements:
            if multiply(x, y) not in members:
                raise ValueError("set is not closed under multiplication")
    # a left zero z forces phi(z) phi(t) = phi(z), so phi(t) = 1
    for z in elements:
        if all(multiply(z, t) == z for t in elements):
            return TRIVIAL
    pres = universal_group(elements, multiply)
    if any(d != 1 for d in fpgroup.abelian_invariants(pres)):
        return NONTRIVIAL
    simple = fpgroup.tietze_simplify(pres)
    if simple.rank == 0:
        return TRIVIAL
    try:
        table = fpgroup.todd_coxeter(simple, limit=coset_limit)
    except fpgroup.CosetLimitExceeded:
        return UNKNOWN
    return TRIVIAL if table.index == 1 else NONTRIVIAL
