"""Acceptance criteria 1-10.

Each criterion is a function returning (ok, detail).  Under pytest every
criterion is one test and the terminal summary lists PASS/FAIL per
criterion; ``python tests/test_acceptance.py`` prints the same table.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from oracles import bfs_ball_sizes, bicyclic_ball, closure, compose, green_by_ideals  # noqa: E402
from semitop.action import PartialAction, action_on_r_class, automorphism_group, regular_action  # noqa: E402
from semitop.complex import build_action_complex, schutzenberger_graph, verify_quotient_isomorphism  # noqa: E402
from semitop.fpgroup import EXACT, is_identity, todd_coxeter  # noqa: E402
from semitop.fundamental import (action_group_presentation, certify_trivial,  # noqa: E402
                                 check_stabilizer_condition, homotopy_witness, pi1_presentation,
                                 reidemeister_subgroup_presentation, schutzenberger_presentation)
from semitop.green import green_relations, schutzenberger_group  # noqa: E402
from semitop.growth import (estimate_degree,  # noqa: E402
                            regular_growth_theorem_harness, semigroup_growth,
                            verify_growth_equivalence)
from semitop.semigroup import Semigroup, parse_rees, parse_transformations, with_table_presentation  # noqa: E402
from semitop.words import parse_presentation  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"

T3 = "degree: 3\ns: [2,1,3]\nc: [2,3,1]\ne12: [1,1,3]\n"
GROUPS = {
    "Z2": ("monoid\ngenerators: a\na a = 1", 2),
    "Z4": ("monoid\ngenerators: a\na a a a = 1", 4),
    "S3": ("monoid\ngenerators: s t\ns s = 1\nt t t = 1\ns t s = t t", 6),
    "V4": ("monoid\ngenerators: a b\na a = 1\nb b = 1\na b = b a", 4),
}
BICYCLIC = "monoid\ngenerators: b c\nb c = 1"
IDEMPOTENT = "semigroup\ngenerators: a\na a = a"

RESULTS = {}


def cyclic(n):
    return parse_presentation("monoid\ngenerators: a\n" + " ".join(["a"] * n) + " = 1")


def t3():
    return parse_transformations(T3)


def r_class_of(green, s, word):
    return green.r_class_of(green.enum.lookup(s.evaluate(s.word(word))))


def random_t4_subsemigroups(count=4, seed=20240611, max_size=200):
    """Subsemigroups of T_4 generated by 2 or 3 random maps, 10..max_size elements."""
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        gens = [tuple(rng.randrange(4) for _ in range(4)) for _ in range(rng.choice((2, 3)))]
        elems = closure(gens, compose)
        if 10 <= len(elems) <= max_size:
            text = "degree: 4\n" + "".join(
                f"g{i}: [{','.join(str(x + 1) for x in g)}]\n" for i, g in enumerate(gens))
            found.append((parse_transformations(text), elems))
    return found


# ---------------------------------------------------------------------------

def criterion_1():
    start = time.perf_counter()
    cases = []
    for n in (2, 3, 4, 6):
        p = cyclic(n)
        s = Semigroup.from_presentation(p)
        cases.append((f"Z/{n}", s, p, regular_action(green_relations(s))))
    s = with_table_presentation(t3())
    green = green_relations(s)
    cases.append(("T3 rank 2", s, s.presentation, action_on_r_class(green, r_class_of(green, s, "e12"))))
    bad = []
    for name, s, p, a in cases:
        st = check_stabilizer_condition(s, a)
        status, method = certify_trivial(pi1_presentation(build_action_complex(p, a)))
        if not st.certified or status != "trivial":
            bad.append(f"{name}: stabilizer {st.status}, pi1 {status} ({method})")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    return ok, f"{len(cases)} actions, pi1 certified trivial, {elapsed:.2f}s" if ok else f"{bad} {elapsed:.2f}s"


def criterion_2():
    bad = []
    for name, (text, order) in sorted(GROUPS.items()):
        p = parse_presentation(text)
        s = Semigroup.from_presentation(p)
        a = regular_action(green_relations(s))
        aut = automorphism_group(a)
        res = action_group_presentation(p, a, aut, check_stabilizer_condition(s, a))
        if len(aut) != order or res.analysis.order_status != EXACT or res.analysis.order != order:
            bad.append(f"{name}: |Aut|={len(aut)} order={res.analysis.order} ({res.analysis.order_status})")
    return not bad, "orders 2, 4, 6, 4 exact" if not bad else "; ".join(bad)


def criterion_3():
    s3 = parse_presentation(GROUPS["S3"][0])
    z4 = parse_presentation(GROUPS["Z4"][0])
    cases = [("S3, <s>", s3, ["s"], 2), ("S3, A3", s3, ["t"], 3), ("Z4, 2Z/4", z4, ["a a"], 2)]
    bad = []
    for name, p, words, order in cases:
        res = reidemeister_subgroup_presentation(p, [p.word(w) for w in words])
        a = res.pipeline.analysis
        if a.order_status != EXACT or not a.order == res.subgroup_order == order:
            bad.append(f"{name}: order {a.order}, closure {res.subgroup_order}, expected {order}")
    return not bad, "subgroup orders 2, 3, 2 exact and equal to closure" if not bad else "; ".join(bad)


def _check_schutzenberger(s, elems):
    """Compare G(R) with brute-force Green classes of ``elems``."""
    green = green_relations(s)
    enum = green.enum
    if set(enum.elements) != set(elems):
        return ["enumeration differs from closure"]
    r_or, _, h_or = green_by_ideals(elems, compose)
    as_sets = {frozenset(enum.elements[i] for i in c) for c in green.r_classes}
    if as_sets != r_or:
        return ["R-classes differ from ideal computation"]
    bad = []
    for r_class in green.r_classes:
        members = frozenset(enum.elements[i] for i in r_class)
        h_here = {h for h in h_or if h <= members}
        sg = schutzenberger_group(green, r_class)
        orbits = {frozenset(enum.elements[i] for i in o) for o in sg.h_class_orbits}
        size = len(next(iter(h_here)))
        free = all(all(g[x] != x for x in range(len(g))) for g in sg.permutations
                   if g != tuple(range(len(g))))
        if orbits != h_here or sg.order != size or not free:
            bad.append(f"R({enum.format(r_class[0])}): orbits/order/freeness")
        regular = any(compose(e, e) == e for e in members)
        if regular and set(automorphism_group(action_on_r_class(green, r_class))) != set(sg.permutations):
            bad.append(f"R({enum.format(r_class[0])}): G(R) != Aut")
    return bad


def criterion_4():
    s = t3()
    gens = [tuple(m) for m in s.backend.generators]
    cases = [("T3", s, closure(gens, compose))]
    for i, (sub, elems) in enumerate(random_t4_subsemigroups()):
        cases.append((f"T4 sample {i} ({len(elems)} elements)", sub, elems))
    bad = [f"{name}: {msg}" for name, sub, elems in cases for msg in _check_schutzenberger(sub, elems)]
    return not bad, "; ".join(name for name, _, _ in cases) if not bad else "; ".join(bad)


def _finite_schutzenberger_graphs():
    out = []
    s = t3()
    semigroups = [("T3", s)] + [(f"T4 sample {i}", sub) for i, (sub, _) in enumerate(random_t4_subsemigroups())]
    semigroups += [(name, Semigroup.from_presentation(parse_presentation(text)))
                   for name, (text, _) in sorted(GROUPS.items())]
    semigroups.append(("<a | aa=a>", Semigroup.from_presentation(parse_presentation(IDEMPOTENT))))
    for name, sg in semigroups:
        green = green_relations(sg)
        for r_class in green.r_classes:
            perms = schutzenberger_group(green, r_class).permutations
            out.append((f"{name} R({green.enum.format(r_class[0])})", schutzenberger_graph(green, r_class), perms))
    return out


def criterion_5(n=12):
    bad, count = [], 0
    for name, graph, perms in _finite_schutzenberger_graphs():
        und_adj = [[] for _ in range(graph.n_vertices)]
        dir_adj = [[] for _ in range(graph.n_vertices)]
        for e in graph.edges:
            dir_adj[e.src].append(e.dst)
            und_adj[e.src].append(e.dst)
            und_adj[e.dst].append(e.src)
        for v in range(graph.n_vertices):
            cmp = verify_growth_equivalence(graph, v, perms, n)
            k = cmp.k
            und = bfs_ball_sizes(und_adj, v, n)
            dire = bfs_ball_sizes(dir_adj, v, k * n)
            count += 1
            if cmp.undirected.values != und or cmp.directed.values != dire[:n + 1]:
                bad.append(f"{name} at {v}: ball sizes disagree with BFS oracle")
            elif not cmp.ok or any(dire[r] > und[r] or und[r] > dire[k * r] for r in range(n + 1)):
                bad.append(f"{name} at {v}: inequality fails (k={k})")
    return not bad, f"{count} (graph, vertex) pairs, n <= {n}" if not bad else "; ".join(bad[:5])


def criterion_6(n=20):
    start = time.perf_counter()
    bad, degrees = [], []
    rep = regular_growth_theorem_harness(t3(), 12)
    if not rep.ok:
        bad.append(f"T3 bound fails at {rep.failures}")
    for name, rank in (("rees1.rees", 1), ("rees2.rees", 2)):
        s = parse_rees((DATA / name).read_text())
        rep = regular_growth_theorem_harness(s, n)
        d = rep.lhs_degree.degree
        degrees.append(f"Z^{rank}: {d:.3f}")
        if not rep.ok:
            bad.append(f"{name} bound fails at {rep.failures}")
        if abs(d - rank) > 0.3:
            bad.append(f"{name} degree {d:.3f} vs {rank}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    return ok, f"bounds hold; degrees {', '.join(degrees)}; {elapsed:.1f}s" + ("" if ok else f"; {bad}")


def criterion_7():
    bad = []
    bic = semigroup_growth(Semigroup.from_presentation(parse_presentation(BICYCLIC)), 12).values
    if bic != [(n + 1) * (n + 2) // 2 for n in range(13)] or bic != [len(bicyclic_ball(n)) for n in range(13)]:
        bad.append(f"bicyclic {bic}")
    free = semigroup_growth(Semigroup.from_presentation(parse_presentation("monoid\ngenerators: a b")), 12).values
    if free != [2 ** (n + 1) - 1 for n in range(13)]:
        bad.append(f"free monoid {free}")
    s = t3()
    t = semigroup_growth(s, 12).values
    order = len(closure([tuple(m) for m in s.backend.generators], compose))
    if order != 27 or max(t) != 27 or t[-1] != 27 or t[-2] != 27:
        bad.append(f"T3 {t}")
    return not bad, f"bicyclic, free monoid exact to 12; T3 {t}" if not bad else "; ".join(bad)


def criterion_8():
    cases = []
    for name, (text, _) in sorted(GROUPS.items()):
        p = parse_presentation(text)
        a = regular_action(green_relations(Semigroup.from_presentation(p)))
        cases.append((f"{name} with Aut", p, a, automorphism_group(a)))
    s = with_table_presentation(t3())
    green = green_relations(s)
    for r_class in green.r_classes:
        cases.append((f"T3 R({green.enum.format(r_class[0])})", s.presentation,
                      action_on_r_class(green, r_class), schutzenberger_group(green, r_class).permutations))
    s3 = parse_presentation(GROUPS["S3"][0])
    z4 = parse_presentation(GROUPS["Z4"][0])
    for name, p, w in (("S3/<s>", s3, "s"), ("S3/A3", s3, "t"), ("Z4/2Z4", z4, "a a")):
        res = reidemeister_subgroup_presentation(p, [p.word(w)])
        cases.append((f"Reidemeister {name}", p, res.action, res.subgroup))
    for n in (2, 3, 4, 6):
        p = cyclic(n)
        a = regular_action(green_relations(Semigroup.from_presentation(p)))
        cases.append((f"Z/{n} trivial group", p, a, [tuple(range(a.vertex_count))]))
    bad = [name for name, p, a, g in cases if not verify_quotient_isomorphism(p, a, g)]
    # the T3 pipeline itself also runs end to end
    schutzenberger_presentation(s, r_class_of(green, s, "e12"), green=green)
    return not bad, f"{len(cases)} pipeline cases" if not bad else f"failed: {bad}"


def _random_derivation(rng, p, k, base, start, steps):
    """Random relation applications keeping every word traceable from base."""
    w, derivation = start, []
    for _ in range(steps):
        moves = []
        for r, (lhs, rhs) in enumerate(p.relations):
            for src, dst, d in ((lhs, rhs, 1), (rhs, lhs, -1)):
                for i in range(len(w) - len(src) + 1):
                    if w[i:i + len(src)] == src:
                        nw = w[:i] + dst + w[i + len(src):]
                        if len(nw) <= 10 and (nw or p.is_monoid) and k.trace(base, nw) is not None:
                            moves.append(((i, r, d), nw))
        if not moves:
            break
        step, w = rng.choice(moves)
        derivation.append(step)
    return w, derivation


def criterion_9(per_complex=12, seed=7):
    rng = random.Random(seed)
    bic = parse_presentation(BICYCLIC)
    m = 6
    window = PartialAction(bic.alphabet, (tuple(j + 1 if j < m else None for j in range(m + 1)),
                                          tuple(j - 1 if j > 0 else None for j in range(m + 1))))
    idem = parse_presentation(IDEMPOTENT)
    # the only transitive action of <a | aa=a> is the one-point regular one
    regular = regular_action(green_relations(Semigroup.from_presentation(idem)))
    complexes = [("bicyclic window", bic, build_action_complex(bic, window, truncated=True)),
                 ("<a | aa=a> regular", idem, build_action_complex(idem, regular))]
    bad, made = [], 0
    for name, p, k in complexes:
        pres = pi1_presentation(k)
        table = todd_coxeter(pres)
        n_here = 0
        while n_here < per_complex:
            if p.is_monoid:
                u = tuple(rng.choice((0, 1)) for _ in range(rng.randrange(0, 6)))
                if k.trace(0, u) is None:
                    continue
            else:
                u = (0,) * rng.randrange(1, 5)
            v, derivation = _random_derivation(rng, p, k, 0, u, rng.randrange(1, 5))
            if not derivation:
                continue
            cert = homotopy_witness(k, p, 0, u, v, derivation)
            n_here += 1
            if cert is None or len(cert.steps) != len(derivation):
                bad.append(f"{name}: no certificate for {u} -> {v}")
            elif not cert.verify(k, pres) or not is_identity(table, cert.loop_word(pres)):
                bad.append(f"{name}: certificate for {u} -> {v} does not evaluate to 1")
        made += n_here
    return not bad, f"{made} certificates verified" if not bad else "; ".join(bad[:5])


def calibration_series():
    """Polynomials of degree 0..4 with positive coefficients, sampled on 0..64."""
    rng = random.Random(11)
    out = []
    for d in range(5):
        families = [[1] + [0] * d, [1] * (d + 1)]
        families += [[rng.randint(1, 5)] + [rng.randint(0, 10) for _ in range(d)] for _ in range(4)]
        for coeffs in families:
            out.append((d, coeffs, [sum(c * n ** (d - i) for i, c in enumerate(coeffs)) for n in range(65)]))
    return out


def criterion_10():
    worst = 0.0
    for d, coeffs, series in calibration_series():
        worst = max(worst, abs(estimate_degree(series, (8, 64)).degree - d))
    return worst <= 0.15, f"max error {worst:.4f} over {len(calibration_series())} polynomials"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(n):
    try:
        ok, detail = CRITERIA[n - 1]()
    except Exception as exc:  # reported as a failure, then re-raised under pytest
        RESULTS[n] = (False, f"{type(exc).__name__}: {exc}")
        raise
    RESULTS[n] = (ok, detail)
    return ok, detail


def summary_lines():
    return [f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}" for n, (ok, detail) in sorted(RESULTS.items())]


@pytest.mark.parametrize("n", range(1, 11))
def test_acceptance(n):
    ok, detail = run_criterion(n)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


if __name__ == "__main__":
    for n in range(1, 11):
        try:
            run_criterion(n)
        except Exception:
            pass
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
