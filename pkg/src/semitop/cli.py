"""Command-line front end: ``semitop <subcommand> ...``.

Exit status is 0 on success, 1 when a hypothesis could not be certified
(a refusal) or a verification failed, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__, fpgroup
from .action import (action_on_r_class, automorphism_group, cycle_notation, parse_action,
                     validate_action)
from .complex import (TwoComplex, build_action_complex, dumps, schutzenberger_graph,
                      verify_quotient_isomorphism)
from .fundamental import (HypothesisNotMet, check_stabilizer_condition, pi1_presentation,
                          reidemeister_subgroup_presentation, schutzenberger_presentation)
from .green import green_relations, schutzenberger_group
from .growth import (graph_growth, regular_growth_theorem_harness, semigroup_growth,
                     verify_growth_equivalence, DIRECTED)
from .semigroup import (Semigroup, enumerate_semigroup, parse_rees, parse_transformations,
                        with_table_presentation)
from .words import PresentationError, parse_presentation


class InputError(ValueError):
    pass


def coset_limit() -> int:
    raw = os.environ.get("SEMITOP_COSET_LIMIT")
    if raw is None:
        return fpgroup.DEFAULT_COSET_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"SEMITOP_COSET_LIMIT must be an integer, got {raw!r}") from None
    if value <= 0:
        raise InputError("SEMITOP_COSET_LIMIT must be positive")
    return value


def _first_line(text):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line
    return ""


def load_semigroup(path: str, max_rules: int = 500) -> Semigroup:
    """Read a transformation, Rees matrix or presentation file (detected by content)."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    head = _first_line(text)
    if head.startswith("degree:"):
        return parse_transformations(text)
    if head.startswith("rees:"):
        return parse_rees(text)
    return Semigroup.from_presentation(parse_presentation(text), max_rules=max_rules)


def with_presentation(s: Semigroup, max_len: int) -> Semigroup:
    return s if s.presentation is not None else with_table_presentation(s, max_len)


def pick_r_class(green, s: Semigroup, word_text: str | None):
    if word_text is None:
        return green.r_classes[0]
    word = s.word(word_text)
    i = green.enum.lookup(s.evaluate(word))
    if i is None:
        raise InputError(f"{word_text!r} is not among the enumerated elements")
    return green.r_class_of(i)


def load_action(args, s: Semigroup):
    """The action given by --action, else S acting on an R-class."""
    if getattr(args, "action", None):
        with open(args.action, encoding="utf-8") as fh:
            a = parse_action(fh.read())
        if a.alphabet != s.alphabet:
            raise InputError("action alphabet differs from the semigroup's")
        return a
    green = green_relations(s, args.max_len)
    if not green.enum.complete:
        raise HypothesisNotMet("enumeration is not complete; give --action or raise --max-len")
    return action_on_r_class(green, pick_r_class(green, s, args.rclass_of))


def out(text: str, path: str | None = None):
    text = text if text.endswith("\n") else text + "\n"
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands

def cmd_enumerate(args):
    s = load_semigroup(args.input)
    enum = enumerate_semigroup(s, args.max_len)
    if args.json:
        out(json.dumps({"status": enum.status, "size": len(enum),
                        "elements": [enum.format(i) for i in range(len(enum))]}, indent=1))
    else:
        out(f"# {len(enum)} elements, {enum.status}")
        for i in range(len(enum)):
            out(f"{i}\t{enum.format(i)}")
    return 0


def cmd_green(args):
    s = load_semigroup(args.input)
    green = green_relations(s, args.max_len)
    if args.json:
        out(json.dumps(green.to_json(), indent=1, sort_keys=True))
        return 0
    fmt = green.enum.format
    out(f"# completeness: {green.completeness}")
    for name in ("r", "l", "h", "d"):
        classes = getattr(green, f"{name}_classes")
        out(f"{name.upper()}-classes ({len(classes)}):")
        for c in classes:
            out("  {" + ", ".join(fmt(i) for i in c) + "}")
    out("idempotents: " + ", ".join(fmt(i) for i in green.idempotents))
    return 0


def cmd_schutz_graph(args):
    s = load_semigroup(args.input)
    green = green_relations(s, args.max_len)
    if not green.enum.complete:
        raise HypothesisNotMet("enumeration is not complete; raise --max-len")
    r_class = pick_r_class(green, s, args.rclass_of)
    graph = schutzenberger_graph(green, r_class)
    labels = [green.enum.format(i) for i in r_class]
    if args.json:
        data = graph.to_json()
        data["vertex_labels"] = labels
        out(json.dumps(data, indent=1, sort_keys=True))
    else:
        out(graph.to_dot(labels), args.dot)
    return 0


def cmd_complex(args):
    s = with_presentation(load_semigroup(args.input), args.max_len)
    a = load_action(args, s)
    report = validate_action(s.presentation, a)
    if not report and not args.truncated:
        raise InputError(f"not a valid action: {report}")
    k = build_action_complex(s.presentation, a, truncated=args.truncated)
    if args.dot:
        out(k.to_dot(a.labels), args.dot)
    else:
        out(dumps(k))
    return 0


def cmd_aut(args):
    s = load_semigroup(args.input)
    a = load_action(args, s)
    group = automorphism_group(a)
    if args.json:
        out(json.dumps({"order": len(group), "automorphisms": [list(g) for g in group]}))
    else:
        out(f"# |Aut| = {len(group)}")
        for g in group:
            out(cycle_notation(g))
    return 0


def cmd_pi1(args):
    if args.input_complex:
        with open(args.input_complex, encoding="utf-8") as fh:
            k = TwoComplex.from_json(json.load(fh))
    else:
        if not args.input:
            raise InputError("give a semigroup file or --input complex.json")
        s = with_presentation(load_semigroup(args.input), args.max_len)
        k = build_action_complex(s.presentation, load_action(args, s))
    p = pi1_presentation(k, args.base)
    if args.simplify:
        p = fpgroup.tietze_simplify(p)
    if args.json:
        out(json.dumps({"generators": list(p.generators),
                        "relators": [p.format_word(r) for r in p.relators]}))
    else:
        out(str(p))
    return 0


def _print_pipeline(result, args):
    if args.json:
        out(json.dumps(result.to_json(), indent=1, sort_keys=True))
        return
    out(str(result.presentation))
    out(f"order: {result.analysis.describe()}")
    out("abelian invariants: " + (" ".join(map(str, result.analysis.abelian_invariants)) or "trivial"))
    st = result.stabilizer
    if st is not None:
        out(f"stabilizer condition: {st.status}" + (f" at vertex {st.vertex}" if st.vertex is not None else ""))
    for note in result.notes:
        out(f"# {note}")


def cmd_schutz_pres(args):
    s = with_presentation(load_semigroup(args.input), args.max_len)
    green = green_relations(s, args.max_len)
    if not green.enum.complete:
        raise HypothesisNotMet("enumeration is not complete; raise --max-len")
    r_class = pick_r_class(green, s, args.rclass_of)
    result = schutzenberger_presentation(s, r_class, args.max_len, args.assert_stabilizer,
                                         coset_limit(), green=green)
    _print_pipeline(result, args)
    return 0


def cmd_reidemeister(args):
    with open(args.input, encoding="utf-8") as fh:
        p = parse_presentation(fh.read())
    words = [p.word(w) for w in args.subgroup]
    res = reidemeister_subgroup_presentation(p, words, coset_limit())
    _print_pipeline(res.pipeline, args)
    if not args.json:
        out(f"|G| = {res.group_order}, |H| by closure = {res.subgroup_order}")
    return 0


def cmd_growth(args):
    s = load_semigroup(args.input)
    n = args.N
    gs = semigroup_growth(s, n)
    und = dire = rhs = None
    enum = enumerate_semigroup(s, args.max_len, args.max_size)
    if enum.complete:
        green = green_relations(enum)
        r_class = pick_r_class(green, s, args.rclass_of)
        graph = schutzenberger_graph(green, r_class)
        und = graph_growth(graph, 0, n)
        dire = graph_growth(graph, 0, n, DIRECTED)
    try:
        rhs = regular_growth_theorem_harness(s, n, args.max_len, args.max_size).rhs
    except HypothesisNotMet:
        rhs = None
    rows = ["n,g_S,g_graph,g_directed,bound_rhs"]
    for r in range(n + 1):
        cells = [r, gs[r], und[r] if und else "", dire[r] if dire else "", rhs[r] if rhs else ""]
        rows.append(",".join(map(str, cells)))
    if args.gnuplot:
        out("set datafile separator ','")
        out("set key left top")
        out("set xlabel 'n'")
        out("$data << EOD")
        for row in rows[1:]:
            out(row)
        out("EOD")
        out("plot $data using 1:2 with linespoints title 'g_S', "
            "'' using 1:3 with linespoints title 'g_graph', "
            "'' using 1:4 with linespoints title 'g_directed', "
            "'' using 1:5 with linespoints title 'bound'")
    else:
        out("\n".join(rows))
    return 0


def cmd_check_stab(args):
    s = load_semigroup(args.input)
    a = load_action(args, s)
    st = check_stabilizer_condition(s, a, args.max_len, coset_limit())
    if args.json:
        out(json.dumps({"status": st.status, "vertex": st.vertex, "complete": st.complete}))
    else:
        where = f" at vertex {st.vertex} ({a.label(st.vertex)})" if st.vertex is not None else ""
        out(f"{st.status}{where}" + ("" if st.complete else " (enumeration truncated)"))
    return 0 if st.certified else 1


def cmd_verify(args):
    """Run the invariant suite on every R-class of a finite semigroup."""
    s = with_presentation(load_semigroup(args.input), args.max_len)
    green = green_relations(s, args.max_len)
    if not green.enum.complete:
        raise HypothesisNotMet("enumeration is not complete; raise --max-len")
    checks = []
    checks.append(("relations hold", not s.relations_hold()))
    gs = semigroup_growth(s, args.N)
    for r_class in green.r_classes:
        name = green.enum.format(r_class[0])
        sg = schutzenberger_group(green, r_class)
        h = green.h_classes_in(r_class)
        checks.append((f"R({name}): orbits are H-classes",
                       sorted(map(sorted, sg.h_class_orbits)) == sorted(map(sorted, h))))
        checks.append((f"R({name}): |G(R)| = |H|", sg.order == len(h[0])))
        a = action_on_r_class(green, r_class)
        checks.append((f"R({name}): action valid", bool(validate_action(s.presentation, a))))
        checks.append((f"R({name}): quotient isomorphism",
                       bool(verify_quotient_isomorphism(s.presentation, a, sg.permutations))))
        cmp = verify_growth_equivalence(schutzenberger_graph(green, r_class), 0,
                                        sg.permutations, args.N, gs, s.is_monoid)
        checks.append((f"R({name}): growth comparison (k={cmp.k})", cmp.ok))
        if green.is_regular_class(r_class):
            checks.append((f"R({name}): G(R) = Aut", set(automorphism_group(a)) == set(sg.permutations)))
    ok = True
    for label, passed in checks:
        ok &= passed
        out(f"{'ok  ' if passed else 'FAIL'} {label}")
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semitop", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"semitop {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, action=False, fmt=("json",)):
        p = sub.add_parser(name, help=help_)
        p.add_argument("input", nargs="?" if name == "pi1" else None,
                       help="semigroup file (.trans, .rees or presentation)")
        p.add_argument("--max-len", type=int, default=1000, help="enumeration length bound")
        for f in fmt:
            if f == "dot":
                p.add_argument("--dot", nargs="?", const="-", metavar="FILE",
                               help="DOT output (to FILE if given)")
            else:
                p.add_argument(f"--{f}", action="store_true", help=f"{f.upper()} output")
        if action:
            p.add_argument("--rclass-of", metavar="WORD", help="act on the R-class of WORD")
            p.add_argument("--action", metavar="FILE", help="action file (vertices: m ...)")
        p.set_defaults(func=func)
        return p

    add("enumerate", cmd_enumerate, "list elements with shortest witnesses")
    add("green", cmd_green, "Green's R, L, H, D classes")
    p = add("schutz-graph", cmd_schutz_graph, "Schutzenberger graph of an R-class", fmt=("json", "dot"))
    p.add_argument("--rclass-of", metavar="WORD")
    p = add("complex", cmd_complex, "action complex K(P, V)", action=True, fmt=("json", "dot"))
    p.add_argument("--truncated", action="store_true", help="allow a truncated window")
    add("aut", cmd_aut, "automorphism group of an action", action=True)
    p = add("pi1", cmd_pi1, "presentation of pi_1 of an action complex", action=True)
    p.add_argument("--input", dest="input_complex", metavar="JSON", help="complex JSON file")
    p.add_argument("--base", type=int, default=0)
    p.add_argument("--simplify", action="store_true", help="apply Tietze moves")
    p = add("schutz-pres", cmd_schutz_pres, "presentation of a Schutzenberger group")
    p.add_argument("--rclass-of", metavar="WORD")
    p.add_argument("--assert-stabilizer", action="store_true",
                   help="proceed when the stabilizer condition is not certified")
    p = add("reidemeister", cmd_reidemeister, "presentation of a subgroup of a finite group")
    p.add_argument("--subgroup", action="append", default=[], metavar="WORD",
                   help="subgroup generator (repeatable)")
    p = add("growth", cmd_growth, "growth series as CSV", fmt=("csv",))
    p.add_argument("-N", type=int, default=10, help="largest radius")
    p.add_argument("--rclass-of", metavar="WORD")
    p.add_argument("--gnuplot", action="store_true", help="emit a gnuplot script")
    p.add_argument("--max-size", type=int, default=20_000,
                   help="element cap when probing for finiteness")
    add("check-stab", cmd_check_stab, "check the stabilizer condition", action=True)
    p = add("verify", cmd_verify, "run the invariant suite", fmt=())
    p.add_argument("-N", type=int, default=10, help="growth range")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for bound in ("max_len", "N"):
        if getattr(args, bound, 1) < 1:
            parser.error(f"{'-N' if bound == 'N' else '--max-len'} must be positive")
    if getattr(args, "N", None) is not None and args.N > args.max_len:
        parser.error("-N must not exceed --max-len")
    try:
        return args.func(args)
    except HypothesisNotMet as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except (PresentationError, InputError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
