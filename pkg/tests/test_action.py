import pytest

from semitop.action import (PartialAction, action_on_r_class, automorphism_group, cycle_notation,
                            format_action, is_automorphism, is_transitive, parse_action,
                            quotient_action, regular_action, validate_action)
from semitop.green import green_relations, schutzenberger_group
from semitop.semigroup import Semigroup, with_table_presentation
from semitop.words import PresentationError, parse_presentation

from conftest import GROUPS, cyclic_presentation


def rank2(t3):
    green = green_relations(t3)
    return green, green.r_class_of(green.enum.lookup(t3.evaluate(t3.word("e12"))))


def bicyclic_window(p, m):
    b = tuple(j + 1 if j < m else None for j in range(m + 1))
    c = tuple(j - 1 if j > 0 else None for j in range(m + 1))
    return PartialAction(p.alphabet, (b, c))


def test_rank2_action(t3):
    green, r = rank2(t3)
    a = action_on_r_class(green, r)
    assert a.vertex_count == 6
    assert is_transitive(a)
    for x in range(3):
        for v, w in enumerate(a.maps[x]):
            prod = t3.multiply(green.enum.elements[r[v]], t3.generators[x])
            assert (w is None) == (prod not in {green.enum.elements[i] for i in r})


def test_group_action_is_total():
    s = Semigroup.from_presentation(cyclic_presentation(5))
    a = regular_action(green_relations(s))
    assert all(x is not None for m in a.maps for x in m)


def test_singleton_r_class(t3):
    green = green_relations(t3)
    const = green.enum.lookup((0, 0, 0))
    a = action_on_r_class(green, green.r_class_of(const))
    assert a.vertex_count == 3  # the constant maps


def test_validate(t3, bicyclic_p):
    s = with_table_presentation(t3)
    green, r = rank2(s)
    assert validate_action(s.presentation, action_on_r_class(green, r))
    report = validate_action(bicyclic_p, bicyclic_window(bicyclic_p, 4))
    assert not report and report.relation_violation == (0, 4)
    single = PartialAction(("a",), ((0,),))
    assert validate_action(parse_presentation("semigroup\ngenerators: a\na a = a"), single)


def test_validate_reports_unreachable():
    p = parse_presentation("monoid\ngenerators: a")
    a = PartialAction(("a",), ((1, 1),))
    assert not validate_action(p, a) and validate_action(p, a).unreachable == (1, 0)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_regular_action_aut_is_group_order(name):
    text, order = GROUPS[name]
    s = Semigroup.from_presentation(parse_presentation(text))
    assert len(automorphism_group(regular_action(green_relations(s)))) == order


def test_rank2_aut_matches_schutzenberger(t3):
    green, r = rank2(t3)
    aut = automorphism_group(action_on_r_class(green, r))
    assert sorted(aut) == schutzenberger_group(green, r).permutations


def test_asymmetric_action_has_trivial_aut():
    # 0 -a-> 1 -a-> 2 -a-> 0 plus a chord b: 0 -> 0
    a = PartialAction(("a", "b"), ((1, 2, 0), (0, None, None)))
    assert automorphism_group(a) == [(0, 1, 2)]
    assert not is_automorphism(a, (1, 2, 0))


def test_quotients(t3):
    s = Semigroup.from_presentation(cyclic_presentation(4))
    a = regular_action(green_relations(s))
    assert quotient_action(a, []).action.maps == a.maps
    q = quotient_action(a, automorphism_group(a))
    assert q.action.vertex_count == 1 and q.action.maps == ((0,),)
    green, r = rank2(t3)
    a = action_on_r_class(green, r)
    q = quotient_action(a, automorphism_group(a))
    assert sorted(sorted(r[v] for v in orb) for orb in q.orbits) == \
        sorted(map(sorted, green.h_classes_in(r)))


def test_quotient_rejects_non_automorphism():
    a = PartialAction(("a", "b"), ((1, 2, 0), (0, None, None)))
    with pytest.raises(ValueError):
        quotient_action(a, [(0, 1, 2), (1, 2, 0), (2, 0, 1)])


def test_action_file_round_trip():
    a = PartialAction(("b", "c"), ((1, 2, None), (None, 0, 1)))
    assert parse_action(format_action(a)) == a
    with pytest.raises(PresentationError):
        parse_action("vertices: 2\na: [1,3]")


def test_cycle_notation():
    assert cycle_notation((1, 0, 2)) == "(1 2)"
    assert cycle_notation((0, 1)) == "()"
