import pytest
from hypothesis import given, strategies as st

from semitop.words import (MONOID, SEMIGROUP, Presentation, PresentationError, format_presentation,
                           format_word, make_alphabet, parse_presentation, parse_word, shortlex_key)


def test_bicyclic_grammar():
    p = parse_presentation("monoid; generators: b c; relations: b c = 1")
    assert p.alphabet == ("b", "c")
    assert p.relations == (((0, 1), ()),)
    assert p.kind == MONOID


def test_idempotent_grammar():
    p = parse_presentation("semigroup\ngenerators: a\nrelations:\na a = a")
    assert p.relations == (((0, 0), (0,)),)
    assert p.kind == SEMIGROUP


def test_empty_word_forbidden_in_semigroup():
    with pytest.raises(PresentationError) as err:
        parse_presentation("semigroup; generators: a; relations: 1 = a")
    assert err.value.line == 1


def test_duplicate_generator():
    with pytest.raises(PresentationError, match="duplicate"):
        parse_presentation("monoid\ngenerators: a b a\n")


def test_unknown_generator_position():
    with pytest.raises(PresentationError) as err:
        parse_presentation("monoid\ngenerators: a b\na x = b")
    assert (err.value.line, err.value.column) == (3, 3)


def test_missing_kind():
    with pytest.raises(PresentationError):
        parse_presentation("generators: a\n")


def test_comments_and_blank_lines():
    p = parse_presentation("# free monoid\n\nmonoid  # kind\ngenerators: a b\n")
    assert p.relations == ()


def test_alphabet_rules():
    assert make_alphabet(["x", "y"]) == ("x", "y")
    for bad in (["a", "a"], ["1"], ["a b"]):
        with pytest.raises(PresentationError):
            make_alphabet(bad)


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(("a",), (((0,), ()),), SEMIGROUP)
    with pytest.raises(ValueError):
        Presentation(("a",), (((1,), (0,)),), MONOID)


def test_shortlex():
    words = [(1,), (0, 0), (0,), (), (1, 0)]
    assert sorted(words, key=shortlex_key) == [(), (0,), (1,), (0, 0), (1, 0)]


def test_word_round_trip():
    alphabet = ("b", "c")
    assert parse_word("b c b", alphabet) == (0, 1, 0)
    assert format_word((0, 1, 0), alphabet) == "b c b"
    assert format_word((), alphabet) == "1"


words = st.lists(st.integers(0, 2), min_size=1, max_size=5).map(tuple)


@given(st.lists(st.tuples(words, words), max_size=4), st.sampled_from([MONOID, SEMIGROUP]))
def test_format_parse_round_trip(rels, kind):
    p = Presentation(("a", "b", "c"), tuple(rels), kind)
    assert parse_presentation(format_presentation(p)) == p
