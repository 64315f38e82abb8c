import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confluence.matchings import (
    CapExceeded,
    InvalidMatching,
    MergerPattern,
    ParseError,
    enumerate_noncrossing,
    enumerate_symmetric,
    format_symbol,
    is_centrally_symmetric,
    is_noncrossing,
    iter_noncrossing,
    parse_symbol,
    reflect,
)

from oracles import all_matchings, brute_noncrossing, brute_symmetric, crosses


def P(*pairs, size=None):
    return MergerPattern.from_pairs(pairs, size)


@st.composite
def matchings(draw, max_J=6):
    J = draw(st.integers(1, max_J))
    levels = draw(st.permutations(range(1, 2 * J + 1)))
    return MergerPattern(2 * J, tuple(zip(levels[::2], levels[1::2])))


@pytest.mark.parametrize(
    "pattern, expected",
    [
        (P((1, 2), (3, 4)), True),
        (P((1, 3), (2, 4)), False),
        (P((1, 6), (2, 5), (3, 4)), True),
        (P((1, 4), (2, 6), (3, 5)), False),
    ],
)
def test_is_noncrossing_examples(pattern, expected):
    assert is_noncrossing(pattern) is expected


@given(matchings())
def test_is_noncrossing_matches_pairwise_definition(p):
    pairwise = not any(crosses(x, y) for i, x in enumerate(p.pairs) for y in p.pairs[i + 1:])
    assert is_noncrossing(p) is pairwise


def test_reflect_examples():
    assert reflect(P((1, 2), (3, 4))) == P((1, 2), (3, 4))
    assert reflect(P((1, 2), (3, 6), (4, 5))) == P((5, 6), (1, 4), (2, 3))
    assert reflect(P((1, 2))) == P((1, 2))


def test_is_centrally_symmetric_examples():
    assert is_centrally_symmetric(P((1, 6), (2, 5), (3, 4)))
    assert not is_centrally_symmetric(P((1, 2), (3, 6), (4, 5)))
    assert is_centrally_symmetric(P((1, 2)))


@given(matchings())
def test_reflect_is_an_involution(p):
    assert reflect(reflect(p)) == p
    assert reflect(p).size == p.size


@given(matchings())
def test_reflect_preserves_noncrossing(p):
    assert is_noncrossing(reflect(p)) is is_noncrossing(p)


@pytest.mark.parametrize("J", range(1, 9))
def test_reflect_preserves_noncrossing_exhaustive(J):
    assert all(is_noncrossing(reflect(p)) for p in iter_noncrossing(J))


def test_enumerate_noncrossing_small():
    assert enumerate_noncrossing(1) == [P((1, 2))]
    assert enumerate_noncrossing(2) == [P((1, 2), (3, 4)), P((1, 4), (2, 3))]
    assert len(enumerate_noncrossing(3)) == 5


@pytest.mark.parametrize("J", range(1, 7))
def test_enumerate_noncrossing_equals_brute_force(J):
    assert [p.pairs for p in enumerate_noncrossing(J)] == brute_noncrossing(J)


@pytest.mark.parametrize("J", range(1, 7))
def test_enumerate_symmetric_equals_brute_force(J):
    assert [p.pairs for p in enumerate_symmetric(J)] == brute_symmetric(J)


def test_enumerate_symmetric_examples():
    assert enumerate_symmetric(2) == [P((1, 2), (3, 4)), P((1, 4), (2, 3))]
    assert {format_symbol(p) for p in enumerate_symmetric(3)} == {
        "{[1,6],[2,3],[4,5]}",
        "{[1,6],[2,5],[3,4]}",
        "{[1,2],[3,4],[5,6]}",
    }
    assert len(enumerate_symmetric(4)) == 6


@pytest.mark.parametrize("J", range(1, 11))
def test_enumerate_symmetric_is_reflection_fixed_subset(J):
    direct = enumerate_symmetric(J)
    filtered = [p for p in enumerate_noncrossing(J) if is_centrally_symmetric(p)]
    assert set(direct) == set(filtered)
    assert len(direct) == len(set(direct))


@pytest.mark.parametrize("fn", [enumerate_noncrossing, enumerate_symmetric])
def test_enumeration_order_is_lexicographic(fn):
    for J in range(1, 8):
        keys = [p.pairs for p in fn(J)]
        assert keys == sorted(keys)
        assert len(keys) == len(set(keys))


@pytest.mark.parametrize("fn", [enumerate_noncrossing, enumerate_symmetric])
def test_enumeration_cap(fn):
    with pytest.raises(CapExceeded):
        fn(15)
    with pytest.raises(CapExceeded):
        fn(4, cap=3)
    assert len(fn(4, cap=4)) > 0
    with pytest.raises(ValueError):
        fn(0)


def test_format_symbol():
    assert format_symbol(P((1, 6), (2, 3), (4, 5))) == "{[1,6],[2,3],[4,5]}"
    assert format_symbol(P((1, 2))) == "{[1,2]}"
    assert format_symbol(P((2, 1), (4, 3))) == "{[1,2],[3,4]}"
    assert str(P((4, 3), (2, 1))) == "{[1,2],[3,4]}"


def test_parse_symbol():
    assert parse_symbol("{[1,6],[2,5],[3,4]}") == P((1, 6), (2, 5), (3, 4))
    assert parse_symbol("{[2,1]}") == P((1, 2))
    assert parse_symbol(" { [4, 3] ,[1 ,2] } ") == P((1, 2), (3, 4))


@pytest.mark.parametrize(
    "text",
    ["", "{}", "[1,2]", "{[1,2]", "{[1,2],}", "{[1;2]}", "{[a,b]}", "{[1,2,3]}", "{[0,1]}", "{[-1,2]}", "{[01,2]}", "{[1,2][3,4]}"],
)
def test_parse_symbol_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_symbol(text)


@pytest.mark.parametrize("text", ["{[1,2],[2,3]}", "{[1,1]}", "{[1,4]}", "{[1,3]}", "{[1,2],[1,2]}", "{[1,2],[3,4],[5,6],[7,10]}"])
def test_parse_symbol_rejects_invalid_matching(text):
    with pytest.raises(InvalidMatching):
        parse_symbol(text)


@pytest.mark.parametrize("J", range(1, 9))
def test_symbol_round_trip(J):
    for p in iter_noncrossing(J):
        assert parse_symbol(format_symbol(p)) == p


@given(matchings(max_J=10))
@settings(max_examples=200)
def test_symbol_round_trip_arbitrary(p):
    assert parse_symbol(format_symbol(p)) == p


def test_pattern_validation():
    with pytest.raises(InvalidMatching):
        MergerPattern(4, ((1, 2),))
    with pytest.raises(InvalidMatching):
        MergerPattern(3, ((1, 2),))
    with pytest.raises(InvalidMatching):
        MergerPattern(2, ((1, 3),))
    p = P((4, 1), (3, 2))
    assert p.pairs == ((1, 4), (2, 3))
    assert p.J == 2
    assert p.partner(3) == 2 and p.partner(1) == 4


def test_brute_force_oracle_sanity():
    # (2J - 1)!! matchings in total
    assert sum(1 for _ in all_matchings(range(6))) == 15
    assert sum(1 for _ in all_matchings(range(8))) == 105
