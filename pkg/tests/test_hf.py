import pickle
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setverse.errors import GuardExceeded, LiteralSyntaxError
from setverse.hf import (
    EMPTY,
    HFSet,
    binary_union,
    canonical_set,
    cartesian_product,
    decode_pair,
    format_set,
    is_transitive,
    kuratowski_pair,
    nat,
    parse_literal,
    powerset,
    rank,
    rank_fragment,
    union_all,
)

from oracles import frozen, fragment_f, nat_f, pair_f, powerset_f, rank_f, union_f

V4 = rank_fragment(4)
small = st.sampled_from(V4)


@st.composite
def hf_sets(draw, max_rank=4):
    if max_rank == 0:
        return EMPTY
    members = draw(st.lists(hf_sets(max_rank - 1), max_size=3))
    return HFSet(members)


def test_canonical_set_examples():
    assert canonical_set([EMPTY, EMPTY]) == HFSet([EMPTY])
    two = canonical_set([EMPTY, HFSet([EMPTY])])
    assert two is nat(2)
    assert canonical_set([HFSet([EMPTY]), EMPTY]).members == two.members


def test_numerals():
    assert nat(0) is EMPTY
    assert nat(3) == HFSet([EMPTY, nat(1), nat(2)])
    assert nat(2).members == (EMPTY, HFSet([EMPTY]))
    for n in range(8):
        assert frozen(nat(n)) == nat_f(n)


def test_numeral_guard():
    with pytest.raises(GuardExceeded):
        nat(10_000)


def test_rank_examples():
    assert rank(EMPTY) == 0
    assert rank(nat(2)) == 2
    assert rank(HFSet([nat(3)])) == 4


def test_pair_examples():
    assert kuratowski_pair(EMPTY, EMPTY) == HFSet([HFSet([EMPTY])])
    p = kuratowski_pair(nat(1), nat(2))
    assert p == HFSet([HFSet([nat(1)]), HFSet([nat(1), nat(2)])])
    assert kuratowski_pair(nat(2), nat(1)) != p
    assert decode_pair(p) == (nat(1), nat(2))
    assert decode_pair(HFSet([HFSet([EMPTY])])) == (EMPTY, EMPTY)
    assert decode_pair(nat(3)) is None


def test_union_examples():
    assert union_all(EMPTY) is EMPTY
    assert union_all(nat(3)) is nat(2)
    assert union_all(HFSet([nat(3)])) is nat(3)


def test_powerset_examples():
    assert powerset(EMPTY) == HFSet([EMPTY])
    assert powerset(nat(1)) == HFSet([EMPTY, nat(1)])
    p2 = powerset(nat(2))
    assert len(p2) == 4
    assert p2 == HFSet([EMPTY, nat(1), HFSet([nat(1)]), nat(2)])


def test_product_examples():
    assert cartesian_product(EMPTY, nat(3)) is EMPTY
    assert cartesian_product(nat(1), nat(1)) == HFSet([HFSet([HFSet([EMPTY])])])
    assert len(cartesian_product(nat(2), nat(2))) == 4


def test_guards_raise():
    with pytest.raises(GuardExceeded):
        powerset(nat(5), limit=16)
    with pytest.raises(GuardExceeded):
        cartesian_product(nat(5), nat(5), limit=20)


def test_rank_fragment_sizes():
    assert [len(rank_fragment(k)) for k in range(5)] == [0, 1, 2, 4, 16]
    assert set(frozen(x) for x in rank_fragment(4)) == fragment_f(4)
    with pytest.raises(GuardExceeded):
        rank_fragment(6)


def test_rank_fragment_five():
    v5 = rank_fragment(5)
    assert len(v5) == 65536
    assert all(x.rank < 5 for x in v5[:100])


def test_literals():
    assert parse_literal("{}") is EMPTY
    assert parse_literal(" { 1 , {} ,1 } ") == HFSet([EMPTY, nat(1)])
    assert parse_literal("3") is nat(3)
    for text in ("{", "{1,", "{1 2}", "x", "{}}"):
        with pytest.raises(LiteralSyntaxError):
            parse_literal(text)


def test_literal_error_offset():
    with pytest.raises(LiteralSyntaxError) as info:
        parse_literal("{1, 2")
    assert info.value.offset == 5


def test_format():
    assert format_set(EMPTY) == "{}"
    assert format_set(nat(3)) == "3"
    assert format_set(HFSet([nat(3)])) == "{3}"
    assert format_set(kuratowski_pair(nat(1), nat(2))) == "{{1}, {1, 2}}"


def test_transitive():
    assert is_transitive(nat(4))
    assert not is_transitive(HFSet([nat(1)]))


def test_pickle_keeps_identity():
    x = parse_literal("{{3}, 2}")
    assert pickle.loads(pickle.dumps(x)) is x


def test_concurrent_interning():
    results = []

    def build():
        results.append(HFSet([nat(7), HFSet([nat(9)])]))

    threads = [threading.Thread(target=build) for _ in range(16)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r is results[0] for r in results)


@given(st.lists(small, max_size=6), st.randoms())
def test_extensionality(items, rnd):
    shuffled = list(items)
    rnd.shuffle(shuffled)
    assert canonical_set(items) is canonical_set(shuffled + items[:1])
    assert frozen(canonical_set(items)) == frozenset(frozen(i) for i in items)


@given(hf_sets())
def test_rank_matches_oracle(x):
    assert rank(x) == rank_f(frozen(x))


@given(hf_sets(3), hf_sets(3))
def test_pair_round_trip(x, y):
    p = kuratowski_pair(x, y)
    assert decode_pair(p) == (x, y)
    assert frozen(p) == pair_f(frozen(x), frozen(y))
    expected = 2 + max(rank(x), rank(y))
    assert rank(p) == expected


@given(hf_sets(3), hf_sets(3), hf_sets(3), hf_sets(3))
def test_pair_injective(x, y, u, v):
    if kuratowski_pair(x, y) is kuratowski_pair(u, v):
        assert (x, y) == (u, v)


@given(hf_sets(3), hf_sets(3), small)
def test_binary_union(x, y, z):
    u = union_all(HFSet([x, y]))
    assert (z in u) == (z in x or z in y)
    assert u is binary_union(x, y)


@settings(max_examples=60)
@given(st.sampled_from(rank_fragment(4)))
def test_powerset_membership(x):
    p = powerset(x)
    assert frozen(p) == powerset_f(frozen(x))
    for z in V4:
        assert (z in p) == z.issubset(x)


@given(hf_sets(3))
def test_union_matches_oracle(x):
    assert frozen(union_all(x)) == union_f(frozen(x))


@given(hf_sets(2), hf_sets(2))
def test_product_rank_bound(x, y):
    prod = cartesian_product(x, y)
    assert rank(prod) <= 3 + max(rank(x), rank(y))
    assert len(prod) == len(x) * len(y)


@given(hf_sets(4))
def test_format_parse_round_trip(x):
    assert parse_literal(format_set(x)) is x
