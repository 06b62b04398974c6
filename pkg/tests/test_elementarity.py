import itertools
import random

import pytest

from setverse.config import Guards
from setverse.elementarity import (
    distinguishing_formula,
    ef_equivalent,
    elementary_for,
    is_substructure,
)
from setverse.errors import GuardExceeded
from setverse.hf import EMPTY, nat
from setverse.logic import evaluate, parse_formula, quantifier_rank
from setverse.multiverse import Universe, build_rank_fragment, build_weak_model, load_model

from oracles import rank_bounded_agree

TWO_MEMBERS = "exists z. exists x. exists y. (x in z & y in z & !(x = y))"


def shipped(name):
    return load_model(name).multiverse[0]


def test_substructure_examples():
    f3, f4, f5 = (build_rank_fragment(k) for k in (3, 4, 5))
    assert is_substructure(f3, f4)
    assert is_substructure(build_weak_model().multiverse[0], f5)
    emptied = Universe("E", f3.carrier, [])
    assert not is_substructure(emptied, f4)
    assert not is_substructure(f4, f3)


def test_ef_examples():
    f2, f3 = shipped("frag2"), shipped("frag3")
    assert ef_equivalent(f2, f3, 1)
    assert not ef_equivalent(f2, f3, 2)
    for u in (f2, f3, shipped("weak")):
        for d in range(4):
            assert ef_equivalent(u, u, d)


def test_distinguisher_examples():
    f2, f3 = shipped("frag2"), shipped("frag3")
    phi = distinguishing_formula(f3, f2, 2)
    assert quantifier_rank(phi) <= 2
    assert evaluate(f3.structure(), phi).value
    assert not evaluate(f2.structure(), phi).value
    assert distinguishing_formula(f3, f3, 3) is None


def test_depth_one_distinguisher():
    empty = Universe("E", [])
    one = Universe("S", [EMPTY])
    phi = distinguishing_formula(one, empty, 1)
    assert quantifier_rank(phi) == 1
    assert evaluate(one.structure(), phi).value and not evaluate(empty.structure(), phi).value
    loop = Universe("L", [EMPTY], [(EMPTY, EMPTY)])
    phi = distinguishing_formula(loop, one, 1)
    assert quantifier_rank(phi) == 1
    assert evaluate(loop.structure(), phi).value and not evaluate(one.structure(), phi).value


def test_depth_guard():
    u = shipped("frag2")
    with pytest.raises(GuardExceeded):
        ef_equivalent(u, u, 5)
    with pytest.raises(GuardExceeded):
        ef_equivalent(u, u, 3, Guards(ef_depth=2))


def test_depth_four_on_fragment_four():
    f4 = build_rank_fragment(4)
    assert ef_equivalent(f4, f4, 4)


def _random_universes(rng, count, max_size=4):
    out = []
    for i in range(count):
        n = rng.randint(0, max_size)
        elems = [nat(k) for k in range(n)]
        rel = [(a, b) for a in elems for b in elems if rng.random() < 0.35]
        out.append(Universe(f"R{i}", elems, rel))
    return out


def _pairs_of(u):
    return list(u.elements), set(u.membership)


def test_ef_matches_sentence_oracle_random():
    rng = random.Random(3)
    universes = _random_universes(rng, 14)
    for a, b in itertools.product(universes, repeat=2):
        for d in range(3):
            same = ef_equivalent(a, b, d)
            assert same == rank_bounded_agree(*_pairs_of(a), *_pairs_of(b), d)
            if not same:
                phi = distinguishing_formula(a, b, d)
                assert quantifier_rank(phi) <= d
                assert evaluate(a.structure(), phi).value != evaluate(b.structure(), phi).value


def test_symmetry_and_monotonicity():
    rng = random.Random(8)
    universes = _random_universes(rng, 10)
    for a, b in itertools.product(universes, repeat=2):
        for d in range(3):
            assert ef_equivalent(a, b, d) == ef_equivalent(b, a, d)
            if ef_equivalent(a, b, d + 1):
                assert ef_equivalent(a, b, d)


def test_elementary_for_examples():
    weak, f5 = shipped("weak"), build_rank_fragment(5)
    report = elementary_for(weak, f5, [parse_formula("exists z. forall x. !(x in z)")])
    assert report.passed and report.rows[0].left and report.rows[0].right
    f2, f3 = shipped("frag2"), shipped("frag3")
    report = elementary_for(f2, f3, [parse_formula(TWO_MEMBERS)])
    assert not report.passed and len(report.disagreements) == 1
    assert elementary_for(f2, f3, []).passed


def test_elementary_for_parameters():
    f3, f4 = build_rank_fragment(3), build_rank_fragment(4)
    report = elementary_for(f3, f4, [parse_formula("exists y. (x in y & !(y = x))")])
    assert len(report.rows) == 4
    # in V_3 the top element 2 and {1} are members of nothing; in V_4 they are
    assert not report.passed


def test_elementary_for_precondition():
    with pytest.raises(ValueError):
        elementary_for(build_rank_fragment(4), build_rank_fragment(3), [])
