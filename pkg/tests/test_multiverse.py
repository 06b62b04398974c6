import pytest

from setverse.config import Guards
from setverse.errors import ArityError, GuardExceeded, ModelFileError, UnknownAxiomError
from setverse.hf import EMPTY, HFSet, kuratowski_pair, nat, parse_literal
from setverse.logic import parse_formula
from setverse.multiverse import (
    FAILS,
    HOLDS,
    OVERFLOW,
    SKIP,
    Catalogue,
    SchemaInstance,
    Universe,
    audit_axioms,
    build_rank_fragment,
    build_weak_model,
    load_model,
    parse_model,
    replay,
    universe_models,
    universe_properties,
)

from oracles import frozen, pair_f, powerset_f

WEAK = parse_literal("{0, 1, 2, 3, {3}}")


@pytest.fixture(scope="module")
def weak():
    return build_weak_model()


@pytest.fixture(scope="module")
def lemma(weak):
    return audit_axioms(weak, "lemma")


def test_fragment_sizes():
    assert len(build_rank_fragment(3).carrier) == 4
    assert len(build_rank_fragment(4).carrier) == 16


def test_fragment_five_is_complete():
    u = build_rank_fragment(5)
    assert len(u.carrier) == 65536
    assert u.is_standard and u.is_transitive


def test_fragment_guard():
    with pytest.raises(GuardExceeded):
        build_rank_fragment(6)


def test_weak_model_shape(weak):
    assert len(weak.multiverse) == 1
    (v,) = weak.multiverse
    assert v.carrier is WEAK
    assert universe_properties(v) == {"standard": True, "transitive": True, "complete": False}
    assert weak.rank_bound == 7


def test_properties_examples():
    assert universe_properties(build_rank_fragment(4)) == {
        "standard": True, "transitive": True, "complete": True}
    one = Universe("U", [nat(1)])
    assert not universe_properties(one)["transitive"]


def test_nonstandard_relation():
    loop = Universe("L", [EMPTY], [(EMPTY, EMPTY)])
    assert not loop.is_standard
    with pytest.raises(ValueError):
        Universe("B", [EMPTY], [(EMPTY, nat(1))])


def test_universe_models_examples(weak):
    (v,) = weak.multiverse
    res = universe_models(v, parse_formula("exists z. forall x. !(x in z)"))
    assert res.value and res.witness == {"z": EMPTY}
    pairing = parse_formula("exists z. forall a. (a in z <-> a = x | a = y)")
    assert not universe_models(v, pairing, {"x": nat(2), "y": nat(3)}).value
    assert universe_models(v, parse_formula("exists z. z = z")).value


def test_lemma_verdicts(lemma):
    assert lemma.reading == "unfold-before-relativize"
    a6 = lemma.entry("A6")
    assert a6.verdict == HOLDS and a6.witness == {"z": EMPTY}
    pairing = lemma.entry("int:A3")
    assert pairing.verdict == FAILS
    assert {"X": nat(2), "Y": nat(3)} in pairing.counterexamples
    assert lemma.entry("int:A2[x12@Z=3]").verdict == FAILS
    powerset = lemma.entry("int:A11")
    assert powerset.verdict == FAILS and powerset.counterexample == {"X": nat(3)}
    assert lemma.entry("ZFC8").counterexample == {"x": nat(3)}


def test_lemma_divergence_is_reported(lemma):
    rows = {r["claim"]: r for r in lemma.divergence()}
    assert set(rows) == {"separation", "pairing", "product", "replacement", "union", "powerset"}
    # computed, not asserted: the report states what the evaluation found
    for claim, row in rows.items():
        entries = [lemma.entry(i) for i in row["entries"]]
        assert row["models"] == all(e.verdict == HOLDS for e in entries)
        assert row["holding"] == [e.id for e in entries if e.verdict == HOLDS]
        standalone = any("[" not in i for i in row["holding"])
        assert row["diverges"] == (row["models"] or standalone)
    # union: the class-style axiom holds while binary union fails
    assert rows["union"]["holding"] == ["int:A10"] and rows["union"]["diverges"]
    assert rows["replacement"]["holding"] == ["ZFC6[id]"] and not rows["replacement"]["diverges"]


def test_verdicts_replay(weak, lemma):
    (v,) = weak.multiverse
    catalogue = Catalogue()
    for e in lemma.entries:
        f = catalogue.entry(e.id).formula
        for cx in e.counterexamples:
            assert replay(v, f, cx, weak) is False
        if e.verdict == HOLDS and e.witness:
            assert replay(v, f, e.witness, weak) is True


def test_replay_rejects_outside_elements(weak):
    (v,) = weak.multiverse
    f = Catalogue().entry("int:A3").formula
    with pytest.raises(ValueError):
        replay(v, f, {"X": nat(4), "Y": nat(2)}, weak)


def test_a7_and_structural(weak):
    report = audit_axioms(weak, ["A5", "A7", "A8", "A9"])
    assert [e.verdict for e in report.entries] == [HOLDS, HOLDS, SKIP, SKIP]
    assert "consistency" in report.entry("A8").note


def test_a12_conjunction(weak):
    report = audit_axioms(weak, ["A12", "A12*"])
    a12 = report.entry("A12")
    assert a12.verdict == FAILS
    assert a12.parts["int:A1"] == HOLDS
    assert "int:A11" in report.entry("A12*").parts


def test_every_request_once(weak):
    report = audit_axioms(weak, "t0-internal,int:A1,A6")
    ids = [e.id for e in report.entries]
    assert len(ids) == len(set(ids))
    assert ids[0] == "int:A1"


def test_groups_cover_expected_ids():
    c = Catalogue()
    t0 = [a.id for a in c.resolve("t0-internal")]
    assert t0 == ["int:A1", "int:A2[x12]", "int:A2[x12@Z=3]", "int:A2[in-y]",
                  "int:A3", "int:A4", "A6"]
    zfc = [a.id for a in c.resolve("ZFC")]
    for n in range(1, 10):
        assert any(i.startswith(f"ZFC{n}") for i in zfc)
    every = {a.id for a in c.resolve("all")}
    for n in range(1, 13):
        assert any(i == f"A{n}" or i.startswith(f"A{n}[") for i in every)


def test_unknown_ids():
    c = Catalogue()
    for bad in ("A13", "ZFC3[nope]", "A1[x]", "int:A5"):
        with pytest.raises(UnknownAxiomError):
            c.resolve(bad)


def test_user_instance(weak):
    c = Catalogue()
    c.add_instance("separation", "odd", SchemaInstance("separation", "x in 3 & !(x = 0)"))
    report = audit_axioms(weak, "int:A2[odd]", catalogue=c)
    # at Z = 2 the separated set is {1}, which the weak universe lacks
    e = report.entry("int:A2[odd]")
    assert e.verdict == FAILS and e.counterexample == {"Z": nat(2)}
    with pytest.raises(ArityError):
        c.add_instance("separation", "bad", SchemaInstance("separation", "x in y"))
    with pytest.raises(ValueError):
        c.add_instance("separation", "odd", SchemaInstance("separation", "x = x"))


def test_zfc_on_weak(weak):
    report = audit_axioms(weak, "zfc")
    assert report.entry("ZFC1").verdict == HOLDS
    assert report.entry("ZFC2").verdict == HOLDS  # foundation on a finite standard universe
    assert report.entry("ZFC7").verdict == FAILS   # no inductive set among five elements


def test_choice_on_fragment():
    m = parse_model("universe V = fragment 3\n", "frag3")
    report = audit_axioms(m, ["ZFC2", "ZFC9"])
    assert report.entry("ZFC2").verdict == HOLDS
    # the selector {(1, 0)} for x = {1} has rank 3, outside the fragment
    e = report.entry("ZFC9")
    assert e.verdict == FAILS and e.counterexample == {"x": HFSet([nat(1)])}


@pytest.fixture(scope="module")
def frag4_class():
    return audit_axioms(load_model("frag4"), "class", overflow_budget=3)


def test_fragment_class_audit(frag4_class):
    r = frag4_class
    assert r.entry("A1").verdict == HOLDS
    assert r.entry("A10").verdict == HOLDS
    for ident, bound in (("A3", 2), ("A4", 3), ("A11", 1)):
        e = r.entry(ident)
        assert e.verdict == OVERFLOW and 0 < e.overflow <= bound


def test_overflow_witnesses_match_constructions(frag4_class):
    m = load_model("frag4")
    build = {
        "A3": lambda w: pair_set(w["X"], w["Y"]),
        "A4": lambda w: frozenset(pair_f(a, b) for a in frozen(w["X"]) for b in frozen(w["Y"])),
        "A11": lambda w: powerset_f(frozen(w["X"])),
    }
    for ident, expected in build.items():
        e = frag4_class.entry(ident)
        witness = e.witness["Y" if ident == "A11" else "Z"]
        assert frozen(witness) == expected(e.witness)
        assert witness.rank == m.rank_bound - 1 + e.overflow


def pair_set(x, y):
    return frozenset({frozen(x), frozen(y)})


def test_budget_too_small_fails():
    r = audit_axioms(load_model("frag3"), ["A4"], overflow_budget=1)
    e = r.entry("A4")
    assert e.verdict == FAILS and e.overflow == 2


def test_other_fragments_overflow_bounds():
    for name in ("frag2", "frag3"):
        r = audit_axioms(load_model(name), "class")
        assert r.entry("A1").verdict == HOLDS
        assert r.entry("A10").verdict == HOLDS
        for ident, bound in (("A3", 2), ("A4", 3), ("A11", 1)):
            e = r.entry(ident)
            assert e.verdict in (HOLDS, OVERFLOW)
            assert (e.overflow or 0) <= bound


def test_class_audit_skips_lazy_world(weak):
    report = audit_axioms(weak, ["A1"])
    assert report.entry("A1").verdict == SKIP


def test_class_guard():
    report = audit_axioms(load_model("frag4"), ["A3"], guards=Guards(class_assignments=10))
    assert report.entry("A3").verdict == SKIP


def test_model_file_parsing(tmp_path):
    text = """
    # two universes
    world = rank 5
    universe U = {0, 1}
    universe W = fragment 3
    relation U = {(0, 1)}
    multiverse = [W, U]
    """
    m = parse_model(text, "two")
    assert [u.name for u in m.multiverse] == ["W", "U"]
    assert m.rank_bound == 5
    path = tmp_path / "m.model"
    path.write_text(text)
    assert load_model(path).name == "m"


@pytest.mark.parametrize("text, line", [
    ("universe V = {1,", 1),
    ("universe V = {}\nuniverse V = {}", 2),
    ("bogus line", 1),
    ("universe V = {}\nrelation V = {(0, 1)}", None),
    ("multiverse = [X]", None),
    ("world = rank 2\nuniverse V = {3}", None),
])
def test_model_file_errors(text, line):
    with pytest.raises(ModelFileError) as info:
        parse_model(text)
    assert info.value.line == line


def test_missing_model_file():
    with pytest.raises(ModelFileError):
        load_model("/nonexistent/model.model")


def test_shipped_models():
    for name in ("weak", "frag2", "frag3", "frag4", "singleton"):
        m = load_model(name)
        assert all(u.is_standard for u in m.multiverse)
    assert load_model("weak").multiverse[0].carrier is WEAK
    assert load_model("singleton").multiverse[0].carrier == HFSet([EMPTY])


def test_pair_of_weak_elements_absent():
    # sanity for the pairing counterexample: {2, 3} is not in the weak carrier
    assert HFSet([nat(2), nat(3)]) not in WEAK
    assert kuratowski_pair(nat(2), nat(3)) not in WEAK
