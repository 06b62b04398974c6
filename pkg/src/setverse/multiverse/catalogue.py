"""The axiom catalogue: A1-A12, ZFC 1-9 and their shipped schema instances."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import UnknownAxiomError
from ..hf import HFSet, nat
from ..logic import Formula, instantiate_schema, parse_formula

CLASS = "class"
INTERNAL = "internal"
STRUCTURAL = "structural"
SKIPPED = "skipped"
CONJUNCTION = "conjunction"

A1 = "forall X. forall Y. (X = Y <-> forall Z. (Z in X <-> Z in Y))"
A3 = "forall X. forall Y. exists Z. forall A. (A in Z <-> A = X | A = Y)"
A4 = ("forall X. forall Y. exists Z. forall A. "
      "(A in Z <-> exists X1 in X. exists Y1 in Y. A = (X1, Y1))")
A6 = "exists z. forall x. !(x in z)"
A10 = "forall X. exists Y. forall Z. (Z in Y <-> exists A in X. Z in A)"
A11 = "forall X. exists Y. forall Z. (Z sub X <-> Z in Y)"

# ZFC 2 carries the usual non-emptiness guard: as displayed it fails at x = {}.
ZFC = {
    "ZFC1": "forall x. forall y. (x = y <-> forall z. (z in x <-> z in y))",
    "ZFC2": "forall x. ((exists w. w in x) -> exists y. (y in x & forall z. (z in y -> !(z in x))))",
    "ZFC4": "forall x. forall y. exists z. forall a. (a in z <-> a = x | a = y)",
    "ZFC5": "forall x. forall y. exists z. forall a. (a in z <-> a in x | a in y)",
    "ZFC7": ("exists x. ((exists e. ((forall w. !(w in e)) & e in x)) & "
             "forall y in x. exists s. ((forall w. (w in s <-> w in y | w = y)) & s in x))"),
    "ZFC8": "forall x. exists y. forall z. (z sub x <-> z in y)",
    "ZFC9": ("forall x. ((!exists e. ((forall w. !(w in e)) & e in x)) -> exists f. ("
             "(forall y in x. exists v in y. exists p in f. p = (y, v)) & "
             "(forall p in f. exists y in x. exists v in y. p = (y, v)) & "
             "(forall p in f. forall q in f. forall y in x. forall v in y. forall u in y. "
             "((p = (y, v) & q = (y, u)) -> v = u))))"),
}

# the schemes the weak-model lemma says the weak universe does not model
CLAIMS = ("separation", "pairing", "product", "replacement", "union", "powerset")


@dataclass(frozen=True)
class SchemaInstance:
    schema: str
    phi: str
    bindings: Mapping[str, HFSet] = field(default_factory=dict)
    params: tuple[str, ...] = ()
    slots: tuple[str, ...] | None = None

    def formula(self) -> Formula:
        return instantiate_schema(
            self.schema, parse_formula(self.phi), self.bindings,
            slots=self.slots, params=self.params,
        )


DEFAULT_SEPARATION = {
    "x12": SchemaInstance("separation", "x = 1 | x = 2"),
    "x12@Z=3": SchemaInstance("separation", "x = 1 | x = 2", {"Z": nat(3)}),
    "in-y": SchemaInstance("separation", "x in y", params=("y",)),
}
DEFAULT_REPLACEMENT = {
    "id": SchemaInstance("replacement", "y = x", slots=("x", "y")),
    "sing": SchemaInstance("replacement", "forall w. (w in y <-> w = x)", slots=("x", "y")),
}


@dataclass(frozen=True)
class Axiom:
    id: str
    level: str
    formula: Formula | None = None
    claim: str | None = None
    note: str = ""
    parts: tuple[str, ...] = ()


class Catalogue:
    """Resolves axiom ids, schema instances and group names to entries."""

    def __init__(self):
        self.separation = dict(DEFAULT_SEPARATION)
        self.replacement = dict(DEFAULT_REPLACEMENT)

    def add_instance(self, schema: str, name: str, instance: SchemaInstance) -> None:
        table = self.replacement if schema == "replacement" else self.separation
        if name in table:
            raise ValueError(f"{schema} instance {name!r} already exists")
        instance.formula()  # fail early on arity problems
        table[name] = instance

    # -- entries --------------------------------------------------------------

    def _sep_ids(self, prefix: str) -> list[str]:
        return [f"{prefix}[{name}]" for name in self.separation]

    def _rep_ids(self) -> list[str]:
        return [f"ZFC6[{name}]" for name in self.replacement]

    def groups(self) -> dict[str, list[str]]:
        zfc = (["ZFC1", "ZFC2"] + self._sep_ids("ZFC3") + ["ZFC4", "ZFC5"]
               + self._rep_ids() + ["ZFC7", "ZFC8", "ZFC9"])
        return {
            "t0": ["A1", *self._sep_ids("A2"), "A3", "A4", "A5", "A6", "A7"],
            "t0-internal": ["int:A1", *self._sep_ids("int:A2"), "int:A3", "int:A4", "A6"],
            "class": ["A1", *self._sep_ids("A2"), "A3", "A4", "A10", "A11"],
            "zfc": zfc,
            "lemma": ["A6", *self._sep_ids("int:A2"), "int:A3", "int:A4",
                      *self._rep_ids(), "int:A10", "ZFC5", "int:A11", "ZFC8"],
            "all": ["A1", *self._sep_ids("A2"), "A3", "A4", "A5", "A6", "A7", "A8", "A9",
                    "A10", "A11", "A12", "A12*", *zfc],
        }

    def resolve(self, ids) -> list[Axiom]:
        """Expand ids and groups; unknown ids raise before any work is done."""
        if isinstance(ids, str):
            ids = [s for s in (p.strip() for p in ids.split(",")) if s]
        groups = self.groups()
        out: list[Axiom] = []
        seen = set()
        for ident in ids:
            for one in groups.get(ident.lower(), [ident]):
                for ax in self._expand(one):
                    if ax.id not in seen:
                        seen.add(ax.id)
                        out.append(ax)
        return out

    def _expand(self, ident: str) -> list[Axiom]:
        if ident in ("A2", "int:A2", "ZFC3"):
            return [self.entry(i) for i in self._sep_ids(ident)]
        if ident == "ZFC6":
            return [self.entry(i) for i in self._rep_ids()]
        return [self.entry(ident)]

    def entry(self, ident: str) -> Axiom:
        internal = ident.startswith("int:")
        base = ident[4:] if internal else ident
        name, inst = base, None
        if "[" in base and base.endswith("]"):
            name, inst = base[:-1].split("[", 1)

        if name == "A2" or name == "ZFC3":
            if inst not in self.separation:
                raise UnknownAxiomError(f"unknown separation instance in {ident!r}")
            f = self.separation[inst].formula()
            if name == "ZFC3":
                return Axiom(ident, INTERNAL, f, "separation")
            return Axiom(ident, INTERNAL if internal else CLASS, f,
                         "separation" if internal else None)
        if name == "ZFC6":
            if inst not in self.replacement:
                raise UnknownAxiomError(f"unknown replacement instance in {ident!r}")
            return Axiom(ident, INTERNAL, self.replacement[inst].formula(), "replacement")
        if inst is not None:
            raise UnknownAxiomError(f"{name} is not a schema: {ident!r}")

        class_axioms = {"A1": (A1, None), "A3": (A3, "pairing"), "A4": (A4, "product"),
                        "A10": (A10, "union"), "A11": (A11, "powerset")}
        if name in class_axioms:
            text, claim = class_axioms[name]
            f = parse_formula(text, closed=True)
            if internal:
                return Axiom(ident, INTERNAL, f, claim)
            return Axiom(ident, CLASS, f)
        if internal:
            raise UnknownAxiomError(f"no internal form of {name}: {ident!r}")
        if name == "A5":
            return Axiom(ident, STRUCTURAL, note="each in_V is a relation on V")
        if name == "A6":
            return Axiom(ident, INTERNAL, parse_formula(A6, closed=True))
        if name == "A7":
            return Axiom(ident, STRUCTURAL, note="a standard transitive universe exists")
        if name == "A8":
            return Axiom(ident, SKIPPED, note="non-computable: consistency quantification")
        if name == "A9":
            return Axiom(ident, SKIPPED, note="no construction given")
        if name in ("A12", "A12*"):
            parts = ["int:A1", *self._sep_ids("int:A2"), "int:A3", "int:A4", "int:A10"]
            if name == "A12*":
                parts.append("int:A11")
            return Axiom(ident, CONJUNCTION, parts=tuple(parts))
        if name in ZFC:
            claim = {"ZFC4": "pairing", "ZFC5": "union", "ZFC8": "powerset"}.get(name)
            return Axiom(ident, INTERNAL, parse_formula(ZFC[name], closed=True), claim)
        raise UnknownAxiomError(f"unknown axiom id {ident!r}")
