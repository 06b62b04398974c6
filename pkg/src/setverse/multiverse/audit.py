"""Per-axiom audits of an ambient model and its universes."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from ..config import Guards, default_guards
from ..errors import GuardExceeded
from ..hf import HFSet, kuratowski_pair, powerset
from ..logic import (
    And,
    Equality,
    Exists,
    ForAll,
    Formula,
    Iff,
    Lit,
    Membership,
    Or,
    PairEq,
    Structure,
    Subset,
    Var,
    evaluate,
    relativize,
    strip_block,
    unfold_defined_terms,
)
from ..logic.evaluate import EvalResult, FiniteDomain, RankDomain, TRUE_MEMBERSHIP, outer_block
from ..logic.formula import free_vars
from .catalogue import (
    CLAIMS,
    CLASS,
    CONJUNCTION,
    INTERNAL,
    SKIPPED,
    STRUCTURAL,
    Axiom,
    Catalogue,
)
from .universe import AmbientModel, Universe

READING = "unfold-before-relativize"

HOLDS = "holds"
OVERFLOW = "holds_with_overflow"
FAILS = "fails"
SKIP = "skipped"


# -- modeling -----------------------------------------------------------------

def _ambient_for(u: Universe, ambient: AmbientModel | None) -> Structure:
    if ambient is not None:
        return ambient.structure()
    bound = 1 + max((x.rank for x in u.carrier), default=-1)
    return Structure(RankDomain(bound), TRUE_MEMBERSHIP, {u.name: u.carrier}, {u.name: u})


def internal_form(u: Universe, f: Formula) -> Formula:
    return relativize(unfold_defined_terms(f), u.name, "internal")


def universe_models(
    u: Universe,
    f: Formula,
    assignment: Mapping[str, Any] | None = None,
    *,
    ambient: AmbientModel | None = None,
    max_examples: int = 1,
    budget: int | None = None,
) -> EvalResult:
    """Decide ``u |= f``: unfold defined terms, relativize with ``in_u``, evaluate."""
    return evaluate(_ambient_for(u, ambient), internal_form(u, f), assignment,
                    max_examples=max_examples, budget=budget)


def replay(u: Universe, f: Formula, assignment: Mapping[str, Any],
           ambient: AmbientModel | None = None) -> bool:
    """Evaluate the matrix below the outermost block at ``assignment``.

    The block variables must lie in ``u``.  A witness replays to True, a
    counterexample to False.
    """
    g = internal_form(u, f)
    _, block, _ = outer_block(g)
    free = set(free_vars(f))
    for var, _, _ in block:
        if var not in free and assignment.get(var) not in u.carrier:
            raise ValueError(f"{var} = {assignment.get(var)} is not an element of {u.name}")
    return evaluate(_ambient_for(u, ambient), strip_block(g), assignment).value


# -- report types -------------------------------------------------------------

@dataclass
class AuditEntry:
    id: str
    level: str
    verdict: str
    witness: dict | None = None
    counterexample: dict | None = None
    counterexamples: list = field(default_factory=list)
    overflow: int | None = None
    universe: str | None = None
    claim: str | None = None
    note: str = ""
    parts: dict[str, str] = field(default_factory=dict)
    millis: float = 0.0

    @property
    def holds(self) -> bool:
        return self.verdict in (HOLDS, OVERFLOW)


@dataclass
class AuditReport:
    model: str
    entries: list[AuditEntry]
    overflow_budget: int
    reading: str = READING

    def entry(self, ident: str) -> AuditEntry:
        for e in self.entries:
            if e.id == ident:
                return e
        raise KeyError(ident)

    def divergence(self) -> list[dict]:
        """Claims of the weak-model lemma that the computed verdicts contradict.

        A schema (bracketed instance ids) is modeled only when every instance
        holds.  A standalone axiom that holds contradicts the claim on its own,
        even when a sibling formulation of the same principle fails.
        """
        rows = []
        for claim in CLAIMS:
            tagged = [e for e in self.entries if e.claim == claim and e.verdict != SKIP]
            if not tagged:
                continue
            models = all(e.holds for e in tagged)
            holding = [e.id for e in tagged if e.holds]
            standalone = [i for i in holding if "[" not in i]
            rows.append({
                "claim": claim,
                "entries": [e.id for e in tagged],
                "holding": holding,
                "models": models,
                "diverges": models or bool(standalone),
            })
        return rows


# -- class level --------------------------------------------------------------

def _comprehension(matrix: Formula):
    """Match ``exists Z. forall A. (A in Z <-> psi)`` (either side), Z not in psi."""
    if not (isinstance(matrix, Exists) and matrix.bound is None):
        return None
    inner = matrix.body
    if not (isinstance(inner, ForAll) and inner.bound is None and isinstance(inner.body, Iff)):
        return None
    z, a = matrix.var, inner.var
    target = Membership(Var(a), Var(z))
    left, right = inner.body.left, inner.body.right
    if left == target:
        psi = right
    elif right == target:
        psi = left
    else:
        return None
    if z in free_vars(psi):
        return None
    return z, a, psi


def _support(f: Formula, a: str, env: dict, structure: Structure) -> set | None:
    """Finite over-approximation of ``{A : f}`` read off the syntax, or None."""

    def value(t):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Lit):
            return t.value
        return structure.constants[t.name]

    target = Var(a)

    def is_a(t) -> bool:
        return t == target

    if isinstance(f, Membership) and f.rel is None and is_a(f.left) and not is_a(f.right):
        v = value(f.right)
        return set(v) if isinstance(v, HFSet) else set()
    if isinstance(f, Equality):
        if is_a(f.left) and not is_a(f.right):
            return {value(f.right)}
        if is_a(f.right) and not is_a(f.left):
            return {value(f.left)}
        return None
    if isinstance(f, Subset) and is_a(f.left) and not is_a(f.right):
        return set(powerset(value(f.right)))
    if isinstance(f, PairEq) and is_a(f.pair) and not is_a(f.first) and not is_a(f.second):
        return {kuratowski_pair(value(f.first), value(f.second))}
    if isinstance(f, And):
        left = _support(f.left, a, env, structure)
        right = _support(f.right, a, env, structure)
        if left is None or right is None:
            return right if left is None else left
        return left & right
    if isinstance(f, Or):
        left = _support(f.left, a, env, structure)
        right = _support(f.right, a, env, structure) if left is not None else None
        return None if right is None else left | right
    if isinstance(f, Exists) and f.var != a:
        if f.bound is not None:
            b = value(f.bound)
            candidates = list(b) if isinstance(b, HFSet) else []
        else:
            candidates = list(structure.domain)
        out: set = set()
        saved = env.get(f.var)
        try:
            for c in candidates:
                env[f.var] = c
                part = _support(f.body, a, env, structure)
                if part is None:
                    return None
                out |= part
        finally:
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
        return out
    return None


def _overflow_witness(matrix: Formula, env: dict, structure: Structure):
    """Witness for a comprehension-shaped existence claim outside the world."""
    shape = _comprehension(matrix)
    if shape is None:
        return None, "existence claim is not comprehension-shaped"
    z, a, psi = shape
    env = dict(env)
    support = _support(psi, a, env, structure)
    if support is None:
        return None, "no finite support for the comprehension"
    extension = []
    for cand in sorted(support):
        if evaluate(structure, psi, {**env, a: cand}).value:
            extension.append(cand)
    witness = HFSet(extension)
    # replay the matrix over the world enlarged by the candidates
    domain = FiniteDomain(list(structure.domain) + [c for c in sorted(support)
                                                    if c not in structure.domain])
    check = Structure(domain, structure.membership, structure.constants, structure.relations)
    if not evaluate(check, matrix.body, {**env, z: witness}).value:
        return None, "overflow candidate does not replay"
    return witness, ""


def _audit_class(ax: Axiom, m: AmbientModel, budget: int, guards: Guards) -> AuditEntry:
    world = m.class_world
    if not world.materialized:
        return AuditEntry(ax.id, CLASS, SKIP,
                          note=f"class world rank < {world.bound} is not materialized "
                               f"(limit rank < {world.limit})")
    structure = m.structure()
    kind, block, matrix = outer_block(ax.formula)
    outer = len(block) if kind is ForAll else 0
    if len(world) ** max(outer, 1) > guards.class_assignments:
        return AuditEntry(ax.id, CLASS, SKIP, note="class assignment guard exceeded")

    res = evaluate(structure, ax.formula, max_examples=guards.class_assignments,
                   budget=guards.eval_budget)
    if res.value:
        return AuditEntry(ax.id, CLASS, HOLDS, witness=res.witness)
    top = world.bound - 1
    if kind is not ForAll:
        witness, why = _overflow_witness(ax.formula, {}, structure)
        if witness is None:
            return AuditEntry(ax.id, CLASS, FAILS, note=f"no witness in the class world; {why}")
        over = witness.rank - top
        if over > budget:
            return AuditEntry(ax.id, CLASS, FAILS, overflow=over,
                              note=f"needs overflow {over} > budget {budget}")
        return AuditEntry(ax.id, CLASS, OVERFLOW, witness={ax.formula.var: witness}, overflow=over)

    worst = None
    for env in res.counterexamples:
        witness, why = _overflow_witness(matrix, env, structure)
        if witness is None:
            return AuditEntry(ax.id, CLASS, FAILS, counterexample=env,
                              counterexamples=res.counterexamples[:8], note=why)
        over = witness.rank - top
        if over > budget:
            return AuditEntry(ax.id, CLASS, FAILS, counterexample=env,
                              counterexamples=res.counterexamples[:8], overflow=over,
                              note=f"needs overflow {over} > budget {budget}")
        if worst is None or over > worst[0]:
            worst = (over, env, witness)
    over, env, witness = worst
    z = matrix.var
    return AuditEntry(ax.id, CLASS, OVERFLOW, witness={**env, z: witness}, overflow=over,
                      note=f"{len(res.counterexamples)} assignment(s) need witnesses above the world")


# -- internal -----------------------------------------------------------------

def _audit_internal(ax: Axiom, m: AmbientModel, guards: Guards, max_examples: int) -> AuditEntry:
    witnesses = {}
    for u in m.multiverse:
        try:
            res = universe_models(u, ax.formula, ambient=m, max_examples=max_examples,
                                  budget=guards.eval_budget)
        except GuardExceeded as exc:
            return AuditEntry(ax.id, INTERNAL, SKIP, universe=u.name, claim=ax.claim,
                              note=str(exc))
        if not res.value:
            note = "" if res.counterexamples else "no witness in the universe"
            return AuditEntry(ax.id, INTERNAL, FAILS, universe=u.name, claim=ax.claim,
                              counterexample=res.counterexample,
                              counterexamples=res.counterexamples, note=note)
        if res.witness is not None:
            witnesses[u.name] = res.witness
    witness = None
    if len(witnesses) == 1:
        witness = next(iter(witnesses.values()))
    elif witnesses:
        witness = witnesses
    universe = m.multiverse[0].name if len(m.multiverse) == 1 else None
    return AuditEntry(ax.id, INTERNAL, HOLDS, witness=witness, universe=universe, claim=ax.claim)


def _audit_structural(ax: Axiom, m: AmbientModel) -> AuditEntry:
    if ax.id == "A5":
        for u in m.multiverse:
            for x, y in u.membership:
                if x not in u.carrier or y not in u.carrier:
                    return AuditEntry(ax.id, STRUCTURAL, FAILS, universe=u.name,
                                      counterexample={"pair": (x, y)})
        return AuditEntry(ax.id, STRUCTURAL, HOLDS, note=ax.note)
    # A7
    for u in m.multiverse:
        if u.is_standard and u.is_transitive:
            return AuditEntry(ax.id, STRUCTURAL, HOLDS, witness={"V": u.name},
                              note=ax.note)
    return AuditEntry(ax.id, STRUCTURAL, FAILS, note="no standard transitive universe")


def audit_axioms(
    m: AmbientModel,
    axioms: Sequence[str] | str,
    overflow_budget: int = 3,
    *,
    catalogue: Catalogue | None = None,
    guards: Guards | None = None,
    max_examples: int = 64,
) -> AuditReport:
    """Audit each requested axiom or group against ``m``."""
    catalogue = catalogue or Catalogue()
    guards = guards or default_guards()
    resolved = catalogue.resolve(axioms)  # raises before any evaluation
    entries = []
    cache: dict[str, AuditEntry] = {}

    def run(ax: Axiom) -> AuditEntry:
        if ax.id in cache:
            return cache[ax.id]
        start = time.perf_counter()
        if ax.level == CLASS:
            entry = _audit_class(ax, m, overflow_budget, guards)
        elif ax.level == INTERNAL:
            entry = _audit_internal(ax, m, guards, max_examples)
        elif ax.level == STRUCTURAL:
            entry = _audit_structural(ax, m)
        elif ax.level == SKIPPED:
            entry = AuditEntry(ax.id, SKIPPED, SKIP, note=ax.note)
        else:
            parts = [run(catalogue.entry(p)) for p in ax.parts]
            failed = [p for p in parts if p.verdict == FAILS]
            skipped = [p for p in parts if p.verdict == SKIP]
            verdict = FAILS if failed else SKIP if skipped else HOLDS
            first = failed[0] if failed else None
            entry = AuditEntry(
                ax.id, CONJUNCTION, verdict,
                counterexample=first.counterexample if first else None,
                universe=first.universe if first else None,
                parts={p.id: p.verdict for p in parts},
                note=f"first failing conjunct {first.id}" if first else "",
            )
        entry.millis = (time.perf_counter() - start) * 1000.0
        cache[ax.id] = entry
        return entry

    for ax in resolved:
        entries.append(run(ax))
    return AuditReport(m.name, entries, overflow_budget)
