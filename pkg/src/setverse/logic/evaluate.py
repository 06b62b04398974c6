"""Brute-force Tarskian satisfaction over finite structures."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Mapping, Protocol

from ..errors import GuardExceeded, UnboundVariableError, UnknownConstantError
from ..hf import HFSet, kuratowski_pair, rank_fragment
from .formula import (
    And,
    Const,
    Equality,
    Exists,
    ForAll,
    Formula,
    Iff,
    Implies,
    Lit,
    Membership,
    Not,
    Or,
    PairEq,
    Subset,
    Var,
    constants,
    free_vars,
)


# -- domains and relations ----------------------------------------------------

class FiniteDomain:
    def __init__(self, elements: Iterable[Any]):
        self.elements = tuple(elements)
        self._set = frozenset(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


class RankDomain:
    """All hereditarily finite sets of rank below ``bound``.

    Membership tests are always available; enumeration only up to the
    materialization limit.
    """

    def __init__(self, bound: int, limit: int = 5):
        self.bound = bound
        self.limit = limit

    def __contains__(self, x) -> bool:
        return isinstance(x, HFSet) and x.rank < self.bound

    def __iter__(self):
        return iter(rank_fragment(self.bound, self.limit))

    def __len__(self) -> int:
        return len(rank_fragment(self.bound, self.limit))

    @property
    def materialized(self) -> bool:
        return self.bound <= self.limit

    def __repr__(self) -> str:
        return f"RankDomain(rank < {self.bound})"


class Relation(Protocol):
    def holds(self, x, y) -> bool: ...

    def members(self, y, domain) -> Iterable[Any]: ...


class TrueMembership:
    """Actual membership between hereditarily finite sets."""

    def holds(self, x, y) -> bool:
        return isinstance(y, HFSet) and x in y

    def members(self, y, domain):
        if not isinstance(y, HFSet):
            return ()
        return [m for m in y if m in domain]


TRUE_MEMBERSHIP = TrueMembership()


class PairRelation:
    """A membership relation given by an explicit set of ``(x, y)`` pairs."""

    def __init__(self, pairs: Iterable[tuple[Any, Any]]):
        self.pairs = frozenset(pairs)
        self._index: dict[Any, list] = {}
        for x, y in self.pairs:
            self._index.setdefault(y, []).append(x)

    def holds(self, x, y) -> bool:
        return (x, y) in self.pairs

    def members(self, y, domain):
        found = set(self._index.get(y, ()))
        return [d for d in domain if d in found]


@dataclass
class Structure:
    """Carrier, ambient membership, constant interpretation, named relations."""

    domain: Any
    membership: Any = TRUE_MEMBERSHIP
    constants: Mapping[str, Any] = field(default_factory=dict)
    relations: Mapping[str, Any] = field(default_factory=dict)

    @classmethod
    def finite(cls, elements, pairs, constants=None, relations=None) -> "Structure":
        return cls(FiniteDomain(elements), PairRelation(pairs), dict(constants or {}),
                   dict(relations or {}))


# -- results ------------------------------------------------------------------

@dataclass
class EvalResult:
    value: bool
    block: tuple[str, ...] = ()
    witness: dict[str, Any] | None = None
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    visited: int = 0

    @property
    def counterexample(self) -> dict[str, Any] | None:
        return self.counterexamples[0] if self.counterexamples else None

    def __bool__(self) -> bool:
        return self.value


_MISSING = object()


class _Evaluator:
    def __init__(self, structure: Structure, budget: int | None):
        self.s = structure
        self.budget = budget
        self.visited = 0

    def term(self, t, env):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise UnboundVariableError(f"unbound variable {t.name}") from None
        if isinstance(t, Const):
            try:
                return self.s.constants[t.name]
            except KeyError:
                raise UnknownConstantError(f"unknown constant {t.name}") from None
        if isinstance(t, Lit):
            return t.value
        raise TypeError(f"not a term: {t!r}")

    def relation(self, name):
        if name is None:
            return self.s.membership
        try:
            return self.s.relations[name]
        except KeyError:
            raise UnknownConstantError(f"no membership relation for universe {name}") from None

    def split(self, q):
        """Return ``(guard_term, guard_rel, body)`` for guarded quantifiers."""
        if q.bound is not None:
            return q.bound, None, q.body
        body = q.body
        connective = Implies if isinstance(q, ForAll) else And
        if isinstance(body, connective):
            g = body.left
            if (
                isinstance(g, Membership)
                and g.left == Var(q.var)
                and g.right != Var(q.var)
            ):
                return g.right, g.rel, body.right
        return None, None, body

    def candidates(self, guard, rel, env):
        if guard is None:
            return self.s.domain
        return self.relation(rel).members(self.term(guard, env), self.s.domain)

    def tick(self):
        self.visited += 1
        if self.budget is not None and self.visited > self.budget:
            raise GuardExceeded("evaluation", f"> {self.budget} assignments", self.budget)

    def truth(self, f: Formula, env: dict) -> bool:
        if isinstance(f, Membership):
            return self.relation(f.rel).holds(self.term(f.left, env), self.term(f.right, env))
        if isinstance(f, Equality):
            return self.term(f.left, env) == self.term(f.right, env)
        if isinstance(f, Not):
            return not self.truth(f.body, env)
        if isinstance(f, And):
            return self.truth(f.left, env) and self.truth(f.right, env)
        if isinstance(f, Or):
            return self.truth(f.left, env) or self.truth(f.right, env)
        if isinstance(f, Implies):
            return (not self.truth(f.left, env)) or self.truth(f.right, env)
        if isinstance(f, Iff):
            return self.truth(f.left, env) == self.truth(f.right, env)
        if isinstance(f, (ForAll, Exists)):
            guard, rel, body = self.split(f)
            want = isinstance(f, Exists)
            var = f.var
            saved = env.get(var, _MISSING)
            try:
                for v in self.candidates(guard, rel, env):
                    self.tick()
                    env[var] = v
                    if self.truth(body, env) == want:
                        return want
                return not want
            finally:
                if saved is _MISSING:
                    env.pop(var, None)
                else:
                    env[var] = saved
        if isinstance(f, Subset):
            # native reading over the structure's domain
            left, right = self.term(f.left, env), self.term(f.right, env)
            mem = self.s.membership
            return all(mem.holds(z, right) for z in mem.members(left, self.s.domain))
        if isinstance(f, PairEq):
            if not isinstance(self.s.membership, TrueMembership):
                raise ValueError("pair sugar is only evaluated natively over HF structures")
            return self.term(f.pair, env) == kuratowski_pair(
                self.term(f.first, env), self.term(f.second, env)
            )
        raise TypeError(f"not a formula: {f!r}")

    def block_assignments(self, block, i, env) -> Iterator[None]:
        if i == len(block):
            yield None
            return
        var, guard, rel = block[i]
        saved = env.get(var, _MISSING)
        try:
            for v in list(self.candidates(guard, rel, env)):
                self.tick()
                env[var] = v
                yield from self.block_assignments(block, i + 1, env)
        finally:
            if saved is _MISSING:
                env.pop(var, None)
            else:
                env[var] = saved


def outer_block(f: Formula) -> tuple[type | None, list[tuple[str, Any, Any]], Formula]:
    """Peel the leading run of same-kind (possibly guarded) quantifiers."""
    if not isinstance(f, (ForAll, Exists)):
        return None, [], f
    kind = type(f)
    ev = _Evaluator(Structure(domain=()), None)
    block = []
    g = f
    while isinstance(g, kind):
        guard, rel, body = ev.split(g)
        block.append((g.var, guard, rel))
        g = body
    return kind, block, g


def evaluate(
    structure: Structure,
    f: Formula,
    assignment: Mapping[str, Any] | None = None,
    *,
    max_examples: int = 1,
    budget: int | None = None,
) -> EvalResult:
    """Decide ``structure |= f[assignment]`` by exhaustive quantifier expansion.

    For the outermost quantifier block the result carries a witness (true
    existential block) or up to ``max_examples`` counterexamples (false
    universal block), in canonical enumeration order.
    """
    env = dict(assignment or {})
    missing = [v for v in free_vars(f) if v not in env]
    if missing:
        raise UnboundVariableError(f"unbound variables: {', '.join(missing)}")
    unknown = sorted(c for c in constants(f) if c not in structure.constants)
    if unknown:
        raise UnknownConstantError(f"unknown constants: {', '.join(unknown)}")

    ev = _Evaluator(structure, budget)
    kind, block, matrix = outer_block(f)
    if kind is None:
        return EvalResult(ev.truth(f, env), visited=ev.visited)

    names = tuple(var for var, _, _ in block)
    if kind is Exists:
        for _ in ev.block_assignments(block, 0, env):
            if ev.truth(matrix, env):
                witness = {n: env[n] for n in names}
                return EvalResult(True, names, witness=witness, visited=ev.visited)
        return EvalResult(False, names, visited=ev.visited)

    failures = []
    for _ in ev.block_assignments(block, 0, env):
        if not ev.truth(matrix, env):
            failures.append({n: env[n] for n in names})
            if len(failures) >= max_examples:
                break
    return EvalResult(not failures, names, counterexamples=failures, visited=ev.visited)


def strip_block(f: Formula) -> Formula:
    """The matrix below the outermost quantifier block (guards removed)."""
    return outer_block(f)[2]
