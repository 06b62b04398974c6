"""Substructures and depth-bounded elementary equivalence of universes.

Full elementarity is out of reach by enumeration; everything here is
relative to a quantifier-rank bound and reports say so.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .config import Guards, default_guards
from .errors import GuardExceeded
from .logic import (
    Equality,
    Exists,
    ForAll,
    Formula,
    Membership,
    Not,
    Var,
    conj,
    disj,
    evaluate,
    free_vars,
    to_text,
    unfold_defined_terms,
)
from .multiverse.universe import Universe


def is_substructure(u: Universe, w: Universe) -> bool:
    """``u`` sits inside ``w`` and inherits exactly its membership."""
    if not all(x in w.carrier for x in u.carrier):
        return False
    inherited = {(x, y) for x, y in w.membership if x in u.carrier and y in u.carrier}
    return set(u.membership) == inherited


class _Side:
    """Index-based view of a universe for the game."""

    def __init__(self, u: Universe):
        self.elements = u.elements
        index = {x: i for i, x in enumerate(self.elements)}
        self.rel = frozenset((index[x], index[y]) for x, y in u.membership)
        self.n = len(self.elements)


def _atoms(vars_: int):
    """Atomic formulas over v1..vk that mention the newest variable."""
    new = f"v{vars_}"
    out = [Membership(Var(new), Var(new))]
    for i in range(1, vars_):
        old = f"v{i}"
        out += [Equality(Var(new), Var(old)), Membership(Var(new), Var(old)),
                Membership(Var(old), Var(new))]
    return out


class EFGame:
    """The Ehrenfeucht-Fraisse game on two membership structures.

    Positions are sequences of played pairs; Duplicator's wins are memoized
    on the set of pairs and the remaining rounds.
    """

    def __init__(self, a: Universe, b: Universe):
        self.a, self.b = _Side(a), _Side(b)
        self._memo: dict = {}

    def _consistent(self, pairs, x, y) -> bool:
        ra, rb = self.a.rel, self.b.rel
        if ((x, x) in ra) != ((y, y) in rb):
            return False
        for p, q in pairs:
            if (p == x) != (q == y):
                return False
            if ((x, p) in ra) != ((y, q) in rb) or ((p, x) in ra) != ((q, y) in rb):
                return False
        return True

    def duplicator_wins(self, pairs: tuple = (), k: int = 0) -> bool:
        if k == 0:
            return True
        key = (frozenset(pairs), k)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        result = self._spoiler_move(pairs, k) is None
        self._memo[key] = result
        return result

    def _responses(self, pairs, side, x):
        other = self.b if side == 0 else self.a
        for y in range(other.n):
            pa, pb = (x, y) if side == 0 else (y, x)
            yield y, pa, pb, self._consistent(pairs, pa, pb)

    def _spoiler_move(self, pairs, k):
        """A move that beats every response, or None."""
        played = ({p for p, _ in pairs}, {q for _, q in pairs})
        for side, struct in ((0, self.a), (1, self.b)):
            for x in range(struct.n):
                if x in played[side]:
                    continue  # answered by the matching element, never helps Spoiler
                if not any(ok and self.duplicator_wins(pairs + ((pa, pb),), k - 1)
                           for _, pa, pb, ok in self._responses(pairs, side, x)):
                    return side, x
        return None

    def distinguisher(self, pairs: tuple, k: int) -> Formula | None:
        """Formula in v1..vn (n = len(pairs)) true on the A side, false on B."""
        move = self._spoiler_move(pairs, k) if k > 0 else None
        if move is None:
            return None
        side, x = move
        var = f"v{len(pairs) + 1}"
        parts, seen = [], set()
        for _, pa, pb, ok in self._responses(pairs, side, x):
            ext = pairs + ((pa, pb),)
            phi = self._atomic_difference(ext) if not ok else self.distinguisher(ext, k - 1)
            text = to_text(phi)
            if text not in seen:
                seen.add(text)
                parts.append(phi)
        if side == 0:
            # x in A satisfies every part; each response in B falsifies one
            body = conj(*parts) if parts else Equality(Var(var), Var(var))
            return Exists(var, body)
        # every element of A satisfies some part; x in B satisfies none
        body = disj(*parts) if parts else Not(Equality(Var(var), Var(var)))
        return ForAll(var, body)

    def _atomic_difference(self, pairs) -> Formula:
        n = len(pairs)
        env_a = {f"v{i + 1}": p for i, (p, _) in enumerate(pairs)}
        env_b = {f"v{i + 1}": q for i, (_, q) in enumerate(pairs)}
        for atom in _atoms(n):
            ta = self._atom_truth(atom, env_a, self.a.rel)
            tb = self._atom_truth(atom, env_b, self.b.rel)
            if ta != tb:
                return atom if ta else Not(atom)
        raise AssertionError("no atomic difference for an inconsistent extension")

    @staticmethod
    def _atom_truth(atom, env, rel) -> bool:
        left, right = env[atom.left.name], env[atom.right.name]
        if isinstance(atom, Equality):
            return left == right
        return (left, right) in rel


def _check_depth(depth: int, guards: Guards | None) -> None:
    guards = guards or default_guards()
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > guards.ef_depth:
        raise GuardExceeded("ef depth", depth, guards.ef_depth)


def ef_equivalent(a: Universe, b: Universe, depth: int, guards: Guards | None = None) -> bool:
    """Whether Duplicator survives ``depth`` rounds; i.e. a and b agree on rank <= depth."""
    _check_depth(depth, guards)
    return EFGame(a, b).duplicator_wins((), depth)


def distinguishing_formula(a: Universe, b: Universe, depth: int,
                           guards: Guards | None = None) -> Formula | None:
    """A sentence of quantifier rank <= depth true in ``a`` and false in ``b``."""
    _check_depth(depth, guards)
    return EFGame(a, b).distinguisher((), depth)


# -- formula lists ------------------------------------------------------------

@dataclass
class Agreement:
    formula: str
    parameters: dict
    left: bool
    right: bool

    @property
    def agree(self) -> bool:
        return self.left == self.right


@dataclass
class ElementaryReport:
    rows: list[Agreement] = field(default_factory=list)
    capped: bool = False
    note: str = "checked only the listed formulas and parameter tuples"

    @property
    def passed(self) -> bool:
        return all(r.agree for r in self.rows)

    @property
    def disagreements(self) -> list[Agreement]:
        return [r for r in self.rows if not r.agree]


def elementary_for(u: Universe, w: Universe, formulas: Sequence[Formula],
                   max_tuples: int = 4096) -> ElementaryReport:
    """Compare ``u`` and ``w`` on each formula at parameter tuples from ``u``."""
    if not is_substructure(u, w):
        raise ValueError(f"{u.name} is not a substructure of {w.name}")
    report = ElementaryReport()
    su, sw = u.structure(), w.structure()
    for f in formulas:
        core = unfold_defined_terms(f)
        names = free_vars(core)
        tuples = itertools.product(u.elements, repeat=len(names))
        for i, values in enumerate(tuples):
            if i >= max_tuples:
                report.capped = True
                break
            env = dict(zip(names, values))
            report.rows.append(Agreement(
                to_text(f), env, evaluate(su, core, env).value, evaluate(sw, core, env).value,
            ))
    return report


__all__ = [
    "EFGame",
    "ElementaryReport",
    "Agreement",
    "is_substructure",
    "ef_equivalent",
    "distinguishing_formula",
    "elementary_for",
]
