"""Good, pseudo-good, esoteric and strange classes over a finite model."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .config import Guards, default_guards
from .errors import GuardExceeded
from .hf import HFSet, union_all
from .multiverse.universe import AmbientModel, Universe


def in_iterated_powerclass(x: HFSet, base: Iterable[HFSet] | HFSet, n: int,
                           guards: Guards | None = None) -> bool:
    """``x in P^n(base)`` by recursion on members; nothing is materialized."""
    guards = guards or default_guards()
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > guards.powerclass_depth:
        raise GuardExceeded("powerclass depth", n, guards.powerclass_depth)
    base = base if isinstance(base, HFSet) else HFSet(base)
    return _member(x, base, n)


@lru_cache(maxsize=1 << 16)
def _member(x: HFSet, base: HFSet, n: int) -> bool:
    if n == 0:
        return x in base
    return all(_member(y, base, n - 1) for y in x)


def _least(x: HFSet, base: HFSet, guards: Guards) -> int | None:
    # membership is not monotone in n, so scan upward and stop at the first hit
    for n in range(guards.powerclass_depth + 1):
        if _member(x, base, n):
            return n
    return None


def good_rank(x: HFSet, v: Universe, guards: Guards | None = None) -> int | None:
    """Least ``n`` with ``x in P^n(V)``, or None within the depth guard."""
    return _least(x, v.carrier, guards or default_guards())


def pseudo_good_rank(x: HFSet, m: AmbientModel, guards: Guards | None = None) -> int | None:
    """Rank relative to the union of the multiverse."""
    return _least(x, union_all(_multiverse_set(m)), guards or default_guards())


def esoteric_rank(x: HFSet, m: AmbientModel, guards: Guards | None = None) -> int | None:
    """Rank relative to the multiverse taken as a set of carriers."""
    return _least(x, _multiverse_set(m), guards or default_guards())


def _multiverse_set(m: AmbientModel) -> HFSet:
    return HFSet(u.carrier for u in m.multiverse)


@dataclass
class Classification:
    good: dict[str, int | None] = field(default_factory=dict)
    pseudo_good: int | None = None
    esoteric: int | None = None
    guard: int = 0

    @property
    def kind(self) -> str:
        if any(r is not None for r in self.good.values()):
            return "good"
        if self.pseudo_good is not None:
            return "pseudo_good"
        if self.esoteric is not None:
            return "esoteric"
        return "strange_within_bounds"

    def as_dict(self) -> dict:
        return {"kind": self.kind, "good": dict(self.good), "pseudoGood": self.pseudo_good,
                "esoteric": self.esoteric, "guard": self.guard}


def classify(x: HFSet, m: AmbientModel, guards: Guards | None = None) -> Classification:
    guards = guards or default_guards()
    return Classification(
        good={u.name: good_rank(x, u, guards) for u in m.multiverse},
        pseudo_good=pseudo_good_rank(x, m, guards),
        esoteric=esoteric_rank(x, m, guards),
        guard=guards.powerclass_depth,
    )
