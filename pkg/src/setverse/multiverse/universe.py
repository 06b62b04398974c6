"""Universes ``(V, in_V)`` and ambient class models."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from ..config import Guards, default_guards
from ..hf import HFSet, parse_literal, rank_fragment
from ..logic.evaluate import FiniteDomain, RankDomain, Structure, TRUE_MEMBERSHIP


class Universe:
    """A finite carrier with a membership relation on it.

    ``relation=None`` means the universe is standard by construction: its
    membership is actual membership restricted to the carrier.
    """

    def __init__(self, name: str, carrier: HFSet | Iterable[HFSet],
                 relation: Iterable[tuple[HFSet, HFSet]] | None = None):
        self.name = name
        self.carrier = carrier if isinstance(carrier, HFSet) else HFSet(carrier)
        if relation is None:
            self._pairs = None
        else:
            pairs = frozenset(relation)
            for x, y in pairs:
                if x not in self.carrier or y not in self.carrier:
                    raise ValueError(f"membership pair ({x}, {y}) leaves the carrier of {name}")
            self._pairs = pairs
            self._index: dict[HFSet, list[HFSet]] = {}
            for x, y in sorted(pairs):
                self._index.setdefault(y, []).append(x)

    @property
    def elements(self) -> tuple[HFSet, ...]:
        return self.carrier.members

    @property
    def membership(self) -> frozenset[tuple[HFSet, HFSet]]:
        if self._pairs is not None:
            return self._pairs
        return frozenset((x, y) for y in self.carrier for x in y if x in self.carrier)

    # Relation protocol, used both by internal atoms and universe-as-structure
    def holds(self, x, y) -> bool:
        if x not in self.carrier or y not in self.carrier:
            return False
        if self._pairs is None:
            return x in y
        return (x, y) in self._pairs

    def members(self, y, domain=None):
        """Internal members of ``y`` (restricted to ``domain`` when given)."""
        if not isinstance(y, HFSet) or y not in self.carrier:
            return []
        if self._pairs is None:
            found = [m for m in y if m in self.carrier]
        else:
            found = self._index.get(y, [])
        if domain is None:
            return found
        return [m for m in found if m in domain]

    @cached_property
    def is_standard(self) -> bool:
        if self._pairs is None:
            return True
        return all((x in y) == ((x, y) in self._pairs) for x in self.carrier for y in self.carrier)

    @cached_property
    def is_transitive(self) -> bool:
        return all(m in self.carrier for y in self.carrier for m in y)

    @cached_property
    def is_complete(self) -> bool:
        if not self.is_transitive:
            return False
        # closure under removing one member implies closure under all subsets
        return all(
            HFSet(n for n in y if n is not m) in self.carrier for y in self.carrier for m in y
        )

    def structure(self) -> Structure:
        """The universe as a structure in its own right."""
        return Structure(FiniteDomain(self.elements), self, {}, {})

    def __repr__(self) -> str:
        return f"Universe({self.name!r}, {len(self.carrier)} elements)"

    def __eq__(self, other):
        return (isinstance(other, Universe) and self.name == other.name
                and self.carrier is other.carrier and self.membership == other.membership)

    def __hash__(self):
        return hash((self.name, self.carrier))


def universe_properties(u: Universe) -> dict[str, bool]:
    return {"standard": u.is_standard, "transitive": u.is_transitive, "complete": u.is_complete}


def build_rank_fragment(k: int, name: str = "V", guards: Guards | None = None) -> Universe:
    """The standard universe of all sets of rank < ``k``."""
    guards = guards or default_guards()
    return Universe(name, HFSet(rank_fragment(k, guards.fragment_rank)))


@dataclass
class AmbientModel:
    """A bounded-rank class world together with the multiverse constant."""

    name: str
    class_world: RankDomain
    multiverse: tuple[Universe, ...]

    def __post_init__(self):
        self.multiverse = tuple(self.multiverse)
        for u in self.multiverse:
            for x in u.carrier:
                if x not in self.class_world:
                    raise ValueError(f"universe {u.name} has {x} outside the class world")

    @property
    def rank_bound(self) -> int:
        return self.class_world.bound

    def universe(self, name: str) -> Universe:
        for u in self.multiverse:
            if u.name == name:
                return u
        raise KeyError(f"no universe named {name!r} in model {self.name}")

    def structure(self) -> Structure:
        """The ambient world: true membership, universe constants and relations."""
        consts = {u.name: u.carrier for u in self.multiverse}
        consts["M"] = HFSet(u.carrier for u in self.multiverse)
        rels = {u.name: u for u in self.multiverse}
        return Structure(self.class_world, TRUE_MEMBERSHIP, consts, rels)


WEAK_CARRIER_TEXT = "{0, 1, 2, 3, {3}}"


def build_weak_model(overflow_rank: int = 7, guards: Guards | None = None) -> AmbientModel:
    """The one-universe model ``M = {V}``, ``V = {0, 1, 2, 3, {3}}``."""
    guards = guards or default_guards()
    v = Universe("V", parse_literal(WEAK_CARRIER_TEXT))
    return AmbientModel("weak", RankDomain(overflow_rank, guards.fragment_rank), (v,))
