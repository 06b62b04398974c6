"""Hereditarily finite sets in canonical form.

Every :class:`HFSet` is interned: structurally equal sets are the same
object, so equality is identity and hashing is cheap.  Members are kept in a
fixed total order (rank first, then the member sequence compared
recursively) so that printing and enumeration are deterministic.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from itertools import combinations
from operator import attrgetter
from typing import Iterable, Iterator

from .errors import GuardExceeded, LiteralSyntaxError

__all__ = [
    "HFSet",
    "EMPTY",
    "canonical_set",
    "nat",
    "rank",
    "singleton",
    "unordered_pair",
    "kuratowski_pair",
    "decode_pair",
    "union_all",
    "binary_union",
    "powerset",
    "cartesian_product",
    "is_subset",
    "is_transitive",
    "rank_fragment",
    "parse_literal",
    "format_set",
]

DEFAULT_CEILING = 2**16
MAX_NUMERAL = 256

_sort_key = attrgetter("key")


class HFSet:
    __slots__ = ("_members", "_frozen", "_hash", "rank", "key", "__weakref__")

    _table: dict = {}
    _lock = threading.Lock()

    def __new__(cls, members: Iterable["HFSet"] = ()):
        frozen = frozenset(members)
        found = cls._table.get(frozen)
        if found is not None:
            return found
        for m in frozen:
            if not isinstance(m, HFSet):
                raise TypeError(f"HFSet members must be HFSet, got {type(m).__name__}")
        with cls._lock:
            found = cls._table.get(frozen)
            if found is not None:
                return found
            obj = object.__new__(cls)
            ordered = tuple(sorted(frozen, key=_sort_key))
            obj._members = ordered
            obj._frozen = frozen
            obj._hash = hash(frozen)
            obj.rank = 1 + ordered[-1].rank if ordered else 0
            obj.key = (obj.rank, tuple(m.key for m in ordered))
            cls._table[frozen] = obj
            return obj

    def __reduce__(self):
        return (HFSet, (self._members,))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other):
        return self is other

    def __ne__(self, other):
        return self is not other

    def __lt__(self, other: "HFSet") -> bool:
        return self.key < other.key

    def __le__(self, other: "HFSet") -> bool:
        return self is other or self.key < other.key

    def __gt__(self, other: "HFSet") -> bool:
        return self.key > other.key

    def __ge__(self, other: "HFSet") -> bool:
        return self is other or self.key > other.key

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator["HFSet"]:
        return iter(self._members)

    def __contains__(self, item) -> bool:
        return item in self._frozen

    def __bool__(self) -> bool:
        return bool(self._members)

    @property
    def members(self) -> tuple["HFSet", ...]:
        return self._members

    def issubset(self, other: "HFSet") -> bool:
        return self._frozen <= other._frozen

    def __repr__(self) -> str:
        return f"HFSet({format_set(self)})"

    def __str__(self) -> str:
        return format_set(self)


EMPTY = HFSet()


def canonical_set(members: Iterable[HFSet]) -> HFSet:
    """Return the set with exactly the distinct given members."""
    return HFSet(members)


@lru_cache(maxsize=None)
def nat(n: int) -> HFSet:
    """Von Neumann numeral: ``nat(0) = {}``, ``nat(n+1) = nat(n) | {nat(n)}``."""
    if n < 0:
        raise ValueError("numerals are non-negative")
    if n > MAX_NUMERAL:
        raise GuardExceeded("numeral", n, MAX_NUMERAL)
    x = EMPTY
    for _ in range(n):
        x = HFSet(x.members + (x,))
    return x


def rank(x: HFSet) -> int:
    return x.rank


def singleton(x: HFSet) -> HFSet:
    return HFSet((x,))


def unordered_pair(x: HFSet, y: HFSet) -> HFSet:
    return HFSet((x, y))


def kuratowski_pair(x: HFSet, y: HFSet) -> HFSet:
    """``(x, y) = {{x}, {x, y}}``."""
    return HFSet((HFSet((x,)), HFSet((x, y))))


def decode_pair(p: HFSet) -> tuple[HFSet, HFSet] | None:
    """Inverse of :func:`kuratowski_pair`; ``None`` when ``p`` is not pair-shaped."""
    if len(p) == 1:
        (only,) = p.members
        if len(only) == 1:
            x = only.members[0]
            return x, x
        return None
    if len(p) != 2:
        return None
    a, b = p.members
    if len(a) == 1 and len(b) == 2:
        small, big = a, b
    elif len(b) == 1 and len(a) == 2:
        small, big = b, a
    else:
        return None
    x = small.members[0]
    if x not in big:
        return None
    y = big.members[0] if big.members[1] is x else big.members[1]
    return x, y


def union_all(x: HFSet) -> HFSet:
    """The members of members of ``x``."""
    return HFSet(z for a in x for z in a)


def binary_union(x: HFSet, y: HFSet) -> HFSet:
    return union_all(HFSet((x, y)))


def _check_ceiling(what: str, needed: int, limit: int | None) -> None:
    limit = DEFAULT_CEILING if limit is None else limit
    if needed > limit:
        raise GuardExceeded(what, needed, limit)


def powerset(x: HFSet, limit: int | None = None) -> HFSet:
    _check_ceiling("powerset", 2 ** len(x), limit)
    members = x.members
    return HFSet(
        HFSet(combo) for k in range(len(members) + 1) for combo in combinations(members, k)
    )


def cartesian_product(x: HFSet, y: HFSet, limit: int | None = None) -> HFSet:
    _check_ceiling("cartesian product", len(x) * len(y), limit)
    return HFSet(kuratowski_pair(a, b) for a in x for b in y)


def is_subset(x: HFSet, y: HFSet) -> bool:
    return x.issubset(y)


def is_transitive(x: HFSet) -> bool:
    return all(m.issubset(x) for m in x)


@lru_cache(maxsize=None)
def _fragment(k: int) -> tuple[HFSet, ...]:
    if k == 0:
        return ()
    below = _fragment(k - 1)
    # V_k = P(V_{k-1})
    return tuple(sorted(powerset(HFSet(below), limit=2**len(below)).members, key=_sort_key))


def rank_fragment(k: int, limit: int = 5) -> tuple[HFSet, ...]:
    """All sets of rank < ``k`` in canonical order."""
    if k < 0:
        raise ValueError("rank bound must be non-negative")
    if k > limit:
        raise GuardExceeded("rank fragment", f"rank < {k}", f"rank < {limit}")
    return _fragment(k)


# -- literals -----------------------------------------------------------------

def parse_literal(text: str) -> HFSet:
    """Parse ``{}``, ``{a, b, ...}`` and decimal numerals (von Neumann sugar)."""
    value, pos = _parse_value(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise LiteralSyntaxError("trailing input", pos)
    return value


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse_value(text: str, pos: int) -> tuple[HFSet, int]:
    if pos >= len(text):
        raise LiteralSyntaxError("unexpected end of literal", pos)
    ch = text[pos]
    if ch.isdigit():
        end = pos
        while end < len(text) and text[end].isdigit():
            end += 1
        return nat(int(text[pos:end])), end
    if ch != "{":
        raise LiteralSyntaxError(f"unexpected {ch!r}", pos)
    pos = _skip_ws(text, pos + 1)
    items = []
    if pos < len(text) and text[pos] == "}":
        return EMPTY, pos + 1
    while True:
        item, pos = _parse_value(text, pos)
        items.append(item)
        pos = _skip_ws(text, pos)
        if pos >= len(text):
            raise LiteralSyntaxError("unterminated set literal", pos)
        if text[pos] == "}":
            return HFSet(items), pos + 1
        if text[pos] != ",":
            raise LiteralSyntaxError(f"expected ',' or '}}', got {text[pos]!r}", pos)
        pos = _skip_ws(text, pos + 1)


def _numeral_value(x: HFSet) -> int | None:
    n = x.rank
    if len(x) == n and n <= MAX_NUMERAL and nat(n) is x:
        return n
    return None


def format_set(x: HFSet) -> str:
    """Canonical text: ``{}`` for the empty set, numerals for ``nat(n)``, n >= 1."""
    if not x:
        return "{}"
    n = _numeral_value(x)
    if n is not None:
        return str(n)
    return "{" + ", ".join(format_set(m) for m in x) + "}"
