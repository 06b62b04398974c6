"""Abstract syntax for the first-order membership language."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from ..hf import HFSet, format_set


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Lit:
    """A fixed hereditarily finite set used as a term."""

    value: HFSet

    def __str__(self) -> str:
        return format_set(self.value)


Term = Union[Var, Const, Lit]


@dataclass(frozen=True)
class Membership:
    left: Term
    right: Term
    # None: ambient membership; otherwise the name of the universe whose
    # internal relation decides the atom
    rel: str | None = None


@dataclass(frozen=True)
class Equality:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    var: str
    body: "Formula"
    bound: Term | None = None  # ``forall x in t.`` sugar


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"
    bound: Term | None = None


@dataclass(frozen=True)
class Subset:
    left: Term
    right: Term


@dataclass(frozen=True)
class PairEq:
    """``pair = (first, second)`` with the Kuratowski encoding."""

    pair: Term
    first: Term
    second: Term


Formula = Union[
    Membership, Equality, Not, And, Or, Implies, Iff, ForAll, Exists, Subset, PairEq
]

ATOMS = (Membership, Equality, Subset, PairEq)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (ForAll, Exists)


def conj(*parts: Formula) -> Formula:
    """Right-nested conjunction of one or more formulas."""
    if not parts:
        raise ValueError("empty conjunction")
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = And(p, result)
    return result


def disj(*parts: Formula) -> Formula:
    if not parts:
        raise ValueError("empty disjunction")
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = Or(p, result)
    return result


def atom_terms(f: Formula) -> tuple[Term, ...]:
    if isinstance(f, (Membership, Equality, Subset)):
        return (f.left, f.right)
    if isinstance(f, PairEq):
        return (f.pair, f.first, f.second)
    raise TypeError(f"not an atom: {f!r}")


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def free_vars(f: Formula) -> list[str]:
    """Free variables in order of first occurrence."""
    seen: dict[str, None] = {}

    def term(t, bound):
        if isinstance(t, Var) and t.name not in bound:
            seen.setdefault(t.name, None)

    def walk(g, bound):
        if isinstance(g, ATOMS):
            for t in atom_terms(g):
                term(t, bound)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, BINARY):
            walk(g.left, bound)
            walk(g.right, bound)
        else:
            if g.bound is not None:
                term(g.bound, bound)
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return list(seen)


def all_var_names(f: Formula) -> set[str]:
    names = set()
    for g in subformulas(f):
        if isinstance(g, QUANTIFIERS):
            names.add(g.var)
            if isinstance(g.bound, Var):
                names.add(g.bound.name)
        elif isinstance(g, ATOMS):
            names.update(t.name for t in atom_terms(g) if isinstance(t, Var))
    return names


def constants(f: Formula) -> set[str]:
    names = set()
    for g in subformulas(f):
        terms = atom_terms(g) if isinstance(g, ATOMS) else ()
        if isinstance(g, QUANTIFIERS) and g.bound is not None:
            terms = (g.bound,)
        names.update(t.name for t in terms if isinstance(t, Const))
    return names


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, ATOMS):
        # sugar atoms hide quantifiers; count what they unfold to
        if isinstance(f, Subset):
            return 1
        if isinstance(f, PairEq):
            return 3
        return 0
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    return 1 + quantifier_rank(f.body)


def quantifier_count(f: Formula) -> int:
    return sum(isinstance(g, QUANTIFIERS) for g in subformulas(f))


def is_core(f: Formula) -> bool:
    """True when no defined-term sugar (subset, pair, bounded quantifier) remains."""
    for g in subformulas(f):
        if isinstance(g, (Subset, PairEq)):
            return False
        if isinstance(g, QUANTIFIERS) and g.bound is not None:
            return False
    return True


def substitute(f: Formula, mapping: dict[str, Term]) -> Formula:
    """Replace free variables by terms.  Callers guarantee no capture."""

    def term(t, bound):
        if isinstance(t, Var) and t.name in mapping and t.name not in bound:
            return mapping[t.name]
        return t

    def walk(g, bound):
        if isinstance(g, Membership):
            return Membership(term(g.left, bound), term(g.right, bound), g.rel)
        if isinstance(g, Equality):
            return Equality(term(g.left, bound), term(g.right, bound))
        if isinstance(g, Subset):
            return Subset(term(g.left, bound), term(g.right, bound))
        if isinstance(g, PairEq):
            return PairEq(term(g.pair, bound), term(g.first, bound), term(g.second, bound))
        if isinstance(g, Not):
            return Not(walk(g.body, bound))
        if isinstance(g, BINARY):
            return type(g)(walk(g.left, bound), walk(g.right, bound))
        new_bound = term(g.bound, bound) if g.bound is not None else None
        return type(g)(g.var, walk(g.body, bound | {g.var}), new_bound)

    return walk(f, frozenset())


def rename_bound(f: Formula, old: str, new: str) -> Formula:
    """Rename every quantifier binding ``old`` (and its occurrences) to ``new``."""

    def walk(g):
        if isinstance(g, ATOMS):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, BINARY):
            return type(g)(walk(g.left), walk(g.right))
        body = walk(g.body)
        var = g.var
        if var == old:
            body = substitute(body, {old: Var(new)})
            var = new
        return type(g)(var, body, g.bound)

    return walk(f)


# -- printing -----------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def to_text(f: Formula) -> str:
    """Render in the concrete grammar; ``parse_formula(to_text(f)) == f``.

    Constants are declared in a leading ``const`` preamble.
    """
    names = sorted(constants(f))
    body = _render(f, 0)
    return f"const {', '.join(names)}; {body}" if names else body


def _render(f: Formula, context: int) -> str:
    if isinstance(f, Membership):
        op = "in" if f.rel is None else f"in[{f.rel}]"
        return f"{f.left} {op} {f.right}"
    if isinstance(f, Equality):
        return f"{f.left} = {f.right}"
    if isinstance(f, Subset):
        return f"{f.left} sub {f.right}"
    if isinstance(f, PairEq):
        return f"{f.pair} = ({f.first}, {f.second})"
    if isinstance(f, Not):
        return "!" + _render(f.body, 5)
    if isinstance(f, BINARY):
        prec = _PREC[type(f)]
        # And/Or associate left, -> associates right, <-> is non-associative here
        if isinstance(f, Implies):
            left, right = _render(f.left, prec + 1), _render(f.right, prec)
        elif isinstance(f, Iff):
            left, right = _render(f.left, prec + 1), _render(f.right, prec + 1)
        else:
            left, right = _render(f.left, prec), _render(f.right, prec + 1)
        text = f"{left} {_OPS[type(f)]} {right}"
        return f"({text})" if prec < context else text
    word = "forall" if isinstance(f, ForAll) else "exists"
    head = f"{word} {f.var}" + (f" in {f.bound}" if f.bound is not None else "")
    text = f"{head}. {_render(f.body, 0)}"
    return f"({text})" if context > 0 else text
