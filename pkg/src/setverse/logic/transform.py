"""Syntactic transformations: defined-term unfolding, relativization, schemas."""
from __future__ import annotations

from itertools import count
from typing import Mapping

from ..errors import ArityError
from ..hf import HFSet
from .formula import (
    ATOMS,
    BINARY,
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
    Term,
    Var,
    all_var_names,
    free_vars,
    is_core,
    substitute,
)


class _Fresh:
    def __init__(self, taken: set[str]):
        self.taken = set(taken)
        self.counter = count(1)

    def __call__(self, stem: str) -> str:
        while True:
            name = f"{stem}{next(self.counter)}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def _singleton_eq(s: Term, x: Term, fresh: _Fresh) -> Formula:
    w = fresh("w")
    return ForAll(w, Iff(Membership(Var(w), s), Equality(Var(w), x)))


def _pair_set_eq(q: Term, x: Term, y: Term, fresh: _Fresh) -> Formula:
    w = fresh("w")
    return ForAll(w, Iff(Membership(Var(w), q), Or(Equality(Var(w), x), Equality(Var(w), y))))


def unfold_defined_terms(f: Formula) -> Formula:
    """Eliminate subset, pair and bounded-quantifier sugar.

    ``A = (X, Y)`` becomes ``exists p. ({X} = p & exists q. ({X,Y} = q & {p,q} = A))``
    with the singleton and unordered-pair equalities spelled out through
    membership.  Nesting the second witness under the first keeps evaluation
    linear in the carrier; it is equivalent to the flat three-way conjunction.
    """
    if is_core(f):
        return f
    fresh = _Fresh(all_var_names(f))

    def walk(g: Formula) -> Formula:
        if isinstance(g, Subset):
            z = fresh("z")
            return ForAll(z, Implies(Membership(Var(z), g.left), Membership(Var(z), g.right)))
        if isinstance(g, PairEq):
            p, q = fresh("p"), fresh("q")
            inner = And(
                _pair_set_eq(Var(q), g.first, g.second, fresh),
                _pair_set_eq(g.pair, Var(p), Var(q), fresh),
            )
            return Exists(p, And(_singleton_eq(Var(p), g.first, fresh), Exists(q, inner)))
        if isinstance(g, ATOMS):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, BINARY):
            return type(g)(walk(g.left), walk(g.right))
        body = walk(g.body)
        if g.bound is None:
            return type(g)(g.var, body)
        guard = Membership(Var(g.var), g.bound)
        if isinstance(g, ForAll):
            return ForAll(g.var, Implies(guard, body))
        return Exists(g.var, And(guard, body))

    return walk(f)


def relativize(f: Formula, universe: str, membership: str = "internal") -> Formula:
    """Restrict every quantifier to the universe constant ``universe``.

    ``forall x. phi`` becomes ``forall x. (x in U -> phi*)`` and ``exists``
    gets a conjunctive guard.  With ``membership="internal"`` each membership
    atom is retagged to use the universe's own relation; the guards themselves
    stay ambient.
    """
    if membership not in ("internal", "ambient"):
        raise ValueError("membership mode must be 'internal' or 'ambient'")
    if not is_core(f):
        raise ValueError("relativize expects a core formula; unfold defined terms first")
    u = Const(universe)
    internal = membership == "internal"

    def walk(g: Formula) -> Formula:
        if isinstance(g, Membership):
            # ``x in U`` against the universe constant itself is a guard, never retagged
            if internal and g.rel is None and g.right != u:
                return Membership(g.left, g.right, universe)
            return g
        if isinstance(g, Equality):
            return g
        if isinstance(g, Not):
            return Not(walk(g.body))
        if isinstance(g, BINARY):
            return type(g)(walk(g.left), walk(g.right))
        guard = Membership(Var(g.var), u)
        if isinstance(g, ForAll):
            return ForAll(g.var, Implies(guard, walk(g.body)))
        return Exists(g.var, And(guard, walk(g.body)))

    return walk(f)


# -- schemas ------------------------------------------------------------------

SCHEMA_ARITY = {"separation": 1, "class-separation": 1, "replacement": 2}


def _as_term(value) -> Term:
    if isinstance(value, HFSet):
        return Lit(value)
    if isinstance(value, (Var, Const, Lit)):
        return value
    raise TypeError(f"cannot bind {value!r}")


def instantiate_schema(
    schema: str,
    phi: Formula,
    bindings: Mapping[str, object] | None = None,
    *,
    slots: tuple[str, ...] | None = None,
    params: tuple[str, ...] = (),
) -> Formula:
    """Build an axiom instance of ``schema`` with ``phi`` in its formula slot.

    ``slots`` name phi's slot variables (default: every free variable not
    listed in ``params`` or ``bindings``).  ``params`` are phi's parameters;
    unbound ones are universally quantified outermost.  ``bindings`` may
    also fix the schema's own outer variable (``Z`` for separation, ``a``
    for replacement) to a concrete set, which drops that quantifier.
    """
    if schema not in SCHEMA_ARITY:
        raise ValueError(f"unknown schema {schema!r}")
    bindings = dict(bindings or {})
    arity = SCHEMA_ARITY[schema]
    phi_free = free_vars(phi)
    if slots is None:
        slots = tuple(v for v in phi_free if v not in params and v not in bindings)
    if len(slots) != arity:
        raise ArityError(f"{schema} takes a {arity}-ary formula, got {len(slots)} slot variable(s)")
    extra = [v for v in phi_free if v not in slots and v not in params and v not in bindings]
    if extra:
        raise ArityError(f"undeclared free variables in schema formula: {', '.join(extra)}")

    phi = substitute(phi, {k: _as_term(v) for k, v in bindings.items() if k in phi_free})
    taken = all_var_names(phi) | set(params)
    fresh = _Fresh(taken)

    def pick(preferred: str) -> str:
        if preferred in fresh.taken:
            return fresh(preferred.lower())
        fresh.taken.add(preferred)
        return preferred

    if schema in ("separation", "class-separation"):
        outer_name = "Z"
        z, a, x = pick("Z"), pick("A"), pick("X")
        body = substitute(phi, {slots[0]: Var(x)})
        outer_term = _as_term(bindings[outer_name]) if outer_name in bindings else Var(z)
        matrix = Exists(a, ForAll(x, Iff(
            Membership(Var(x), Var(a)),
            And(Membership(Var(x), outer_term), body),
        )))
        result = matrix if outer_name in bindings else ForAll(z, matrix)
    else:
        outer_name = "a"
        a, b, c, x, y = pick("a"), pick("b"), pick("c"), pick("x"), pick("y")
        outer_term = _as_term(bindings[outer_name]) if outer_name in bindings else Var(a)
        total = ForAll(x, Implies(
            Membership(Var(x), outer_term),
            Exists(y, substitute(phi, {slots[0]: Var(x), slots[1]: Var(y)})),
        ))
        image = Exists(b, ForAll(c, Iff(
            Membership(Var(c), Var(b)),
            Exists(x, And(
                Membership(Var(x), outer_term),
                substitute(phi, {slots[0]: Var(x), slots[1]: Var(c)}),
            )),
        )))
        matrix = Implies(total, image)
        result = matrix if outer_name in bindings else ForAll(a, matrix)

    for p in reversed(params):
        if p not in bindings:
            result = ForAll(p, result)
    return result
