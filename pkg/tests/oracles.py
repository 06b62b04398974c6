"""Independent reference implementations used to cross-check the package.

Nothing here reuses the package's algorithms: sets are plain nested
frozensets, formulas are evaluated by a naive recursive interpreter, and
categorical searches are unpruned brute force.
"""
from __future__ import annotations

import itertools
import random

from setverse.hf import HFSet
from setverse.logic import (
    And,
    Const,
    Equality,
    Exists,
    ForAll,
    Iff,
    Implies,
    Lit,
    Membership,
    Not,
    Or,
    Var,
    conj,
    disj,
)

# -- frozenset model of HF sets ------------------------------------------------

EMPTY_F = frozenset()


def frozen(x: HFSet) -> frozenset:
    return frozenset(frozen(m) for m in x)


def thaw(x: frozenset) -> HFSet:
    return HFSet(thaw(m) for m in x)


def rank_f(x: frozenset) -> int:
    return 0 if not x else 1 + max(rank_f(m) for m in x)


def nat_f(n: int) -> frozenset:
    out = EMPTY_F
    for _ in range(n):
        out = out | {out}
    return out


def pair_f(x, y) -> frozenset:
    return frozenset({frozenset({x}), frozenset({x, y})})


def powerset_f(x: frozenset) -> frozenset:
    items = list(x)
    return frozenset(frozenset(c) for r in range(len(items) + 1)
                     for c in itertools.combinations(items, r))


def union_f(x: frozenset) -> frozenset:
    return frozenset(z for a in x for z in a)


def fragment_f(k: int) -> frozenset:
    level = EMPTY_F
    for _ in range(k):
        level = powerset_f(level)
    return level


def random_hf(rng: random.Random, max_rank: int, width: int = 3) -> HFSet:
    """A random HF set of rank <= max_rank built bottom-up."""
    if max_rank == 0 or rng.random() < 0.15:
        return HFSet()
    return HFSet(random_hf(rng, max_rank - 1, width) for _ in range(rng.randint(0, width)))


# -- naive evaluation of core formulas -----------------------------------------

def naive_eval(f, elements, rel, env, consts=None, rels=None):
    """Textbook satisfaction; ``rel`` is a set of (x, y) pairs.

    ``rels`` maps a tag to a pair set for retagged atoms.  Constants map to
    values; membership against a constant whose value is a set of elements
    uses ``rel`` like any other atom.
    """
    consts = consts or {}
    rels = rels or {}

    def val(t):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Const):
            return consts[t.name]
        if isinstance(t, Lit):
            return t.value
        raise TypeError(t)

    if isinstance(f, Membership):
        pairs = rel if f.rel is None else rels[f.rel]
        return (val(f.left), val(f.right)) in pairs
    if isinstance(f, Equality):
        return val(f.left) == val(f.right)
    if isinstance(f, Not):
        return not naive_eval(f.body, elements, rel, env, consts, rels)
    if isinstance(f, (And, Or, Implies, Iff)):
        a = naive_eval(f.left, elements, rel, env, consts, rels)
        b = naive_eval(f.right, elements, rel, env, consts, rels)
        return {And: a and b, Or: a or b, Implies: (not a) or b, Iff: a == b}[type(f)]
    if isinstance(f, (ForAll, Exists)):
        assert f.bound is None, "oracle handles core formulas only"
        results = (naive_eval(f.body, elements, rel, {**env, f.var: e}, consts, rels)
                   for e in elements)
        return all(results) if isinstance(f, ForAll) else any(results)
    raise TypeError(f)


VARS = ("x", "y", "z")


def random_core(rng: random.Random, depth: int, names=VARS, qr: int = 2):
    """Random core formula over ``names`` with quantifier rank <= qr."""
    if depth == 0 or rng.random() < 0.25:
        a, b = Var(rng.choice(names)), Var(rng.choice(names))
        return Membership(a, b) if rng.random() < 0.7 else Equality(a, b)
    choice = rng.random()
    if choice < 0.2:
        return Not(random_core(rng, depth - 1, names, qr))
    if choice < 0.6 or qr == 0:
        kind = rng.choice((And, Or, Implies, Iff))
        return kind(random_core(rng, depth - 1, names, qr), random_core(rng, depth - 1, names, qr))
    q = rng.choice((ForAll, Exists))
    return q(rng.choice(names), random_core(rng, depth - 1, names, qr - 1))


def de_morgan(f):
    """An equivalent formula built with the dual connectives and quantifiers."""
    if isinstance(f, (Membership, Equality)):
        return f
    if isinstance(f, Not):
        return Not(de_morgan(f.body))
    if isinstance(f, And):
        return Not(Or(Not(de_morgan(f.left)), Not(de_morgan(f.right))))
    if isinstance(f, Or):
        return Not(And(Not(de_morgan(f.left)), Not(de_morgan(f.right))))
    if isinstance(f, Implies):
        return Or(Not(de_morgan(f.left)), de_morgan(f.right))
    if isinstance(f, Iff):
        a, b = de_morgan(f.left), de_morgan(f.right)
        return And(Implies(a, b), Implies(b, a))
    if isinstance(f, ForAll):
        return Not(Exists(f.var, Not(de_morgan(f.body))))
    if isinstance(f, Exists):
        return Not(ForAll(f.var, Not(de_morgan(f.body))))
    raise TypeError(f)


# -- rank-bounded sentences for the EF oracle ----------------------------------

def _atoms_over(names):
    out = []
    for a in names:
        for b in names:
            out.append(Membership(Var(a), Var(b)))
            if a < b:
                out.append(Equality(Var(a), Var(b)))
    return out


def _diagram(elements, rel, env, names):
    """Conjunction of the atomic and negated atomic facts about ``env``."""
    lits = []
    for atom in _atoms_over(names):
        truth = naive_eval(atom, elements, rel, env)
        lits.append(atom if truth else Not(atom))
    return conj(*lits) if lits else Equality(Var("_"), Var("_"))


def hintikka(elements, rel, env, names, k):
    """Rank-k characteristic formula of ``env`` (a tuple of named elements)."""
    if k == 0:
        if not names:
            return None
        return _diagram(elements, rel, env, names)
    var = f"h{len(names)}"
    inner = []
    seen = set()
    for e in elements:
        phi = hintikka(elements, rel, {**env, var: e}, names + (var,), k - 1)
        key = repr(phi)
        if key not in seen:
            seen.add(key)
            inner.append(phi)
    exists_each = [Exists(var, phi) for phi in inner]
    forall_some = ForAll(var, disj(*inner)) if inner else ForAll(var, Not(Equality(Var(var), Var(var))))
    base = _diagram(elements, rel, env, names) if names else None
    parts = ([base] if base is not None else []) + exists_each + [forall_some]
    return conj(*parts)


def rank_bounded_agree(a_elems, a_rel, b_elems, b_rel, depth) -> bool:
    """Do the two structures satisfy the same sentences of quantifier rank <= depth?

    Every such sentence is a Boolean combination of rank-``depth`` Hintikka
    sentences, so it suffices to evaluate each structure's own Hintikka
    sentence in both structures.
    """
    if depth == 0:
        return True
    for elems, rel in ((a_elems, a_rel), (b_elems, b_rel)):
        phi = hintikka(elems, rel, {}, (), depth)
        if naive_eval(phi, a_elems, a_rel, {}) != naive_eval(phi, b_elems, b_rel, {}):
            return False
    return True


# -- classrank ------------------------------------------------------------------

def iterated_powerclass_f(base: frozenset, n: int) -> frozenset:
    level = base
    for _ in range(n):
        level = powerset_f(level)
    return level


# -- categories -----------------------------------------------------------------

def brute_functors(c, d):
    """All (object map, arrow map) pairs, filtered by the functor laws."""
    obs, arrows = list(c.objects), list(c.arrows)
    found = []
    for images in itertools.product(d.objects, repeat=len(obs)):
        F = dict(zip(obs, images))
        for amap in itertools.product(list(d.arrows), repeat=len(arrows)):
            G = dict(zip(arrows, amap))
            if any(d.arrows[G[f]] != (F[a], F[b]) for f, (a, b) in c.arrows.items()):
                continue
            if any(G[i] != d.identity.get(F[a]) for a, i in c.identity.items()):
                continue
            if any(d.compose.get((G[f], G[g])) != G[h] for (f, g), h in c.compose.items()):
                continue
            found.append((F, G))
    return found


def brute_transformations(c, d, F, G):
    """Every family of arrows F a -> G a, kept when all squares commute."""
    obs = list(c.objects)
    kept = []
    for family in itertools.product(list(d.arrows), repeat=len(obs)):
        comps = dict(zip(obs, family))
        if any(d.arrows[comps[a]] != (F.obj[a], G.obj[a]) for a in obs):
            continue
        if all(d.compose.get((G.arr[f], comps[a])) == d.compose.get((comps[b], F.arr[f]))
               and d.compose.get((G.arr[f], comps[a])) is not None
               for f, (a, b) in c.arrows.items()):
            kept.append(comps)
    return kept


def relational_composite(f_graph: frozenset, g_graph: frozenset) -> frozenset:
    """Graph of ``f o g`` from frozenset Kuratowski pairs."""

    def decode(p):
        parts = sorted(p, key=len)
        x = next(iter(parts[0]))
        rest = parts[-1] - {x}
        y = next(iter(rest)) if rest else x
        return x, y

    f_table = dict(decode(p) for p in f_graph)
    return frozenset(pair_f(x, f_table[y]) for x, y in (decode(p) for p in g_graph))


class Restricted:
    """Membership tagged by a carrier: true membership between its elements."""

    def __init__(self, carrier):
        self.carrier = carrier

    def holds(self, x, y):
        return x in self.carrier and y in self.carrier and x in y

    def members(self, y, domain):
        return [m for m in y if m in self.carrier] if y in self.carrier else []
