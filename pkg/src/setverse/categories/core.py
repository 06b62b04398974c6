"""Explicit finite categories, law checking, functors and natural transformations."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Mapping

from ..config import Guards, default_guards
from ..errors import GuardExceeded


class FinCategory:
    """Objects, arrows with (dom, cod), partial identities and partial composition.

    ``compose[(f, g)]`` is ``f o g`` and is meant to exist only when
    ``cod(g) == dom(f)``.
    """

    def __init__(self, objects: Iterable[Hashable], arrows: Mapping[Hashable, tuple],
                 identity: Mapping[Hashable, Hashable] | None = None,
                 compose: Mapping[tuple, Hashable] | None = None, name: str = ""):
        self.name = name
        self.objects = tuple(objects)
        self.arrows = dict(arrows)
        self.identity = dict(identity or {})
        self.compose = dict(compose or {})
        obs = set(self.objects)
        for f, (a, b) in self.arrows.items():
            if a not in obs or b not in obs:
                raise ValueError(f"arrow {f} has an endpoint outside the objects")
        self._homs: dict[tuple, list] = {}
        for f, ends in self.arrows.items():
            self._homs.setdefault(ends, []).append(f)

    def dom(self, f):
        return self.arrows[f][0]

    def cod(self, f):
        return self.arrows[f][1]

    def hom(self, a, b) -> tuple:
        return tuple(self._homs.get((a, b), ()))

    @property
    def homs(self) -> dict[tuple, tuple]:
        return {(a, b): self.hom(a, b) for a in self.objects for b in self.objects}

    def composable(self) -> Iterable[tuple]:
        """Pairs ``(f, g)`` with ``cod(g) == dom(f)``."""
        for g, (_, mid) in self.arrows.items():
            for f in self._outgoing(mid):
                yield f, g

    def _outgoing(self, a):
        out = getattr(self, "_out", None)
        if out is None:
            out = {}
            for f, (x, _) in self.arrows.items():
                out.setdefault(x, []).append(f)
            self._out = out
        return out.get(a, ())

    def __len__(self) -> int:
        return len(self.arrows)

    def __repr__(self) -> str:
        return f"FinCategory({self.name or '?'}: {len(self.objects)} objects, {len(self.arrows)} arrows)"


@dataclass
class LawReport:
    missing_identities: list = field(default_factory=list)
    non_closed_compositions: list = field(default_factory=list)
    identity_violations: list = field(default_factory=list)
    associativity_violations: list = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        broken = (self.missing_identities or self.non_closed_compositions
                  or self.identity_violations or self.associativity_violations)
        return "partial" if broken else "category"

    @property
    def is_category(self) -> bool:
        return self.verdict == "category"


def check_category_laws(c: FinCategory) -> LawReport:
    report = LawReport()
    for a in c.objects:
        i = c.identity.get(a)
        if i is None or c.arrows.get(i) != (a, a):
            report.missing_identities.append(a)

    for f, g in c.composable():
        h = c.compose.get((f, g))
        if h is None or c.arrows.get(h) != (c.dom(g), c.cod(f)):
            report.non_closed_compositions.append((f, g))
    for key in c.compose:
        f, g = key
        if f not in c.arrows or g not in c.arrows or c.dom(f) != c.cod(g):
            report.non_closed_compositions.append(key)

    for f, (a, b) in c.arrows.items():
        ia, ib = c.identity.get(a), c.identity.get(b)
        if ia is not None and (f, ia) in c.compose and c.compose[(f, ia)] != f:
            report.identity_violations.append((f, ia, "right"))
        if ib is not None and (ib, f) in c.compose and c.compose[(ib, f)] != f:
            report.identity_violations.append((ib, f, "left"))

    comp = c.compose
    for g, f in c.composable():
        gf = comp.get((g, f))
        if gf is None:
            continue
        for h in c._outgoing(c.cod(g)):
            hg = comp.get((h, g))
            if hg is None:
                continue
            left, right = comp.get((hg, f)), comp.get((h, gf))
            if left is not None and right is not None and left != right:
                report.associativity_violations.append((h, g, f))
    return report


# -- functors -----------------------------------------------------------------

class Functor:
    """An object map and an arrow map between two finite categories."""

    __slots__ = ("obj", "arr", "_key")

    def __init__(self, obj: Mapping, arr: Mapping):
        self.obj = dict(obj)
        self.arr = dict(arr)
        self._key = (tuple(self.obj.items()), tuple(self.arr.items()))

    def __call__(self, x):
        return self.arr[x] if x in self.arr else self.obj[x]

    def __eq__(self, other):
        return isinstance(other, Functor) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "Functor(" + ", ".join(f"{a}->{b}" for a, b in self.obj.items()) + ")"


def compose_functors(g: Functor, f: Functor) -> Functor:
    """``g o f``."""
    return Functor({a: g.obj[b] for a, b in f.obj.items()},
                   {x: g.arr[y] for x, y in f.arr.items()})


def identity_functor(c: FinCategory) -> Functor:
    return Functor({a: a for a in c.objects}, {f: f for f in c.arrows})


def enumerate_functors(c: FinCategory, d: FinCategory,
                       guards: Guards | None = None) -> list[Functor]:
    """Every functor ``c -> d`` in a deterministic order (backtracking search)."""
    guards = guards or default_guards()
    limit = guards.functors
    steps = 0
    arrows = list(c.arrows)
    pairs_for: dict[Any, list[tuple]] = {f: [] for f in arrows}
    position = {f: i for i, f in enumerate(arrows)}
    for (f, g), h in c.compose.items():
        if f in position and g in position and h in position:
            last = max(position[f], position[g], position[h])
            pairs_for[arrows[last]].append((f, g, h))
    identities = {i: a for a, i in c.identity.items() if c.arrows.get(i) == (a, a)}

    out: list[Functor] = []

    def assign_arrows(obj, arr, i):
        nonlocal steps
        if i == len(arrows):
            out.append(Functor(obj, arr))
            return
        f = arrows[i]
        a, b = c.arrows[f]
        if f in identities:
            want = d.identity.get(obj[a])
            options = [want] if want is not None and d.arrows.get(want) == (obj[a], obj[a]) else []
        else:
            options = d.hom(obj[a], obj[b])
        for image in options:
            steps += 1
            if steps > limit:
                raise GuardExceeded("functor search", f"> {limit} steps", limit)
            arr[f] = image
            if all(d.compose.get((arr[x], arr[y])) == arr[z] for x, y, z in pairs_for[f]):
                assign_arrows(obj, arr, i + 1)
            del arr[f]

    obs = list(c.objects)
    for images in itertools.product(d.objects, repeat=len(obs)):
        steps += 1
        if steps > limit:
            raise GuardExceeded("functor search", f"> {limit} steps", limit)
        assign_arrows(dict(zip(obs, images)), {}, 0)
    return out


# -- natural transformations --------------------------------------------------

@dataclass(frozen=True)
class NatTrans:
    source: Functor
    target: Functor
    components: tuple  # ((object, arrow), ...) in the domain's object order

    def __getitem__(self, a):
        for x, f in self.components:
            if x == a:
                return f
        raise KeyError(a)

    def __repr__(self):
        return "NatTrans(" + ", ".join(f"{a}:{f}" for a, f in self.components) + ")"


def is_natural(c: FinCategory, d: FinCategory, F: Functor, G: Functor, comps: Mapping) -> bool:
    for f, (a, b) in c.arrows.items():
        left = d.compose.get((G.arr[f], comps[a]))
        right = d.compose.get((comps[b], F.arr[f]))
        if left is None or right is None or left != right:
            return False
    return True


def natural_transformations(c: FinCategory, d: FinCategory, F: Functor, G: Functor,
                            guards: Guards | None = None) -> list[NatTrans]:
    """All component families ``F => G`` whose naturality squares commute."""
    guards = guards or default_guards()
    limit = guards.functors
    obs = list(c.objects)
    by_object: dict[Any, list] = {a: [] for a in obs}
    for f, (a, b) in c.arrows.items():
        by_object[a].append(f)
        by_object[b].append(f)
    steps = 0
    out = []

    def extend(i, comps):
        nonlocal steps
        if i == len(obs):
            out.append(NatTrans(F, G, tuple((a, comps[a]) for a in obs)))
            return
        a = obs[i]
        for alpha in d.hom(F.obj[a], G.obj[a]):
            steps += 1
            if steps > limit:
                raise GuardExceeded("transformation search", f"> {limit} steps", limit)
            comps[a] = alpha
            ok = True
            for f in by_object[a]:
                x, y = c.arrows[f]
                if x in comps and y in comps:
                    left = d.compose.get((G.arr[f], comps[x]))
                    right = d.compose.get((comps[y], F.arr[f]))
                    if left is None or left != right:
                        ok = False
                        break
            if ok:
                extend(i + 1, comps)
            del comps[a]

    extend(0, {})
    return out


def vertical(d: FinCategory, beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """``beta o alpha``, componentwise."""
    comps = tuple((a, d.compose[(beta[a], f)]) for a, f in alpha.components)
    return NatTrans(alpha.source, beta.target, comps)


def identity_transformation(d: FinCategory, F: Functor, objects) -> NatTrans:
    return NatTrans(F, F, tuple((a, d.identity[F.obj[a]]) for a in objects))


def functor_category(c: FinCategory, d: FinCategory,
                     guards: Guards | None = None) -> FinCategory:
    """Functors ``c -> d`` as objects, natural transformations as arrows."""
    guards = guards or default_guards()
    functors = enumerate_functors(c, d, guards)
    arrows: dict[NatTrans, tuple] = {}
    for F in functors:
        for G in functors:
            for t in natural_transformations(c, d, F, G, guards):
                arrows[t] = (F, G)
    identity = {}
    for F in functors:
        try:
            t = identity_transformation(d, F, c.objects)
        except KeyError:
            continue
        if t in arrows:
            identity[F] = t
    compose = {}
    outgoing: dict[Functor, list] = {}
    for t, (F, _) in arrows.items():
        outgoing.setdefault(F, []).append(t)
    for alpha, (_, G) in arrows.items():
        for beta in outgoing.get(G, ()):
            try:
                composite = vertical(d, beta, alpha)
            except KeyError:
                continue
            if composite in arrows:
                compose[(beta, alpha)] = composite
    return FinCategory(functors, arrows, identity, compose,
                       name=f"Fun({c.name or '?'}, {d.name or '?'})")


def horizontal(e: FinCategory, beta: NatTrans, alpha: NatTrans) -> NatTrans:
    """Godement product ``beta * alpha`` for ``alpha: F => G`` and ``beta: H => K``.

    Component at ``a`` is ``K(alpha_a) o beta_{F a}``.
    """
    H, K = beta.source, beta.target
    F, G = alpha.source, alpha.target
    comps = tuple((a, e.compose[(K.arr[f], beta[F.obj[a]])]) for a, f in alpha.components)
    return NatTrans(compose_functors(H, F), compose_functors(K, G), comps)


def interchange_cells(d: FinCategory, e: FinCategory, cd: FinCategory, de: FinCategory):
    """Yield ``(ok, cells)`` for every composable quadruple of 2-cells.

    ``cd`` and ``de`` are functor categories ``Fun(c, d)`` and ``Fun(d, e)``.
    """
    for (a2, a1), a21 in cd.compose.items():
        for (b2, b1), b21 in de.compose.items():
            left = horizontal(e, b21, a21)
            right = vertical(e, horizontal(e, b2, a2), horizontal(e, b1, a1))
            yield left == right, (b2, b1, a2, a1)
