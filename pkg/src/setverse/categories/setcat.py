"""The category of sets inside a universe, V-categories and the verse slice."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any

from ..config import Guards, default_guards
from ..errors import GuardExceeded, MalformedCategoryData
from ..hf import HFSet, decode_pair, format_set, kuratowski_pair
from ..multiverse.universe import AmbientModel, Universe
from .core import (
    FinCategory,
    LawReport,
    check_category_laws,
    functor_category,
    interchange_cells,
)


@dataclass(frozen=True, order=True)
class Arrow:
    """An internal function together with the hom-set it is filed under."""

    graph: HFSet
    dom: HFSet
    cod: HFSet

    def __str__(self):
        return f"{format_set(self.graph)}: {format_set(self.dom)} -> {format_set(self.cod)}"


def decode_graph(f: HFSet) -> dict[HFSet, HFSet] | None:
    """``f`` as a function table, or None if it is not a functional set of pairs."""
    table: dict[HFSet, HFSet] = {}
    for p in f:
        xy = decode_pair(p)
        if xy is None:
            return None
        x, y = xy
        if table.get(x, y) is not y:
            return None
        table[x] = y
    return table


def encode_graph(table: dict[HFSet, HFSet]) -> HFSet:
    return HFSet(kuratowski_pair(x, y) for x, y in table.items())


def _require_standard(u: Universe) -> None:
    if not u.is_standard:
        raise ValueError(f"universe {u.name} is not standard; internal decoding "
                         "under a custom membership relation is not supported")


def internal_functions(u: Universe, x: HFSet, y: HFSet) -> tuple[HFSet, ...]:
    """Carrier elements that are entire functional relations from ``x`` to ``y``."""
    _require_standard(u)
    out = []
    for f in u.carrier:
        table = decode_graph(f)
        if table is None or set(table) != set(x):
            continue
        if all(v in y for v in table.values()):
            out.append(f)
    return tuple(out)


def build_set_category(u: Universe, guards: Guards | None = None, *,
                       sample: int | None = None, seed: int = 0) -> tuple[FinCategory, LawReport]:
    """Objects are carrier elements, arrows internal functions, as far as they exist."""
    _require_standard(u)
    guards = guards or default_guards()
    objects = list(u.elements)
    note = None
    if sample is not None:
        if sample < len(objects):
            objects = sorted(random.Random(seed).sample(objects, sample))
            note = f"sampled {sample} of {len(u.carrier)} objects with seed {seed}"
    elif len(objects) > guards.set_objects:
        raise GuardExceeded("Set_V objects", len(objects), guards.set_objects)
    object_set = set(objects)

    # decode every carrier element once, then file the functions by domain
    arrows: dict[Arrow, tuple] = {}
    tables: dict[Arrow, dict] = {}
    for f in u.carrier:
        table = decode_graph(f)
        if table is None:
            continue
        dom = HFSet(table)
        if dom not in object_set:
            continue
        image = set(table.values())
        for cod in objects:
            if all(v in cod for v in image):
                a = Arrow(f, dom, cod)
                arrows[a] = (dom, cod)
                tables[a] = table

    identity = {}
    for x in objects:
        a = Arrow(encode_graph({m: m for m in x}), x, x)
        if a in arrows:
            identity[x] = a

    compose = {}
    by_dom: dict[HFSet, list[Arrow]] = {}
    for a in arrows:
        by_dom.setdefault(a.dom, []).append(a)
    for g in arrows:
        for f in by_dom.get(g.cod, ()):
            graph = encode_graph({x: tables[f][y] for x, y in tables[g].items()})
            h = Arrow(graph, g.dom, f.cod)
            if h in arrows:
                compose[(f, g)] = h

    cat = FinCategory(objects, arrows, identity, compose, name=f"Set_{u.name}")
    report = check_category_laws(cat)
    if note:
        report.notes.append(note)
    return cat, report


# -- V-categories --------------------------------------------------------------

@dataclass
class VCategoryCheck:
    is_v_category: bool
    size: str | None = None
    reason: str = ""
    report: LawReport | None = None
    category: FinCategory | None = None


def _function(name: str, f: HFSet, source, target) -> dict:
    table: dict[HFSet, HFSet] = {}
    for p in f:
        xy = decode_pair(p)
        if xy is None:
            raise MalformedCategoryData(f"{name} is not a set of ordered pairs")
        x, y = xy
        if x in table and table[x] is not y:
            raise MalformedCategoryData(f"{name} not functional")
        table[x] = y
    if set(table) != set(source):
        raise MalformedCategoryData(f"{name} has the wrong domain")
    for v in table.values():
        if v not in target:
            raise MalformedCategoryData(f"{name} takes a value {format_set(v)} outside its codomain")
    return table


def check_v_category(u: Universe, ob: HFSet, hom: HFSet, dom: HFSet, cod: HFSet,
                     ident: HFSet, comp: HFSet) -> VCategoryCheck:
    """Recognize six sets as category data living in ``u``.

    ``Ob``, ``Hom`` and ``comp`` only need to be classes of carrier elements;
    ``dom``, ``cod`` and ``id`` must be carrier elements.  ``comp`` maps the
    pair ``(f, g)`` to ``f o g``.
    """
    _require_standard(u)
    for name, value in (("dom", dom), ("cod", cod), ("id", ident)):
        if value not in u.carrier:
            return VCategoryCheck(False, reason=f"{name}'s graph is not an element of {u.name}")
    for name, value in (("Ob", ob), ("Hom", hom), ("comp", comp)):
        stray = [x for x in value if x not in u.carrier]
        if stray:
            return VCategoryCheck(False, reason=f"{name} has {format_set(stray[0])} outside {u.name}")

    d = _function("dom", dom, hom, ob)
    c = _function("cod", cod, hom, ob)
    i = _function("id", ident, ob, hom)
    composable = {kuratowski_pair(f, g) for f in hom for g in hom if c[g] is d[f]}
    k = _function("comp", comp, composable, hom)

    for x, e in i.items():
        if d[e] is not x or c[e] is not x:
            raise MalformedCategoryData(f"id({format_set(x)}) is not an endomorphism")
    arrows = {f: (d[f], c[f]) for f in hom}
    table = {decode_pair(p): h for p, h in k.items()}
    cat = FinCategory(ob.members, arrows, i, table, name=f"{u.name}-category")
    report = check_category_laws(cat)

    if hom in u.carrier:
        size = "V-small"
    elif all(HFSet(f for f in hom if d[f] is x and c[f] is y) in u.carrier
             for x in ob for y in ob):
        size = "V-locally-small"
    else:
        size = "V-large"
    ok = report.is_category
    return VCategoryCheck(ok, size, "" if ok else "category laws fail", report, cat)


# -- verse slice ----------------------------------------------------------------

@dataclass
class VerseSlice:
    objects: dict[str, FinCategory] = field(default_factory=dict)
    excluded: dict[str, LawReport] = field(default_factory=dict)
    homs: dict[tuple[str, str], FinCategory] = field(default_factory=dict)
    hom_reports: dict[tuple[str, str], LawReport] = field(default_factory=dict)
    interchange_checked: int = 0
    interchange_failures: list[Any] = field(default_factory=list)


def verse_slice(m: AmbientModel, guards: Guards | None = None) -> VerseSlice:
    """Law-checked Set_V per universe, functor categories between them."""
    guards = guards or default_guards()
    out = VerseSlice()
    for u in m.multiverse:
        cat, report = build_set_category(u, guards)
        if report.is_category:
            out.objects[u.name] = cat
        else:
            out.excluded[u.name] = report
    names = list(out.objects)
    for a in names:
        for b in names:
            fc = functor_category(out.objects[a], out.objects[b], guards)
            out.homs[(a, b)] = fc
            out.hom_reports[(a, b)] = check_category_laws(fc)
    for a in names:
        for b in names:
            for c in names:
                cells = interchange_cells(out.objects[b], out.objects[c],
                                          out.homs[(a, b)], out.homs[(b, c)])
                for ok, quad in cells:
                    out.interchange_checked += 1
                    if not ok:
                        out.interchange_failures.append(((a, b, c), quad))
    return out
