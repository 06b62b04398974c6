"""Plain-text model descriptions.

::

    # the weak model
    world = rank 7
    universe V = {0, 1, 2, 3, {3}}
    universe F = fragment 4
    relation W = {(0, 1), (1, 1)}     # optional non-standard membership
    multiverse = [V]

``world`` defaults to the smallest rank fragment holding every universe.
Shipped models are addressed by bare name (``weak``, ``frag4``, ...).
"""
from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from ..config import Guards, default_guards
from ..errors import LiteralSyntaxError, ModelFileError
from ..hf import HFSet, _parse_value, _skip_ws, rank_fragment
from ..logic.evaluate import RankDomain
from .universe import AmbientModel, Universe

SHIPPED = ("weak", "frag2", "frag3", "frag4", "frag5", "singleton")

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_UNIVERSE = re.compile(rf"universe\s+({_NAME})\s*=\s*(.+)$")
_RELATION = re.compile(rf"relation\s+({_NAME})\s*=\s*(.+)$")
_MULTIVERSE = re.compile(r"multiverse\s*=\s*\[(.*)\]$")
_WORLD = re.compile(r"world\s*=\s*rank\s+(\d+)$")
_FRAGMENT = re.compile(r"fragment\s+(\d+)$")


def _literal(text: str, lineno: int) -> HFSet:
    try:
        value, pos = _parse_value(text, _skip_ws(text, 0))
    except LiteralSyntaxError as exc:
        raise ModelFileError(str(exc), lineno) from None
    if _skip_ws(text, pos) != len(text):
        raise ModelFileError("trailing input after set literal", lineno)
    return value


def _pairs(text: str, lineno: int) -> list[tuple[HFSet, HFSet]]:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ModelFileError("relation must be written {(a, b), ...}", lineno)
    pairs = []
    pos = _skip_ws(text, 1)
    end = len(text) - 1
    try:
        while pos < end:
            if text[pos] != "(":
                raise ModelFileError(f"expected '(' at column {pos}", lineno)
            x, pos = _parse_value(text, _skip_ws(text, pos + 1))
            pos = _skip_ws(text, pos)
            if text[pos] != ",":
                raise ModelFileError(f"expected ',' at column {pos}", lineno)
            y, pos = _parse_value(text, _skip_ws(text, pos + 1))
            pos = _skip_ws(text, pos)
            if text[pos] != ")":
                raise ModelFileError(f"expected ')' at column {pos}", lineno)
            pairs.append((x, y))
            pos = _skip_ws(text, pos + 1)
            if pos < end and text[pos] == ",":
                pos = _skip_ws(text, pos + 1)
    except (LiteralSyntaxError, IndexError) as exc:
        raise ModelFileError(f"bad relation: {exc}", lineno) from None
    return pairs


def parse_model(text: str, name: str = "model", guards: Guards | None = None) -> AmbientModel:
    guards = guards or default_guards()
    carriers: dict[str, HFSet] = {}
    relations: dict[str, list] = {}
    order: list[str] | None = None
    world: int | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _WORLD.match(line):
            world = int(m.group(1))
        elif m := _UNIVERSE.match(line):
            uname, body = m.groups()
            if uname in carriers:
                raise ModelFileError(f"universe {uname} defined twice", lineno)
            if f := _FRAGMENT.match(body.strip()):
                carriers[uname] = HFSet(rank_fragment(int(f.group(1)), guards.fragment_rank))
            else:
                carriers[uname] = _literal(body, lineno)
        elif m := _RELATION.match(line):
            relations[m.group(1)] = _pairs(m.group(2), lineno)
        elif m := _MULTIVERSE.match(line):
            order = [s.strip() for s in m.group(1).split(",") if s.strip()]
        else:
            raise ModelFileError(f"cannot parse {line!r}", lineno)

    if order is None:
        order = list(carriers)
    for uname in order:
        if uname not in carriers:
            raise ModelFileError(f"multiverse names undefined universe {uname}")
    for uname in relations:
        if uname not in carriers:
            raise ModelFileError(f"relation given for undefined universe {uname}")
    try:
        universes = [Universe(u, carriers[u], relations.get(u)) for u in order]
    except ValueError as exc:
        raise ModelFileError(str(exc)) from None
    if world is None:
        world = 1 + max((x.rank for u in universes for x in u.carrier), default=-1)
    try:
        return AmbientModel(name, RankDomain(world, guards.fragment_rank), tuple(universes))
    except ValueError as exc:
        raise ModelFileError(str(exc)) from None


def load_model(ref: str | Path, guards: Guards | None = None) -> AmbientModel:
    """Load a shipped model by name or a model file by path."""
    ref = str(ref)
    if ref in SHIPPED:
        text = resources.files("setverse").joinpath(f"data/models/{ref}.model").read_text()
        return parse_model(text, ref, guards)
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ModelFileError(f"cannot read model {ref}: {exc.strerror}") from None
    return parse_model(text, path.stem, guards)
