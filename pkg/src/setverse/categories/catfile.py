"""Plain-text category tables.

::

    object A
    object B
    arrow 1A : A -> A
    arrow 1B : B -> B
    arrow f : A -> B
    identity A = 1A
    identity B = 1B
    compose f . 1A = f        # f o 1A

Composites with an identity on either side are filled in unless a
``compose`` row gives them explicitly.
"""
from __future__ import annotations

import re
from importlib import resources
from pathlib import Path

from ..errors import ModelFileError
from .core import FinCategory

SHIPPED = ("arrow", "discrete2", "terminal")

_LABEL = r"[A-Za-z0-9_']+"
_OBJECT = re.compile(rf"object\s+({_LABEL})$")
_ARROW = re.compile(rf"arrow\s+({_LABEL})\s*:\s*({_LABEL})\s*->\s*({_LABEL})$")
_IDENTITY = re.compile(rf"identity\s+({_LABEL})\s*=\s*({_LABEL})$")
_COMPOSE = re.compile(rf"compose\s+({_LABEL})\s*\.\s*({_LABEL})\s*=\s*({_LABEL})$")


def parse_category(text: str, name: str = "category") -> FinCategory:
    objects: list[str] = []
    arrows: dict[str, tuple[str, str]] = {}
    identity: dict[str, str] = {}
    compose: dict[tuple[str, str], str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _OBJECT.match(line):
            if m.group(1) in objects:
                raise ModelFileError(f"object {m.group(1)} declared twice", lineno)
            objects.append(m.group(1))
        elif m := _ARROW.match(line):
            label, a, b = m.groups()
            if label in arrows:
                raise ModelFileError(f"arrow {label} declared twice", lineno)
            for end in (a, b):
                if end not in objects:
                    raise ModelFileError(f"arrow {label} uses undeclared object {end}", lineno)
            arrows[label] = (a, b)
        elif m := _IDENTITY.match(line):
            identity[m.group(1)] = m.group(2)
        elif m := _COMPOSE.match(line):
            f, g, h = m.groups()
            for label in (f, g, h):
                if label not in arrows:
                    raise ModelFileError(f"compose row names unknown arrow {label}", lineno)
            compose[(f, g)] = h
        else:
            raise ModelFileError(f"cannot parse {line!r}", lineno)
    for a, i in identity.items():
        if a not in objects or i not in arrows:
            raise ModelFileError(f"identity {a} = {i} names an unknown object or arrow")
    for f, (a, b) in arrows.items():
        if a in identity:
            compose.setdefault((f, identity[a]), f)
        if b in identity:
            compose.setdefault((identity[b], f), f)
    return FinCategory(objects, arrows, identity, compose, name=name)


def load_category(ref: str | Path) -> FinCategory:
    """A shipped category by name or a category file by path."""
    ref = str(ref)
    if ref in SHIPPED:
        text = resources.files("setverse").joinpath(f"data/categories/{ref}.cat").read_text()
        return parse_category(text, ref)
    path = Path(ref)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ModelFileError(f"cannot read category {ref}: {exc.strerror}") from None
    return parse_category(text, path.stem)
