"""Resource guards.

Defaults can be overridden with the ``SETVERSE_GUARDS`` environment variable,
a comma separated list of ``name=value`` pairs, e.g.
``SETVERSE_GUARDS="powerset=4096,ef_depth=3"``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_VAR = "SETVERSE_GUARDS"


@dataclass(frozen=True)
class Guards:
    powerset: int = 2**16          # max cardinality of a powerset / product result
    fragment_rank: int = 5         # largest fully materialized rank fragment
    eval_budget: int = 5_000_000   # quantifier instantiations per evaluation
    functors: int = 200_000        # candidate assignments tried per functor search
    ef_depth: int = 4
    powerclass_depth: int = 8      # iterated powerclass guard for class ranks
    set_objects: int = 64          # objects in a full Set_V build
    class_assignments: int = 100_000  # outer assignments in a class-level audit

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"guard {f.name} must be positive")

    def with_overrides(self, spec: str) -> "Guards":
        changes = {}
        names = {f.name for f in fields(self)}
        for item in filter(None, (s.strip() for s in spec.split(","))):
            key, _, value = item.partition("=")
            key = key.strip()
            if key not in names:
                raise ValueError(f"unknown guard {key!r}")
            changes[key] = int(value)
        return replace(self, **changes)


def default_guards() -> Guards:
    spec = os.environ.get(ENV_VAR, "")
    return Guards().with_overrides(spec) if spec else Guards()
