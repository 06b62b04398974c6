from .audit import (
    FAILS,
    HOLDS,
    OVERFLOW,
    READING,
    SKIP,
    AuditEntry,
    AuditReport,
    audit_axioms,
    internal_form,
    replay,
    universe_models,
)
from .catalogue import Catalogue, SchemaInstance
from .modelfile import SHIPPED, load_model, parse_model
from .universe import (
    AmbientModel,
    Universe,
    build_rank_fragment,
    build_weak_model,
    universe_properties,
)

__all__ = [name for name in dir() if not name.startswith("_")]
