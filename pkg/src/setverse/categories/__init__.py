from .catfile import SHIPPED as SHIPPED_CATEGORIES, load_category, parse_category
from .core import (
    FinCategory,
    Functor,
    LawReport,
    NatTrans,
    check_category_laws,
    compose_functors,
    enumerate_functors,
    functor_category,
    horizontal,
    identity_functor,
    interchange_cells,
    is_natural,
    natural_transformations,
    vertical,
)
from .setcat import (
    Arrow,
    VCategoryCheck,
    VerseSlice,
    build_set_category,
    check_v_category,
    decode_graph,
    encode_graph,
    internal_functions,
    verse_slice,
)

__all__ = [name for name in dir() if not name.startswith("_")]
