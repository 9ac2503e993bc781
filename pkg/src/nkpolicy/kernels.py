"""Backend selection for the classification kernel.

The compiled kernel is preferred when the extension was built; the interpreted
one is a drop-in replacement.  Both expose classify_point and classify_grid
with identical semantics (see _kernel_py for the region code table).
"""
from __future__ import annotations

from ._kernel_py import (
    BORDER_DISCRIMINANT,
    BORDER_FLIP,
    BORDER_HOPF,
    BORDER_SADDLE_NODE,
    R1_SADDLE,
    R2_SOURCE_REAL_STRADDLE,
    R3_SADDLE_NEG,
    R4_1_SINK_REAL,
    R4_2_SINK_COMPLEX,
    R4_3_SOURCE_COMPLEX,
    R4_4_SOURCE_REAL,
    R4_5_BOTH_BELOW_MINUS1,
)

try:
    from . import _kernel_cy as _impl

    BACKEND = "compiled"
except ImportError:  # extension not built; interpreted fallback
    from . import _kernel_py as _impl

    BACKEND = "interpreted"

classify_point = _impl.classify_point
classify_grid = _impl.classify_grid

__all__ = [
    "BACKEND",
    "classify_point",
    "classify_grid",
    "R1_SADDLE",
    "R2_SOURCE_REAL_STRADDLE",
    "R3_SADDLE_NEG",
    "R4_1_SINK_REAL",
    "R4_2_SINK_COMPLEX",
    "R4_3_SOURCE_COMPLEX",
    "R4_4_SOURCE_REAL",
    "R4_5_BOTH_BELOW_MINUS1",
    "BORDER_SADDLE_NODE",
    "BORDER_FLIP",
    "BORDER_HOPF",
    "BORDER_DISCRIMINANT",
]
