"""Discrete symbol calculus on phase-space tori.

Symbols are complex arrays of shape (N,) * 2n with axes x_1..x_n, xi_1..xi_n
on the grid with step sqrt(2 pi / N). Doubled fields are (N**2n, N**2n).
"""

import json

from ._moyal import (
    DimensionMismatch,
    FormatError,
    GridError,
    GridMismatch,
    IdempotencyFailure,
    MoyalError,
    NonGridPoint,
    SizeGuard,
    check_ids,
    compose,
    crichi_defect,
    gauss0,
    gaussian,
    grid_info,
    idempotent_gaussian,
    idempotent_window_defects,
    laws,
    mod_map,
    modulation_norm,
    pair,
    random_fields,
    read_symbol,
    registry_version,
    stft,
    symplectic_fourier,
    write_symbol,
)
from ._moyal import verify_json as _verify_json


def verify(law="weyl", n=1, N=16, seed=7):
    """Run the check suite and return the report as a dict."""
    return json.loads(_verify_json(law, n, N, seed))


__all__ = [name for name in dir() if not name.startswith("_")]
