"""Kernel backend selection.

Imports the compiled extension when present, otherwise the pure-Python
reference kernels.  Both expose the same functions with identical results;
`backend_name()` reports which one is active.  The pure module is always
importable for cross-checking and for arbitrary-precision inputs.
"""

from __future__ import annotations

from . import _purekern as pure

try:
    from . import _fastkern as fast  # type: ignore[attr-defined]

    HAVE_FAST = True
except ImportError:  # pragma: no cover - depends on build environment
    fast = None
    HAVE_FAST = False

ALL_ROOTS = pure.ALL_ROOTS

impl = fast if HAVE_FAST else pure


def backend_name() -> str:
    return "cython" if HAVE_FAST else "pure-python"


def search_slices(c3, lin, quad, cub, bound, force_pure: bool = False):
    """Dispatch the slice search; falls back to pure Python whenever the
    compiled kernel could overflow or does not apply."""
    if force_pure or not HAVE_FAST or c3 == 0 or _search_overflow_risk(c3, lin, quad, cub, bound):
        return pure.search_slices(c3, lin, quad, cub, bound)
    return fast.search_slices(c3, lin, quad, cub, bound)


def _search_overflow_risk(c3, lin, quad, cub, bound) -> bool:
    total = abs(c3) + sum(map(abs, lin)) + sum(map(abs, quad)) + sum(map(abs, cub))
    # evaluation accumulates in int128 inside the kernel, but individual
    # coefficients of the slice cubic must stay within int64
    return total * (bound + 1) ** 3 >= 2**62


def gf_pair_solve(p, k, expt, logt, eqs, force_pure: bool = False):
    if force_pure or not HAVE_FAST or p**k >= 2**20:
        return pure.gf_pair_solve(p, k, list(expt), list(logt), eqs)
    import numpy as np

    return fast.gf_pair_solve(
        p, k, np.ascontiguousarray(expt, dtype=np.int64),
        np.ascontiguousarray(logt, dtype=np.int64), eqs
    )


def gf_count_points_chart(p, k, expt, logt, eq, force_pure: bool = False):
    if force_pure or not HAVE_FAST or p**k >= 2**20:
        return pure.gf_count_points_chart(p, k, list(expt), list(logt), eq)
    import numpy as np

    return fast.gf_count_points_chart(
        p, k, np.ascontiguousarray(expt, dtype=np.int64),
        np.ascontiguousarray(logt, dtype=np.int64), eq
    )
