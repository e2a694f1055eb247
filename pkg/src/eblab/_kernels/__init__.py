"""Hot enumeration kernels with two interchangeable backends.

The axiom scans over unary-table spaces dominate the runtime of brute-force
enumeration, so they are implemented twice: as numba ``@njit`` loops and as
vectorised pure-numpy sweeps.  Both backends scan the same candidate space in
the same lexicographic order and return identical arrays, so swapping them
never changes results, only speed.

Selection: set ``EBLAB_KERNELS=numpy`` to force the fallback, or
``EBLAB_KERNELS=numba`` to require numba (import error if unavailable).  By
default numba is used when importable.
"""

from __future__ import annotations

import os

import numpy as np

from . import numpy_impl

_requested = os.environ.get("EBLAB_KERNELS", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(f"EBLAB_KERNELS must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    _impl = numpy_impl
    BACKEND = "numpy"
else:
    try:
        from . import numba_impl as _impl

        BACKEND = "numba"
    except ImportError:
        if _requested == "numba":
            raise
        _impl = numpy_impl
        BACKEND = "numpy"


def _prep(table) -> np.ndarray:
    return np.ascontiguousarray(table, dtype=np.int64)


def _prep_bool(table) -> np.ndarray:
    return np.ascontiguousarray(table, dtype=np.bool_)


def residuation_witness(mult, impl, leq):
    """First (a, b, c) with ``a*b <= c`` and ``a <= b->c`` disagreeing, or None."""
    return _impl.residuation_witness(_prep(mult), _prep(impl), _prep_bool(leq))


def ebl_pair_scan(meet, join, mult, impl, leq, bot, top) -> np.ndarray:
    """All (forall, exists) table pairs satisfying the epistemic axioms.

    Returns a ``(k, 2n)`` int64 array, each row ``forall ++ exists``, in
    lexicographic order over the pair of tables.
    """
    return _impl.ebl_pair_scan(
        _prep(meet), _prep(join), _prep(mult), _prep(impl), _prep_bool(leq), int(bot), int(top)
    )


def pseudomonadic_scan(meet, join, impl, leq, bot, top) -> np.ndarray:
    """All exists-tables satisfying P1-P4 on a Boolean algebra, ``(k, n)`` int64."""
    return _impl.pseudomonadic_scan(
        _prep(meet), _prep(join), _prep(impl), _prep_bool(leq), int(bot), int(top)
    )


def godel_pair_scan(meet, join, mult, impl, leq, bot, top) -> np.ndarray:
    """All (forall, exists) pairs satisfying the bi-modal KD45 axioms, ``(k, 2n)``."""
    return _impl.godel_pair_scan(
        _prep(meet), _prep(join), _prep(mult), _prep(impl), _prep_bool(leq), int(bot), int(top)
    )


def monadic_pair_scan(meet, join, mult, impl, leq, bot, top) -> np.ndarray:
    """All (forall, exists) pairs satisfying the monadic axioms, ``(k, 2n)``."""
    return _impl.monadic_pair_scan(
        _prep(meet), _prep(join), _prep(mult), _prep(impl), _prep_bool(leq), int(bot), int(top)
    )
