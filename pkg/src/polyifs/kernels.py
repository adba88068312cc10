"""Backend selection for the hot loops.

The Cython extension ``_ckernels`` is used when it was built and imports
cleanly; otherwise the numpy/pure-Python module ``_pykernels`` is used.  Set
``POLYIFS_PURE_PYTHON=1`` to force the fallback.
"""
import os

import numpy as np

from . import _pykernels

_compiled = None
if not os.environ.get("POLYIFS_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["cython"] = _compiled

BACKEND = "cython" if _compiled is not None else "python"
_impl = BACKENDS[BACKEND]

COLLINEAR_EPS = 1e-12


def get_backend(name=None):
    return _impl if name is None else BACKENDS[name]


def cloud_points(table, backend=None):
    return get_backend(backend).cloud_points(table)


def float_choices(n, phi, theta, k0, count, tol, backend=None):
    return get_backend(backend).float_choices(
        int(n), float(phi), float(theta), int(k0), int(count), float(tol)
    )


def hull_indices(xs, ys, eps=COLLINEAR_EPS, backend=None):
    """Indices into (xs, ys) of the counterclockwise convex hull.

    Exact duplicates are removed before the chain runs; an all-equal input
    yields a single index and an all-collinear input its two extremes.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if xs.size == 0:
        raise ValueError("convex hull of an empty point set")
    order = np.lexsort((ys, xs))
    sx = xs[order]
    sy = ys[order]
    keep = np.ones(sx.size, dtype=bool)
    keep[1:] = (sx[1:] != sx[:-1]) | (sy[1:] != sy[:-1])
    order = order[keep]
    sx = np.ascontiguousarray(sx[keep])
    sy = np.ascontiguousarray(sy[keep])
    pos = get_backend(backend).monotone_chain(sx, sy, float(eps))
    return order[pos]
