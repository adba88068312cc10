"""Pure-Python/numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` operation for operation, so both backends
produce bit-identical results.  The compiled module is preferred when it
imports; see ``polyifs.kernels``.
"""
import math

import numpy as np


def cloud_points(table):
    """Sum ``table[k, j_k]`` over every word, ordered lexicographically.

    ``table`` has shape (depth, n); row k holds c**k * xi**j.  The first
    digit is the most significant, so word (j_0, ..., j_{m-1}) lands at
    index sum(j_k * n**(m-1-k)).
    """
    table = np.asarray(table, dtype=np.complex128)
    pts = np.zeros(1, dtype=np.complex128)
    for row in table:
        pts = (pts[:, None] + row[None, :]).ravel()
    return pts


def monotone_chain(xs, ys, eps):
    """Andrew's monotone chain over points already sorted by (x, y).

    Returns positions (into the sorted arrays) of the counterclockwise hull,
    starting from the lowest-x point.  Turns with cross product <= eps are
    treated as non-left and popped, which drops collinear and duplicate
    points.
    """
    npts = len(xs)
    if npts < 3:
        return np.arange(npts, dtype=np.int64)
    xs = xs.tolist()
    ys = ys.tolist()
    hull = [0] * (2 * npts)
    top = 0
    for i in range(npts):
        while top >= 2:
            a, b = hull[top - 2], hull[top - 1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross > eps:
                break
            top -= 1
        hull[top] = i
        top += 1
    lower_top = top + 1
    for i in range(npts - 2, -1, -1):
        while top >= lower_top:
            a, b = hull[top - 2], hull[top - 1]
            cross = (xs[b] - xs[a]) * (ys[i] - ys[a]) - (ys[b] - ys[a]) * (xs[i] - xs[a])
            if cross > eps:
                break
            top -= 1
        hull[top] = i
        top += 1
    return np.array(hull[: top - 1], dtype=np.int64)


def float_choices(n, phi, theta, k0, count, tol):
    """Nearest digit and tie flag for steps k0 .. k0+count-1 (float angles).

    For each k the target offset x = (theta - k*phi) mod 1 is compared to the
    grid m/n.  A tie means x sits within ``tol`` (circular distance) of a
    half-step m/n + 1/(2n); then ``low`` is m and the pair is (m, m+1).
    """
    low = np.empty(count, dtype=np.int64)
    pair = np.zeros(count, dtype=np.uint8)
    half_band = tol * n
    for i in range(count):
        k = k0 + i
        x = theta - math.fmod(k * phi, 1.0)
        x -= math.floor(x)
        y = x * n
        f = math.floor(y)
        t = y - f
        if abs(t - 0.5) <= half_band:
            low[i] = int(f) % n
            pair[i] = 1
        elif t > 0.5:
            low[i] = (int(f) + 1) % n
        else:
            low[i] = int(f) % n
    return low, pair
