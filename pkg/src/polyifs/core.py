"""The iterated function system f_j(z) = c*z + xi**j and its point clouds.

Angles are fractions of a full turn in [0, 1).  An angle is either an exact
``fractions.Fraction`` or a ``float``; which one the caller supplies decides
whether downstream tie detection is exact or tolerance based.
"""
from __future__ import annotations

import cmath
import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import kernels
from .errors import BudgetExceededError, InvalidParamsError, InvalidWordError

Angle = Union[Fraction, float]

DEFAULT_BUDGET = 10**7
DEFAULT_RESOLUTION = 1e-9


# -- angles -----------------------------------------------------------------

def parse_angle(text) -> Angle:
    """'p/q' -> exact Fraction (auto-reduced); anything else -> float.

    No attempt is made to recover a rational from a decimal literal.
    """
    if isinstance(text, (Fraction, float)):
        return normalize_angle(text)
    if isinstance(text, int):
        return normalize_angle(Fraction(text))
    s = str(text).strip()
    if "/" in s:
        try:
            return normalize_angle(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidParamsError(f"bad rational angle {text!r}: {exc}") from None
    try:
        return normalize_angle(float(s))
    except ValueError:
        raise InvalidParamsError(f"bad angle {text!r}") from None


def normalize_angle(a: Angle) -> Angle:
    if isinstance(a, Fraction):
        return a - math.floor(a)
    if isinstance(a, int):
        return Fraction(a % 1)
    a = float(a)
    if not math.isfinite(a):
        raise InvalidParamsError(f"angle must be finite, got {a}")
    a = a - math.floor(a)
    # a tiny negative input rounds up to exactly 1.0
    return 0.0 if a >= 1.0 else a


def is_exact(a) -> bool:
    return isinstance(a, Fraction)


def circular_distance(a: Angle, b: Angle) -> Angle:
    d = normalize_angle(a - b) if is_exact(a) and is_exact(b) else normalize_angle(float(a) - float(b))
    return min(d, 1 - d)


def format_angle(a: Angle):
    """JSON form of an angle: 'p/q' string when exact, float otherwise."""
    if is_exact(a):
        return f"{a.numerator}/{a.denominator}"
    return float(a)


def unit(a: Angle) -> complex:
    """e^{2 pi i a}, with exact values at multiples of 1/4."""
    if is_exact(a):
        quarter = {Fraction(0): 1, Fraction(1, 4): 1j, Fraction(1, 2): -1, Fraction(3, 4): -1j}
        if a in quarter:
            return complex(quarter[a])
    return cmath.exp(2j * math.pi * float(a))


# -- parameters -------------------------------------------------------------

@dataclass(frozen=True)
class IfsParams:
    """n generators, contraction modulus r, rotation angle phi (c = r e^{2 pi i phi})."""

    n: int
    r: float
    phi: Angle

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 2:
            raise InvalidParamsError(f"n must be an integer >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        r = float(self.r)
        if not 0.0 < r < 1.0:
            raise InvalidParamsError(f"r must satisfy 0 < r < 1, got {self.r!r}")
        object.__setattr__(self, "r", r)
        phi = self.phi
        if isinstance(phi, str):
            phi = parse_angle(phi)
        object.__setattr__(self, "phi", normalize_angle(phi))

    @classmethod
    def parse(cls, n, r, phi) -> "IfsParams":
        return cls(int(n), float(r), parse_angle(phi))

    @property
    def exact(self) -> bool:
        return is_exact(self.phi)

    @property
    def c(self) -> complex:
        return self.r * unit(self.phi)

    @property
    def xi(self) -> complex:
        return unit(Fraction(1, self.n))

    @property
    def roots(self) -> np.ndarray:
        return np.array([unit(Fraction(j, self.n)) for j in range(self.n)])

    @property
    def p(self) -> int:
        if not self.exact:
            raise InvalidParamsError("phi is not exact")
        return self.phi.numerator

    @property
    def q(self) -> int:
        if not self.exact:
            raise InvalidParamsError("phi is not exact")
        return self.phi.denominator

    def to_dict(self) -> dict:
        return {"n": self.n, "r": self.r, "phi": format_angle(self.phi)}


# -- words and points -------------------------------------------------------

def check_word(params: IfsParams, word: Sequence[int]) -> tuple:
    word = tuple(int(d) for d in word)
    for pos, d in enumerate(word):
        if not 0 <= d < params.n:
            raise InvalidWordError(f"digit {d} at position {pos} is outside [0, {params.n - 1}]")
    return word


def evaluate(params: IfsParams, word: Sequence[int]) -> complex:
    """Sum of c**k * xi**word[k], i.e. f_{w0} o ... o f_{w(m-1)} applied to 0.

    For any infinite extension of ``word`` the limit point lies within
    ``tail_bound(params, len(word))`` of the result.
    """
    word = check_word(params, word)
    roots = params.roots.tolist()
    c = params.c
    z = 0j
    for d in reversed(word):
        z = c * z + roots[d]
    return z


def fixed_point(params: IfsParams, digit: int) -> complex:
    """Fixed point xi**digit / (1 - c) of f_digit (image of the constant word)."""
    if not 0 <= int(digit) < params.n:
        raise InvalidWordError(f"digit {digit} is outside [0, {params.n - 1}]")
    return complex(params.roots[int(digit)]) / (1 - params.c)


def tail_bound(params: IfsParams, depth: int) -> float:
    """r**depth / (1 - r): bound on |pi(f) - evaluate(f[:depth])|."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    return params.r**depth / (1.0 - params.r)


def default_depth(params: IfsParams, resolution: float = DEFAULT_RESOLUTION) -> int:
    """Smallest depth whose tail bound is below ``resolution``."""
    m = 0
    while tail_bound(params, m) >= resolution:
        m += 1
    return m


def power_table(params: IfsParams, depth: int) -> np.ndarray:
    """Array T with T[k, j] = c**k * xi**j for k < depth."""
    c = params.c
    ck = np.array([c**k for k in range(depth)], dtype=np.complex128)
    return ck[:, None] * params.roots[None, :]


def default_budget() -> int:
    env = os.environ.get("POLYIFS_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class PointCloud:
    params: IfsParams
    depth: int
    points: np.ndarray
    tail_bound: float
    pruned: bool = False

    def __len__(self):
        return len(self.points)

    def to_csv(self) -> str:
        lines = ["re,im"]
        lines += [f"{z.real:.17g},{z.imag:.17g}" for z in self.points.tolist()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        d = self.params.to_dict()
        d.update(
            depth=self.depth,
            tail_bound=self.tail_bound,
            points=[[z.real, z.imag] for z in self.points.tolist()],
        )
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PointCloud":
        d = json.loads(text)
        params = IfsParams.parse(d["n"], d["r"], d["phi"])
        pts = np.array([complex(x, y) for x, y in d["points"]], dtype=np.complex128)
        return cls(params, int(d["depth"]), pts, float(d["tail_bound"]))


def enumerate_cloud(params: IfsParams, depth: int, budget: int | None = None) -> PointCloud:
    """All n**depth partial sums, lexicographic in the word (first digit major).

    Every limit-set point is within ``tail_bound(params, depth)`` of a cloud
    point: the limit set is the union of the cloud translates of c**depth
    times itself.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    budget = default_budget() if budget is None else budget
    required = params.n**depth
    if required > budget:
        raise BudgetExceededError(required, budget)
    pts = kernels.cloud_points(power_table(params, depth))
    return PointCloud(params, depth, pts, tail_bound(params, depth))


def hull_cloud(params: IfsParams, depth: int) -> PointCloud:
    """Hull vertices of the depth-``depth`` cloud, without enumerating it.

    Uses hull(A + B) = hull(hull(A) + B) for Minkowski sums: the cloud at
    depth k+1 is the cloud at depth k plus the n vectors c**k xi**j, so the
    hull can be pruned after every step.  Any linear functional has the same
    maximum over this pruned cloud as over the full one.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    table = power_table(params, depth)
    pts = np.zeros(1, dtype=np.complex128)
    for row in table:
        pts = (pts[:, None] + row[None, :]).ravel()
        idx = kernels.hull_indices(pts.real, pts.imag)
        pts = pts[idx]
    return PointCloud(params, depth, pts, tail_bound(params, depth), pruned=True)
