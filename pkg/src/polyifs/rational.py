"""Exact hull structure when the rotation angle phi = p/q is rational.

The constellation directions repeat with period b = q / gcd(n, q), relabeled
by the digit shift s = p*a mod n where b/q = a/n.  Consequently the hull is a
polygon with n*b faces, one per support angle in

    Theta = { l*phi + m/n + 1/(2n) : 0 <= l < b, 0 <= m < n },

and the extreme set of each face is the attractor of two real contractions
z -> r**b z + t_i.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    IfsParams,
    default_depth,
    evaluate,
    format_angle,
    normalize_angle,
    parse_angle,
    tail_bound,
)
from .errors import NotAFaceError, RationalRequiredError, StructureError
from .extreme import UNIQUE, SupportQuery, extreme_points, extreme_word_set, v_theta

VERTEX_TOL = 1e-9


def period_b(n: int, q: int) -> tuple:
    """(b, a) with b*n = lcm(n, q) and b/q = a/n."""
    if n < 2 or q < 1:
        raise ValueError("need n >= 2 and q >= 1")
    g = math.gcd(n, q)
    return q // g, n // g


@dataclass(frozen=True)
class RationalIfsParams:
    base: IfsParams
    b: int
    a: int

    @classmethod
    def from_params(cls, params: IfsParams) -> "RationalIfsParams":
        if not params.exact:
            raise RationalRequiredError("the rational hull structure")
        b, a = period_b(params.n, params.q)
        return cls(params, b, a)

    @classmethod
    def parse(cls, n, r, phi) -> "RationalIfsParams":
        return cls.from_params(IfsParams.parse(n, r, phi))

    @property
    def n(self):
        return self.base.n

    @property
    def r(self):
        return self.base.r

    @property
    def p(self):
        return self.base.p

    @property
    def q(self):
        return self.base.q

    @property
    def digit_shift(self) -> int:
        return (self.p * self.a) % self.n

    @property
    def face_count(self) -> int:
        return self.n * self.b


def as_rational(params) -> RationalIfsParams:
    if isinstance(params, RationalIfsParams):
        return params
    return RationalIfsParams.from_params(params)


def theta_set(params) -> list:
    """The n*b face angles, exact and sorted ascending."""
    rp = as_rational(params)
    n, phi = rp.n, rp.base.phi
    thetas = {
        normalize_angle(l * phi + Fraction(m, n) + Fraction(1, 2 * n))
        for l in range(rp.b)
        for m in range(n)
    }
    if len(thetas) != rp.face_count:
        raise StructureError(f"expected {rp.face_count} distinct face angles, got {len(thetas)}")
    return sorted(thetas)


@dataclass(frozen=True)
class FaceIfs:
    """Two maps z -> lam*z + t_i whose attractor is the face's extreme set.

    Block word u_i (length b) is the extreme prefix; later blocks reuse it
    with every digit lowered by ``digit_shift`` per block, which cancels the
    rotation of c**b and leaves the real contraction ``lam`` = r**b.
    """

    theta: Fraction
    lam: float
    block_words: tuple
    translations: tuple
    digit_shift: int
    tie_position: int
    offset: complex

    @property
    def length(self) -> float:
        """Distance between the two endpoints, from the exact summand difference.

        For late tie positions this is far below double resolution of the
        endpoints themselves.
        """
        return abs(self.offset) / (1 - self.lam)

    @property
    def endpoints(self) -> tuple:
        return tuple(t / (1 - self.lam) for t in self.translations)

    @property
    def is_full_interval(self) -> bool:
        return self.lam >= 0.5

    def apply(self, i: int, z: complex) -> complex:
        return self.lam * z + self.translations[i]

    def point(self, bits, tail: int = 0) -> complex:
        """Image of the fixed point of map ``tail`` under bits[0] o bits[1] o ..."""
        z = self.endpoints[tail]
        for i in reversed(bits):
            z = self.apply(i, z)
        return z

    def extreme_word(self, bits, n: int) -> tuple:
        """Letters of the limit-set word selected by block choices ``bits``."""
        out = []
        for blk, i in enumerate(bits):
            out.extend((d - blk * self.digit_shift) % n for d in self.block_words[i])
        return tuple(out)


def _block_choices(rp: RationalIfsParams, theta: Fraction):
    ws = extreme_word_set(rp.base, SupportQuery(theta), rp.b)
    return [int(x) for x in ws.low[: rp.b]], [bool(x) for x in ws.pair[: rp.b]]


def face_ifs(params, theta) -> FaceIfs:
    rp = as_rational(params)
    theta = parse_angle(theta) if isinstance(theta, str) else normalize_angle(theta)
    if not isinstance(theta, Fraction):
        raise NotAFaceError("face angles must be exact rationals")
    low, pair = _block_choices(rp, theta)
    ties = [k for k, t in enumerate(pair) if t]
    if not ties:
        raise NotAFaceError(f"theta={format_angle(theta)} is not in the face-angle set")
    if len(ties) != 1:
        raise StructureError(f"expected one tie per block at theta={theta}, found {ties}")
    k0 = ties[0]
    u0 = tuple(low)
    u1 = tuple((d + 1) % rp.n if k == k0 else d for k, d in enumerate(low))
    t = (evaluate(rp.base, u0), evaluate(rp.base, u1))
    roots = rp.base.roots
    offset = rp.base.c**k0 * (roots[u1[k0]] - roots[u0[k0]])
    if offset == 0:
        raise StructureError("face translations coincide")
    return FaceIfs(theta, rp.r**rp.b, (u0, u1), t, rp.digit_shift, k0, complex(offset))


def vertex_at(params, theta) -> complex:
    """Unique extreme point at a non-face angle, summed in closed form.

    The block word repeats (up to the digit shift), so the infinite sum is
    evaluate(block) / (1 - r**b).
    """
    rp = as_rational(params)
    low, pair = _block_choices(rp, Fraction(theta))
    if any(pair):
        raise NotAFaceError(f"theta={theta} is a face angle; its extreme set is not a point")
    return evaluate(rp.base, low) / (1 - rp.r**rp.b)


@dataclass(frozen=True)
class Face:
    theta: Fraction
    ifs: FaceIfs
    endpoint_lo: complex
    endpoint_hi: complex

    @property
    def is_full_interval(self) -> bool:
        return self.ifs.is_full_interval


@dataclass(frozen=True)
class HullPolygon:
    params: RationalIfsParams
    faces: tuple
    vertices: tuple

    @property
    def thetas(self) -> list:
        return [f.theta for f in self.faces]

    @property
    def area(self) -> float:
        v = self.vertices
        s = 0.0
        for i in range(len(v)):
            a, b = v[i], v[(i + 1) % len(v)]
            s += a.real * b.imag - b.real * a.imag
        return 0.5 * s

    @property
    def degenerate(self) -> bool:
        return abs(self.area) < 1e-12

    def support(self, theta) -> float:
        return max(v_theta(theta, z) for z in self.vertices)

    def outside_distance(self, points) -> np.ndarray:
        """Largest violation of any face half-plane, per point (<= 0 inside)."""
        pts = np.asarray(points, dtype=np.complex128)
        worst = np.full(pts.shape, -np.inf)
        for f in self.faces:
            u = complex(np.exp(2j * np.pi * float(f.theta)))
            h = v_theta(f.theta, f.endpoint_lo)
            worst = np.maximum(worst, pts.real * u.real + pts.imag * u.imag - h)
        return worst

    def to_dict(self) -> dict:
        rp = self.params
        return {
            "n": rp.n,
            "r": rp.r,
            "phi": format_angle(rp.base.phi),
            "b": rp.b,
            "a": rp.a,
            "theta": [format_angle(t) for t in self.thetas],
            "faces": [
                {
                    "theta": format_angle(f.theta),
                    "lambda": f.ifs.lam,
                    "u0": list(f.ifs.block_words[0]),
                    "u1": list(f.ifs.block_words[1]),
                    "endpoints": [
                        [f.endpoint_lo.real, f.endpoint_lo.imag],
                        [f.endpoint_hi.real, f.endpoint_hi.imag],
                    ],
                    "interval": f.is_full_interval,
                }
                for f in self.faces
            ],
            "vertices": [[z.real, z.imag] for z in self.vertices],
            "convexity_bound": convexity_necessary(rp)["bound"],
            "degenerate": self.degenerate,
        }


def hull_polygon(params, cross_check: bool = True) -> HullPolygon:
    """Convex hull of the limit set as an exact-angle polygon.

    Vertex i is the unique extreme point for angles strictly between faces i
    and i+1; it must coincide with an endpoint of both faces.  With
    ``cross_check`` each vertex is also compared against the truncated
    extreme-word evaluation at the midpoint angle.
    """
    rp = as_rational(params)
    thetas = theta_set(rp)
    ifs = [face_ifs(rp, t) for t in thetas]
    count = len(thetas)
    mids = [
        (thetas[i] + (thetas[i + 1] if i + 1 < count else thetas[0] + 1)) / 2
        for i in range(count)
    ]
    vertices = [vertex_at(rp, normalize_angle(m)) for m in mids]

    if cross_check:
        depth = default_depth(rp.base)
        slack = VERTEX_TOL + tail_bound(rp.base, depth)
        for m, v in zip(mids, vertices):
            ep = extreme_points(rp.base, SupportQuery(normalize_angle(m)), depth)
            if ep.classification != UNIQUE or abs(ep.points[0] - v) > slack:
                raise StructureError(f"vertex at theta={m} disagrees with extreme words")

    def match(face, vertex):
        d = [abs(e - vertex) for e in face.endpoints]
        i = int(np.argmin(d))
        if d[i] > VERTEX_TOL:
            raise StructureError(
                f"face theta={face.theta} does not meet its neighbour (gap {d[i]:.3g})"
            )
        return face.endpoints[i]

    faces = []
    for i, f in enumerate(ifs):
        lo = match(f, vertices[i - 1])
        hi = match(f, vertices[i])
        faces.append(Face(f.theta, f, lo, hi))
    return HullPolygon(rp, tuple(faces), tuple(vertices))


def convexity_necessary(params) -> dict:
    """Necessary condition r >= 2**(-1/b) for the limit set to be convex.

    Not sufficient: faces can all be intervals while the set has holes.
    """
    rp = as_rational(params)
    bound = 2.0 ** (-1.0 / rp.b)
    return {"bound": bound, "satisfied": rp.r >= bound}


def face_is_interval(params) -> bool:
    rp = as_rational(params)
    return rp.r**rp.b >= 0.5
