"""Support functionals, per-step digit choices and extreme words.

Maximizing v_theta over the limit set splits into maximizing each summand
v_theta(c**k xi**j_k) separately, so the extreme words at angle theta are
exactly the free products of the per-step optimal digit sets.  Each such set
is one digit, or two adjacent digits when theta is equidistant from two
constellation directions.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from . import kernels
from .core import (
    Angle,
    IfsParams,
    default_depth,
    evaluate,
    format_angle,
    is_exact,
    normalize_angle,
    parse_angle,
    tail_bound,
    unit,
)
from .errors import AmbiguousTieError

DEFAULT_TIE_TOLERANCE = 1e-12
DEFAULT_POINT_CAP = 64

UNIQUE = "unique"
TWO = "two"
CANTOR_FACE = "cantor_face"
UNRESOLVED = "unresolved"


def v_theta(theta: Angle, z: complex) -> float:
    """Real inner product of z with the unit vector at angle theta."""
    u = unit(theta)
    return z.real * u.real + z.imag * u.imag


def constellation(params: IfsParams, k: int) -> list:
    """Directions of c**k xi**j for j = 0..n-1, indexed by digit j."""
    if k < 0:
        raise ValueError("k must be >= 0")
    n = params.n
    if params.exact:
        return [normalize_angle(k * params.phi + Fraction(j, n)) for j in range(n)]
    base = math.fmod(k * params.phi, 1.0)
    return [normalize_angle(base + j / n) for j in range(n)]


@dataclass(frozen=True)
class SupportQuery:
    theta: Angle
    tie_tolerance: float = DEFAULT_TIE_TOLERANCE

    def __post_init__(self):
        theta = self.theta
        if isinstance(theta, str):
            theta = parse_angle(theta)
        object.__setattr__(self, "theta", normalize_angle(theta))
        if self.tie_tolerance < 0:
            raise ValueError("tie_tolerance must be >= 0")

    def exact_with(self, params: IfsParams) -> bool:
        return params.exact and is_exact(self.theta)

    def tolerance_for(self, params: IfsParams) -> float:
        """Effective tolerance: 0 in exact mode; float mode requires < 1/(4n)."""
        if self.exact_with(params):
            return 0.0
        if self.tie_tolerance >= 1.0 / (4 * params.n):
            raise AmbiguousTieError(
                f"tie_tolerance {self.tie_tolerance} must be below 1/(4n) = {1 / (4 * params.n)}"
            )
        return float(self.tie_tolerance)


def as_query(theta) -> SupportQuery:
    return theta if isinstance(theta, SupportQuery) else SupportQuery(theta)


@dataclass(frozen=True)
class DigitChoices:
    k: int
    digits: tuple

    @property
    def is_pair(self) -> bool:
        return len(self.digits) == 2

    def to_list(self) -> list:
        return list(self.digits)


def _exact_choices(n: int, phi: Fraction, theta: Fraction, k0: int, count: int):
    # integer form of x = n * ((theta - k*phi) mod 1) over a common denominator
    den = math.lcm(phi.denominator, theta.denominator)
    P = phi.numerator * (den // phi.denominator)
    T = theta.numerator * (den // theta.denominator)
    low = np.empty(count, dtype=np.int64)
    pair = np.zeros(count, dtype=np.uint8)
    for i in range(count):
        X = ((T - (k0 + i) * P) % den) * n
        f, rem = divmod(X, den)
        twice = 2 * rem
        if twice == den:
            pair[i] = 1
            low[i] = f % n
        else:
            low[i] = (f + (twice > den)) % n
    return low, pair


def _choice_arrays(params: IfsParams, query: SupportQuery, k0: int, count: int):
    """(low digit, tie flag) arrays for steps k0 .. k0+count-1."""
    if query.exact_with(params):
        return _exact_choices(params.n, params.phi, query.theta, k0, count)
    tol = query.tolerance_for(params)
    return kernels.float_choices(params.n, float(params.phi), float(query.theta), k0, count, tol)


def digit_choices(params: IfsParams, query, k: int) -> DigitChoices:
    """The set of optimal digits at step k for the support angle in ``query``.

    A pair (m, m+1) is returned exactly when theta = k*phi + m/n + 1/(2n)
    (mod 1): exactly in rational mode, within the tie tolerance in float mode.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    query = as_query(query)
    low, pair = _choice_arrays(params, query, k, 1)
    m = int(low[0])
    digits = (m, (m + 1) % params.n) if pair[0] else (m,)
    return DigitChoices(k, digits)


@dataclass(frozen=True)
class ExtremeWordSet:
    """Truncated product of digit-choice sets for k < depth.

    In rational mode only k < min(depth, q) is stored and ``period_hint`` is
    q, since the choices repeat with that period.
    """

    params: IfsParams
    theta: Angle
    depth: int
    low: np.ndarray = field(repr=False)
    pair: np.ndarray = field(repr=False)
    period_hint: Optional[int] = None

    def choice(self, k: int) -> DigitChoices:
        i = k % self.period_hint if self.period_hint else k
        m = int(self.low[i])
        if self.pair[i]:
            return DigitChoices(k, (m, (m + 1) % self.params.n))
        return DigitChoices(k, (m,))

    @property
    def choices(self) -> tuple:
        return tuple(self.choice(k) for k in range(self.depth))

    def pair_positions(self) -> list:
        stored = [int(i) for i in np.flatnonzero(self.pair)]
        if not self.period_hint:
            return stored
        q = self.period_hint
        return [base + i for base in range(0, self.depth, q) for i in stored if base + i < self.depth]

    def cardinality(self) -> int:
        return 2 ** len(self.pair_positions())

    def base_word(self) -> list:
        """The word taking the lower digit at every tie."""
        return np.resize(self.low, self.depth).tolist()

    def words(self, limit: Optional[int] = None) -> Iterator[tuple]:
        """Words of the product, lexicographic in the choice at each tie."""
        base = self.base_word()
        ties = self.pair_positions()
        n = self.params.n
        for bits in itertools.islice(itertools.product((0, 1), repeat=len(ties)), limit):
            w = list(base)
            for pos, bit in zip(ties, bits):
                w[pos] = (w[pos] + bit) % n
            yield tuple(w)


def extreme_word_set(params: IfsParams, query, depth: int) -> ExtremeWordSet:
    if depth < 1:
        raise ValueError("depth must be >= 1")
    query = as_query(query)
    period = None
    count = depth
    if query.exact_with(params):
        period = params.q
        count = min(depth, period)
    low, pair = _choice_arrays(params, query, 0, count)
    return ExtremeWordSet(params, query.theta, depth, low, pair, period)


@dataclass
class ExtremePoints:
    theta: Angle
    classification: str
    points: list
    words: ExtremeWordSet
    truncated: bool = False
    depth: int = 0

    @property
    def pair_positions(self) -> list:
        return self.words.pair_positions()

    def to_dict(self) -> dict:
        return {
            "theta": format_angle(self.theta),
            "classification": self.classification,
            "choices": [c.to_list() for c in self.words.choices],
            "points": [[z.real, z.imag] for z in self.points],
            "truncated": self.truncated,
        }


def _tie_in_one_block(params: IfsParams, query: SupportQuery) -> bool:
    # ties recur with the constellation period b = q / gcd(n, q), so one
    # block decides whether the face is a single point
    b = params.q // math.gcd(params.n, params.q)
    _, pair = _choice_arrays(params, query, 0, b)
    return bool(pair.any())


def extreme_points(params: IfsParams, query, depth: Optional[int] = None,
                   cap: int = DEFAULT_POINT_CAP) -> ExtremePoints:
    """Evaluate the truncated extreme words at the query angle and classify.

    unique       no tie anywhere (rational: within one period; float: within depth)
    two          float mode, exactly one tie within the scanned depth
    cantor_face  rational mode, a tie that recurs every period
    unresolved   float mode with two or more ties: the angle behaves like a
                 rational one at this tolerance and no classification is made
    At most ``cap`` points are evaluated; ``truncated`` flags the rest.
    """
    query = as_query(query)
    if depth is None:
        depth = default_depth(params)
    ws = extreme_word_set(params, query, depth)
    ties = ws.pair_positions()
    if query.exact_with(params):
        classification = CANTOR_FACE if _tie_in_one_block(params, query) else UNIQUE
    elif not ties:
        classification = UNIQUE
    elif len(ties) == 1:
        classification = TWO
    else:
        classification = UNRESOLVED
    points = [evaluate(params, w) for w in ws.words(limit=cap)]
    truncated = len(points) < 2 ** min(len(ties), 63)
    return ExtremePoints(query.theta, classification, points, ws, truncated, depth)


@dataclass(frozen=True)
class SupportValue:
    value: float
    error_bar: float
    depth: int


def step_distances(params: IfsParams, query: SupportQuery, depth: int) -> list:
    """Circular distance from theta to the nearest direction of step k, k < depth."""
    n = params.n
    out = []
    exact = query.exact_with(params)
    for k in range(depth):
        if exact:
            x = normalize_angle(query.theta - k * params.phi) * n
        else:
            x = float(query.theta) - math.fmod(k * float(params.phi), 1.0)
            x = (x - math.floor(x)) * n
        t = x - math.floor(x)
        out.append(min(t, 1 - t) / n)
    return out


def support_value(params: IfsParams, query, depth: Optional[int] = None) -> SupportValue:
    """max over the limit set of v_theta, truncated after ``depth`` steps.

    Each step contributes r**k times the cosine of the angle between theta and
    the nearest direction in that step's constellation.  The omitted tail is
    at most ``tail_bound(params, depth)``.
    """
    query = as_query(query)
    if depth is None:
        depth = default_depth(params)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    total = 0.0
    for k, d in enumerate(step_distances(params, query, depth)):
        total += params.r**k * math.cos(2 * math.pi * float(d))
    return SupportValue(total, tail_bound(params, depth), depth)
