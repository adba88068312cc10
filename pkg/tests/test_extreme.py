import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polyifs import (
    AmbiguousTieError,
    IfsParams,
    SupportQuery,
    constellation,
    digit_choices,
    enumerate_cloud,
    evaluate,
    extreme_points,
    extreme_word_set,
    support_value,
    v_theta,
)
from polyifs.extreme import CANTOR_FACE, TWO, UNIQUE, UNRESOLVED
from polyifs.oracle import brute_force_support

GOLDEN = 0.6180339887


def argmax_digits(params, theta, k, tol=1e-12):
    """Independent oracle: maximize v_theta over the n complex vectors c^k xi^j."""
    c = params.r * cmath.exp(2j * math.pi * float(params.phi))
    u = cmath.exp(2j * math.pi * float(theta))
    vals = [((c**k * cmath.exp(2j * math.pi * j / params.n)) * u.conjugate()).real / params.r**k
            for j in range(params.n)]
    best = max(vals)
    return sorted(j for j, v in enumerate(vals) if v >= best - tol)


class TestVTheta:
    def test_axes(self):
        assert v_theta(Fraction(0), 3 + 4j) == 3
        assert v_theta(Fraction(1, 4), 3 + 4j) == 4
        assert v_theta(0.0, 3 + 4j) == 3

    def test_diagonal(self):
        assert v_theta(Fraction(1, 8), 1 + 1j) == pytest.approx(math.sqrt(2))


class TestConstellation:
    def test_k0(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        assert constellation(p, 0) == [Fraction(j, 5) for j in range(5)]

    def test_k1(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        expected = [(Fraction(1, 4) + Fraction(j, 5)) % 1 for j in range(5)]
        assert constellation(p, 1) == expected
        assert expected == [Fraction(1, 4), Fraction(9, 20), Fraction(13, 20), Fraction(17, 20), Fraction(1, 20)]
        assert set(constellation(p, 1)) == set(constellation(p, 5))

    def test_period_two_for_sixth(self):
        p = IfsParams.parse(3, 0.4, "1/6")
        assert set(constellation(p, 2)) == set(constellation(p, 0))
        assert constellation(p, 2) != constellation(p, 0)  # same set, relabeled

    def test_float(self):
        p = IfsParams.parse(3, 0.4, "0.1")
        assert constellation(p, 2) == pytest.approx([0.2, 0.2 + 1 / 3, 0.2 + 2 / 3])


class TestDigitChoices:
    def test_real_perpetual_tie(self):
        p = IfsParams.parse(2, 0.5, "0/1")
        for k in range(6):
            assert digit_choices(p, Fraction(1, 4), k).digits == (0, 1)

    def test_half_step_tie(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        assert digit_choices(p, Fraction(1, 10), 0).digits == (0, 1)

    def test_forced(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        assert argmax_digits(p, 0, 1) == [4]
        assert digit_choices(p, Fraction(0), 1).digits == (4,)

    def test_pair_wraps(self):
        p = IfsParams.parse(4, 0.3, "0/1")
        assert digit_choices(p, Fraction(7, 8), 0).digits == (3, 0)

    def test_float_mode_tolerance(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        assert digit_choices(p, SupportQuery(0.1 + 1e-13), 0).digits == (0, 1)
        assert digit_choices(p, SupportQuery(0.1 + 1e-9), 0).digits == (1,)
        assert digit_choices(p, SupportQuery(0.1 + 1e-9, tie_tolerance=1e-8), 0).digits == (0, 1)

    def test_tolerance_cap(self):
        p = IfsParams.parse(5, 0.4, "0.25")
        with pytest.raises(AmbiguousTieError):
            digit_choices(p, SupportQuery(0.1, tie_tolerance=1 / 20), 0)
        digit_choices(p, SupportQuery(0.1, tie_tolerance=1 / 21), 0)

    def test_exact_mode_has_zero_tolerance(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        q = SupportQuery(Fraction(1, 10), tie_tolerance=1e-3)
        assert q.tolerance_for(p) == 0.0

    @given(
        n=st.integers(2, 9),
        phi_num=st.integers(0, 30),
        q=st.integers(1, 31),
        theta=st.fractions(min_value=0, max_value=1, max_denominator=90),
        k=st.integers(0, 25),
    )
    def test_matches_argmax_oracle(self, n, phi_num, q, theta, k):
        p = IfsParams(n, 0.5, Fraction(phi_num % q, q))
        got = digit_choices(p, theta, k).digits
        assert sorted(got) == argmax_digits(p, theta, k, tol=1e-9)

    @given(n=st.integers(2, 9), phi=st.floats(0, 1, exclude_max=True),
           theta=st.floats(0, 1, exclude_max=True), k=st.integers(0, 200))
    def test_float_matches_argmax_oracle(self, n, phi, theta, k):
        p = IfsParams(n, 0.5, phi)
        got = digit_choices(p, SupportQuery(theta), k).digits
        oracle = argmax_digits(p, theta, k, tol=1e-7)
        assert set(got) <= set(oracle)


class TestExtremeWordSet:
    def test_forced_prefix(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        ws = extreme_word_set(p, Fraction(0), 4)
        # theta - 2 phi = 1/2 lands halfway between two roots at k=2
        assert [c.digits for c in ws.choices] == [(0,), (4,), (2, 3), (1,)]
        assert [c.digits for c in ws.choices] == [tuple(argmax_digits(p, 0, k)) for k in range(4)]

    def test_all_pairs(self):
        ws = extreme_word_set(IfsParams.parse(2, 0.5, "0/1"), Fraction(1, 4), 5)
        assert all(c.is_pair for c in ws.choices)
        assert ws.cardinality() == 32
        assert len(list(ws.words())) == 32

    def test_period_recurrence(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        ws = extreme_word_set(p, Fraction(1, 10), 8)
        assert ws.period_hint == 4
        assert ws.pair_positions() == [0, 4]
        assert [k for k in range(8) if digit_choices(p, Fraction(1, 10), k).is_pair] == [0, 4]

    def test_float_depth(self):
        p = IfsParams.parse(3, 0.4, str(GOLDEN))
        ws = extreme_word_set(p, SupportQuery((GOLDEN + 1 / 6) % 1), 1000)
        assert ws.period_hint is None
        assert ws.pair_positions() == [1]

    def test_words_are_optimal(self):
        p = IfsParams.parse(4, 0.45, "1/3")
        theta = Fraction(1, 8)
        ws = extreme_word_set(p, theta, 9)
        vals = [v_theta(theta, evaluate(p, w)) for w in ws.words()]
        assert max(vals) - min(vals) < 1e-12
        best_cloud = brute_force_support(enumerate_cloud(p, 9), theta)
        assert vals[0] == pytest.approx(best_cloud, abs=1e-12)


class TestExtremePoints:
    def test_square_vertex(self):
        p = IfsParams.parse(4, 0.3, "0/1")
        ep = extreme_points(p, Fraction(0))
        assert ep.classification == UNIQUE
        assert len(ep.points) == 1
        assert ep.points[0] == pytest.approx(1 / 0.7, abs=1e-9)
        cloud = enumerate_cloud(p, 10)
        assert brute_force_support(cloud, 0) == pytest.approx(1 / 0.7, abs=cloud.tail_bound)

    def test_irrational_unique(self):
        p = IfsParams.parse(3, 0.4, str(GOLDEN))
        ep = extreme_points(p, SupportQuery(GOLDEN % 1), depth=2000)
        assert ep.classification == UNIQUE and ep.pair_positions == []

    def test_irrational_two(self):
        p = IfsParams.parse(3, 0.4, str(GOLDEN))
        ep = extreme_points(p, SupportQuery((GOLDEN + 1 / 6) % 1), depth=2000)
        assert ep.classification == TWO
        assert ep.pair_positions == [1]
        gap = abs(ep.points[0] - ep.points[1])
        assert gap == pytest.approx(0.4 * abs(p.xi - 1), abs=1e-12)

    def test_rational_cantor(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        ep = extreme_points(p, Fraction(1, 10), depth=12)
        assert ep.classification == CANTOR_FACE
        assert ep.pair_positions == [0, 4, 8]
        assert len(ep.points) == 8 and not ep.truncated

    def test_cap(self):
        p = IfsParams.parse(2, 0.5, "0/1")
        ep = extreme_points(p, Fraction(1, 4), depth=10, cap=16)
        assert len(ep.points) == 16 and ep.truncated

    def test_float_rational_like_unresolved(self):
        p = IfsParams.parse(5, 0.4, "0.25")
        ep = extreme_points(p, SupportQuery(0.1), depth=12)
        assert ep.classification == UNRESOLVED

    def test_to_dict(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        d = extreme_points(p, Fraction(1, 10), depth=5).to_dict()
        assert d["theta"] == "1/10" and d["classification"] == "cantor_face"
        assert d["choices"][0] == [0, 1] and len(d["choices"]) == 5


class TestSupportValue:
    def test_square(self):
        p = IfsParams.parse(4, 0.3, "0/1")
        sv = support_value(p, Fraction(0), 20)
        assert sv.value == pytest.approx(1 / 0.7, abs=sv.error_bar)
        assert sv.error_bar == pytest.approx(0.3**20 / 0.7)

    def test_interval(self):
        sv = support_value(IfsParams.parse(2, 0.5, "0/1"), Fraction(0))
        assert sv.value == pytest.approx(2.0, abs=1e-9)

    def test_against_cloud(self):
        p = IfsParams.parse(5, 0.4, "1/4")
        cloud = enumerate_cloud(p, 8)
        sv = support_value(p, Fraction(1, 10))
        assert abs(sv.value - brute_force_support(cloud, Fraction(1, 10))) <= sv.error_bar + cloud.tail_bound

    def test_matches_extreme_point(self):
        p = IfsParams.parse(3, 0.55, "2/9")
        for theta in [Fraction(1, 13), Fraction(5, 7), Fraction(1, 2)]:
            sv = support_value(p, theta, 30)
            ep = extreme_points(p, theta, 30)
            for z in ep.points:
                assert v_theta(theta, z) == pytest.approx(sv.value, abs=1e-12)

    def test_upper_bounds_every_cloud_point(self):
        rng = np.random.default_rng(9)
        p = IfsParams.parse(4, 0.5, "0.377")
        cloud = enumerate_cloud(p, 7)
        for theta in rng.random(40):
            sv = support_value(p, theta)
            proj = (cloud.points * np.exp(-2j * np.pi * theta)).real
            assert proj.max() <= sv.value + sv.error_bar + 1e-12
            assert proj.max() >= sv.value - cloud.tail_bound - 1e-12
