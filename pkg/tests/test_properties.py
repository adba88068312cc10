"""Hypothesis versions of the shared invariant checks (100 examples each under the ci profile)."""
import math
from fractions import Fraction

import numpy as np
from hypothesis import given, strategies as st

from polyifs import IfsParams

import checks

rational_phi = st.builds(lambda q, p: Fraction(p % q, q), st.integers(1, 24), st.integers(0, 23))
rational_params = st.builds(
    IfsParams,
    n=st.integers(2, 8),
    r=st.floats(0.2, 0.9),
    phi=rational_phi,
)
theta = st.builds(lambda d, k: Fraction(k % d, d), st.integers(1, 60), st.integers(0, 59))


@given(params=rational_params, theta=theta, k=st.integers(0, 40))
def test_symmetry_equivariance(params, theta, k):
    checks.check_symmetry_equivariance(params, theta, k)


@given(params=rational_params, theta=theta, k=st.integers(0, 6), digit=st.integers(0, 7))
def test_mutation_optimality(params, theta, k, digit):
    checks.check_mutation_optimality(params, theta, k, digit % params.n)


@given(
    n=st.integers(2, 5),
    r=st.floats(0.05, 0.95),
    phi=st.one_of(rational_phi, st.floats(0, 1, exclude_max=True)),
    m=st.integers(0, 3),
)
def test_cloud_self_similarity(n, r, phi, m):
    checks.check_self_similarity(IfsParams(n, r, phi), m)


coords = st.floats(-10, 10, allow_nan=False)


@given(st.lists(st.builds(complex, coords, coords), min_size=1, max_size=60))
def test_hull_idempotence(points):
    checks.check_hull_idempotent(np.array(points))


@given(st.lists(st.builds(complex, st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=40))
def test_hull_idempotence_lattice(points):
    # integer grids are full of duplicates and collinear runs
    checks.check_hull_idempotent(np.array(points))


@given(
    params=st.builds(IfsParams, n=st.integers(2, 5), r=st.floats(0.2, 0.9),
                     phi=st.builds(lambda q, p: Fraction(p % q, q), st.integers(1, 6), st.integers(0, 5))),
    depth=st.integers(0, 3),
    hull=st.booleans(),
)
def test_svg_determinism(params, depth, hull):
    checks.check_svg_deterministic(params, depth, hull)


@given(n=st.integers(2, 12), q=st.integers(1, 60), data=st.data())
def test_period_structure(n, q, data):
    p = data.draw(st.sampled_from([p for p in range(q) if math.gcd(p, q) == 1]))
    checks.check_period_structure(n, p, q)
