"""Brute-force checks that share no code path with the analytic modules.

Support values come from maximizing over explicit point clouds and hulls
from a planar monotone-chain construction; both are compared with the
per-step and exact-polygon answers under certified tail slack.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .core import IfsParams, PointCloud, default_depth, enumerate_cloud, format_angle
from .extreme import support_value
from .rational import hull_polygon, theta_set


def convex_hull_2d(points) -> list:
    """Counterclockwise hull vertices of a set of complex points.

    Collinear boundary points are dropped; an all-collinear set gives its
    two extreme points and a single point gives itself.
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise ValueError("convex hull of an empty point set")
    idx = kernels.hull_indices(pts.real, pts.imag)
    return pts[idx].tolist()


def brute_force_support(cloud, theta) -> float:
    """max over the cloud of the projection onto direction theta."""
    pts = cloud.points if isinstance(cloud, PointCloud) else np.asarray(cloud, dtype=np.complex128)
    if len(pts) == 0:
        raise ValueError("empty cloud")
    t = 2 * np.pi * float(theta)
    return float(np.max(pts.real * np.cos(t) + pts.imag * np.sin(t)))


def _segment_distance(p: np.ndarray, a: complex, b: complex) -> np.ndarray:
    ab = b - a
    denom = abs(ab) ** 2
    if denom == 0.0:
        return np.abs(p - a)
    s = ((p - a) * np.conj(ab)).real / denom
    s = np.clip(s, 0.0, 1.0)
    return np.abs(p - (a + s * ab))


def distance_to_polygon(points, polygon) -> np.ndarray:
    """Distance from each point to a convex polygon given ccw (0 inside)."""
    pts = np.atleast_1d(np.asarray(points, dtype=np.complex128))
    poly = list(polygon)
    k = len(poly)
    if k == 1:
        return np.abs(pts - poly[0])
    edge = np.full(pts.shape, np.inf)
    inside = np.ones(pts.shape, dtype=bool)
    area2 = sum((poly[i].conjugate() * poly[(i + 1) % k]).imag for i in range(k))
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        edge = np.minimum(edge, _segment_distance(pts, a, b))
        inside &= ((b - a).conjugate() * (pts - a)).imag >= -1e-15
    if abs(area2) < 1e-12:
        return edge
    return np.where(inside, 0.0, edge)


def hausdorff_convex(poly_a, poly_b) -> float:
    """Hausdorff distance between two convex polygons (vertex lists, ccw).

    For convex sets the farthest point of one from the other is attained at
    a vertex, so vertex-to-polygon distances both ways suffice.
    """
    d1 = distance_to_polygon(list(poly_a), poly_b).max()
    d2 = distance_to_polygon(list(poly_b), poly_a).max()
    return float(max(d1, d2))


@dataclass
class SupportCheck:
    theta: object
    analytic: float
    brute: float
    slack: float

    @property
    def diff(self) -> float:
        return abs(self.analytic - self.brute)

    @property
    def ok(self) -> bool:
        return self.diff <= self.slack


@dataclass
class OracleReport:
    params: IfsParams
    depth: int
    support_checks: list = field(default_factory=list)
    hausdorff: float | None = None
    hausdorff_slack: float | None = None
    oracle_vertex_count: int | None = None
    slack_budget: float = 0.0

    @property
    def support_diffs(self) -> list:
        return [(c.theta, c.diff) for c in self.support_checks]

    @property
    def passed(self) -> bool:
        ok = all(c.ok for c in self.support_checks)
        if self.hausdorff is not None:
            ok = ok and self.hausdorff <= self.hausdorff_slack
        return ok

    def worst(self, count: int = 5) -> list:
        return sorted(self.support_checks, key=lambda c: c.slack - c.diff)[:count]

    def to_dict(self) -> dict:
        return {
            **self.params.to_dict(),
            "depth": self.depth,
            "pass": self.passed,
            "slack_budget": self.slack_budget,
            "max_support_diff": max((c.diff for c in self.support_checks), default=0.0),
            "support_checks": len(self.support_checks),
            "hausdorff": self.hausdorff,
            "hausdorff_slack": self.hausdorff_slack,
            "oracle_vertex_count": self.oracle_vertex_count,
            "worst": [
                {"theta": format_angle(c.theta), "diff": c.diff, "slack": c.slack}
                for c in self.worst()
            ],
        }

    def summary(self) -> str:
        lines = [
            f"n={self.params.n} r={self.params.r} phi={format_angle(self.params.phi)} depth={self.depth}",
            f"support checks: {len(self.support_checks)}, max diff "
            f"{max((c.diff for c in self.support_checks), default=0.0):.3e} (slack {self.slack_budget:.3e})",
        ]
        if self.hausdorff is not None:
            lines.append(
                f"hull hausdorff: {self.hausdorff:.3e} (slack {self.hausdorff_slack:.3e}), "
                f"oracle hull vertices {self.oracle_vertex_count}"
            )
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def sample_thetas(params: IfsParams, grid: int = 360) -> list:
    """Uniform grid plus, for rational phi, every face angle and face midpoint."""
    thetas = [Fraction(i, grid) if params.exact else i / grid for i in range(grid)]
    if params.exact:
        faces = theta_set(params)
        thetas += faces
        for i, t in enumerate(faces):
            nxt = faces[i + 1] if i + 1 < len(faces) else faces[0] + 1
            mid = (t + nxt) / 2
            thetas.append(mid - int(mid))
    return sorted(set(thetas))


def verify(params: IfsParams, depth: int, grid: int = 360, budget: int | None = None) -> OracleReport:
    """Compare analytic support values and hull against a depth-``depth`` cloud."""
    cloud = enumerate_cloud(params, depth, budget=budget)
    analytic_depth = default_depth(params)
    report = OracleReport(params, depth)
    for theta in sample_thetas(params, grid):
        sv = support_value(params, theta, analytic_depth)
        slack = sv.error_bar + cloud.tail_bound
        report.support_checks.append(
            SupportCheck(theta, sv.value, brute_force_support(cloud, theta), slack)
        )
    report.slack_budget = max(c.slack for c in report.support_checks)
    if params.exact:
        poly = hull_polygon(params)
        oracle = convex_hull_2d(cloud.points)
        report.oracle_vertex_count = len(oracle)
        report.hausdorff = hausdorff_convex(poly.vertices, oracle)
        report.hausdorff_slack = report.slack_budget
    return report
