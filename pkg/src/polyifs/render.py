"""Deterministic SVG figures: limit-set clouds, hulls, support lines, constellations.

All coordinates are written with six decimals and elements are emitted in a
fixed order, so identical inputs give byte-identical documents.  The y axis
is flipped so the imaginary axis points up.
"""
from __future__ import annotations

import math

from .core import IfsParams, enumerate_cloud, format_angle, unit
from .extreme import SupportQuery, constellation, digit_choices, support_value
from .rational import hull_polygon

HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _pt(z: complex) -> str:
    return f"{_f(z.real)},{_f(-z.imag)}"


def render_limit_set(params: IfsParams, depth: int, hull: bool = False,
                     support_lines: bool = False, thetas=None, radius: float | None = None,
                     size: int = 800, budget: int | None = None) -> str:
    """Limit-set cloud with optional hull polygon and supporting lines.

    ``thetas`` selects support-line angles; by default the face angles are
    used when phi is rational.  Lines are drawn at the analytic support
    value (the face for rational phi).
    """
    cloud = enumerate_cloud(params, depth, budget=budget)
    extent = 1.05 / (1.0 - params.r)
    view = 2 * extent
    if radius is None:
        radius = max(0.002 * view, view * params.r**depth)

    out = [
        HEADER,
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="{_f(-extent)} {_f(-extent)} {_f(view)} {_f(view)}">\n',
        f'<title>limit set n={params.n} r={params.r} phi={format_angle(params.phi)} depth={depth}</title>\n',
        f'<rect x="{_f(-extent)}" y="{_f(-extent)}" width="{_f(view)}" height="{_f(view)}" fill="white"/>\n',
        '<g class="cloud" fill="black" stroke="none">\n',
    ]
    r_txt = _f(radius)
    for z in cloud.points.tolist():
        out.append(f'<circle cx="{_f(z.real)}" cy="{_f(-z.imag)}" r="{r_txt}"/>\n')
    out.append("</g>\n")

    poly = None
    if (hull or (support_lines and thetas is None)) and params.exact:
        poly = hull_polygon(params)
    if hull and poly is not None:
        pts = " ".join(_pt(v) for v in poly.vertices)
        out.append(
            f'<polygon class="hull" points="{pts}" fill="none" stroke="blue" '
            f'stroke-width="{_f(0.003 * view)}"/>\n'
        )
    if support_lines:
        if thetas is None:
            thetas = poly.thetas if poly is not None else []
        out.append(f'<g class="support" stroke="red" stroke-width="{_f(0.002 * view)}">\n')
        for theta in thetas:
            a, b = support_segment(params, theta, poly, 2 * view)
            out.append(
                f'<line data-theta="{format_angle(theta)}" x1="{_f(a.real)}" y1="{_f(-a.imag)}" '
                f'x2="{_f(b.real)}" y2="{_f(-b.imag)}"/>\n'
            )
        out.append("</g>\n")
    out.append("</svg>\n")
    return "".join(out)


def support_level(params: IfsParams, theta, poly=None) -> float:
    if poly is not None:
        return poly.support(theta)
    return support_value(params, theta).value


def support_segment(params: IfsParams, theta, poly, length: float):
    """Endpoints of the supporting line at angle theta, centred on its foot."""
    u = unit(theta)
    foot = support_level(params, theta, poly) * u
    d = 1j * u * (length / 2)
    return foot - d, foot + d


def render_constellations(params: IfsParams, k_range, theta=None, cols: int = 4,
                          panel: int = 160) -> str:
    """One panel per step k showing the n directions of c**k xi**j.

    Rays are drawn at unit length; the panel caption carries k and the
    scale r**k.  When theta is given its direction is drawn and the chosen
    digit(s) at each step are highlighted.
    """
    ks = list(k_range)
    rows = max(1, math.ceil(len(ks) / cols))
    width, height = cols * panel, rows * panel
    half = panel / 2
    ray = 0.38 * panel
    out = [
        HEADER,
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n',
        f'<title>constellations n={params.n} phi={format_angle(params.phi)}</title>\n',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>\n',
    ]
    query = SupportQuery(theta) if theta is not None else None
    for idx, k in enumerate(ks):
        ox = (idx % cols) * panel + half
        oy = (idx // cols) * panel + half
        chosen = set(digit_choices(params, query, k).digits) if query else set()
        out.append(f'<g class="panel" data-k="{k}" transform="translate({_f(ox)},{_f(oy)})">\n')
        out.append(
            f'<text x="{_f(-half + 6)}" y="{_f(-half + 16)}" font-size="12">'
            f'k={k} |c^k|={params.r**k:.6g}</text>\n'
        )
        out.append('<g class="rays">\n')
        out.append(f'<circle cx="0" cy="0" r="{_f(ray)}" fill="none" stroke="#ccc"/>\n')
        for j, a in enumerate(constellation(params, k)):
            u = unit(a) * ray
            color = "red" if j in chosen else "black"
            out.append(
                f'<line data-j="{j}" x1="0" y1="0" x2="{_f(u.real)}" y2="{_f(-u.imag)}" '
                f'stroke="{color}"/>\n'
            )
        if query is not None:
            u = unit(query.theta) * ray * 1.15
            out.append(
                f'<line class="theta" x1="0" y1="0" x2="{_f(u.real)}" y2="{_f(-u.imag)}" '
                f'stroke="blue" stroke-dasharray="4,2"/>\n'
            )
        out.append("</g>\n</g>\n")
    out.append("</svg>\n")
    return "".join(out)
