"""Moment-image sampling with the algebraic moment map, and SVG output.

``mu_alg(w) = sum_m m |w^m|^2 / sum_m |w^m|^2`` over the lattice points m
of the polytope stands in for the symplectic moment map when drawing.
"""
from __future__ import annotations

import math
from itertools import product
from typing import Sequence

from .errors import DimensionUnsupported
from .polytope import DelzantPolytope, lattice_points
from .subtorus import AffineSubtorus


def algebraic_moment(points: Sequence[Sequence[int]], log_abs_w: Sequence[float]) -> tuple[float, ...]:
    """``mu_alg`` at a torus point given by ``log|w_i|``, via log-sum-exp."""
    logs = [2.0 * sum(m_i * x for m_i, x in zip(m, log_abs_w)) for m in points]
    top = max(logs)
    weights = [math.exp(v - top) for v in logs]
    total = sum(weights)
    n = len(log_abs_w)
    return tuple(sum(wt * m[i] for wt, m in zip(weights, points)) / total for i in range(n))


def _log_abs(V: AffineSubtorus, u: Sequence[float]) -> list[float]:
    # |exp(i v)| = 1, so only the real parameters matter
    return [math.log(float(e)) + sum(pl[i] * ul for pl, ul in zip(V.p, u)) for i, e in enumerate(V.E)]


def _grid(k: int, count: int, radius: float) -> list[tuple[float, ...]]:
    per_axis = max(2, math.ceil(count ** (1.0 / k))) if k else 1
    if per_axis == 1:
        axis = [0.0]
    else:
        axis = [-radius + 2 * radius * t / (per_axis - 1) for t in range(per_axis)]
    return list(product(axis, repeat=k))


def choose_radius(poly: DelzantPolytope, V: AffineSubtorus, tol: float = 1e-6, limit: float = 4096.0) -> float:
    """Double R until the images of the parameter-box corners stop moving."""
    pts = lattice_points(poly)
    corners = list(product((-1.0, 1.0), repeat=V.k))
    radius = 1.0
    while radius < limit:
        a = [algebraic_moment(pts, _log_abs(V, [c * radius for c in cor])) for cor in corners]
        b = [algebraic_moment(pts, _log_abs(V, [2 * c * radius for c in cor])) for cor in corners]
        if max(math.dist(x, y) for x, y in zip(a, b)) < tol:
            return 2 * radius
        radius *= 2
    return radius


def sample_moment_curve(poly: DelzantPolytope, V: AffineSubtorus, count: int = 200,
                        radius: float | None = None) -> list[tuple[float, ...]]:
    """Images under ``mu_alg`` of a parameter grid on the subtorus.

    The grid has about ``count`` points in ``[-R, R]^k``. For k = 1 a dense
    grid is thinned to points evenly spaced along the curve; for k = 0 the
    single point ``E`` is used.
    """
    if V.n != poly.dimension:
        raise ValueError("subspace and polytope dimensions differ")
    pts = lattice_points(poly)
    if V.k == 0:
        return [algebraic_moment(pts, _log_abs(V, []))]
    if radius is None:
        radius = choose_radius(poly, V)
    if V.k > 1:
        return [algebraic_moment(pts, _log_abs(V, u)) for u in _grid(V.k, count, radius)]
    fine = [algebraic_moment(pts, _log_abs(V, u)) for u in _grid(1, 20 * count, radius)]
    return _even_arc_length(fine, count)


def _even_arc_length(curve: list, count: int) -> list:
    """Pick about ``count`` points of a dense polyline, evenly spaced in length."""
    acc = [0.0]
    for a, b in zip(curve, curve[1:]):
        acc.append(acc[-1] + math.dist(a, b))
    total = acc[-1]
    if total == 0 or count < 2:
        return [curve[0]]
    out, idx = [], 0
    for t in range(count):
        target = total * t / (count - 1)
        while idx < len(acc) - 1 and acc[idx] < target:
            idx += 1
        out.append(curve[idx])
    return out


def samples_inside(poly: DelzantPolytope, samples, tol: float = 1e-9) -> bool:
    return all(poly.contains(x, tol) for x in samples)


def _boundary_cycle(poly: DelzantPolytope) -> list[int]:
    hull = poly.hull
    order = [0]
    prev = None
    while True:
        nbrs = [j for j in hull.neighbors(order[-1]) if j != prev]
        nxt = min(nbrs)
        if nxt == order[0]:
            break
        prev = order[-1]
        order.append(nxt)
        if len(order) > len(poly.vertices):  # pragma: no cover - not a polygon
            raise ValueError("boundary walk did not close")
    return order


def _fmt(x: float) -> str:
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def emit_svg(poly: DelzantPolytope, samples: Sequence[Sequence[float]], path=None,
             polyline: bool = True) -> str:
    """Polytope outline plus sampled points as a standalone SVG document.

    The bounding box of the polytope is scaled uniformly into a 500 x 500
    view box with a 5% margin; y points up. Returns the text and writes it
    to ``path`` when given.
    """
    if poly.dimension != 2:
        raise DimensionUnsupported("figures are planar: the polytope must be 2-dimensional")
    xs = [float(v[0]) for v in poly.vertices]
    ys = [float(v[1]) for v in poly.vertices]
    x0, y1 = min(xs), max(ys)
    span = max(max(xs) - x0, y1 - min(ys))
    scale = 450.0 / span
    cx = 25.0 + (450.0 - (max(xs) - x0) * scale) / 2
    cy = 25.0 + (450.0 - (y1 - min(ys)) * scale) / 2

    def to_view(p):
        return _fmt(cx + (float(p[0]) - x0) * scale), _fmt(cy + (y1 - float(p[1])) * scale)

    outline = " ".join(",".join(to_view(poly.vertices[i])) for i in _boundary_cycle(poly))
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="500" height="500" viewBox="0 0 500 500">',
        '<rect x="0" y="0" width="500" height="500" fill="white"/>',
        f'<polygon points="{outline}" fill="#eef3fb" stroke="black" stroke-width="2"/>',
    ]
    if samples:
        coords = [to_view(p) for p in samples]
        if polyline and len(coords) > 1:
            pts = " ".join(f"{a},{b}" for a, b in coords)
            lines.append(f'<polyline points="{pts}" fill="none" stroke="#c0392b" stroke-width="2"/>')
        else:
            for a, b in coords:
                lines.append(f'<circle cx="{a}" cy="{b}" r="1.5" fill="#c0392b"/>')
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
