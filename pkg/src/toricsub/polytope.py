"""Exact convex polytopes and cones: hulls, facets, edges, Delzant data."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor
from typing import Sequence

from .errors import (
    DimensionMismatch,
    NonRationalDirection,
    NotAVertex,
    NotFullDimensional,
    RankDeficient,
    ZeroVector,
)
from .lattice import (
    IntMatrix,
    IntVector,
    RationalVector,
    as_int_matrix,
    as_rational_vector,
    determinant,
    dot,
    from_columns,
    matvec,
    primitive_direction,
    rank,
    rational_nullspace,
    unimodular_inverse,
)
from .lp import nonnegative_solution


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_point(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(format_rational(Fraction(x)) for x in v) + ")"


def _check_dims(points):
    pts = [as_rational_vector(p) for p in points]
    if not pts:
        raise ValueError("empty point list")
    if any(len(p) != len(pts[0]) for p in pts):
        raise DimensionMismatch("points of different dimensions")
    return pts


def in_convex_hull(points: Sequence[Sequence], x: Sequence) -> bool:
    """Exact membership of ``x`` in conv(points), decided by LP."""
    pts = _check_dims(points)
    x = as_rational_vector(x)
    if len(x) != len(pts[0]):
        raise DimensionMismatch("query point has the wrong dimension")
    rows = [[p[c] for p in pts] for c in range(len(x))]
    rows.append([Fraction(1)] * len(pts))
    return nonnegative_solution(rows, list(x) + [Fraction(1)]) is not None


def hull_vertices(points: Sequence[Sequence]) -> list[RationalVector]:
    """Extreme points of conv(points), in lexicographic order."""
    pts = sorted(set(_check_dims(points)))
    if len(pts) == 1:
        return pts
    return [p for i, p in enumerate(pts) if not in_convex_hull(pts[:i] + pts[i + 1:], p)]


def affine_rank(points: Sequence[RationalVector]) -> int:
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


@dataclass(frozen=True)
class Facet:
    """Supporting half-space ``<normal, x> >= offset`` with its vertex set."""

    normal: IntVector
    offset: Fraction
    vertices: frozenset[int]

    def value(self, x) -> Fraction:
        return dot(self.normal, x) - self.offset


def enumerate_facets(vertices: Sequence[RationalVector]) -> list[Facet]:
    """Facets of a full-dimensional polytope given by its vertices.

    Every affinely independent n-subset spans a candidate hyperplane; the
    candidate is a facet when all vertices lie weakly on one side. Subsets
    already contained in a known facet are skipped.
    """
    n = len(vertices[0])
    found: dict[IntVector, Facet] = {}
    for subset in combinations(range(len(vertices)), n):
        if any(set(subset) <= f.vertices for f in found.values()):
            continue
        base = vertices[subset[0]]
        diffs = [[a - b for a, b in zip(vertices[i], base)] for i in subset[1:]]
        null = rational_nullspace(diffs, n) if diffs else []
        if n == 1:
            null = [(Fraction(1),)]
        if len(null) != 1:
            continue
        normal = primitive_direction(null[0])
        vals = [dot(normal, v) for v in vertices]
        off = dot(normal, base)
        if all(x >= off for x in vals):
            pass
        elif all(x <= off for x in vals):
            normal, off, vals = tuple(-c for c in normal), -off, [-x for x in vals]
        else:
            continue
        on = frozenset(i for i, x in enumerate(vals) if x == off)
        found.setdefault(normal, Facet(normal, off, on))
    return sorted(found.values(), key=lambda f: (f.normal, f.offset))


@dataclass(frozen=True)
class ConvexPolytope:
    """A full-dimensional polytope with exact facet and edge data."""

    vertices: tuple[RationalVector, ...]
    facets: tuple[Facet, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def neighbors(self, i: int) -> list[int]:
        return sorted(b if a == i else a for a, b in self.edges if i in (a, b))

    def contains(self, x, tol: float = 0.0) -> bool:
        """Membership via facet inequalities; ``tol`` is an absolute slack
        measured along each primitive normal."""
        if tol == 0:
            x = as_rational_vector(x)
            return all(f.value(x) >= 0 for f in self.facets)
        x = tuple(Fraction(float(xi)) for xi in x)
        for f in self.facets:
            slack = Fraction(tol) * Fraction(max(sum(c * c for c in f.normal) ** 0.5, 1.0))
            if f.value(x) < -slack:
                return False
        return True


def convex_polytope(points: Sequence[Sequence]) -> ConvexPolytope:
    """Exact facets and edges of the hull of a full-dimensional point set.

    A pair of vertices spans an edge iff the normals of the facets that
    contain both have rank n-1.
    """
    verts = hull_vertices(points)
    n = len(verts[0])
    if len(verts) < n + 1 or affine_rank(verts) < n:
        raise NotFullDimensional(f"hull of the points is not {n}-dimensional")
    facets = enumerate_facets(verts)
    edges = set()
    for a, b in combinations(range(len(verts)), 2):
        normals = [f.normal for f in facets if a in f.vertices and b in f.vertices]
        if n == 1 or (normals and rank(normals) == n - 1):
            edges.add((a, b))
    return ConvexPolytope(tuple(verts), tuple(facets), frozenset(edges))


def _resolve_vertex(poly, vertex) -> int:
    if isinstance(vertex, int) and not isinstance(vertex, bool):
        if not 0 <= vertex < len(poly.vertices):
            raise NotAVertex(f"no vertex with index {vertex}")
        return vertex
    labels = getattr(poly, "labels", None)
    if isinstance(vertex, str):
        if labels and vertex in labels:
            return labels.index(vertex)
        raise NotAVertex(f"unknown vertex label {vertex!r}")
    v = as_rational_vector(vertex)
    try:
        return poly.vertices.index(v)
    except ValueError:
        raise NotAVertex(f"{format_point(v)} is not a vertex") from None


def vertex_edge_directions(poly, vertex) -> list[IntVector]:
    """Primitive integral directions of the edges at a vertex (sorted)."""
    if isinstance(poly, DelzantPolytope):
        return sorted(poly.edge_directions[_resolve_vertex(poly, vertex)])
    i = _resolve_vertex(poly, vertex)
    out = []
    for j in poly.neighbors(i):
        d = [b - a for a, b in zip(poly.vertices[i], poly.vertices[j])]
        try:
            out.append(primitive_direction(d))
        except (ZeroVector, OverflowError) as exc:  # pragma: no cover - rational input
            raise NonRationalDirection(str(exc)) from exc
    return sorted(out)


def canonical_chart_order(directions: Sequence[IntVector]) -> list[IntVector]:
    """Sort lexicographically, then swap the last two if det = -1."""
    dirs = sorted(directions)
    if len(dirs) >= 2 and determinant(from_columns(dirs)) < 0:
        dirs[-2], dirs[-1] = dirs[-1], dirs[-2]
    return dirs


def facet_normals_at_vertex(q: Sequence[Sequence[int]]) -> list[IntVector]:
    """Rows of ``Q^-1``: the normals dual to the columns of ``Q``."""
    return list(unimodular_inverse(q))


@dataclass(frozen=True)
class DelzantPolytope:
    """A verified Delzant polytope.

    ``edge_directions[i]`` are the chart-ordered edge vectors at vertex ``i``
    (the columns of its chart matrix) and ``facet_normals[i]`` the dual
    inward normals.
    """

    vertices: tuple[RationalVector, ...]
    labels: tuple[str, ...]
    edge_directions: tuple[tuple[IntVector, ...], ...]
    facet_normals: tuple[tuple[IntVector, ...], ...]
    hull: ConvexPolytope = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0])

    def index(self, vertex) -> int:
        return _resolve_vertex(self, vertex)

    def vertex(self, label) -> RationalVector:
        return self.vertices[self.index(label)]

    def chart_matrix(self, label) -> IntMatrix:
        return from_columns(self.edge_directions[self.index(label)])

    def contains(self, x, tol: float = 0.0) -> bool:
        return self.hull.contains(x, tol)


@dataclass(frozen=True)
class Violation:
    vertex: RationalVector
    label: str
    condition: str  # "simple" or "smooth"
    detail: str


@dataclass(frozen=True)
class DelzantViolation:
    """Report returned when a polytope fails the Delzant conditions."""

    violations: tuple[Violation, ...]

    def __bool__(self):
        return False

    def __str__(self):
        return "; ".join(f"{v.condition} fails at {v.label}: {v.detail}" for v in self.violations)


def verify_delzant(points: Sequence[Sequence], labels: Sequence[str] | None = None):
    """Check the simple / rational / smooth conditions at every vertex.

    Returns a DelzantPolytope, or a DelzantViolation naming each failing
    vertex. Rationality always holds for rational input.
    """
    pts = _check_dims(points)
    if labels is not None and len(labels) != len(pts):
        raise DimensionMismatch("one label per point is required")
    poly = convex_polytope(pts)
    n = poly.dimension
    label_of = {}
    if labels is not None:
        for p, name in zip(pts, labels):
            label_of.setdefault(p, name)
    names = tuple(label_of.get(v, format_point(v)) for v in poly.vertices)

    dirs_all, normals_all, bad = [], [], []
    for i, v in enumerate(poly.vertices):
        dirs = vertex_edge_directions(poly, i)
        if len(dirs) != n:
            bad.append(Violation(v, names[i], "simple", f"{len(dirs)} edges, expected {n}"))
            continue
        det = determinant(from_columns(dirs))
        if abs(det) != 1:
            bad.append(Violation(v, names[i], "smooth", f"edge directions {dirs} have determinant {det}"))
            continue
        ordered = canonical_chart_order(dirs)
        dirs_all.append(tuple(ordered))
        normals_all.append(tuple(facet_normals_at_vertex(from_columns(ordered))))
    if bad:
        return DelzantViolation(tuple(bad))
    return DelzantPolytope(poly.vertices, names, tuple(dirs_all), tuple(normals_all), poly)


def delzant_polytope(points, labels=None) -> DelzantPolytope:
    """Like verify_delzant but raises ValueError on failure."""
    result = verify_delzant(points, labels)
    if isinstance(result, DelzantViolation):
        raise ValueError(f"not a Delzant polytope: {result}")
    return result


def cone_is_pointed(generators: Sequence[Sequence]) -> bool:
    """True iff the only nonnegative combination summing to zero is trivial.

    Decided by exact feasibility of ``r >= 0, sum r_i v_i = 0, sum r_i = 1``.
    """
    gens = [as_rational_vector(g) for g in generators]
    if not gens:
        return True
    d = len(gens[0])
    if any(len(g) != d for g in gens):
        raise DimensionMismatch("generators of different dimensions")
    rows = [[g[c] for g in gens] for c in range(d)]
    rows.append([Fraction(1)] * len(gens))
    return nonnegative_solution(rows, [Fraction(0)] * d + [Fraction(1)]) is None


@dataclass(frozen=True)
class ProjectedPolytope:
    dimension: int
    point_images: dict[str, RationalVector]
    hull_vertices: tuple[RationalVector, ...]


def project_polytope(poly: DelzantPolytope, matrix: Sequence[Sequence[int]]) -> ProjectedPolytope:
    """Image of the polytope under an integer k x n matrix of full row rank."""
    lmat = as_int_matrix(matrix)
    n = poly.dimension
    if any(len(r) != n for r in lmat):
        raise DimensionMismatch(f"projection matrix must have {n} columns")
    if rank(lmat) != len(lmat):
        raise RankDeficient("projection matrix does not have full row rank")
    images = {lab: tuple(Fraction(x) for x in matvec(lmat, v)) if lmat else ()
              for lab, v in zip(poly.labels, poly.vertices)}
    return ProjectedPolytope(len(lmat), images, tuple(hull_vertices(list(images.values()))))


def lattice_points(poly) -> list[IntVector]:
    """All integer points of a polytope (or of the hull of a point list)."""
    if isinstance(poly, (DelzantPolytope, ConvexPolytope)):
        verts, member = poly.vertices, poly.contains
    else:
        verts = hull_vertices(poly)
        if len(verts) == 1:
            member = lambda x: tuple(Fraction(c) for c in x) == verts[0]  # noqa: E731
        else:
            member = lambda x: in_convex_hull(verts, x)  # noqa: E731
    n = len(verts[0])
    lo = [ceil(min(v[c] for v in verts)) for c in range(n)]
    hi = [floor(max(v[c] for v in verts)) for c in range(n)]
    box = product(*(range(a, b + 1) for a, b in zip(lo, hi)))
    return [tuple(x) for x in box if member(x)]
