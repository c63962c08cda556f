"""Chart matrices of a toric manifold with their transitions and torus maps.

Points are plain tuples. A point whose entries are all ints or Fractions is
evaluated exactly; anything else is treated as complex floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import DimensionMismatch, DomainViolation, UnknownLabel, ZeroCoordinate
from .lattice import IntMatrix, identity, matmul, unimodular_inverse
from .polytope import DelzantPolytope, NotAVertex

ChartPoint = tuple


def is_exact(z: Sequence) -> bool:
    return all(isinstance(x, Rational) for x in z)


def ipow(x, e: int):
    """Integer power by repeated squaring; ``0**0 == 1``."""
    if e == 0:
        return Fraction(1) if isinstance(x, Rational) else 1
    if e < 0:
        if x == 0:
            raise ZeroDivisionError("zero raised to a negative power")
        base = Fraction(1) / x if isinstance(x, Rational) else 1 / x
        e = -e
    else:
        base = x
    result = None
    while e:
        if e & 1:
            result = base if result is None else result * base
        e >>= 1
        if e:
            base = base * base
    return result


def monomial(z: Sequence, exponents: Sequence[int]):
    """``prod z_j ** e_j`` with the 0**0 = 1 convention."""
    out = Fraction(1) if is_exact(z) else complex(1)
    for x, e in zip(z, exponents):
        if e:
            out = out * ipow(x, e)
    return out


@dataclass(frozen=True)
class TransitionMatrix:
    source: str
    target: str
    matrix: IntMatrix


@dataclass(frozen=True)
class ChartAtlas:
    """One unimodular chart matrix per vertex, columns = edge directions."""

    labels: tuple[str, ...]
    q: dict[str, IntMatrix]
    q_inv: dict[str, IntMatrix]

    @property
    def dimension(self) -> int:
        return len(next(iter(self.q.values())))

    def check_label(self, label: str) -> str:
        if label not in self.q:
            raise UnknownLabel(f"unknown chart label {label!r}")
        return label


def build_atlas(poly: DelzantPolytope) -> ChartAtlas:
    q, q_inv = {}, {}
    for label in poly.labels:
        q[label] = poly.chart_matrix(label)
        q_inv[label] = unimodular_inverse(q[label])
    return ChartAtlas(poly.labels, q, q_inv)


def resolve_label(atlas: ChartAtlas, poly: DelzantPolytope | None, vertex) -> str:
    """Accept a label or any vertex reference understood by the polytope."""
    if isinstance(vertex, str):
        return atlas.check_label(vertex)
    if poly is None:
        raise UnknownLabel(f"cannot resolve {vertex!r} without the polytope")
    try:
        return poly.labels[poly.index(vertex)]
    except NotAVertex as exc:
        raise UnknownLabel(str(exc)) from None


def transition(atlas: ChartAtlas, lam: str, mu: str) -> TransitionMatrix:
    """``D = Q_lam^-1 Q_mu``."""
    atlas.check_label(lam)
    atlas.check_label(mu)
    if lam == mu:
        return TransitionMatrix(lam, mu, identity(atlas.dimension))
    return TransitionMatrix(lam, mu, matmul(atlas.q_inv[lam], atlas.q[mu]))


def _matrix(d) -> IntMatrix:
    return d.matrix if isinstance(d, TransitionMatrix) else tuple(tuple(r) for r in d)


def in_transition_domain(d, z: Sequence) -> bool:
    """False iff some z_j = 0 while row j of D has a negative entry."""
    m = _matrix(d)
    if len(z) != len(m):
        raise DimensionMismatch("point and matrix dimensions differ")
    return all(x != 0 or min(row) >= 0 for x, row in zip(z, m))


def transform_point(d, z: Sequence) -> ChartPoint:
    """Monomial change of coordinates ``z'_i = prod_j z_j ** D[j][i]``."""
    m = _matrix(d)
    if not in_transition_domain(m, z):
        raise DomainViolation("point lies outside the transition domain")
    n = len(m)
    return tuple(monomial(z, [m[j][i] for j in range(n)]) for i in range(n))


def _torus_map(exps: IntMatrix, z: Sequence, what: str) -> ChartPoint:
    if any(x == 0 for x in z):
        raise ZeroCoordinate(f"{what} needs all coordinates nonzero")
    if len(z) != len(exps):
        raise DimensionMismatch("point has the wrong dimension")
    return transform_point(exps, z)


def chart_to_torus(atlas: ChartAtlas, lam: str, z: Sequence) -> ChartPoint:
    """``w_i = prod_j z_j ** Qinv[j][i]``."""
    return _torus_map(atlas.q_inv[atlas.check_label(lam)], z, "chart_to_torus")


def torus_to_chart(atlas: ChartAtlas, lam: str, w: Sequence) -> ChartPoint:
    """``z_i = prod_j w_j ** Q[j][i]``, i.e. ``z_i = w ** v_i``."""
    return _torus_map(atlas.q[atlas.check_label(lam)], w, "torus_to_chart")
