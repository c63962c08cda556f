"""Affine subtori V = span(p) + a, their index data and binomial equations.

The offset ``a`` is carried only through ``E = exp(a)``, a vector of
positive rationals, so every coefficient below is an exact rational.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .charts import ChartAtlas, ChartPoint, ipow, is_exact, monomial
from .errors import Dependent, DimensionMismatch, NonPositiveOffset, NotPrimitive
from .lattice import (
    IntMatrix,
    IntVector,
    as_fraction,
    as_int_vector,
    columns,
    dot,
    identity,
    integer_kernel_basis,
    is_primitive,
    is_saturated,
    rank,
)
from .polytope import DelzantPolytope


@dataclass(frozen=True)
class AffineSubtorus:
    """``p``: k primitive spanning vectors; ``E``: exp of the offset;
    ``q``: a saturated basis of the integer vectors orthogonal to all p."""

    p: tuple[IntVector, ...]
    E: tuple[Fraction, ...]
    q: tuple[IntVector, ...]

    @property
    def n(self) -> int:
        return len(self.E)

    @property
    def k(self) -> int:
        return len(self.p)

    def exp_pairing(self, v: Sequence[int]) -> Fraction:
        """``exp(<a, v>)`` as the exact monomial ``prod E_m ** v_m``."""
        return monomial(self.E, v)


def validate_subspace(p: Sequence[Sequence[int]], E: Sequence | None = None,
                      n: int | None = None, q: Sequence[Sequence[int]] | None = None) -> AffineSubtorus:
    """Validate the spanning vectors and offset, and derive ``q``.

    ``n`` is needed only when ``p`` is empty and ``E`` is omitted. An
    explicit ``q`` is accepted if it is orthogonal to every p, has the right
    size and spans a saturated lattice.
    """
    pv = tuple(as_int_vector(v) for v in p)
    if E is not None:
        ev = tuple(as_fraction(x) for x in E)
        n = len(ev)
    elif pv:
        n = len(pv[0])
    if n is None:
        raise DimensionMismatch("dimension unknown: give E or n")
    if E is None:
        ev = (Fraction(1),) * n
    for i, x in enumerate(ev):
        if x <= 0:
            raise NonPositiveOffset(i)
    for i, v in enumerate(pv):
        if len(v) != n:
            raise DimensionMismatch(f"spanning vector {i} has length {len(v)}, expected {n}")
        if not any(v) or not is_primitive(v):
            raise NotPrimitive(i)
    if len(pv) > n or rank(pv) < len(pv):
        raise Dependent("spanning vectors are linearly dependent")
    if q is None:
        qv = tuple(integer_kernel_basis(pv, n)) if pv else identity(n)
    else:
        qv = tuple(as_int_vector(v) for v in q)
        if len(qv) != n - len(pv) or any(len(v) != n for v in qv):
            raise DimensionMismatch(f"expected {n - len(pv)} orthogonal vectors of length {n}")
        if any(dot(a, b) for a in pv for b in qv):
            raise ValueError("given q is not orthogonal to p")
        if qv and (rank(qv) < len(qv) or not is_saturated(qv)):
            raise ValueError("given q does not span the saturated orthogonal lattice")
    return AffineSubtorus(pv, ev, qv)


def pullback_matrix(V: AffineSubtorus) -> IntMatrix:
    """k x n matrix with rows p_l; it maps xi to (<p_1, xi>, ..., <p_k, xi>)."""
    return V.p


def pullback(V: AffineSubtorus, xi: Sequence) -> tuple:
    return tuple(dot(pl, xi) for pl in V.p)


@dataclass(frozen=True)
class BinomialEquation:
    """``f(z) = prod_{s_i>0} z_i**s_i - c * prod_{s_i<0} z_i**(-s_i)``.

    ``j`` is the 0-based index into the list of q vectors.
    """

    chart: str
    j: int
    s: IntVector
    c: Fraction

    @property
    def alpha(self) -> IntVector:
        return tuple(max(x, 0) for x in self.s)

    @property
    def beta(self) -> IntVector:
        return tuple(max(-x, 0) for x in self.s)

    @property
    def plus(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.s) if x >= 0)

    @property
    def minus(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.s) if x <= 0)

    @property
    def zero(self) -> frozenset[int]:
        return self.plus & self.minus

    def __str__(self):
        return format_binomial(self.alpha, self.beta, self.c)


def _format_monomial(e: Sequence[int]) -> str:
    parts = []
    for i, x in enumerate(e):
        if x == 1:
            parts.append(f"z{i + 1}")
        elif x:
            parts.append(f"z{i + 1}^{x}")
    return "*".join(parts)


def format_binomial(alpha, beta, c) -> str:
    left = _format_monomial(alpha) or "1"
    right = _format_monomial(beta)
    coef = str(c)
    if not right:
        return f"{left} - {coef}"
    return f"{left} - {right}" if c == 1 else f"{left} - {coef}*{right}"


@dataclass(frozen=True)
class IndexProfile:
    chart: str
    J: frozenset[int]
    splits: tuple[tuple[frozenset[int], frozenset[int], frozenset[int]], ...]


def index_profile(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus, lam: str) -> IndexProfile:
    """``J = {i : <p_l, v_i> = 0 for all l}`` and the (I+, I-, I0) splits."""
    lam = atlas.check_label(lam)
    vs = columns(atlas.q[lam])
    J = frozenset(i for i, v in enumerate(vs) if all(dot(pl, v) == 0 for pl in V.p))
    eqs = defining_equations(atlas, poly, V, lam)
    return IndexProfile(lam, J, tuple((f.plus, f.minus, f.zero) for f in eqs))


def defining_equations(atlas: ChartAtlas, poly: DelzantPolytope | None, V: AffineSubtorus,
                       lam: str) -> list[BinomialEquation]:
    """The n-k binomials cutting out the closure in chart ``lam``.

    ``s_i = <u_i, q_j>`` with ``u_i`` the rows of ``Q^-1``, and
    ``c_j = exp(<a, q_j>)``.
    """
    lam = atlas.check_label(lam)
    if len(atlas.q[lam]) != V.n:
        raise DimensionMismatch("subspace and polytope dimensions differ")
    normals = atlas.q_inv[lam]
    return [BinomialEquation(lam, j, tuple(dot(u, qj) for u in normals), V.exp_pairing(qj))
            for j, qj in enumerate(V.q)]


def evaluate_equation(f: BinomialEquation, z: Sequence):
    """Exact on rational points, complex otherwise."""
    if len(z) != len(f.s):
        raise DimensionMismatch("point has the wrong dimension")
    return monomial(z, f.alpha) - f.c * monomial(z, f.beta)


def relative_residual(f: BinomialEquation, z: Sequence) -> float:
    """``|f(z)|`` scaled by the larger of its two terms (0 if both vanish)."""
    a = complex(monomial(z, f.alpha))
    b = complex(f.c * monomial(z, f.beta))
    if cmath.isfinite(a) and cmath.isfinite(b):
        scale = max(abs(a), abs(b))
        return 0.0 if scale == 0 else abs(a - b) / scale
    # overflow: compare the terms through log(b / a)
    a_zero = any(e and z[i] == 0 for i, e in enumerate(f.alpha))
    b_zero = any(e and z[i] == 0 for i, e in enumerate(f.beta))
    if a_zero or b_zero:
        return 0.0 if a_zero and b_zero else 1.0
    log_ratio = cmath.log(complex(f.c)) + sum(
        (eb - ea) * cmath.log(complex(x)) for x, ea, eb in zip(z, f.alpha, f.beta))
    if log_ratio.real > 0:
        log_ratio = -log_ratio
    return abs(1 - cmath.exp(log_ratio))


def jacobian(eqs: Sequence[BinomialEquation], z: Sequence) -> list[list]:
    """Rows ``df_j/dz_i``; exact on rational points."""
    n = len(z)
    rows = []
    for f in eqs:
        row = []
        for i in range(n):
            entry = 0
            for e, coef in ((f.alpha, 1), (f.beta, -f.c)):
                if e[i]:
                    d = list(e)
                    d[i] -= 1
                    entry = entry + coef * e[i] * monomial(z, d)
            row.append(entry if is_exact(z) else complex(entry))
        rows.append(row)
    return rows


def parametrize(V: AffineSubtorus, u: Sequence[float], v: Sequence[float] | None = None) -> ChartPoint:
    """Torus point ``w_i = E_i * exp(sum_l p_li (u_l + i v_l))``."""
    if v is None:
        v = [0.0] * V.k
    if len(u) != V.k or len(v) != V.k:
        raise DimensionMismatch(f"expected {V.k} parameters")
    if V.k == 0:
        return tuple(V.E)
    out = []
    for i in range(V.n):
        t = sum(pl[i] * complex(ul, vl) for pl, ul, vl in zip(V.p, u, v))
        out.append(complex(float(V.E[i])) * cmath.exp(t))
    return tuple(out)


@dataclass(frozen=True)
class TorusElement:
    """Point of the compact torus T^k as unit complex numbers."""

    t: tuple[complex, ...]

    def __post_init__(self):
        if any(abs(abs(x) - 1) > 1e-12 for x in self.t):
            raise ValueError("torus components must have modulus 1")

    @classmethod
    def from_angles(cls, angles: Sequence[float]) -> "TorusElement":
        return cls(tuple(cmath.exp(1j * a) for a in angles))

    @classmethod
    def identity(cls, k: int) -> "TorusElement":
        return cls((1,) * k)


def act(V: AffineSubtorus, t: TorusElement, atlas: ChartAtlas, lam: str, z: Sequence) -> ChartPoint:
    """``z_i -> prod_l t_l ** <p_l, v_i> * z_i``."""
    if len(t.t) != V.k:
        raise DimensionMismatch(f"expected {V.k} torus components")
    vs = columns(atlas.q[atlas.check_label(lam)])
    out = []
    for zi, vi in zip(z, vs):
        factor = 1
        for tl, pl in zip(t.t, V.p):
            factor = factor * ipow(tl, dot(pl, vi))
        out.append(zi if factor == 1 else factor * zi)
    return tuple(out)
