"""Fixed points of the T^k-action and the projected moment polytope."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import ChartAtlas
from .errors import NotAVertexImage, NotSmooth
from .lattice import IntMatrix, RationalVector, columns, dot, matmul, transpose
from .polytope import DelzantPolytope, ProjectedPolytope, cone_is_pointed, project_polytope
from .smoothness import Stratum, classify, restrict_to_stratum, stratum_intersects_locus
from .subtorus import (
    AffineSubtorus,
    IndexProfile,
    defining_equations,
    evaluate_equation,
    index_profile,
    pullback,
)

VERTEX, NON_VERTEX = "VERTEX", "NON_VERTEX"
VERTEX_WITH_FIXED_POINT = "VERTEX_WITH_FIXED_POINT"
COND1, COND2, NEITHER = "COND1", "COND2", "NEITHER"


def fixed_stratum(lam: str, profile: IndexProfile) -> Stratum:
    """Fixed points of the action in chart ``lam``: support inside J."""
    return Stratum(lam, profile.J)


def _pairings(atlas: ChartAtlas, lam: str, qj) -> list[int]:
    return [dot(u, qj) for u in atlas.q_inv[lam]]


def no_fixed_point_check(atlas: ChartAtlas, V: AffineSubtorus, lam: str) -> bool:
    """True iff some q_j pairs strictly positively (or strictly negatively)
    with every normal of the chart; then the chart locus avoids all
    coordinate hyperplanes."""
    if V.k < 1:
        raise ValueError("the check assumes k >= 1")
    for qj in V.q:
        s = _pairings(atlas, atlas.check_label(lam), qj)
        if all(x > 0 for x in s) or all(x < 0 for x in s):
            return True
    return False


@dataclass(frozen=True)
class StarClassification:
    chart: str
    tags: tuple[str, ...]
    pairs: tuple[tuple[int, int] | None, ...]  # COND2 witness indices (0-based)


def star_classification(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus, lam: str) -> StarClassification:
    """Per q_j: COND1 if all pairings off J vanish, COND2 if two of them
    have opposite signs, NEITHER otherwise."""
    prof = index_profile(atlas, poly, V, lam)
    tags, pairs = [], []
    off = [i for i in range(V.n) if i not in prof.J]
    for qj in V.q:
        s = _pairings(atlas, lam, qj)
        if all(s[i] == 0 for i in off):
            tags.append(COND1)
            pairs.append(None)
            continue
        pair = next(((i, t) for i in off for t in off if s[i] * s[t] < 0 and i < t), None)
        tags.append(COND2 if pair else NEITHER)
        pairs.append(pair)
    return StarClassification(lam, tuple(tags), tuple(pairs))


def vertex_status(atlas: ChartAtlas, V: AffineSubtorus, lam: str) -> str:
    """VERTEX iff the cone spanned by the nonzero images of the edge
    directions under the pullback is pointed."""
    images = [pullback(V, v) for v in columns(atlas.q[atlas.check_label(lam)])]
    gens = [b for b in images if any(b)]
    return VERTEX if cone_is_pointed(gens) else NON_VERTEX


@dataclass(frozen=True)
class FixedPointCertificate:
    chart: str
    point: tuple[Fraction, ...]
    equations_vanish: bool
    in_fixed_stratum: bool

    @property
    def verified(self) -> bool:
        return self.equations_vanish and self.in_fixed_stratum


def canonical_fixed_point(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus, lam: str) -> FixedPointCertificate:
    """``exp(<a, v_i>)`` on J and 0 off J, checked exactly.

    Raises NotAVertexImage when the image of ``lam`` is not a vertex.
    """
    if vertex_status(atlas, V, lam) != VERTEX:
        raise NotAVertexImage(f"image of vertex {lam} is not a vertex of the projected polytope")
    prof = index_profile(atlas, poly, V, lam)
    vs = columns(atlas.q[lam])
    z = tuple(V.exp_pairing(v) if i in prof.J else Fraction(0) for i, v in enumerate(vs))
    eqs = defining_equations(atlas, poly, V, lam)
    vanish = all(evaluate_equation(f, z) == 0 for f in eqs)
    fixed = all((x != 0) == (i in prof.J) for i, x in enumerate(z))
    return FixedPointCertificate(lam, z, vanish, fixed)


def face_collapse_check(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus, lam: str) -> bool:
    """Is the pullback constant on the face of the polytope spanned at
    ``lam`` by the edges in J? Checked on the face's vertices."""
    prof = index_profile(atlas, poly, V, lam)
    if not prof.J:
        return True
    origin = poly.vertex(lam)
    normals = atlas.q_inv[lam]
    # the face is cut out by <u_i, x - lam> = 0 for i outside J
    off = [normals[i] for i in range(V.n) if i not in prof.J]
    face = [x for x in poly.vertices
            if all(dot(u, [a - b for a, b in zip(x, origin)]) == 0 for u in off)]
    target = pullback(V, origin)
    return all(pullback(V, x) == target for x in face)


def orthogonality_check(atlas: ChartAtlas, V: AffineSubtorus) -> dict[str, IntMatrix]:
    """``P Q (Q^-1 [q ...])`` per chart; every entry must be zero."""
    out = {}
    for lam in atlas.labels:
        if not V.p or not V.q:
            out[lam] = tuple(() for _ in V.p)
            continue
        out[lam] = matmul(matmul(V.p, atlas.q[lam]), matmul(atlas.q_inv[lam], transpose(V.q)))
    return out


def kernel_identity_residuals(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus) -> dict[str, list]:
    """``sum_{i not in J} <u_i, q_j> i*(v_i)`` per chart and j; all zero."""
    out = {}
    for lam in atlas.labels:
        prof = index_profile(atlas, poly, V, lam)
        vs = columns(atlas.q[lam])
        res = []
        for qj in V.q:
            s = _pairings(atlas, lam, qj)
            total = [0] * V.k
            for i in range(V.n):
                if i not in prof.J:
                    total = [t + s[i] * b for t, b in zip(total, pullback(V, vs[i]))]
            res.append(tuple(total))
        out[lam] = res
    return out


@dataclass(frozen=True)
class MomentImage:
    polytope: ProjectedPolytope
    status: dict[str, str]
    certificates: dict[str, FixedPointCertificate]
    checked: bool  # False when computed outside the smooth hypothesis
    theorem_holds: bool

    @property
    def certified_images(self) -> set[RationalVector]:
        return {self.polytope.point_images[lam] for lam, c in self.certificates.items() if c.verified}


def moment_image(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus, checked: bool = True) -> MomentImage:
    """Projected polytope with vertex statuses and fixed-point certificates.

    In checked mode a non-smooth closure raises NotSmooth; unchecked mode
    computes the same combinatorics and marks the result as such.
    """
    if checked and not classify(atlas, poly, V).smooth:
        raise NotSmooth("closure is not smooth; use unchecked mode to explore")
    proj = project_polytope(poly, V.p)
    status, certs = {}, {}
    for lam in atlas.labels:
        if vertex_status(atlas, V, lam) == VERTEX:
            status[lam] = VERTEX_WITH_FIXED_POINT
            certs[lam] = canonical_fixed_point(atlas, poly, V, lam)
        else:
            status[lam] = NON_VERTEX
    certified = {proj.point_images[lam] for lam, c in certs.items() if c.verified}
    holds = set(proj.hull_vertices) == certified
    return MomentImage(proj, status, certs, checked, holds)


def fixed_stratum_meets_locus(atlas: ChartAtlas, poly: DelzantPolytope, V: AffineSubtorus, lam: str) -> bool:
    """Does the locus contain a point whose support is exactly J?"""
    prof = index_profile(atlas, poly, V, lam)
    eqs = defining_equations(atlas, poly, V, lam)
    return stratum_intersects_locus(restrict_to_stratum(eqs, fixed_stratum(lam, prof)))
