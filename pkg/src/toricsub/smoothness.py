"""Jacobian-rank smoothness test for the chartwise binomial zero locus.

Each chart C^n is split into strata by coordinate support S (the set of
nonzero coordinates). On a stratum an equation either vanishes identically
(ZERO), keeps one monomial (MONOMIAL, so the stratum misses the locus) or
survives as a torus binomial ``z^(alpha - beta) = c`` (BINOMIAL).

The Jacobian at a point of support exactly S is block diagonal: surviving
binomials only differentiate in S-columns and have rank equal to the rank
of their exponent differences; ZERO rows only differentiate in columns
outside S, with at most two nonzero entries each. Those rows form a gain
graph whose rank per component is |vertices| minus one when the component
is balanced (its cycle monomials equal the right constants) and |vertices|
otherwise. Balance conditions are again torus binomials, so the minimum
rank over the stratum is found by exact lattice computations.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt
from typing import Iterable, Sequence

from .charts import ChartAtlas, monomial
from .lattice import IntVector, columns, dot, rank, smith_normal_form
from .lp import feasible_point
from .polytope import DelzantPolytope
from .subtorus import AffineSubtorus, BinomialEquation, defining_equations, evaluate_equation, jacobian

ZERO, MONOMIAL, BINOMIAL = "zero", "monomial", "binomial"
SMOOTH, SINGULAR = "SMOOTH", "SINGULAR"


@dataclass(frozen=True)
class Stratum:
    """Points of a chart whose nonzero coordinates are exactly ``support``."""

    chart: str
    support: frozenset[int]


@dataclass(frozen=True)
class RestrictedEquation:
    equation: BinomialEquation
    kind: str
    term: tuple[Fraction, IntVector] | None = None  # the survivor of a MONOMIAL


@dataclass(frozen=True)
class RestrictedSystem:
    stratum: Stratum
    n: int
    equations: tuple[RestrictedEquation, ...]

    def of_kind(self, kind: str) -> list[BinomialEquation]:
        return [r.equation for r in self.equations if r.kind == kind]


def _inside(e: Sequence[int], support: frozenset[int]) -> bool:
    return all(i in support for i, x in enumerate(e) if x)


def restrict_to_stratum(eqs: Sequence[BinomialEquation], stratum) -> RestrictedSystem:
    """Classify every equation after setting the coordinates outside S to 0."""
    if not isinstance(stratum, Stratum):
        stratum = Stratum(eqs[0].chart if eqs else "", frozenset(stratum))
    S = stratum.support
    n = len(eqs[0].s) if eqs else 0
    out = []
    for f in eqs:
        a_ok, b_ok = _inside(f.alpha, S), _inside(f.beta, S)
        if a_ok and b_ok:
            out.append(RestrictedEquation(f, BINOMIAL))
        elif a_ok:
            out.append(RestrictedEquation(f, MONOMIAL, (Fraction(1), f.alpha)))
        elif b_ok:
            out.append(RestrictedEquation(f, MONOMIAL, (-f.c, f.beta)))
        else:
            out.append(RestrictedEquation(f, ZERO))
    return RestrictedSystem(stratum, n, tuple(out))


# -- exact roots -----------------------------------------------------------

def _iroot(x: int, d: int) -> int | None:
    if d == 1:
        return x
    if d == 2:
        r = isqrt(x)
        return r if r * r == x else None
    r = int(round(x ** (1.0 / d))) if x < 2 ** 1000 else 1 << (x.bit_length() // d)
    for _ in range(200):
        nxt = ((d - 1) * r + x // r ** (d - 1)) // d if r else 1
        if abs(nxt - r) <= 1:
            break
        r = nxt
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** d == x:
            return cand
    return None


def rational_root(x: Fraction, d: int) -> Fraction | None:
    """Positive real d-th root of a positive rational, if rational."""
    num, den = _iroot(x.numerator, d), _iroot(x.denominator, d)
    return None if num is None or den is None else Fraction(num, den)


def _real_root(x: Fraction, d: int) -> float:
    return float(x) ** (1.0 / d)


# -- torus binomial systems ------------------------------------------------

class TorusSystem:
    """``z^A_r = kappa_r`` over the torus (C*)^S, solved through Smith form.

    With ``U A V = D`` and ``z_i = prod_m y_m ** V[i][m]`` the system becomes
    ``y_t ** d_t = kappa'_t`` for t < rank and ``kappa'_t = 1`` beyond.
    """

    def __init__(self, support: Iterable[int], rows: Sequence[Sequence[int]], consts: Sequence[Fraction]):
        self.cols = sorted(support)
        self.rows = [tuple(r[i] for i in self.cols) for r in rows]
        self.consts = [Fraction(c) for c in consts]
        s = len(self.cols)
        if self.rows and s:
            u, diag, v = smith_normal_form(self.rows, s)
        else:
            u = tuple(tuple(int(i == j) for j in range(len(self.rows))) for i in range(len(self.rows)))
            diag, v = (), tuple(tuple(int(i == j) for j in range(s)) for i in range(s))
        self.u, self.diag, self.v = u, diag, v
        self.rank = len(diag)
        self.kappa = [monomial(self.consts, row) for row in u]

    def consistent(self) -> bool:
        return all(k == 1 for k in self.kappa[self.rank:])

    def _assemble(self, y: Sequence, n: int):
        z = [0] * n
        for pos, i in enumerate(self.cols):
            z[i] = monomial(y, self.v[pos])
        return tuple(z)

    def positive_solution(self, n: int) -> tuple[tuple, bool]:
        """The positive real solution with all free variables 1.

        Returns ``(point, exact)``; the point is rational when every root is.
        """
        roots, exact = [], True
        for k, d in zip(self.kappa, self.diag):
            r = rational_root(k, d)
            if r is None:
                exact = False
                break
            roots.append(r)
        free = len(self.cols) - self.rank
        if exact:
            return self._assemble(roots + [Fraction(1)] * free, n), True
        y = [complex(_real_root(k, d)) for k, d in zip(self.kappa, self.diag)] + [complex(1)] * free
        return self._assemble(y, n), False

    def sample(self, n: int, rng: random.Random) -> tuple[tuple, tuple[int, ...]]:
        """Random point on a random coset; returns it with the branch indices."""
        branch = tuple(rng.randrange(d) for d in self.diag)
        y = [complex(_real_root(k, d)) * cmath.exp(2j * cmath.pi * b / d)
             for k, d, b in zip(self.kappa, self.diag, branch)]
        for _ in range(len(self.cols) - self.rank):
            y.append(rng.uniform(0.5, 2.0) * cmath.exp(1j * rng.uniform(-cmath.pi, cmath.pi)))
        return self._assemble(y, n), branch

    def holds_on_coset(self, gamma: Sequence[int], const: Fraction, branch: Sequence[int]) -> bool:
        """Does ``z^gamma = const`` hold on the whole coset given by ``branch``?"""
        g = [gamma[i] for i in self.cols]
        gv = [sum(g[i] * self.v[i][m] for i in range(len(g))) for m in range(len(self.cols))]
        if any(gv[self.rank:]):
            return False
        lcm = 1
        for d in self.diag:
            lcm = lcm * d // gcd(lcm, d)
        lhs = Fraction(1)
        for x, k, d in zip(gv, self.kappa, self.diag):
            lhs *= k ** (x * (lcm // d))
        if lhs != Fraction(const) ** lcm:
            return False
        phase = sum((Fraction(x * b, d) for x, b, d in zip(gv, branch, self.diag)), Fraction(0))
        return phase.denominator == 1


def stratum_intersects_locus(system: RestrictedSystem) -> bool:
    """False iff a surviving single monomial or an inconsistent binomial
    system rules out points with support exactly S."""
    if any(r.kind == MONOMIAL for r in system.equations):
        return False
    return _survivor_system(system).consistent()


def _survivor_system(system: RestrictedSystem, extra=()) -> TorusSystem:
    rows, consts = [], []
    for f in system.of_kind(BINOMIAL):
        rows.append(f.s)
        consts.append(f.c)
    for gamma, const in extra:
        rows.append(gamma)
        consts.append(const)
    return TorusSystem(system.stratum.support, rows, consts)


# -- gain graph of the ZERO rows --------------------------------------------

@dataclass
class _Component:
    vertices: set[int]
    loop: bool
    cycles: list[tuple[IntVector, Fraction]] = field(default_factory=list)


def _entries(f: BinomialEquation, S: frozenset[int]):
    """Nonzero Jacobian entries of a ZERO row: (column, monomial exponents, coefficient)."""
    out = []
    for e, coef in ((f.alpha, Fraction(1)), (f.beta, -f.c)):
        outside = [i for i, x in enumerate(e) if x and i not in S]
        if len(outside) == 1 and e[outside[0]] == 1:
            i = outside[0]
            rest = list(e)
            rest[i] = 0
            out.append((i, tuple(rest), coef))
    return out


def gain_components(system: RestrictedSystem) -> list[_Component]:
    """Components of the graph formed by the ZERO rows, with cycle conditions.

    An edge row ``a x_u + b x_v = 0`` sets ``x_v = g x_u`` with
    ``g = -a/b = z^delta * kappa``; a component is balanced iff every
    non-tree edge agrees with the tree potentials.
    """
    S = system.stratum.support
    n = system.n
    adjacency: dict[int, list] = {}
    loops = set()
    for f in system.of_kind(ZERO):
        ent = _entries(f, S)
        if len(ent) == 1:
            loops.add(ent[0][0])
            adjacency.setdefault(ent[0][0], [])
        elif len(ent) == 2:
            (u, mu, a), (v, mv, b) = ent
            delta = tuple(x - y for x, y in zip(mu, mv))
            kappa = -a / b
            adjacency.setdefault(u, []).append((v, delta, kappa))
            adjacency.setdefault(v, []).append((u, tuple(-x for x in delta), 1 / kappa))
    comps, seen = [], set()
    for root in sorted(adjacency):
        if root in seen:
            continue
        pot = {root: ((0,) * n, Fraction(1))}
        order, edges = [root], []
        seen.add(root)
        while order:
            x = order.pop()
            for y, delta, kappa in adjacency[x]:
                edges.append((x, y, delta, kappa))
                if y not in pot:
                    gx, kx = pot[x]
                    pot[y] = (tuple(a + b for a, b in zip(gx, delta)), kx * kappa)
                    seen.add(y)
                    order.append(y)
        comp = _Component(set(pot), any(v in loops for v in pot))
        for x, y, delta, kappa in edges:
            (gx, kx), (gy, ky) = pot[x], pot[y]
            gamma = tuple(a - b - c for a, b, c in zip(gy, gx, delta))
            const = kappa * kx / ky
            if any(gamma) or const != 1:
                comp.cycles.append((gamma, const))
        comps.append(comp)
    return comps


# -- stratum rank ------------------------------------------------------------

@dataclass(frozen=True)
class StratumRank:
    stratum: Stratum
    survivor_rank: int
    min_rank: int
    balanced: tuple[int, ...]  # indices of components balanced at the witness
    witness: tuple
    exact: bool
    witness_rank: int | None  # exact Jacobian rank at a rational witness


def _components_rank(comps: Sequence[_Component], balanced: Iterable[int]) -> int:
    bal = set(balanced)
    return sum(len(c.vertices) - (1 if i in bal else 0) for i, c in enumerate(comps))


def _balanceable(comps):
    return [i for i, c in enumerate(comps) if not c.loop]


def stratum_jacobian_rank(eqs: Sequence[BinomialEquation], stratum, closure_point=None) -> StratumRank:
    """Minimum Jacobian rank on the locus points with support exactly S.

    Requires a nonempty stratum. ``closure_point`` (optional) is tried as
    the witness first when it lies on the stratum and attains the minimum.
    """
    system = restrict_to_stratum(eqs, stratum)
    if not stratum_intersects_locus(system):
        raise ValueError("stratum does not meet the zero locus")
    base = _survivor_system(system)
    comps = gain_components(system)
    candidates = _balanceable(comps)
    best, best_sys = (), base
    for size in range(len(candidates), 0, -1):
        for chosen in combinations(candidates, size):
            extra = [cyc for i in chosen for cyc in comps[i].cycles]
            ts = _survivor_system(system, extra)
            if ts.consistent():
                best, best_sys = chosen, ts
                break
        if best:
            break
    min_rank = base.rank + _components_rank(comps, best)
    n = system.n
    witness, exact = None, False
    if closure_point is not None and _on_stratum(closure_point, system.stratum.support) \
            and all(evaluate_equation(f, closure_point) == 0 for f in eqs) \
            and rank(jacobian(eqs, closure_point)) == min_rank:
        witness, exact = tuple(closure_point), True
    if witness is None:
        witness, exact = best_sys.positive_solution(n)
    wrank = rank(jacobian(eqs, witness)) if exact else None
    return StratumRank(system.stratum, base.rank, min_rank, tuple(best), witness, exact, wrank)


def _on_stratum(z, support) -> bool:
    return all((x != 0) == (i in support) for i, x in enumerate(z))


def expected_rank(system: RestrictedSystem, branch: Sequence[int]) -> int:
    """Jacobian rank at a generic point of the coset labelled by ``branch``."""
    base = _survivor_system(system)
    comps = gain_components(system)
    bal = [i for i in _balanceable(comps)
           if all(base.holds_on_coset(g, c, branch) for g, c in comps[i].cycles)]
    return base.rank + _components_rank(comps, bal)


def locus_samples(eqs: Sequence[BinomialEquation], stratum, count: int, seed: int = 0):
    """Random points of the locus with support exactly S, each paired with
    the Jacobian rank it should have."""
    system = restrict_to_stratum(eqs, stratum)
    if not stratum_intersects_locus(system):
        return []
    base = _survivor_system(system)
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        z, branch = base.sample(system.n, rng)
        out.append((z, expected_rank(system, branch)))
    return out


# -- numerical oracle --------------------------------------------------------

def numeric_rank_probe(eqs: Sequence[BinomialEquation], point: Sequence, tol: float = 1e-9) -> int:
    """Rank of the complex Jacobian by complete pivoting; pivots below
    ``tol`` times the first pivot count as zero."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = [complex(x) for x in point]
    m = [[complex(x) for x in row] for row in jacobian(eqs, z)]
    r = 0
    first = None
    rows, cols = len(m), len(z)
    while r < min(rows, cols):
        piv = max(((abs(m[i][j]), i, j) for i in range(r, rows) for j in range(r, cols)), default=(0.0, 0, 0))
        size, i0, j0 = piv
        if first is None:
            first = size
        if size == 0 or size <= tol * first:
            break
        m[r], m[i0] = m[i0], m[r]
        for row in m:
            row[r], row[j0] = row[j0], row[r]
        for i in range(r + 1, rows):
            factor = m[i][r] / m[r][r]
            m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


# -- classification ----------------------------------------------------------

@dataclass(frozen=True)
class StratumAudit:
    stratum: Stratum
    status: str  # "empty-monomial", "empty-inconsistent" or "meets-locus"
    min_rank: int | None = None
    witness: tuple | None = None
    exact: bool = True
    in_closure: bool | None = None


@dataclass(frozen=True)
class Witness:
    chart: str
    support: frozenset[int]
    point: tuple
    rank: int
    exact: bool


@dataclass(frozen=True)
class SmoothnessReport:
    verdict: str
    expected_rank: int
    witnesses: tuple[Witness, ...]
    audit: dict[str, tuple[StratumAudit, ...]]
    flags: tuple[str, ...]

    @property
    def smooth(self) -> bool:
        return self.verdict == SMOOTH


def strata(n: int) -> list[frozenset[int]]:
    """All supports, largest first."""
    return [frozenset(c) for size in range(n, -1, -1) for c in combinations(range(n), size)]


def closure_point(atlas: ChartAtlas, V: AffineSubtorus, lam: str, support) -> tuple:
    """``exp(<a, v_i>)`` on the support and 0 elsewhere."""
    vs = columns(atlas.q[lam])
    return tuple(V.exp_pairing(v) if i in support else Fraction(0) for i, v in enumerate(vs))


def stratum_in_closure(atlas: ChartAtlas, V: AffineSubtorus, lam: str, support) -> bool:
    """Is the stratum reached by a one-parameter limit of torus points?

    True iff some theta has ``<theta, b_i> = 0`` on S and ``>= 1`` off S,
    where ``b_i = (<p_l, v_i>)_l``.
    """
    images = [tuple(dot(pl, v) for pl in V.p) for v in columns(atlas.q[lam])]
    eq = [(b, 0) for i, b in enumerate(images) if i in support]
    ge = [(b, 1) for i, b in enumerate(images) if i not in support]
    return feasible_point(V.k, eq=eq, ge=ge) is not None


def classify(atlas: ChartAtlas, poly: DelzantPolytope | None, V: AffineSubtorus) -> SmoothnessReport:
    """SMOOTH iff every locus-meeting stratum of every chart has minimum
    Jacobian rank n - k; otherwise SINGULAR with exact witnesses."""
    m = V.n - V.k
    witnesses, audit, flags = [], {}, []
    for lam in atlas.labels:
        eqs = defining_equations(atlas, poly, V, lam)
        rows = []
        for S in strata(V.n):
            stratum = Stratum(lam, S)
            system = restrict_to_stratum(eqs, stratum)
            if any(r.kind == MONOMIAL for r in system.equations):
                rows.append(StratumAudit(stratum, "empty-monomial"))
                continue
            if not _survivor_system(system).consistent():
                rows.append(StratumAudit(stratum, "empty-inconsistent"))
                continue
            res = stratum_jacobian_rank(eqs, stratum, closure_point(atlas, V, lam, S))
            in_cl = stratum_in_closure(atlas, V, lam, S)
            if not in_cl:
                flags.append(f"chart {lam}: stratum {format_support(S)} meets the zero locus "
                             "but is not a limit of torus points")
            rows.append(StratumAudit(stratum, "meets-locus", res.min_rank, res.witness, res.exact, in_cl))
            if res.min_rank < m:
                witnesses.append(Witness(lam, S, res.witness, res.min_rank, res.exact))
        audit[lam] = tuple(rows)
    verdict = SINGULAR if witnesses else SMOOTH
    return SmoothnessReport(verdict, m, tuple(witnesses), audit, tuple(flags))


def format_support(S) -> str:
    return "{" + ",".join(f"z{i + 1}" for i in sorted(S)) + "}"
