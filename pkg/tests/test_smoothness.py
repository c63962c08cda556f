import random
from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from toricsub.charts import build_atlas
from toricsub.fixtures import BLOWUP_CP3, CP2, CP3, F1, load
from toricsub.lattice import rank
from toricsub.polytope import delzant_polytope
from toricsub.smoothness import (
    BINOMIAL,
    MONOMIAL,
    SINGULAR,
    SMOOTH,
    ZERO,
    Stratum,
    classify,
    closure_point,
    locus_samples,
    numeric_rank_probe,
    rational_root,
    restrict_to_stratum,
    stratum_in_closure,
    stratum_intersects_locus,
    stratum_jacobian_rank,
    strata,
)
from toricsub.subtorus import (
    BinomialEquation,
    defining_equations,
    evaluate_equation,
    jacobian,
    relative_residual,
    validate_subspace,
)

from oracles import jacobian_rank_sympy, singular_points_hypersurface
from reference_cases import ALL_EQUATION_CASES
from strategies import delzant_products

F = Fraction


def eq(s, c=1):
    return BinomialEquation("x", 0, tuple(s), F(c))


@pytest.mark.parametrize("s, c, S, kind", [
    ((1, -1), 1, {0}, MONOMIAL),
    ((3, -2), 1, set(), ZERO),
    ((1, 1), 1, {0}, MONOMIAL),
    ((1, 1), 1, {0, 1}, BINOMIAL),
])
def test_restrict_examples(s, c, S, kind):
    system = restrict_to_stratum([eq(s, c)], Stratum("x", frozenset(S)))
    assert [r.kind for r in system.equations] == [kind]


def test_restrict_keeps_the_surviving_term():
    (r,) = restrict_to_stratum([eq((1, 1))], Stratum("x", frozenset({0}))).equations
    assert r.term == (F(-1), (0, 0))


@pytest.mark.parametrize("s, S, meets", [
    ((1, 1), {0, 1}, True),
    ((1, 1), {0}, False),
    ((3, -2), set(), True),
    ((1, -1), {0}, False),
])
def test_intersects_examples(s, S, meets):
    assert stratum_intersects_locus(restrict_to_stratum([eq(s)], frozenset(S))) == meets


def test_inconsistent_torus_system_is_empty():
    # z1^2 = 1 and z1^2 = 4 cannot both hold
    eqs = [eq((2, 0), 1), eq((2, 0), 4)]
    assert not stratum_intersects_locus(restrict_to_stratum(eqs, frozenset({0, 1})))
    # z1^2 = 4 and z1 = -2 is consistent over C
    assert stratum_intersects_locus(restrict_to_stratum([eq((2, 0), 4), eq((1, 0), 2)], frozenset({0, 1})))


def test_rank_examples_cp2():
    poly, atlas = load(CP2)
    V = validate_subspace([(1, 1)])
    for lam in atlas.labels:
        eqs = defining_equations(atlas, poly, V, lam)
        for S in strata(2):
            st_ = Stratum(lam, S)
            if stratum_intersects_locus(restrict_to_stratum(eqs, st_)):
                assert stratum_jacobian_rank(eqs, st_).min_rank == 1
    V = validate_subspace([(3, 1)])
    eqs = defining_equations(atlas, poly, V, "(2,0)")
    res = stratum_jacobian_rank(eqs, Stratum("(2,0)", frozenset()))
    assert res.min_rank == 0 and res.witness == (0, 0) and res.exact


def test_rank_examples_blowup():
    poly, atlas = load(BLOWUP_CP3)
    V = validate_subspace([(1, 0, -1), (0, 1, 0)])
    for lam in atlas.labels:
        eqs = defining_equations(atlas, poly, V, lam)
        for S in strata(3):
            st_ = Stratum(lam, S)
            if stratum_intersects_locus(restrict_to_stratum(eqs, st_)):
                assert stratum_jacobian_rank(eqs, st_).min_rank == 1


def test_rank_requires_nonempty_stratum():
    with pytest.raises(ValueError):
        stratum_jacobian_rank([eq((1, 1))], Stratum("x", frozenset({0})))


@pytest.mark.parametrize("p, verdict", [((1, 1), SMOOTH), ((3, 1), SINGULAR), ((1, -1), SMOOTH)])
def test_classify_examples(p, verdict):
    poly, atlas = load(CP2)
    rep = classify(atlas, poly, validate_subspace([p]))
    assert rep.verdict == verdict
    if verdict == SINGULAR:
        assert ("(2,0)", frozenset(), (0, 0)) in {(w.chart, w.support, w.point) for w in rep.witnesses}


def test_cp3_is_singular_where_blowup_is_smooth():
    V = validate_subspace([(1, 0, -1), (0, 1, 0)])
    for points, verdict in ((CP3, SINGULAR), (BLOWUP_CP3, SMOOTH)):
        poly, atlas = load(points)
        assert classify(atlas, poly, V).verdict == verdict


def test_degenerate_dimensions_are_smooth():
    poly, atlas = load(F1)
    assert classify(atlas, poly, validate_subspace([], (2, 3))).smooth
    assert classify(atlas, poly, validate_subspace([(1, 0), (0, 1)])).smooth


def test_numeric_probe_examples():
    poly, atlas = load(CP2)
    eqs = defining_equations(atlas, poly, validate_subspace([(3, 1)]), "(2,0)")
    assert numeric_rank_probe(eqs, (0, 0)) == 0
    eqs = defining_equations(atlas, poly, validate_subspace([(1, 1)]), "(0,0)")
    assert numeric_rank_probe(eqs, (1.3 + 0.2j, 1.3 + 0.2j)) == 1
    with pytest.raises(ValueError):
        numeric_rank_probe(eqs, (1, 1), tol=0)


@given(st.integers(2, 5), st.integers(0, 10 ** 6))
def test_numeric_probe_generic_full_rank(n, seed):
    """Linear binomials z_i - c z_{i+1} have full rank everywhere on the torus."""
    rng = random.Random(seed)
    eqs = [BinomialEquation("x", i, tuple(1 if j == i else -1 if j == i + 1 else 0 for j in range(n)),
                            F(rng.randint(1, 5), rng.randint(1, 5))) for i in range(n - 1)]
    point = [complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for _ in range(n)]
    assert numeric_rank_probe(eqs, point) == n - 1 == rank(jacobian(eqs, [F(1)] * n))


@given(st.fractions(min_value=F(1, 50), max_value=50), st.integers(1, 5))
def test_rational_root(x, d):
    r = rational_root(x, d)
    (num, ok_n), (den, ok_d) = sympy.integer_nthroot(x.numerator, d), sympy.integer_nthroot(x.denominator, d)
    assert r == (F(int(num), int(den)) if ok_n and ok_d else None)
    assert rational_root(x ** d, d) == x


def _unique_cases():
    seen, out = set(), []
    for case in ALL_EQUATION_CASES:
        if (case.polytope, case.p) not in seen:
            seen.add((case.polytope, case.p))
            out.append(case)
    return out


@pytest.mark.parametrize("case", _unique_cases(), ids=lambda c: c.name)
def test_hypersurface_singularities_against_sympy(case):
    """For one equation per chart, singular points solve f = grad f = 0."""
    poly, atlas = load(case.polytope)
    V = validate_subspace(case.p)
    assert V.n - V.k == 1
    singular_charts = set()
    for lam in atlas.labels:
        (f,) = defining_equations(atlas, poly, V, lam)
        if singular_points_hypersurface(f.s, f.c):
            singular_charts.add(lam)
    rep = classify(atlas, poly, V)
    assert rep.verdict == (SINGULAR if singular_charts else SMOOTH) == (SMOOTH if case.smooth else SINGULAR)
    assert {w.chart for w in rep.witnesses} == singular_charts


@pytest.mark.parametrize("case", _unique_cases(), ids=lambda c: c.name)
def test_open_stratum_has_full_rank_and_witnesses_are_exact(case):
    poly, atlas = load(case.polytope)
    V = validate_subspace(case.p, [F(2)] + [F(1)] * (len(case.polytope[0]) - 1))
    full = frozenset(range(V.n))
    rep = classify(atlas, poly, V)
    for lam, rows in rep.audit.items():
        top = next(a for a in rows if a.stratum.support == full)
        assert top.min_rank == V.n - V.k
    for w in rep.witnesses:
        eqs = defining_equations(atlas, poly, V, w.chart)
        assert w.exact
        assert all(evaluate_equation(f, w.point) == 0 for f in eqs)
        assert jacobian_rank_sympy(eqs, w.point) == w.rank < V.n - V.k


@pytest.mark.parametrize("case", _unique_cases()[:12], ids=lambda c: c.name)
def test_locus_samples_lie_on_the_stratum(case):
    poly, atlas = load(case.polytope)
    V = validate_subspace(case.p)
    for lam in atlas.labels:
        eqs = defining_equations(atlas, poly, V, lam)
        for S in strata(V.n):
            for z, expected in locus_samples(eqs, Stratum(lam, S), 5, seed=1):
                assert all((abs(x) > 0) == (i in S) for i, x in enumerate(z))
                assert all(relative_residual(f, z) <= 1e-9 for f in eqs)
                assert numeric_rank_probe(eqs, z) == expected


def test_closure_point_and_flags():
    poly, atlas = load(CP2)
    V = validate_subspace([(1, 0)], (1, 2))
    assert closure_point(atlas, V, "(0,0)", {1}) == (0, 2)
    assert stratum_in_closure(atlas, V, "(0,0)", {1})
    assert not stratum_in_closure(atlas, V, "(0,0)", {0})
    assert classify(atlas, poly, V).flags == ()


def _random_subspace(rng, n, k):
    while True:
        rows = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(k)]
        if all(any(r) for r in rows) and rank(rows) == k:
            return [tuple(x // gcd(*r) for x in r) for r in rows]


@given(delzant_products(max_dim=3), st.integers(0, 10 ** 6))
def test_verdict_invariance(data, seed):
    """Changing the q basis or shuffling the vertex input keeps the verdict."""
    points = data[0]
    rng = random.Random(seed)
    n = len(points[0])
    k = rng.randint(1, n)
    p = _random_subspace(rng, n, k)
    E = [F(rng.randint(1, 3)) for _ in range(n)]
    poly, atlas = load(points)
    V = validate_subspace(p, E)
    base = classify(atlas, poly, V)
    q = [tuple(-x for x in v) if rng.random() < 0.5 else v for v in V.q]
    rng.shuffle(q)
    W = validate_subspace(p, E, q=q)
    assert classify(atlas, poly, W).verdict == base.verdict
    shuffled = list(points)
    rng.shuffle(shuffled)
    poly2 = delzant_polytope(shuffled)
    assert classify(build_atlas(poly2), poly2, V).verdict == base.verdict
