import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricsub.charts import (
    chart_to_torus,
    in_transition_domain,
    ipow,
    monomial,
    resolve_label,
    torus_to_chart,
    transform_point,
    transition,
)
from toricsub.errors import DomainViolation, UnknownLabel, ZeroCoordinate
from toricsub.fixtures import BLOWUP_CP3, CP2, CP3, F1, UNIT_SQUARE, load
from toricsub.lattice import determinant, identity, matmul, unimodular_inverse

from oracles import sympy_inverse
from strategies import delzant_products

F = Fraction


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol * max(abs(y), 1.0) for x, y in zip(a, b))


def test_atlas_sizes():
    assert len(load(CP2)[1].labels) == 3
    assert len(load(F1)[1].labels) == 4
    _, square = load(UNIT_SQUARE)
    assert len(square.labels) == 4
    for lam in square.labels:
        q = square.q[lam]
        assert determinant(q) == 1
        assert all(sorted(abs(x) for x in row) == [0, 1] for row in q)


def test_cp2_origin_chart_is_identity():
    _, atlas = load(CP2)
    assert atlas.q["(0,0)"] == identity(2)
    for lam in atlas.labels:
        assert transition(atlas, "(0,0)", lam).matrix == atlas.q[lam]


def test_self_transition_and_unknown_label():
    _, atlas = load(F1)
    for lam in atlas.labels:
        assert transition(atlas, lam, lam).matrix == identity(2)
    with pytest.raises(UnknownLabel):
        transition(atlas, "(0,0)", "nowhere")


def test_resolve_label():
    poly, atlas = load(CP2)
    assert resolve_label(atlas, poly, (2, 0)) == "(2,0)"
    assert resolve_label(atlas, poly, 0) == poly.labels[0]
    with pytest.raises(UnknownLabel):
        resolve_label(atlas, poly, (1, 1))


@pytest.mark.parametrize("points", [CP2, F1, CP3, BLOWUP_CP3])
def test_cocycle_and_inverse(points):
    _, atlas = load(points)
    for a in atlas.labels:
        assert [list(r) for r in atlas.q_inv[a]] == sympy_inverse(atlas.q[a])
        for b in atlas.labels:
            dab = transition(atlas, a, b).matrix
            assert transition(atlas, b, a).matrix == unimodular_inverse(dab)
            for c in atlas.labels:
                assert transition(atlas, a, c).matrix == matmul(dab, transition(atlas, b, c).matrix)


@given(delzant_products())
def test_cocycle_on_random_products(data):
    _, atlas = load(data[0])
    labels = atlas.labels[:4]
    for a in labels:
        for b in labels:
            for c in labels:
                assert transition(atlas, a, c).matrix == matmul(transition(atlas, a, b).matrix,
                                                                transition(atlas, b, c).matrix)


def test_transition_domain_examples():
    d = ((-1, 0), (0, 1))
    assert in_transition_domain(identity(2), (0, 0))
    assert not in_transition_domain(d, (0, 5))
    assert in_transition_domain(d, (2, 0))
    with pytest.raises(DomainViolation):
        transform_point(d, (0, 5))


def test_transform_point_examples():
    _, atlas = load(CP2)
    d = transition(atlas, "(0,0)", "(2,0)")
    assert transform_point(d, (F(2), F(3))) == (F(3, 2), F(1, 2))
    assert transform_point(identity(2), (F(2), F(3))) == (2, 3)
    # zero coordinate with positive exponent maps to zero; exponent 0 gives 1
    assert transform_point(((1, 0), (0, 0)), (F(0), F(0))) == (0, 1)


def test_torus_maps_examples():
    _, atlas = load(CP2)
    assert chart_to_torus(atlas, "(0,0)", (F(2), F(3))) == (2, 3)
    assert torus_to_chart(atlas, "(2,0)", (F(2), F(3))) == (F(3, 2), F(1, 2))
    assert torus_to_chart(atlas, "(0,2)", (F(1), F(1))) == (1, 1)
    with pytest.raises(ZeroCoordinate):
        chart_to_torus(atlas, "(0,0)", (0, 1))
    with pytest.raises(ZeroCoordinate):
        torus_to_chart(atlas, "(0,0)", (1, 0))


def _random_point(rng, n):
    return tuple(cmath.rect(rng.uniform(0.1, 10), rng.uniform(-3.1, 3.1)) for _ in range(n))


@given(delzant_products(), st.integers(0, 10 ** 6))
def test_round_trips(data, seed):
    _, atlas = load(data[0])
    rng = random.Random(seed)
    w = _random_point(rng, atlas.dimension)
    for lam in atlas.labels[:4]:
        z = torus_to_chart(atlas, lam, w)
        assert close(chart_to_torus(atlas, lam, z), w)
        for mu in atlas.labels[:4]:
            zm = transform_point(transition(atlas, lam, mu), z)
            assert close(transform_point(transition(atlas, mu, lam), zm), z)
            # chart independence of the torus coordinate
            assert close(chart_to_torus(atlas, mu, zm), w)


def test_exact_round_trip_on_rationals():
    _, atlas = load(BLOWUP_CP3)
    w = (F(2), F(-3, 5), F(7, 4))
    for lam in atlas.labels:
        z = torus_to_chart(atlas, lam, w)
        assert chart_to_torus(atlas, lam, z) == w


@given(st.fractions(min_value=-5, max_value=5).filter(bool), st.integers(-6, 6))
def test_ipow_matches_builtin(x, e):
    assert ipow(x, e) == x ** e


def test_monomial_zero_conventions():
    assert monomial((F(0), F(3)), (0, 2)) == 9
    assert monomial((F(0),), (3,)) == 0
    assert ipow(0, 0) == 1
