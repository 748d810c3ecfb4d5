import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ttosym.inner import (AtomicMeasure, BlaschkeProduct, InnerSpecError, SingularInner, blaschke_eval,
                          boundary_eval, divides, inner_to_json, parse_inner, quotient, singular_eval)

from .strategies import blaschke_products, disc_points, product_and_divisor


def test_empty_product_is_one():
    assert blaschke_eval(BlaschkeProduct(()), 0.5) == 1


def test_zero_at_origin_is_identity():
    z = np.array([0.3 - 0.2j, -0.7j, 1.0])
    assert np.allclose(blaschke_eval(BlaschkeProduct((0,)), z), z, atol=0, rtol=0)


def test_factor_vanishes_at_its_zero():
    assert blaschke_eval(BlaschkeProduct((0.5,)), 0.5) == 0


def test_rejects_zero_near_circle():
    with pytest.raises(ValueError):
        BlaschkeProduct((1 - 1e-10,))


def test_canonical_order_sorts_by_modulus_then_angle():
    u = BlaschkeProduct((0.5j, -0.2, 0.5, 0.5j))
    assert u.zeros == (-0.2 + 0j, 0.5 + 0j, 0.5j, 0.5j)


@given(blaschke_products())
def test_boundary_modulus_is_one(b):
    theta = 2 * np.pi * np.arange(64) / 64
    assert np.max(np.abs(np.abs(b(np.exp(1j * theta))) - 1)) < 1e-12


@given(blaschke_products())
def test_vanishes_at_every_zero(b):
    for a in b.zeros:
        assert abs(b(a)) < 1e-14


@pytest.mark.parametrize("v, u, expected", [
    ((0.5,), (0.5, 0.3), True),
    ((0.5, 0.5), (0.5, 0.3), False),
    ((), (0.5, 0.3), True),
    ((0.2,), (0.5, 0.3), False),
])
def test_divides(v, u, expected):
    assert divides(BlaschkeProduct(v), BlaschkeProduct(u)) is expected


def test_quotient_examples():
    assert quotient(BlaschkeProduct((0.5, 0.3)), BlaschkeProduct((0.3,))).zeros == (0.5,)
    u = BlaschkeProduct((0.1, 0.2j))
    assert quotient(u, u).zeros == ()
    # multiset difference keeps canonical order
    q = quotient(BlaschkeProduct((0.5j, -0.2, 0.5j)), BlaschkeProduct((0.5j,)))
    assert q.zeros == (-0.2 + 0j, 0.5j)


def test_quotient_rejects_non_divisor():
    with pytest.raises(ValueError):
        quotient(BlaschkeProduct((0.5,)), BlaschkeProduct((0.3,)))


@given(product_and_divisor(), st.lists(disc_points(0.99), min_size=100, max_size=100))
def test_quotient_times_divisor_is_product(uv, pts):
    u, v = uv
    z = np.array(pts)
    err = np.abs(blaschke_eval(quotient(u, v), z) * blaschke_eval(v, z) - blaschke_eval(u, z))
    assert err.max() < 1e-10


def test_singular_value_at_origin():
    s = SingularInner(AtomicMeasure(((0.0, 1.0),)))
    assert singular_eval(s, 0) == pytest.approx(math.exp(-1), abs=1e-15)


def test_empty_measure_gives_one():
    s = SingularInner(AtomicMeasure(()))
    assert singular_eval(s, 0.3 + 0.4j) == 1
    assert boundary_eval(s, 1.234) == 1


def test_singular_value_at_minus_half():
    # (1+z)/(1-z) at z = -1/2 is 1/3
    s = SingularInner(AtomicMeasure(((0.0, 1.0),)))
    assert singular_eval(s, -0.5) == pytest.approx(math.exp(-1 / 3), abs=1e-15)


def test_singular_rejects_boundary():
    with pytest.raises(ValueError):
        singular_eval(SingularInner(AtomicMeasure(((0.0, 1.0),))), 1.0)


def test_boundary_eval_antipode_and_modulus():
    s = SingularInner(AtomicMeasure(((0.0, 1.0),)))
    assert boundary_eval(s, math.pi) == pytest.approx(1, abs=1e-15)
    s2 = SingularInner(AtomicMeasure(((0.0, 2.0),)))
    assert abs(abs(boundary_eval(s2, math.pi / 2)) - 1) < 1e-12


def test_boundary_eval_rejects_atoms():
    s = SingularInner(AtomicMeasure(((1.0, 1.0),)))
    with pytest.raises(ValueError):
        boundary_eval(s, 1.0 + 1e-7)
    boundary_eval(s, 1.0 + 1e-5)
    with pytest.raises(ValueError):
        boundary_eval(s, 1.0 + 1e-5, cutoff=1e-4)


@st.composite
def atomic_measures(draw):
    n = draw(st.integers(1, 4))
    angles = draw(st.lists(st.floats(0, 2 * math.pi, exclude_max=True), min_size=n, max_size=n, unique=True))
    weights = draw(st.lists(st.floats(0.01, 3.0), min_size=n, max_size=n))
    return AtomicMeasure(tuple(zip(angles, weights)))


@given(atomic_measures(), st.lists(disc_points(0.99), min_size=100, max_size=100))
def test_singular_modulus_below_one(nu, pts):
    s = SingularInner(nu)
    assert np.all(np.abs(singular_eval(s, np.array(pts))) < 1)
    assert singular_eval(s, 0) == pytest.approx(math.exp(-nu.total_mass), abs=1e-15)


@given(atomic_measures())
def test_boundary_modulus_one_away_from_atoms(nu):
    theta = np.linspace(0, 2 * np.pi, 257)[:-1] + 1e-3
    far = np.all(np.abs(np.angle(np.exp(1j * (theta[:, None] - nu.angles[None, :])))) > 1e-3, axis=1)
    vals = boundary_eval(SingularInner(nu), theta[far])
    assert np.max(np.abs(np.abs(vals) - 1), initial=0) < 1e-12


def test_measure_invariants():
    nu = AtomicMeasure(((0.0, 0.1), (1.0, 0.2), (2.0, 0.3)))
    assert nu.total_mass == math.fsum([0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        AtomicMeasure(((0.0, 0.0),))
    with pytest.raises(ValueError):
        AtomicMeasure(((0.0, 1.0), (2 * math.pi, 1.0)))


def test_json_round_trip():
    u = BlaschkeProduct((0.5, -0.2j))
    assert parse_inner(inner_to_json(u)) == u
    s = SingularInner(AtomicMeasure(((0.5, 1.0),)))
    assert parse_inner(inner_to_json(s)) == s


@pytest.mark.parametrize("obj, field", [
    ({"type": "blaschke", "zeros": [{"re": 0.1, "im": 0}, {"re": "x", "im": 0}]}, "zeros[1].re"),
    ({"type": "blaschke", "zeros": [{"re": 0.1}]}, "zeros[0].im"),
    ({"type": "blaschke"}, "zeros"),
    ({"type": "singular", "atoms": [{"angle": 0.0, "weight": -1}]}, "atoms[0].weight"),
    ({"type": "singular", "atoms": [{"weight": 1}]}, "atoms[0].angle"),
    ({"type": "outer"}, "type"),
])
def test_parse_errors_name_field(obj, field):
    with pytest.raises(InnerSpecError, match=field.replace("[", r"\[").replace("]", r"\]")):
        parse_inner(obj)


def test_product_composition_multiplies():
    u, v = BlaschkeProduct((0.2,)), BlaschkeProduct((0.3j,))
    z = cmath.exp(0.7j) * 0.4
    assert (u * v)(z) == pytest.approx(u(z) * v(z), abs=1e-15)
