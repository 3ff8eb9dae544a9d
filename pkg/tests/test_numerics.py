import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import jv

from archcorr.errors import DomainError, NumericError
from archcorr.numerics import (
    bessel_j,
    bessel_j_all,
    gauss_legendre,
    integrate_1d,
    integrate_2d,
    sinc_normalized,
)

from oracles import besselj_mp, bisect_root

# first zero of J_0, located by bisection on mpmath's besselj (see oracles.py)
J0_FIRST_ZERO = 2.4048255576957724


def test_bessel_trivial_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(7, 0.0) == 0.0


def test_bessel_first_zero():
    root = bisect_root(lambda x: besselj_mp(0, x), 2.0, 3.0)
    assert root == pytest.approx(J0_FIRST_ZERO, abs=1e-14)
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-10


@pytest.mark.parametrize("k", [0, 1, 2, 5, 13, 30, 61, 120, 200])
def test_bessel_matches_reference_on_grid(k):
    xs = np.concatenate([np.linspace(-100, 100, 801), [11.999999, 12.0, 12.000001, 1e-9]])
    ours = np.array([bessel_j(k, x) for x in xs])
    assert np.max(np.abs(ours - jv(k, xs))) < 1e-12


def test_bessel_matches_mpmath_spot():
    for k, x in [(0, 0.3), (3, 11.5), (3, 12.5), (17, 40.0), (60, 99.0), (1, -7.25)]:
        assert bessel_j(k, x) == pytest.approx(besselj_mp(k, x), abs=1e-13)


def test_bessel_all_orders_consistent_with_scalar():
    xs = np.array([-30.0, -1.5, 0.0, 0.2, 5.0, 12.0, 33.3, 99.0])
    table = bessel_j_all(40, xs)
    for k in (0, 1, 9, 40):
        for x, v in zip(xs, table[k]):
            assert v == pytest.approx(bessel_j(k, x), abs=1e-12)


def test_bessel_large_argument():
    assert bessel_j(0, 1e5) == pytest.approx(jv(0, 1e5), abs=1e-12)


@pytest.mark.parametrize("k, x", [(-1, 1.0), (201, 1.0), (0, 2e6), (0, math.inf), (1.5, 1.0)])
def test_bessel_domain_errors(k, x):
    with pytest.raises(DomainError):
        bessel_j(k, x)


@pytest.mark.parametrize("x", [0.5, 5.0, 50.0])
def test_bessel_recurrence(x):
    for k in range(1, 31):
        lhs = bessel_j(k - 1, x) + bessel_j(k + 1, x)
        assert lhs == pytest.approx(2 * k / x * bessel_j(k, x), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(k=st.integers(1, 60), x=st.floats(0.1, 90.0))
def test_bessel_recurrence_property(k, x):
    assert bessel_j(k - 1, x) + bessel_j(k + 1, x) == pytest.approx(
        2 * k / x * bessel_j(k, x), abs=1e-9
    )


def test_sinc_special_values():
    assert sinc_normalized(0.0) == 1.0
    assert abs(sinc_normalized(1.0)) < 1e-15
    assert sinc_normalized(0.5) == pytest.approx(0.6366197723675814, abs=1e-15)
    assert sinc_normalized(0.5) == pytest.approx(2 / math.pi, abs=1e-15)


def test_sinc_series_branch_is_continuous():
    for x in (1e-7, 9.99e-7, 1.001e-6, -5e-7):
        assert sinc_normalized(x) == pytest.approx(np.sinc(x), abs=1e-15)


def test_sinc_vectorised():
    xs = np.linspace(-5, 5, 101)
    np.testing.assert_allclose(sinc_normalized(xs), np.sinc(xs), atol=1e-15)


def test_gauss_legendre_small_orders():
    r1 = gauss_legendre(1)
    assert list(r1.nodes) == [0.0] and list(r1.weights) == [2.0]
    p2_roots = np.sort(np.roots([1.5, 0.0, -0.5]))  # P_2(x) = (3x^2 - 1) / 2
    r2 = gauss_legendre(2)
    np.testing.assert_allclose(r2.nodes, p2_roots, atol=1e-15)
    assert r2.nodes[1] == pytest.approx(0.5773502691896258, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 7, 8, 64, 255, 256, 1000, 4096])
def test_gauss_legendre_invariants(n):
    r = gauss_legendre(n)
    assert r.weights.sum() == pytest.approx(2.0, abs=1e-12)
    assert np.all(r.weights > 0)
    assert np.all(np.diff(r.nodes) > 0)
    np.testing.assert_allclose(r.nodes, -r.nodes[::-1], atol=1e-12)


@pytest.mark.parametrize("n", [16, 300, 2048])
def test_gauss_legendre_against_library(n):
    x, w = np.polynomial.legendre.leggauss(n)
    r = gauss_legendre(n)
    np.testing.assert_allclose(r.nodes, x, atol=1e-14)
    np.testing.assert_allclose(r.weights, w, atol=1e-13)


def test_gauss_legendre_exact_to_degree_2n_minus_1():
    r = gauss_legendre(8)
    for deg in range(16):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert np.sum(r.weights * r.nodes**deg) == pytest.approx(exact, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 40), data=st.data())
def test_gauss_legendre_exactness_property(n, data):
    deg = data.draw(st.integers(0, 2 * n - 1))
    r = gauss_legendre(n)
    exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
    assert np.sum(r.weights * r.nodes**deg) == pytest.approx(exact, abs=1e-12)


@pytest.mark.parametrize("n", [0, 4097, 2.5])
def test_gauss_legendre_domain(n):
    with pytest.raises(DomainError):
        gauss_legendre(n)


def test_rule_arrays_are_read_only():
    r = gauss_legendre(5)
    with pytest.raises(ValueError):
        r.nodes[0] = 1.0


HALF = ((0.0, math.pi), (0.0, math.pi))


def test_integrate_2d_constant():
    val = integrate_2d(lambda t, p: np.ones_like(t * p), *HALF, gauss_legendre(16))
    assert val == pytest.approx(math.pi**2, abs=1e-12)


def test_integrate_2d_scattering_normalisation():
    val = integrate_2d(lambda t, p: np.sin(t) / (2 * math.pi) + 0 * p, *HALF, gauss_legendre(64))
    assert abs(val - 1.0) < 1e-12


def test_integrate_2d_diagonal_entry_is_real_one():
    f = lambda t, p: np.sin(t) * np.exp(1j * 0.0 * p) / (2 * math.pi)
    val = integrate_2d(f, *HALF, gauss_legendre(64))
    assert abs(val - (1 + 0j)) < 1e-12


def test_integrate_2d_order_doubling_converges():
    f = lambda t, p: np.exp(1j * 7.0 * np.sin(t) * np.cos(p))
    a = integrate_2d(f, *HALF, gauss_legendre(64))
    b = integrate_2d(f, *HALF, gauss_legendre(128))
    assert abs(a - b) < 1e-12


def test_integrate_2d_reports_bad_sample():
    def f(t, p):
        out = np.ones(np.broadcast(t, p).shape)
        out[3, 4] = np.nan
        return out

    with pytest.raises(NumericError, match="theta="):
        integrate_2d(f, *HALF, gauss_legendre(8))


def test_integrate_2d_bit_stable():
    f = lambda t, p: np.exp(1j * 3.0 * np.cos(t) + 2j * np.sin(p))
    rule = gauss_legendre(100)
    assert integrate_2d(f, *HALF, rule) == integrate_2d(f, *HALF, rule)


def test_integrate_1d_polynomial():
    val = integrate_1d(lambda x: x**3 + 1.0, (0.0, 2.0), gauss_legendre(3))
    assert val == pytest.approx(6.0, abs=1e-13)
