import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rel
from zonalfn.errors import DomainError, EpsOdd, QuadratureNotConverged
from zonalfn.kernel import GroupSignature, RepresentationParams, partner_sigma, principal_sigma
from zonalfn.quad import QuadratureSpec, gauss_legendre, sphere_normalizer, sphere_rule, zonal_integral
from zonalfn.results import MethodTag

SIGS = [(2, 2), (3, 2), (3, 3), (4, 3), (5, 2), (6, 4)]
RHOS = [0.0, 0.7, 2.3]


# -- rules ----------------------------------------------------------------


def test_gauss_legendre_examples():
    x, w = gauss_legendre(1)
    assert list(x) == [0.0] and list(w) == [2.0]
    x, w = gauss_legendre(2)
    assert np.allclose(x, [-1 / math.sqrt(3), 1 / math.sqrt(3)], atol=1e-15, rtol=0)
    assert np.allclose(w, [1.0, 1.0], atol=1e-15, rtol=0)


@pytest.mark.parametrize("n", [3, 4, 7, 20, 64, 65, 100])
def test_gauss_legendre_against_numpy(n):
    # [DERIVED] numpy's eigenvalue-based rule
    x, w = gauss_legendre(n)
    xr, wr = np.polynomial.legendre.leggauss(n)
    assert np.max(np.abs(x - xr)) <= 1e-14
    assert np.max(np.abs(w - wr)) <= 1e-14


@pytest.mark.parametrize("n", [1, 2, 5, 16, 100, 1000, 4096])
def test_gauss_legendre_structure(n):
    x, w = gauss_legendre(n)
    assert len(x) == n and np.all(np.diff(x) > 0)
    assert np.all(w > 0)
    assert np.array_equal(x, -x[::-1]) and np.array_equal(w, w[::-1])
    assert abs(w.sum() - 2.0) <= 1e-13


def test_gauss_legendre_against_mpmath():
    # [DERIVED] roots of P_n polished in 30-digit arithmetic; at this size
    # the eigenvalue rule loses about two digits in the weights
    import mpmath

    n = 257
    x, w = gauss_legendre(n)
    with mpmath.workdps(30):
        for k in (0, 1, 64, 128, 200):
            r = mpmath.findroot(lambda t: mpmath.legendre(n, t), mpmath.mpf(x[k]))
            d = mpmath.diff(lambda t: mpmath.legendre(n, t), r)
            assert abs(x[k] - r) <= 2e-16
            assert abs(w[k] - 2 / ((1 - r**2) * d**2)) <= 1e-15 * max(1, abs(w[k]) * 100)


def test_gauss_legendre_exactness():
    x, w = gauss_legendre(6)
    for k in range(12):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert abs(w @ x**k - exact) <= 1e-14


def test_gauss_legendre_large():
    x, w = gauss_legendre(8192)
    assert abs(w.sum() - 2.0) <= 1e-12
    assert np.all(w > 0)


def test_gauss_legendre_domain():
    for bad in (0, -3, 2.5):
        with pytest.raises(DomainError):
            gauss_legendre(bad)


@pytest.mark.parametrize("m, expected", [(3, 0.5), (4, 2 / math.pi), (5, 0.75)])
def test_sphere_normalizer(m, expected):
    assert abs(sphere_normalizer(m) - expected) <= 1e-15


def test_sphere_normalizer_integrates_to_one():
    x, w = gauss_legendre(200)
    th = 0.5 * math.pi * (x + 1)
    for m in range(3, 15):
        assert abs(sphere_normalizer(m) * 0.5 * math.pi * (w @ np.sin(th) ** (m - 2)) - 1) <= 1e-13
    with pytest.raises(DomainError):
        sphere_normalizer(2)


@pytest.mark.parametrize("m, n", [(1, 2), (2, 64), (2, 66), (3, 64), (5, 33), (8, 128)])
def test_sphere_rule(m, n):
    x, w = sphere_rule(m, n)
    assert abs(w.sum() - 1.0) <= 1e-15
    assert np.array_equal(np.sort(x), -np.sort(x)[::-1])
    # odd moments vanish, second moment is 1/m
    assert abs(w @ x) <= 1e-16
    assert abs(w @ x**2 - 1.0 / m) <= 1e-14


def test_quadrature_spec_validation():
    for kw in ({"base_order": 1}, {"base_order": 128, "max_order": 64}, {"periodic_base": 6}, {"periodic_base": 9}, {"tol": 0.0}):
        with pytest.raises(DomainError):
            QuadratureSpec(**kw)


# -- integral ---------------------------------------------------------------


@pytest.mark.parametrize("p, q", SIGS + [(3, 1), (2, 1), (7, 1)])
def test_normalization(p, q):
    sig = GroupSignature(p, q)
    for rho in RHOS:
        r = zonal_integral(sig, principal_sigma(sig, rho), 0.0)
        assert abs(r.value - 1) <= 1e-13
        assert r.method is MethodTag.INTEGRAL


def test_frozen_reference_33():
    # [DERIVED] mpmath double integral of the kernel power, 30 digits
    sig = GroupSignature(3, 3)
    r = zonal_integral(sig, principal_sigma(sig, 1.3), 0.8, QuadratureSpec(tol=1e-13))
    assert abs(r.value - 0.82089562204561709754) <= 1e-12
    assert r.abs_err_est <= 1e-11 and r.work > 0


@pytest.mark.parametrize("p, q", SIGS)
def test_evenness(p, q):
    sig = GroupSignature(p, q)
    rep = principal_sigma(sig, 0.7)
    for a in (0.3, 1.1, 2.0):
        assert rel(zonal_integral(sig, rep, a).value, zonal_integral(sig, rep, -a).value) <= 1e-12


@pytest.mark.parametrize("p, q", SIGS)
def test_conjugation(p, q):
    sig = GroupSignature(p, q)
    s = complex(-1.3, 0.9)
    for a in (0.25, 1.5):
        z = zonal_integral(sig, RepresentationParams(s), a).value
        zc = zonal_integral(sig, RepresentationParams(s.conjugate()), a).value
        assert rel(zc, z.conjugate()) <= 1e-13


@pytest.mark.parametrize("p, q", SIGS)
def test_functional_equation(p, q):
    sig = GroupSignature(p, q)
    for rho in RHOS:
        rep = principal_sigma(sig, rho)
        partner = RepresentationParams(partner_sigma(sig, rep.sigma))
        for a in (0.25, 0.8, 1.5):
            z = zonal_integral(sig, rep, a).value
            assert rel(z, zonal_integral(sig, partner, a).value) <= 1e-8
            assert abs(z.imag) <= 1e-8
    # off the principal line as well
    rep = RepresentationParams(complex(0.4, 1.1))
    partner = RepresentationParams(partner_sigma(sig, rep.sigma))
    assert rel(zonal_integral(sig, rep, 0.9).value, zonal_integral(sig, partner, 0.9).value) <= 1e-8


@pytest.mark.parametrize("p, q", [(3, 2), (4, 3), (5, 2), (6, 4), (3, 1)])
def test_swapped_signature(p, q):
    canon = GroupSignature(p, q)
    swapped = GroupSignature(q, p)
    assert swapped.swapped
    rep = principal_sigma(canon, 1.3)
    for a in (0.25, 0.8, 1.5):
        assert rel(zonal_integral(canon, rep, a).value, zonal_integral(swapped, rep, a).value) <= 1e-12


@settings(max_examples=25)
@given(
    alpha=st.floats(-2.0, 2.0),
    re=st.floats(-4, 2),
    im=st.floats(-3, 3),
)
def test_integral_properties(alpha, re, im):
    sig = GroupSignature(4, 3)
    rep = RepresentationParams(complex(re, im))
    z = zonal_integral(sig, rep, alpha).value
    assert rel(z, zonal_integral(sig, rep, -alpha).value) <= 1e-11
    zc = zonal_integral(sig, RepresentationParams(complex(re, -im)), alpha).value
    assert rel(zc, z.conjugate()) <= 1e-12


def test_integral_errors():
    sig = GroupSignature(3, 3)
    with pytest.raises(EpsOdd):
        zonal_integral(sig, RepresentationParams(-2 + 1.3j, 1), 0.8)
    with pytest.raises(QuadratureNotConverged):
        zonal_integral(sig, principal_sigma(sig, 40.0), 3.0, QuadratureSpec(base_order=8, max_order=16))
    with pytest.raises(DomainError):
        zonal_integral(sig, principal_sigma(sig, 1.0), float("inf"))
