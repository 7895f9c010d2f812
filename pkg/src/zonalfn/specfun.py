"""Scalar special functions: complex log-gamma, Pochhammer symbols, 2F1.

Everything here works on plain Python ``complex``/``float`` scalars;
gauss_2f1 accumulates in long double internally.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import ConvergenceError, PoleError
from .results import EvalResult

__all__ = [
    "log_gamma",
    "gamma",
    "pochhammer",
    "gauss_2f1",
    "is_nonpositive_integer",
    "POCHHAMMER_CROSSOVER",
]

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)

POCHHAMMER_CROSSOVER = 64
_POLE_TOL = 1e-12
_TERM_CAP = 10**6


def is_nonpositive_integer(z: complex, tol: float = _POLE_TOL) -> bool:
    """True when ``z`` is within ``tol`` of 0, -1, -2, ... on both components."""
    z = complex(z)
    if abs(z.imag) > tol or z.real > tol:
        return False
    return abs(z.real - round(z.real)) <= tol


def _sinpi(z: complex) -> complex:
    # sin(pi z) with the real part reduced mod 2 so integers give exact zeros
    x, y = z.real, z.imag
    r = math.fmod(x, 2.0)
    if r == 0.0 or r == 1.0 or r == -1.0:
        s, c = 0.0, (1.0 if r == 0.0 else -1.0)
    elif r == 0.5 or r == -1.5:
        s, c = 1.0, 0.0
    elif r == -0.5 or r == 1.5:
        s, c = -1.0, 0.0
    else:
        s, c = math.sin(math.pi * r), math.cos(math.pi * r)
    py = math.pi * y
    return complex(s * math.cosh(py), c * math.sinh(py))


def _log_gamma_lanczos(z: complex) -> complex:
    z = z - 1.0
    x = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        x += _LANCZOS_COEF[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z).

    Uses the Lanczos sum for Re z >= 0.5 and the reflection formula below
    that, with the 2*pi*i correction that keeps the result continuous off
    the negative real axis.

    Raises
    ------
    PoleError
        If ``z`` is a non-positive integer (within 1e-12).
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at z = {z}")
    if z.real >= 0.5:
        return _log_gamma_lanczos(z)
    shift = math.copysign(2.0 * math.pi, z.imag) * math.floor(0.5 * z.real + 0.25)
    return complex(_LOG_PI, shift) - cmath.log(_sinpi(z)) - _log_gamma_lanczos(1.0 - z)


def gamma(z: complex) -> complex:
    """Gamma(z) as exp(log_gamma(z))."""
    return cmath.exp(log_gamma(z))


def pochhammer(a: complex, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1).

    Direct product for ``n <= 64``, log-gamma ratio above that. A base that
    is a non-positive integer ``-k`` gives an exact 0 once ``n > k``.
    """
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    a = complex(a)
    if n == 0:
        return 1.0 + 0.0j
    if is_nonpositive_integer(a):
        k = -round(a.real)
        if n > k:
            return 0.0j
        return _pochhammer_product(complex(-k), n)
    if n <= POCHHAMMER_CROSSOVER:
        return _pochhammer_product(a, n)
    return cmath.exp(log_gamma(a + n) - log_gamma(a))


def _pochhammer_product(a: complex, n: int) -> complex:
    out = 1.0 + 0.0j
    for k in range(n):
        out *= a + k
    return out


def gauss_2f1(a: complex, b: complex, c: complex, z: complex, tol: float = 1e-16) -> EvalResult:
    """Gauss hypergeometric 2F1(a, b; c; z) by its power series, |z| < 1.

    Summation stops after three consecutive terms with
    ``|term| <= tol * |partial sum|``. The error estimate is the last
    term magnitude scaled by the geometric tail factor 1 / (1 - |z|).
    """
    a, b, c, z = complex(a), complex(b), complex(c), complex(z)
    if abs(z) >= 1.0:
        raise ConvergenceError(f"gauss_2f1 needs |z| < 1, got {z}")
    # long double terms: sums with heavy cancellation keep double accuracy
    la, lb, lc, lz = (np.clongdouble(v) for v in (a, b, c, z))
    term = np.clongdouble(1)
    total = np.clongdouble(1)
    small = 0
    n = 0
    last = 0.0
    while True:
        num = (la + n) * (lb + n)
        if num == 0:
            # terminated: every later term is an exact zero
            return EvalResult(complex(total), 0.0, n + 1)
        if abs(c + n) <= _POLE_TOL:
            raise PoleError(f"gauss_2f1: c = {c} hits a pole at n = {n}")
        term = term * num / ((lc + n) * (n + 1)) * lz
        total += term
        n += 1
        last = float(abs(term))
        if last <= tol * float(abs(total)):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        if n >= _TERM_CAP:
            raise ConvergenceError(f"gauss_2f1 did not converge in {_TERM_CAP} terms")
    return EvalResult(complex(total), last / (1.0 - abs(z)), n + 1)
