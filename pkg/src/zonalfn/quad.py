"""Quadrature rules and the double-integral representation of Z.

Z(alpha) = E[ Theta(alpha; x, y)^{sigma/2} ], x = cos(theta_chi) uniform on
the q-sphere side and y = cos(theta_phi) on the p-sphere side. Each side is
integrated with a rule for the normalized measure of the pole angle:

    m >= 3 : c_m sin^{m-2}(theta) d(theta) on [0, pi], Gauss-Legendre in theta
    m = 2  : d(theta) / 2pi on the full circle, uniform (midpoint) rule
    m = 1  : the two points x = +1, -1 with weight 1/2
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, DomainError, EpsOdd, QuadratureNotConverged
from .kernel import GroupSignature, RepresentationParams, theta_grid
from .results import EvalResult, MethodTag

__all__ = [
    "QuadratureSpec",
    "gauss_legendre",
    "sphere_normalizer",
    "sphere_rule",
    "zonal_integral",
]

_NEWTON_MAX = 100
_CHUNK = 256


@dataclass(frozen=True)
class QuadratureSpec:
    """Orders and tolerance for ``zonal_integral``."""

    base_order: int = 64
    max_order: int = 4096
    periodic_base: int = 64
    tol: float = 1e-12

    def __post_init__(self):
        if not (2 <= self.base_order <= self.max_order):
            raise DomainError("need 2 <= base_order <= max_order")
        if self.periodic_base < 8 or self.periodic_base % 2:
            raise DomainError("periodic_base must be even and >= 8")
        if not self.tol > 0:
            raise DomainError("tol must be positive")


def _legendre(n, x):
    # P_n(x) and P_n'(x) by the three-term recurrence
    p0 = np.ones_like(x)
    p1 = x.copy()
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    if n == 1:
        return p1, np.ones_like(x)
    return p1, n * (x * p1 - p0) / (x * x - 1.0)


@lru_cache(maxsize=64)
def _gauss_legendre_cached(n: int):
    # Newton on P_n via the three-term recurrence, for the nonnegative half
    h = (n + 1) // 2
    i = np.arange(h, dtype=float)
    x = np.cos(math.pi * (i + 0.75) / (n + 0.5))
    done = False
    for _ in range(_NEWTON_MAX):
        p1, dp = _legendre(n, x)
        dx = p1 / dp
        x = x - dx
        if done:
            break
        # one more step after the correction drops to rounding level
        done = np.max(np.abs(dx)) <= 1e-14
    else:
        raise ConvergenceError(f"Gauss-Legendre Newton iteration failed for n = {n}")
    _, dp = _legendre(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if n % 2:
        x[-1] = 0.0
    # mirror so that the rule is exactly symmetric
    nodes = np.concatenate([-x, x[::-1][n % 2 :]])
    weights = np.concatenate([w, w[::-1][n % 2 :]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(n: int):
    """Gauss-Legendre nodes (ascending) and weights on [-1, 1]."""
    if int(n) != n or n < 1:
        raise DomainError(f"gauss_legendre needs n >= 1, got {n!r}")
    return _gauss_legendre_cached(int(n))


def sphere_normalizer(m: int) -> float:
    """c_m = Gamma(m/2) / (Gamma(1/2) Gamma((m-1)/2)), so that
    c_m * integral_0^pi sin^{m-2} = 1."""
    if int(m) != m or m < 3:
        raise DomainError(f"sphere_normalizer needs integer m >= 3, got {m!r}")
    return math.exp(math.lgamma(0.5 * m) - math.lgamma(0.5) - math.lgamma(0.5 * (m - 1)))


@lru_cache(maxsize=128)
def _sphere_rule_cached(m: int, n: int):
    if m == 1:
        x = np.array([-1.0, 1.0])
        w = np.array([0.5, 0.5])
    elif m == 2:
        # uniform rule on the circle, folded onto [0, pi]
        h = n // 2
        th = math.pi * (np.arange(h) + 0.5) / h
        x = np.cos(th)
        x[h - 1 - np.arange(h // 2)] = -x[: h // 2]
        if h % 2:
            x[h // 2] = 0.0
        w = np.full(h, 1.0 / h)
    else:
        t, gw = gauss_legendre(n)
        th = 0.5 * math.pi * (t + 1.0)
        x = np.cos(th)
        half = n // 2
        x[n - 1 - np.arange(half)] = -x[:half]
        if n % 2:
            x[half] = 0.0
        s = np.sin(th)
        w = 0.5 * math.pi * gw * sphere_normalizer(m) * s ** (m - 2)
        w = 0.5 * (w + w[::-1])
        w = w / w.sum()
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def sphere_rule(m: int, n: int):
    """Nodes x = cos(theta) and weights for the normalized pole-angle
    measure of the m-sphere side (weights sum to 1)."""
    if m < 1:
        raise DomainError("sphere dimension must be >= 1")
    return _sphere_rule_cached(int(m), int(n))


def _tensor_sum(alpha, sigma, xq, wq, yp, wp):
    half = 0.5 * sigma
    total = 0.0j
    for lo in range(0, xq.shape[0], _CHUNK):
        xs = xq[lo : lo + _CHUNK, None]
        lt = np.log(theta_grid(alpha, xs, yp[None, :]))
        vals = np.exp(half * lt)
        total += complex(wq[lo : lo + _CHUNK] @ (vals @ wp))
    return total


def _orders(m, level, spec):
    if m == 1:
        return 2
    if m == 2:
        return spec.periodic_base << level
    return spec.base_order << level


def zonal_integral(
    sig: GroupSignature,
    rep: RepresentationParams,
    alpha: float,
    spec: QuadratureSpec | None = None,
) -> EvalResult:
    """Z by tensor quadrature, doubling orders until two successive results
    agree to ``spec.tol * max(1, |Z|)``.

    The q-sphere side sits on x and the p-sphere side on y, in the order the
    caller gave (``sig.orig_p``, ``sig.orig_q``); by the x <-> y symmetry of
    Theta the value does not depend on it.
    """
    if spec is None:
        spec = QuadratureSpec()
    if rep.eps != 0:
        raise EpsOdd("zonal functions exist only for eps = 0")
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError("alpha must be finite")
    mq, mp = sig.orig_q, sig.orig_p
    prev = None
    work = 0
    level = 0
    while True:
        nq, np_ = _orders(mq, level, spec), _orders(mp, level, spec)
        if max(nq, np_) > spec.max_order and prev is not None:
            raise QuadratureNotConverged(
                f"quadrature not converged at max_order = {spec.max_order} (last change {abs(diff):.3e})"
            )
        xq, wq = sphere_rule(mq, nq)
        yp, wp = sphere_rule(mp, np_)
        val = _tensor_sum(alpha, rep.sigma, xq, wq, yp, wp)
        work += xq.shape[0] * yp.shape[0]
        if prev is not None:
            diff = val - prev
            if abs(diff) <= spec.tol * max(1.0, abs(val)):
                return EvalResult(val, abs(diff), work, MethodTag.INTEGRAL)
        else:
            diff = 0.0
        prev = val
        level += 1
