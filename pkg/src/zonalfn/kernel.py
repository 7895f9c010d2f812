"""The hyperbolic-rotation kernel Theta, its power expansion, and the
group / representation labels.

Theta(alpha; x, y) = (y ch(a) - x sh(a))^2 + 1 - y^2
                   = 1 + (x^2 + y^2) sh^2(a) - 2 x y sh(a) ch(a),

with x = cos(chi) on the q-sphere side and y = cos(phi) on the p-sphere
side. The kernel is symmetric in (x, y) and Theta(-a; x, y) = Theta(a; -x, y).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DomainError
from .results import EvalResult

__all__ = [
    "GroupSignature",
    "RepresentationParams",
    "KernelPoint",
    "theta",
    "theta_expanded",
    "theta_grid",
    "theta_power_partial",
    "theta_power_series",
    "principal_sigma",
    "partner_sigma",
    "EXPANSION_TABLE",
]

PRINCIPAL_TOL = 1e-12


@dataclass(frozen=True)
class GroupSignature:
    """The pair (p, q) of SO(p, q), stored with p >= q.

    A request with p < q is swapped on construction; ``swapped`` records
    it and ``orig_p``/``orig_q`` give back the order the caller used.
    """

    p: int
    q: int
    swapped: bool = field(default=False, init=False)

    def __post_init__(self):
        p, q = self.p, self.q
        for name, v in (("p", p), ("q", q)):
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise DomainError(f"{name} must be a positive integer, got {v!r}")
        p, q = int(p), int(q)
        if p < q:
            p, q = q, p
            object.__setattr__(self, "swapped", True)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        if p < 2 or p + q < 3:
            raise DomainError(f"SO({self.orig_p},{self.orig_q}) needs max(p,q) >= 2 and p + q >= 3")

    @property
    def orig_p(self) -> int:
        return self.q if self.swapped else self.p

    @property
    def orig_q(self) -> int:
        return self.p if self.swapped else self.q

    @property
    def principal_re(self) -> float:
        """Real part of sigma on the principal-series line."""
        return -(self.p + self.q - 2) / 2.0


@dataclass(frozen=True)
class RepresentationParams:
    """(sigma, eps) labelling a most degenerate representation."""

    sigma: complex
    eps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "sigma", complex(self.sigma))
        if self.eps not in (0, 1):
            raise DomainError(f"eps must be 0 or 1, got {self.eps!r}")
        if not (math.isfinite(self.sigma.real) and math.isfinite(self.sigma.imag)):
            raise DomainError("sigma must be finite")

    def is_principal(self, sig: GroupSignature) -> bool:
        return abs(self.sigma.real - sig.principal_re) <= PRINCIPAL_TOL


@dataclass(frozen=True)
class KernelPoint:
    """(x, y) = (cos chi, cos phi)."""

    x: float
    y: float

    def __post_init__(self):
        if not (abs(self.x) <= 1.0 and abs(self.y) <= 1.0):
            raise DomainError(f"kernel point ({self.x}, {self.y}) outside [-1, 1]^2")


def _as_point(pt) -> KernelPoint:
    if isinstance(pt, KernelPoint):
        return pt
    x, y = pt
    return KernelPoint(float(x), float(y))


def theta(alpha: float, pt) -> float:
    """Theta(alpha; x, y), strictly positive.

    Evaluated as u^2 + (1 - b)(1 + b) with
    u = ((b - a) e^alpha + (b + a) e^-alpha) / 2, where (a, b) is (x, y)
    ordered so that |b| >= |a|. Both summands of u then share a sign, so
    nothing cancels, and the result is bitwise symmetric in x and y.
    """
    pt = _as_point(pt)
    x, y = pt.x, pt.y
    if abs(y) >= abs(x):
        a, b = x, y
    else:
        a, b = y, x
    ep, em = math.exp(alpha), math.exp(-alpha)
    u = 0.5 * ((b - a) * ep + (b + a) * em)
    return u * u + (1.0 - b) * (1.0 + b)


def theta_expanded(alpha: float, pt) -> float:
    """Theta in the expanded polynomial arrangement (reference only)."""
    pt = _as_point(pt)
    x, y = pt.x, pt.y
    sh, ch = math.sinh(alpha), math.cosh(alpha)
    return 1.0 + (x * x + y * y) * sh * sh - 2.0 * x * y * sh * ch


def theta_grid(alpha: float, x, y) -> np.ndarray:
    """Vectorised ``theta`` over broadcast arrays ``x`` and ``y`` (no checks)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = np.abs(y) >= np.abs(x)
    a = np.where(keep, x, y)
    b = np.where(keep, y, x)
    ep, em = math.exp(alpha), math.exp(-alpha)
    u = 0.5 * ((b - a) * ep + (b + a) * em)
    return u * u + (1.0 - b) * (1.0 + b)


# Double expansion of Theta^{sigma/2}:
#
#   Theta = ch^2 [(1 - x y t)^2 - t^2 (1 - x^2)(1 - y^2)],   t = tanh(alpha)
#   Theta^{s/2} = ch^s  sum_{m,n>=0}  (-s/2)_m / m! * Z^m  *  (2m - s)_n / n! * W^n
#   Z = t^2 (1 - x^2)(1 - y^2),  W = x y t
#
# Each entry gives the Pochhammer base as const + sigma_coef*sigma + m_coef*m.
# Term (m, n) carries t^(2m + n) and belongs to shell floor((2m + n) / 2).
EXPANSION_TABLE = {
    "outer": {"const": 0.0, "sigma_coef": -0.5, "m_coef": 0},
    "inner": {"const": 0.0, "sigma_coef": -1.0, "m_coef": 2},
}


def _expansion_terms(alpha, pt, sigma):
    pt = _as_point(pt)
    t = math.tanh(alpha)
    zarg = t * t * (1.0 - pt.x * pt.x) * (1.0 - pt.y * pt.y)
    warg = pt.x * pt.y * t
    outer, inner = EXPANSION_TABLE["outer"], EXPANSION_TABLE["inner"]
    a0 = outer["const"] + outer["sigma_coef"] * sigma
    b0 = inner["const"] + inner["sigma_coef"] * sigma
    prefactor = cmath.exp(sigma * math.log(math.cosh(alpha)))
    return zarg, warg, a0, b0, inner["m_coef"], prefactor


def _shell_sums(zarg, warg, a0, b0, m_coef, shells):
    # yields the sum of every shell s = 0 .. shells
    rows = []  # per m: [next n, current term]
    outer_term = 1.0 + 0.0j
    for s in range(shells + 1):
        # open row m = s (its first term t^(2s) lives in shell s)
        if s > 0:
            m = s - 1
            outer_term = outer_term * (a0 + m) / (m + 1) * zarg
        rows.append([0, outer_term])
        total = 0.0j
        for m, row in enumerate(rows):
            base = b0 + m_coef * m
            hi = 2 * s + 1 - 2 * m
            n, term = row
            while n <= hi:
                if term == 0:
                    n = hi + 1
                    break
                total += term
                term = term * (base + n) / (n + 1) * warg
                n += 1
            row[0], row[1] = n, term
        yield total


def theta_power_partial(alpha: float, pt, sigma: complex, shells: int) -> complex:
    """Partial sum of the Theta^{sigma/2} expansion through ``shells``.

    Shell ``s`` collects the terms of order t^(2s) and t^(2s+1).
    Converges to ``theta(alpha, pt) ** (sigma/2)`` (principal power).
    """
    if shells < 0:
        raise ValueError("shells must be >= 0")
    sigma = complex(sigma)
    zarg, warg, a0, b0, m_coef, pref = _expansion_terms(alpha, pt, sigma)
    total = 0.0j
    for shell_sum in _shell_sums(zarg, warg, a0, b0, m_coef, shells):
        total += shell_sum
    return pref * total


def theta_power_series(
    alpha: float, pt, sigma: complex, tol: float = 1e-14, max_shells: int = 2000
) -> EvalResult:
    """Sum the expansion until three consecutive shells fall below
    ``tol * max(1, |partial|)``."""
    sigma = complex(sigma)
    zarg, warg, a0, b0, m_coef, pref = _expansion_terms(alpha, pt, sigma)
    total = 0.0j
    small = 0
    last = 0.0
    for s, shell_sum in enumerate(_shell_sums(zarg, warg, a0, b0, m_coef, max_shells)):
        total += shell_sum
        last = abs(shell_sum)
        if last < tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return EvalResult(pref * total, abs(pref) * last, s + 1)
        else:
            small = 0
    raise ConvergenceError(f"Theta power expansion not converged after {max_shells} shells")


def principal_sigma(sig: GroupSignature, rho: float) -> RepresentationParams:
    """Principal-series label sigma = -(p+q-2)/2 + i rho, eps = 0."""
    return RepresentationParams(complex(sig.principal_re, rho), 0)


def partner_sigma(sig: GroupSignature, sigma: complex) -> complex:
    """Label of the unitarily equivalent partner, 2 - p - q - sigma."""
    return 2 - sig.p - sig.q - complex(sigma)
