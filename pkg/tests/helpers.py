"""Shared test helpers."""

import cmath
import math

import numpy as np

from zonalfn.kernel import _expansion_terms, _shell_sums, theta


def direct_power(alpha, pt, sigma):
    # principal power of the positive kernel
    return cmath.exp(0.5 * complex(sigma) * math.log(theta(alpha, pt)))


def residual_curve(alpha, pt, sigma, shells):
    """|partial(s) - Theta^{sigma/2}| for s = 0 .. shells, and the reference."""
    zarg, warg, a0, b0, mc, pref = _expansion_terms(alpha, pt, complex(sigma))
    sums = np.fromiter(_shell_sums(zarg, warg, a0, b0, mc, shells), dtype=complex, count=shells + 1)
    ref = direct_power(alpha, pt, sigma)
    return np.abs(pref * np.cumsum(sums) - ref), ref


def expansion_draws(n, seed=0):
    """Random (alpha <= 1.2, pt, |sigma| <= 5) draws, sigma uniform on the disc."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        a = float(rng.uniform(0.0, 1.2))
        x, y = (float(v) for v in rng.uniform(-1.0, 1.0, 2))
        r = 5.0 * math.sqrt(rng.uniform())
        s = r * cmath.exp(1j * rng.uniform(0.0, 2 * math.pi))
        out.append((a, (x, y), s))
    return out


def monotone_above_floor(curve, start, floor):
    """Residual decreases strictly from ``start`` on, until it reaches ``floor``."""
    for k in range(start, len(curve) - 1):
        if curve[k] <= floor:
            return True
        if curve[k + 1] >= curve[k]:
            return False
    return True


def rel(a, b):
    d = abs(a - b)
    return 0.0 if d == 0 else d / max(abs(a), abs(b))


def f21_draws(n, seed=8):
    """Random 2F1 parameters: a, b uniform on the disc |.| <= 5,
    c in [0.5, 6], x in [-0.9, 0.9]."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        a = 5 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
        b = 5 * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
        out.append((a, b, float(rng.uniform(0.5, 6)), float(rng.uniform(-0.9, 0.9))))
    return out
