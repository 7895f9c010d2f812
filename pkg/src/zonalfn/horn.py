"""Horn-type hypergeometric series in r variables.

A series is declared by numerator and denominator parameters, each a
complex base with a 0/1 weight vector of length r:

    H(X) = sum_{n in N^r}  prod_i (a_i)_{u_i . n} / prod_j (c_j)_{v_j . n}
                           * prod_k X_k^{n_k} / n_k!

Balance per variable k: b_k = sum_i u_ik - sum_j v_jk. With the implicit
n_k! counted as a denominator row, b_k <= 0 gives an entire series in X_k,
b_k = 1 a unit radius (2F1-like), b_k >= 2 a divergent one. The balance
is sometimes stated as the equality sum u = sum v + 1 and sometimes as the
inequality sum u <= sum v + 1; the validator reports b_k and leaves the
reading to the caller, refusing only b_k >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import _backend
from ._kernels_py import _rho_hat
from .errors import ConvergenceError, DomainError, PoleError
from .results import EvalResult
from .specfun import is_nonpositive_integer

__all__ = [
    "HornParameter",
    "HornSeries",
    "BalanceClass",
    "HornValidation",
    "horn_validate",
    "horn_eval",
    "horn_format",
]


@dataclass(frozen=True)
class HornParameter:
    """One Pochhammer factor (base)_{weights . n}."""

    base: complex
    weights: tuple
    label: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "base", complex(self.base))
        w = tuple(self.weights)
        for v in w:
            if isinstance(v, bool) or v not in (0, 1):
                raise DomainError(
                    f"Horn weights must be 0 or 1 (general integer weights are not supported), got {w}"
                )
        if not w or not any(w):
            raise DomainError("Horn weight vector must not be all zero")
        object.__setattr__(self, "weights", tuple(int(v) for v in w))


@dataclass(frozen=True)
class HornSeries:
    """Declarative r-variable Horn series."""

    r: int
    numerator: tuple = field(default_factory=tuple)
    denominator: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 1:
            raise DomainError(f"r must be a positive integer, got {self.r!r}")
        num, den = tuple(self.numerator), tuple(self.denominator)
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)
        for par in num + den:
            if len(par.weights) != self.r:
                raise DomainError(f"weight vector {par.weights} does not have length r = {self.r}")
        for par in den:
            if is_nonpositive_integer(par.base):
                raise PoleError(f"denominator base {par.base} is a non-positive integer")


class BalanceClass(str, Enum):
    ENTIRE = "entire"
    UNIT_RADIUS = "unit-radius"
    DIVERGENT = "divergent"


@dataclass(frozen=True)
class HornValidation:
    balance: tuple
    classes: tuple

    @property
    def ok(self) -> bool:
        return BalanceClass.DIVERGENT not in self.classes


def horn_validate(series: HornSeries) -> HornValidation:
    """Per-variable balance b_k and convergence class."""
    balance = []
    classes = []
    for k in range(series.r):
        b = sum(p.weights[k] for p in series.numerator) - sum(p.weights[k] for p in series.denominator)
        balance.append(b)
        if b <= 0:
            classes.append(BalanceClass.ENTIRE)
        elif b == 1:
            classes.append(BalanceClass.UNIT_RADIUS)
        else:
            classes.append(BalanceClass.DIVERGENT)
    return HornValidation(tuple(balance), tuple(classes))


def _check_args(series, X):
    X = tuple(complex(x) for x in X)
    if len(X) != series.r:
        raise DomainError(f"expected {series.r} arguments, got {len(X)}")
    rep = horn_validate(series)
    for k, (cls, x) in enumerate(zip(rep.classes, X)):
        if cls is BalanceClass.DIVERGENT and x != 0:
            raise DomainError(f"variable {k} has balance {rep.balance[k]} >= 2; series diverges")
        if cls is BalanceClass.UNIT_RADIUS and abs(x) >= 1:
            raise DomainError(f"variable {k} is unit-radius but |X_{k}| = {abs(x)} >= 1")
    return X


def _finish(total, last, rho, shells, work, status, max_shells):
    if status == 2:
        raise PoleError("denominator Pochhammer vanished before numerator termination")
    if status == 1:
        raise ConvergenceError(f"Horn series not converged within {max_shells} shells")
    return EvalResult(complex(total), last / (1.0 - rho), int(shells))


def horn_eval(
    series: HornSeries,
    X: Sequence[complex],
    tol: float = 1e-14,
    max_shells: int = 20000,
    reverse: bool = False,
) -> EvalResult:
    """Sum the series in shells of constant total order n_1 + ... + n_r.

    Terms are advanced by their rational index ratios. Summation stops
    once three consecutive shell sums are each below
    ``tol * max(1, |partial|)``; ``abs_err_est`` is the last shell
    magnitude times 1 / (1 - rho), rho the largest of the last three
    shell ratios clamped to [0, 0.99]. ``work`` is the number of shells.
    ``reverse`` flips the order of summation inside each shell.
    """
    X = _check_args(series, X)
    if series.r <= 2:
        pad = 2 - series.r
        nb = [p.base for p in series.numerator]
        db = [p.base for p in series.denominator]
        nw = [p.weights + (0,) * pad for p in series.numerator]
        dw = [p.weights + (0,) * pad for p in series.denominator]
        x1, x2 = X[0], (X[1] if series.r == 2 else 0.0)
        out = _backend.kernels().horn2_sum(
            nb,
            [w[0] for w in nw],
            [w[1] for w in nw],
            db,
            [w[0] for w in dw],
            [w[1] for w in dw],
            x1,
            x2,
            float(tol),
            int(max_shells),
            bool(reverse),
        )
        return _finish(*out, max_shells)
    return _finish(*_horn_general(series, X, tol, max_shells, reverse), max_shells)


def _compositions(N, r):
    # all n in N^r with |n| = N, first index slowest
    if r == 1:
        yield (N,)
        return
    for a in range(N, -1, -1):
        for rest in _compositions(N - a, r - 1):
            yield (a,) + rest


def _horn_general(series, X, tol, max_shells, reverse):
    # r >= 3: every term of shell N is reached from a term of shell N-1
    # by a single index step, using the same rational ratio as the r = 2 kernel
    r = series.r
    num, den = series.numerator, series.denominator

    def step(term, n, k):
        num_f = 1.0 + 0.0j
        for p in num:
            if p.weights[k]:
                num_f *= p.base + sum(w * v for w, v in zip(p.weights, n))
        if num_f == 0 or X[k] == 0:
            return 0.0j
        den_f = 1.0 + 0.0j
        for p in den:
            if p.weights[k]:
                den_f *= p.base + sum(w * v for w, v in zip(p.weights, n))
        if den_f == 0:
            return None
        return term * num_f / den_f * X[k] / (n[k] + 1)

    prev = {(0,) * r: 1.0 + 0.0j}
    total = 1.0 + 0.0j
    work = 1
    hist = [0.0, 0.0, 0.0, 1.0]
    small = 0
    for N in range(1, max_shells + 1):
        cur = {}
        for n in _compositions(N, r):
            # step along the last nonzero index from its predecessor
            k = max(i for i in range(r) if n[i] > 0)
            src = n[:k] + (n[k] - 1,) + n[k + 1 :]
            t = prev[src]
            if t == 0:
                cur[n] = 0.0j
                continue
            nxt = step(t, src, k)
            if nxt is None:
                return total, 0.0, 0.0, N, work, 2
            cur[n] = nxt
        vals = list(cur.values())
        if reverse:
            vals.reverse()
        shell = 0.0j
        for v in vals:
            shell += v
        work += len(vals)
        total += shell
        a = abs(shell)
        hist = hist[1:] + [a]
        prev = cur
        if a < tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return total, a, _rho_hat(*hist), N + 1, work, 0
        else:
            small = 0
    return total, hist[3], _rho_hat(*hist), max_shells + 1, work, 1


def _fmt_base(par: HornParameter) -> str:
    if par.label is not None:
        return par.label
    b = par.base
    if b.imag == 0:
        return repr(b.real)
    return f"({b.real!r}{b.imag:+}j)"


def _rows(params):
    groups: dict = {}
    for par in params:
        groups.setdefault(par.weights, []).append(par)
    return [("".join(str(w) for w in pat), grp) for pat, grp in groups.items()]


def horn_format(series: HornSeries) -> str:
    """Bracket notation: one row per weight pattern, numerator rows above
    the rule and denominator rows below, pattern label on the left."""
    num_rows = _rows(series.numerator)
    den_rows = _rows(series.denominator)
    width = max([len(lab) for lab, _ in num_rows + den_rows] + [series.r])
    head = f"{len(series.numerator)}F{len(series.denominator)}  (r = {series.r})"
    lines = [head, "["]
    for lab, grp in num_rows:
        lines.append(f"  {lab.rjust(width)} : " + ", ".join(_fmt_base(p) for p in grp))
    lines.append("  " + "-" * (width + 2))
    for lab, grp in den_rows:
        lines.append(f"  {lab.rjust(width)} : " + ", ".join(_fmt_base(p) for p in grp))
    lines.append("]")
    return "\n".join(lines)
