"""Zonal spherical functions Z^{p,q}_sigma(alpha) of SO(p, q).

Routes:
    integral   tensor quadrature over the two sphere sides (``quad``)
    series12   single series in tanh^2(alpha) with a terminating inner sum
    horn13     two-variable Horn series at (tanh^2, tanh^2), times 1/cosh
    horn14     the same with the roles of p and q exchanged
    closed_q1  cosh^sigma * 2F1(-sigma/2, (1-sigma)/2; p/2; tanh^2), q = 1

All routes describe the same function; ``verify_all`` checks that they do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import _backend
from .errors import ConvergenceError, DomainError, EpsOdd, TranscriptionMismatch, ZonalError
from .horn import HornParameter, HornSeries, horn_eval
from .kernel import GroupSignature, RepresentationParams, partner_sigma
from .quad import QuadratureSpec, zonal_integral
from .results import EvalResult, MethodTag
from .specfun import gauss_2f1

__all__ = [
    "HornForm",
    "HORN13_TABLE",
    "HORN14_TABLE",
    "horn_series_for",
    "zonal_series12",
    "zonal_horn",
    "zonal_closed_q1",
    "zonal_eval",
    "verify_all",
    "VerifyReport",
    "AUTO_THRESHOLD",
]

AUTO_THRESHOLD = 0.9
DEFAULT_TOL = 1e-12
DEFAULT_MAX_SHELLS = 20000


class HornForm(str, Enum):
    FORM13 = "13"
    FORM14 = "14"


# Parameter tables. A row is (side, weights, (const, c_sigma, c_p, c_q)); the
# base is const + c_sigma*sigma + c_p*p + c_q*q. Weights refer to the two
# arguments (tanh^2 a, tanh^2 a). ``cosh_power`` is the exponent of the
# cosh(alpha) prefactor. The two tables are written out independently.
HORN13_TABLE = {
    "rows": (
        ("num", (1, 0), (0.0, -0.5, 0.0, 0.0)),  # -sigma/2
        ("num", (1, 0), (1.0, -0.5, 0.0, -0.5)),  # 1 - (sigma+q)/2
        ("num", (0, 1), (0.0, 0.5, 0.0, 0.5)),  # (sigma+q)/2
        ("num", (1, 1), (0.5, 0.0, 0.0, 0.0)),  # 1/2
        ("den", (1, 1), (0.0, 0.0, 0.0, 0.5)),  # q/2
        ("den", (1, 0), (0.0, 0.0, 0.5, 0.0)),  # p/2
    ),
    "cosh_power": -1,
}

HORN14_TABLE = {
    "rows": (
        ("num", (1, 0), (0.0, -0.5, 0.0, 0.0)),  # -sigma/2
        ("num", (1, 0), (1.0, -0.5, -0.5, 0.0)),  # 1 - (sigma+p)/2
        ("num", (0, 1), (0.0, 0.5, 0.5, 0.0)),  # (sigma+p)/2
        ("num", (1, 1), (0.5, 0.0, 0.0, 0.0)),  # 1/2
        ("den", (1, 1), (0.0, 0.0, 0.5, 0.0)),  # p/2
        ("den", (1, 0), (0.0, 0.0, 0.0, 0.5)),  # q/2
    ),
    "cosh_power": -1,
}


def _table(form) -> dict:
    form = HornForm(str(form.value if isinstance(form, HornForm) else form))
    return HORN13_TABLE if form is HornForm.FORM13 else HORN14_TABLE


def _affine_text(coef, p, q) -> str:
    # "const + c_sigma*sigma" with p, q substituted, exact fractions
    const, cs, cp, cq = coef
    c = Fraction(const).limit_denominator(64) + Fraction(cp).limit_denominator(64) * p
    c += Fraction(cq).limit_denominator(64) * q
    s = Fraction(cs).limit_denominator(64)
    parts = []
    if c != 0 or s == 0:
        parts.append(str(c))
    if s != 0:
        mag = abs(s)
        sym = "sigma" if mag == 1 else f"{mag.numerator}sigma" if mag.denominator == 1 else (
            f"sigma/{mag.denominator}" if mag.numerator == 1 else f"{mag.numerator}sigma/{mag.denominator}"
        )
        if parts:
            parts.append(("- " if s < 0 else "+ ") + sym)
        else:
            parts.append(("-" if s < 0 else "") + sym)
    return " ".join(parts)


def horn_series_for(form, sig: GroupSignature, sigma: complex) -> HornSeries:
    """The Horn series of ``form`` for the canonical (p >= q) signature."""
    tab = _table(form)
    p, q = sig.p, sig.q
    num, den = [], []
    for side, w, coef in tab["rows"]:
        const, cs, cp, cq = coef
        base = const + cs * complex(sigma) + cp * p + cq * q
        par = HornParameter(base, w, label=_affine_text(coef, p, q))
        (num if side == "num" else den).append(par)
    return HornSeries(2, tuple(num), tuple(den))


def _require_even(rep: RepresentationParams):
    if rep.eps != 0:
        raise EpsOdd("zonal functions exist only for eps = 0")


def _check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError("alpha must be finite")
    return alpha


def zonal_series12(
    sig: GroupSignature,
    rep: RepresentationParams,
    alpha: float,
    tol: float = DEFAULT_TOL,
    max_terms: int = DEFAULT_MAX_SHELLS,
) -> EvalResult:
    """Series in tanh^2(alpha) whose m-th coefficient is a terminating
    sum over k <= m, divided by cosh(alpha).

    The removable singularities of the inner sum (sigma = 0 and
    (sigma+q)/2 a positive integer) are cancelled analytically against
    the outer Pochhammer factors before summation.
    """
    _require_even(rep)
    alpha = _check_alpha(alpha)
    t2 = math.tanh(alpha) ** 2
    if t2 >= 1.0:
        raise DomainError(f"tanh^2(alpha) rounds to 1 at alpha = {alpha}; use the integral")
    total, last, rho, terms, status = _backend.kernels().series12_sum(
        float(sig.p), float(sig.q), complex(rep.sigma), t2, float(tol), int(max_terms)
    )
    if status != 0:
        raise ConvergenceError(f"series12 not converged within {max_terms} terms")
    ch = math.cosh(alpha)
    return EvalResult(complex(total) / ch, last / (1.0 - rho) / ch, int(terms), MethodTag.SERIES12)


def zonal_horn(
    form,
    sig: GroupSignature,
    rep: RepresentationParams,
    alpha: float,
    tol: float = DEFAULT_TOL,
    max_shells: int = DEFAULT_MAX_SHELLS,
) -> EvalResult:
    """Horn-series route; ``form`` is "13" or "14". ``work`` counts shells."""
    _require_even(rep)
    alpha = _check_alpha(alpha)
    tab = _table(form)
    t2 = math.tanh(alpha) ** 2
    series = horn_series_for(form, sig, rep.sigma)
    res = horn_eval(series, (t2, t2), tol=tol, max_shells=max_shells)
    pref = math.cosh(alpha) ** tab["cosh_power"]
    tag = MethodTag.HORN13 if tab is HORN13_TABLE else MethodTag.HORN14
    return EvalResult(res.value * pref, res.abs_err_est * pref, res.work, tag)


def zonal_closed_q1(p: int, sigma: complex, alpha: float, tol: float = DEFAULT_TOL) -> EvalResult:
    """q = 1: cosh(alpha)^sigma * 2F1(-sigma/2, (1-sigma)/2; p/2; tanh^2 alpha)."""
    if int(p) != p or p < 2:
        raise DomainError(f"closed q = 1 form needs p >= 2, got {p!r}")
    alpha = _check_alpha(alpha)
    sigma = complex(sigma)
    t2 = math.tanh(alpha) ** 2
    f = gauss_2f1(-0.5 * sigma, 0.5 * (1.0 - sigma), 0.5 * p, t2, tol=min(tol, 1e-16))
    pref = complex(math.cosh(alpha)) ** sigma
    return EvalResult(f.value * pref, f.abs_err_est * abs(pref), f.work, MethodTag.CLOSED_Q1)


def zonal_eval(
    sig: GroupSignature,
    rep: RepresentationParams,
    alpha: float,
    method=MethodTag.AUTO,
    tol: float = DEFAULT_TOL,
    max_shells: int = DEFAULT_MAX_SHELLS,
    quad_spec: QuadratureSpec | None = None,
) -> EvalResult:
    """Evaluate by ``method``. ``auto`` uses horn13 while tanh^2(alpha) <= 0.9
    (shell counts grow like 1/(1 - tanh^2)) and the integral beyond."""
    _require_even(rep)
    alpha = _check_alpha(alpha)
    method = MethodTag.parse(method) if isinstance(method, str) and not isinstance(method, MethodTag) else method
    if method is MethodTag.AUTO:
        method = MethodTag.HORN13 if math.tanh(alpha) ** 2 <= AUTO_THRESHOLD else MethodTag.INTEGRAL
    if method is MethodTag.INTEGRAL:
        if quad_spec is None:
            quad_spec = QuadratureSpec(tol=tol)
        return zonal_integral(sig, rep, alpha, quad_spec)
    if method is MethodTag.SERIES12:
        return zonal_series12(sig, rep, alpha, tol, max_shells)
    if method is MethodTag.HORN13:
        return zonal_horn(HornForm.FORM13, sig, rep, alpha, tol, max_shells)
    if method is MethodTag.HORN14:
        return zonal_horn(HornForm.FORM14, sig, rep, alpha, tol, max_shells)
    if method is MethodTag.CLOSED_Q1:
        if sig.q != 1:
            raise DomainError("closed_q1 applies only to q = 1")
        return zonal_closed_q1(sig.p, rep.sigma, alpha, tol)
    raise DomainError(f"unknown method {method!r}")


def _rel(a: complex, b: complex) -> float:
    d = abs(a - b)
    if d == 0:
        return 0.0
    return d / max(abs(a), abs(b))


@dataclass
class VerifyEntry:
    """All routes at one alpha."""

    alpha: float
    results: dict = field(default_factory=dict)  # MethodTag -> EvalResult
    errors: dict = field(default_factory=dict)  # MethodTag -> message
    pairs: list = field(default_factory=list)  # (a, b, abs_dev, rel_dev)
    partner_rel: float | None = None
    partner_error: str | None = None
    imag_max: float | None = None


@dataclass
class VerifyReport:
    """Cross-validation of every applicable route."""

    sig: GroupSignature
    sigma: complex
    tol: float
    principal: bool
    methods: tuple
    entries: list = field(default_factory=list)

    @property
    def max_rel(self) -> float:
        devs = [d[3] for e in self.entries for d in e.pairs]
        return max(devs, default=0.0)

    @property
    def passed(self) -> bool:
        for e in self.entries:
            if e.errors or e.partner_error is not None:
                return False
            if any(d[3] > self.tol for d in e.pairs):
                return False
            if e.partner_rel is not None and e.partner_rel > self.tol:
                return False
            if self.principal and e.imag_max is not None and e.imag_max > self.tol:
                return False
        return True

    def suspects(self) -> tuple:
        """Methods that disagree with the integral (the reference) or failed."""
        bad = []
        for m in self.methods:
            for e in self.entries:
                if m in e.errors:
                    bad.append(m)
                    break
                if m is MethodTag.INTEGRAL:
                    continue
                ref = e.results.get(MethodTag.INTEGRAL)
                val = e.results.get(m)
                if ref is not None and val is not None and _rel(ref.value, val.value) > self.tol:
                    bad.append(m)
                    break
        return tuple(bad)

    def raise_on_failure(self) -> None:
        """Raise TranscriptionMismatch naming the suspect routes if the
        report failed; nothing is corrected automatically."""
        if not self.passed:
            sus = ", ".join(m.value for m in self.suspects()) or "none singled out"
            raise TranscriptionMismatch(
                f"routes disagree beyond tol = {self.tol:g} (max rel dev {self.max_rel:.3e}; suspect: {sus})"
            )

    def summary(self) -> str:
        lines = [
            f"verify SO({self.sig.orig_p},{self.sig.orig_q}) sigma = {self.sigma.real!r}{self.sigma.imag:+}j  tol = {self.tol:g}"
        ]
        for e in self.entries:
            lines.append(f"alpha = {e.alpha!r}")
            for m in self.methods:
                if m in e.errors:
                    lines.append(f"  {m.value:<10} ERROR {e.errors[m]}")
                else:
                    v = e.results[m].value
                    lines.append(f"  {m.value:<10} {v.real:.17g} {v.imag:+.17g}j")
            worst = max((d[3] for d in e.pairs), default=0.0)
            lines.append(f"  max pairwise rel dev {worst:.3e}")
            if e.partner_rel is not None:
                lines.append(f"  partner sigma rel dev {e.partner_rel:.3e}")
            if e.partner_error is not None:
                lines.append(f"  partner sigma ERROR {e.partner_error}")
            if self.principal and e.imag_max is not None:
                lines.append(f"  max |Im Z| {e.imag_max:.3e}")
        sus = self.suspects()
        lines.append("PASS" if self.passed else "FAIL" + (f" (suspect: {', '.join(m.value for m in sus)})" if sus else ""))
        return "\n".join(lines)


def _methods_for(sig: GroupSignature) -> tuple:
    ms = [MethodTag.INTEGRAL, MethodTag.SERIES12, MethodTag.HORN13, MethodTag.HORN14]
    if sig.q == 1:
        ms.append(MethodTag.CLOSED_Q1)
    return tuple(ms)


def verify_all(
    sig: GroupSignature,
    rep: RepresentationParams,
    alphas,
    tol: float = 1e-8,
    eval_tol: float | None = None,
    max_shells: int = DEFAULT_MAX_SHELLS,
    quad_spec: QuadratureSpec | None = None,
) -> VerifyReport:
    """Evaluate every applicable route at every alpha and compare.

    Passes iff every pairwise relative deviation, the partner-sigma
    deviation (integral route) and, on the principal line, every |Im Z|
    are within ``tol``. Routes are evaluated one after another, so the
    report is deterministic. ``eval_tol`` is the stopping tolerance given
    to each route (default ``tol / 100``).
    """
    _require_even(rep)
    if eval_tol is None:
        eval_tol = max(tol * 1e-2, 1e-14)
    if quad_spec is None:
        quad_spec = QuadratureSpec(tol=max(eval_tol, 1e-13))
    methods = _methods_for(sig)
    report = VerifyReport(sig, rep.sigma, tol, rep.is_principal(sig), methods)
    partner = RepresentationParams(partner_sigma(sig, rep.sigma), rep.eps)
    for alpha in alphas:
        entry = VerifyEntry(float(alpha))
        for m in methods:
            try:
                entry.results[m] = zonal_eval(sig, rep, alpha, m, eval_tol, max_shells, quad_spec)
            except (ZonalError, ArithmeticError) as exc:
                entry.errors[m] = f"{type(exc).__name__}: {exc}"
        done = [m for m in methods if m in entry.results]
        for i, a in enumerate(done):
            for b in done[i + 1 :]:
                va, vb = entry.results[a].value, entry.results[b].value
                entry.pairs.append((a, b, abs(va - vb), _rel(va, vb)))
        if MethodTag.INTEGRAL in entry.results:
            try:
                zp = zonal_integral(sig, partner, alpha, quad_spec)
                entry.partner_rel = _rel(entry.results[MethodTag.INTEGRAL].value, zp.value)
            except (ZonalError, ArithmeticError) as exc:
                entry.partner_error = f"{type(exc).__name__}: {exc}"
        if entry.results:
            entry.imag_max = max(
                abs(r.value.imag) / max(1.0, abs(r.value)) for r in entry.results.values()
            )
        report.entries.append(entry)
    return report
