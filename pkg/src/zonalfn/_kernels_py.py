"""Pure-Python twin of the compiled ``_kernels`` module.

Both modules expose the same two functions with the same signatures and
the same arithmetic order, so results agree to rounding. The compiled one
is preferred at import (see ``_backend``).

Status codes returned by both kernels:
    0  converged
    1  term / shell cap reached
    2  pole (denominator factor vanished under a nonzero term)
"""

import math

import numpy as np

OK, CAP, POLE = 0, 1, 2
LD = np.longdouble
RHO_MAX = 0.99


def _rho_hat(h0, h1, h2, h3):
    # largest of the last three shell-to-shell ratios, clamped to [0, 0.99]
    best = 0.0
    for prev, cur in ((h0, h1), (h1, h2), (h2, h3)):
        if prev > 0.0:
            r = cur / prev
        elif cur > 0.0:
            r = RHO_MAX
        else:
            r = 0.0
        if r > best:
            best = r
    return min(best, RHO_MAX)


def _cmul(ar, ai, br, bi):
    return ar * br - ai * bi, ar * bi + ai * br


def _cdiv(ar, ai, br, bi):
    d = br * br + bi * bi
    return (ar * br + ai * bi) / d, (ai * br - ar * bi) / d


def _cabs(re, im):
    return float(np.sqrt(re * re + im * im))


def horn2_sum(nb, nw1, nw2, db, dw1, dw2, x1, x2, tol, max_shells, reverse):
    """Shell-ordered sum of a two-variable Horn series with 0/1 weights.

    Term T(m, n) = prod_i (nb_i)_{nw1_i m + nw2_i n} / prod_j (db_j)_{...}
                   * x1^m x2^n / (m! n!).
    Column ``n`` of ``col`` holds T(N - n, n) during shell N.

    Terms and sums are carried in long double as (re, im) pairs, so that
    series whose terms cancel heavily keep full double accuracy.

    Returns (total, last_shell_abs, rho_hat, shells, terms, status).
    """
    nbr = [LD(complex(v).real) for v in nb]
    nbi = [LD(complex(v).imag) for v in nb]
    dbr = [LD(complex(v).real) for v in db]
    dbi = [LD(complex(v).imag) for v in db]
    nw1, nw2 = [int(v) for v in nw1], [int(v) for v in nw2]
    dw1, dw2 = [int(v) for v in dw1], [int(v) for v in dw2]
    x1, x2 = complex(x1), complex(x2)
    x1r, x1i, x2r, x2i = LD(x1.real), LD(x1.imag), LD(x2.real), LD(x2.imag)
    n_num, n_den = len(nbr), len(dbr)
    zero, one = LD(0), LD(1)

    colr = [one]
    coli = [zero]
    is_open = True
    totr, toti = one, zero
    terms = 1
    hist = [0.0, 0.0, 0.0, 1.0]
    small = 0

    def total():
        return complex(float(totr), float(toti))

    for N in range(1, max_shells + 1):
        ncols = len(colr)
        # start column n = N from T(0, N-1) before it is advanced
        newr, newi = zero, zero
        if is_open:
            n = N - 1
            numr, numi = one, zero
            for i in range(n_num):
                if nw2[i]:
                    numr, numi = _cmul(numr, numi, nbr[i] + nw2[i] * n, nbi[i])
            if (numr != 0 or numi != 0) and x2 != 0:
                denr, deni = one, zero
                for j in range(n_den):
                    if dw2[j]:
                        denr, deni = _cmul(denr, deni, dbr[j] + dw2[j] * n, dbi[j])
                if denr == 0 and deni == 0:
                    return total(), 0.0, 0.0, N, terms, POLE
                tr, ti = _cmul(colr[ncols - 1], coli[ncols - 1], numr, numi)
                tr, ti = _cdiv(tr, ti, denr, deni)
                tr, ti = _cmul(tr, ti, x2r, x2i)
                newr, newi = tr / (n + 1), ti / (n + 1)
            if newr == 0 and newi == 0:
                is_open = False
        # advance every open column by one step in m
        for n in range(ncols):
            cr, ci = colr[n], coli[n]
            if cr == 0 and ci == 0:
                continue
            m = N - 1 - n
            numr, numi = one, zero
            for i in range(n_num):
                if nw1[i]:
                    numr, numi = _cmul(numr, numi, nbr[i] + (nw1[i] * m + nw2[i] * n), nbi[i])
            if (numr == 0 and numi == 0) or x1 == 0:
                colr[n], coli[n] = zero, zero
                continue
            denr, deni = one, zero
            for j in range(n_den):
                if dw1[j]:
                    denr, deni = _cmul(denr, deni, dbr[j] + (dw1[j] * m + dw2[j] * n), dbi[j])
            if denr == 0 and deni == 0:
                return total(), 0.0, 0.0, N, terms, POLE
            tr, ti = _cmul(cr, ci, numr, numi)
            tr, ti = _cdiv(tr, ti, denr, deni)
            tr, ti = _cmul(tr, ti, x1r, x1i)
            colr[n], coli[n] = tr / (m + 1), ti / (m + 1)
        if is_open:
            colr.append(newr)
            coli.append(newi)
        sr, si = zero, zero
        order = range(len(colr) - 1, -1, -1) if reverse else range(len(colr))
        for n in order:
            sr += colr[n]
            si += coli[n]
        terms += len(colr)
        totr += sr
        toti += si
        a = _cabs(sr, si)
        hist = [hist[1], hist[2], hist[3], a]
        if a < tol * max(1.0, _cabs(totr, toti)):
            small += 1
            if small >= 3:
                return total(), a, _rho_hat(*hist), N + 1, terms, OK
        else:
            small = 0
    return total(), hist[3], _rho_hat(*hist), max_shells + 1, terms, CAP


def _hits_zero(a, n):
    # True when (a)_n contains an exact zero factor
    a = complex(a)
    if a.imag != 0 or a.real > 0 or a.real != math.floor(a.real):
        return False
    return -a.real < n


def _s12_direct(m, k, p, q, c, d):
    # one inner term of the merged series, by direct product
    if (
        _hits_zero(c - m + k, m - k)
        or _hits_zero(d - m + k + 1, m - k)
        or _hits_zero(1 - m - 0.5 * p, k)
        or _hits_zero(c, k)
    ):
        return 0.0j
    factors = []
    for j in range(m - k):
        factors.append((c - m + k + j, 1))
        factors.append((d - m + k + 1 + j, 1))
    for j in range(k):
        factors.append((-m + j, 1))
        factors.append((1 - m - 0.5 * p + j, 1))
        factors.append((c + j, 1))
        factors.append((j + 1.0, -1))
    for j in range(m):
        factors.append((0.5 + j, 1))
        factors.append((0.5 * p + j, -1))
        factors.append((0.5 * q + j, -1))
        factors.append((j + 1.0, -1))
    # running product, renormalized by powers of two so it cannot overflow
    v = 1.0 + 0.0j
    scale = 0
    for f, e in factors:
        v = v * f if e > 0 else v / f
        ex = math.frexp(max(abs(v.real), abs(v.imag)))[1]
        v = complex(math.ldexp(v.real, -ex), math.ldexp(v.imag, -ex))
        scale += ex
    return complex(math.ldexp(v.real, scale), math.ldexp(v.imag, scale))


def series12_sum(p, q, sigma, t2, tol, max_terms):
    """Outer sum over m of the merged, pole-free series

        sum_m (1/2)_m t2^m / ((p/2)_m (q/2)_m m!) * sum_{k<=m} g(m, k),
        g = (c-m+k)_{m-k} (d-m+k+1)_{m-k} (-m)_k (1-m-p/2)_k (c)_k / k!,

    with c = (sigma+q)/2, d = sigma/2. The caller divides by cosh(alpha).

    Returns (total, last_term_abs, rho_hat, terms, status).
    """
    p, q = float(p), float(q)
    sigma = complex(sigma)
    c = 0.5 * (sigma + q)
    d = 0.5 * sigma
    hp, hq = 0.5 * p, 0.5 * q
    total = 0.0j
    hist = [0.0, 0.0, 0.0, 0.0]
    small = 0
    tpow = 1.0
    for m in range(max_terms):
        # h0 = (1/2)_m / ((p/2)_m (q/2)_m m!) * (c-m)_m (d-m+1)_m, with the
        # last two products reversed so that every factor is O(1)
        h = 1.0 + 0.0j
        for j in range(m):
            h *= (0.5 + j) * (c - 1 - j) * (d - j) / ((hp + j) * (hq + j) * (j + 1.0))
        inner = h
        for k in range(m):
            # the factors leaving the products, spelled exactly as in h0 so a
            # near-zero factor divides out to rounding
            div = (k + 1.0) * ((c - 1) - (m - k - 1)) * (d - (m - k - 1))
            if h == 0 or div == 0:
                h = _s12_direct(m, k + 1, p, q, c, d)
            else:
                h = h * ((-m + k) * (1 - m - hp + k) * (c + k)) / div
            inner += h
        term = inner * tpow
        tpow *= t2
        total += term
        a = abs(term)
        hist = [hist[1], hist[2], hist[3], a]
        if a < tol * max(1.0, abs(total)):
            small += 1
            if small >= 3:
                return total, a, _rho_hat(*hist), m + 1, OK
        else:
            small = 0
    return total, hist[3], _rho_hat(*hist), max_terms, CAP
