# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: two-variable Horn shell sum and the series-12 double
sum. Mirrors ``_kernels_py`` line for line (same arithmetic order, Horn
terms in long double)."""

import numpy as np
cimport numpy as cnp
from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport fabs, floor, frexp, ldexp, sqrtl

cnp.import_array()

DEF OK = 0
DEF CAP = 1
DEF POLE = 2
DEF RHO_MAX = 0.99


cdef double _rho_hat(double h0, double h1, double h2, double h3):
    cdef double best = 0.0, r, prev, cur
    cdef double hs[4]
    cdef int i
    hs[0] = h0; hs[1] = h1; hs[2] = h2; hs[3] = h3
    for i in range(3):
        prev = hs[i]
        cur = hs[i + 1]
        if prev > 0.0:
            r = cur / prev
        elif cur > 0.0:
            r = RHO_MAX
        else:
            r = 0.0
        if r > best:
            best = r
    return best if best < RHO_MAX else RHO_MAX


cdef inline double cabs_(double complex z):
    return abs(z)


ctypedef struct cld:
    long double re
    long double im


cdef inline cld _c(long double re, long double im):
    cdef cld r
    r.re = re
    r.im = im
    return r


cdef inline cld _cmul(cld a, cld b):
    return _c(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)


cdef inline cld _cdiv(cld a, cld b):
    cdef long double d = b.re * b.re + b.im * b.im
    return _c((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d)


cdef inline bint _is0(cld a):
    return a.re == 0 and a.im == 0


cdef inline double _cabsl(cld a):
    return <double>sqrtl(a.re * a.re + a.im * a.im)


def horn2_sum(nb, nw1, nw2, db, dw1, dw2, x1, x2, double tol, long max_shells, bint reverse):
    cdef double complex[::1] nbv = np.ascontiguousarray(nb, dtype=np.complex128).reshape(-1)
    cdef double complex[::1] dbv = np.ascontiguousarray(db, dtype=np.complex128).reshape(-1)
    cdef long[::1] nw1v = np.ascontiguousarray(nw1, dtype=np.int64).reshape(-1)
    cdef long[::1] nw2v = np.ascontiguousarray(nw2, dtype=np.int64).reshape(-1)
    cdef long[::1] dw1v = np.ascontiguousarray(dw1, dtype=np.int64).reshape(-1)
    cdef long[::1] dw2v = np.ascontiguousarray(dw2, dtype=np.int64).reshape(-1)
    cdef double complex cx1 = x1, cx2 = x2
    cdef cld lx1 = _c(cx1.real, cx1.imag), lx2 = _c(cx2.real, cx2.imag)
    cdef Py_ssize_t n_num = nbv.shape[0], n_den = dbv.shape[0]
    cdef cld *col = <cld *>PyMem_Malloc((max_shells + 2) * sizeof(cld))
    if col == NULL:
        raise MemoryError()
    cdef Py_ssize_t ncols = 1, n, i, j
    cdef long N, m
    cdef bint is_open = True
    cdef cld total = _c(1.0, 0.0), new, num, den, cur, shell, t
    cdef long terms = 1
    cdef double h0 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 1.0, a
    cdef int small = 0
    try:
        col[0] = _c(1.0, 0.0)
        for N in range(1, max_shells + 1):
            new = _c(0.0, 0.0)
            if is_open:
                n = N - 1
                num = _c(1.0, 0.0)
                for i in range(n_num):
                    if nw2v[i]:
                        num = _cmul(num, _c(<long double>nbv[i].real + nw2v[i] * n, nbv[i].imag))
                if not _is0(num) and cx2 != 0:
                    den = _c(1.0, 0.0)
                    for j in range(n_den):
                        if dw2v[j]:
                            den = _cmul(den, _c(<long double>dbv[j].real + dw2v[j] * n, dbv[j].imag))
                    if _is0(den):
                        return complex(<double>total.re, <double>total.im), 0.0, 0.0, N, terms, POLE
                    t = _cdiv(_cmul(col[ncols - 1], num), den)
                    t = _cmul(t, lx2)
                    new = _c(t.re / (n + 1), t.im / (n + 1))
                if _is0(new):
                    is_open = False
            for n in range(ncols):
                cur = col[n]
                if _is0(cur):
                    continue
                m = N - 1 - n
                num = _c(1.0, 0.0)
                for i in range(n_num):
                    if nw1v[i]:
                        num = _cmul(num, _c(<long double>nbv[i].real + (nw1v[i] * m + nw2v[i] * n), nbv[i].imag))
                if _is0(num) or cx1 == 0:
                    col[n] = _c(0.0, 0.0)
                    continue
                den = _c(1.0, 0.0)
                for j in range(n_den):
                    if dw1v[j]:
                        den = _cmul(den, _c(<long double>dbv[j].real + (dw1v[j] * m + dw2v[j] * n), dbv[j].imag))
                if _is0(den):
                    return complex(<double>total.re, <double>total.im), 0.0, 0.0, N, terms, POLE
                t = _cdiv(_cmul(cur, num), den)
                t = _cmul(t, lx1)
                col[n] = _c(t.re / (m + 1), t.im / (m + 1))
            if is_open:
                col[ncols] = new
                ncols += 1
            shell = _c(0.0, 0.0)
            if reverse:
                for n in range(ncols - 1, -1, -1):
                    shell.re += col[n].re
                    shell.im += col[n].im
            else:
                for n in range(ncols):
                    shell.re += col[n].re
                    shell.im += col[n].im
            terms += ncols
            total.re += shell.re
            total.im += shell.im
            a = _cabsl(shell)
            h0, h1, h2, h3 = h1, h2, h3, a
            if a < tol * max(1.0, _cabsl(total)):
                small += 1
                if small >= 3:
                    return complex(<double>total.re, <double>total.im), a, _rho_hat(h0, h1, h2, h3), N + 1, terms, OK
            else:
                small = 0
        return complex(<double>total.re, <double>total.im), h3, _rho_hat(h0, h1, h2, h3), max_shells + 1, terms, CAP
    finally:
        PyMem_Free(col)


cdef bint _hits_zero(double complex a, long n):
    if a.imag != 0 or a.real > 0 or a.real != floor(a.real):
        return False
    return -a.real < n


cdef inline double complex _mul_scaled(double complex v, double complex f, int e, long *scale):
    cdef int ex
    v = v * f if e > 0 else v / f
    frexp(max(fabs(v.real), fabs(v.imag)), &ex)
    scale[0] += ex
    return ldexp(v.real, -ex) + 1j * ldexp(v.imag, -ex)


cdef double complex _s12_direct(long m, long k, double p, double q,
                                double complex c, double complex d):
    cdef double complex v = 1.0
    cdef long scale = 0
    cdef long j
    if (_hits_zero(c - m + k, m - k) or _hits_zero(d - m + k + 1, m - k)
            or _hits_zero(1 - m - 0.5 * p, k) or _hits_zero(c, k)):
        return 0.0
    for j in range(m - k):
        v = _mul_scaled(v, c - m + k + j, 1, &scale)
        v = _mul_scaled(v, d - m + k + 1 + j, 1, &scale)
    for j in range(k):
        v = _mul_scaled(v, -m + j, 1, &scale)
        v = _mul_scaled(v, 1 - m - 0.5 * p + j, 1, &scale)
        v = _mul_scaled(v, c + j, 1, &scale)
        v = _mul_scaled(v, j + 1.0, -1, &scale)
    for j in range(m):
        v = _mul_scaled(v, 0.5 + j, 1, &scale)
        v = _mul_scaled(v, 0.5 * p + j, -1, &scale)
        v = _mul_scaled(v, 0.5 * q + j, -1, &scale)
        v = _mul_scaled(v, j + 1.0, -1, &scale)
    return ldexp(v.real, scale) + 1j * ldexp(v.imag, scale)


def series12_sum(double p, double q, sigma, double t2, double tol, long max_terms):
    cdef double complex s = sigma
    cdef double complex c = 0.5 * (s + q)
    cdef double complex d = 0.5 * s
    cdef double hp = 0.5 * p, hq = 0.5 * q
    cdef double complex total = 0.0, h, inner, div, term
    cdef double h0 = 0.0, h1 = 0.0, h2 = 0.0, h3 = 0.0, a
    cdef double tpow = 1.0
    cdef int small = 0
    cdef long m, j, k
    for m in range(max_terms):
        h = 1.0
        for j in range(m):
            h = h * ((0.5 + j) * (c - 1 - j) * (d - j) / ((hp + j) * (hq + j) * (j + 1.0)))
        inner = h
        for k in range(m):
            div = (k + 1.0) * ((c - 1) - (m - k - 1)) * (d - (m - k - 1))
            if h == 0 or div == 0:
                h = _s12_direct(m, k + 1, p, q, c, d)
            else:
                h = h * ((-m + k) * (1 - m - hp + k) * (c + k)) / div
            inner = inner + h
        term = inner * tpow
        tpow *= t2
        total = total + term
        a = cabs_(term)
        h0, h1, h2, h3 = h1, h2, h3, a
        if a < tol * max(1.0, cabs_(total)):
            small += 1
            if small >= 3:
                return complex(total), a, _rho_hat(h0, h1, h2, h3), m + 1, OK
        else:
            small = 0
    return complex(total), h3, _rho_hat(h0, h1, h2, h3), max_terms, CAP
