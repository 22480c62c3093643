# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation of the Airy function Ai and its derivative.

Same algorithm as the pure NumPy fallback (_airy_py): double-double
Maclaurin series for |x| <= 8.5, min-term-truncated asymptotic
expansions beyond, with double-double phase reduction on the
oscillatory side.  Scalar kernels in C plus a batch entry point.

Must be compiled without -ffast-math and with -ffp-contract=off: the
compensated arithmetic relies on strict IEEE semantics (two_prod uses
libc fma explicitly).
"""

import numpy as np

cimport cython
from libc.math cimport cos, exp, fabs, fma, round, sin, sqrt

DEF SERIES_RADIUS = 8.5
DEF DOMAIN_LIMIT = 200.0

DEF AI_ZERO_HI = 0.3550280538878172
DEF AI_ZERO_LO = 2.05233632436212e-17
DEF AIP_ZERO_HI = 0.2588194037928068
DEF AIP_ZERO_LO = -2.522243111610832e-17
DEF SQRT_PI = 1.772453850905516
DEF TWO_THIRDS_HI = 0.6666666666666666
DEF TWO_THIRDS_LO = 3.700743415417188e-17
DEF TWO_PI_HI = 6.283185307179586
DEF TWO_PI_LO = 2.4492935982947064e-16
DEF QUARTER_PI_HI = 0.7853981633974483
DEF QUARTER_PI_LO = 3.061616997868383e-17

DEF N_ASY = 64

cdef double[N_ASY] _UK
cdef double[N_ASY] _VK

cdef void _init_tables() noexcept:
    cdef int k
    _UK[0] = 1.0
    _VK[0] = 1.0
    for k in range(N_ASY - 1):
        _UK[k + 1] = _UK[k] * ((6 * k + 5) * (6 * k + 1)) / (72.0 * (k + 1))
        _VK[k + 1] = _UK[k + 1] * (6 * (k + 1) + 1) / (1.0 - 6 * (k + 1))

_init_tables()


# --------------------------------------------------------------------------
# double-double primitives

cdef inline (double, double) _two_sum(double a, double b) noexcept nogil:
    cdef double s = a + b
    cdef double t = s - a
    return s, (a - (s - t)) + (b - t)

cdef inline (double, double) _fast_two_sum(double a, double b) noexcept nogil:
    cdef double s = a + b
    return s, b - (s - a)

cdef inline (double, double) _two_prod(double a, double b) noexcept nogil:
    cdef double p = a * b
    return p, fma(a, b, -p)

cdef inline (double, double) _dd_add(double xh, double xl,
                                     double yh, double yl) noexcept nogil:
    cdef double s, e
    s, e = _two_sum(xh, yh)
    return _fast_two_sum(s, e + (xl + yl))

cdef inline (double, double) _dd_mul(double xh, double xl,
                                     double yh, double yl) noexcept nogil:
    cdef double p, e
    p, e = _two_prod(xh, yh)
    return _fast_two_sum(p, e + (xh * yl + xl * yh))

cdef inline (double, double) _dd_mul_d(double xh, double xl, double d) noexcept nogil:
    cdef double p, e
    p, e = _two_prod(xh, d)
    return _fast_two_sum(p, e + xl * d)

cdef inline (double, double) _dd_div_d(double xh, double xl, double d) noexcept nogil:
    cdef double q = xh / d
    cdef double p, e
    p, e = _two_prod(q, d)
    return _fast_two_sum(q, ((xh - p) - e + xl) / d)


# --------------------------------------------------------------------------
# regime kernels

cdef void _series_both(double x, double *ai, double *aip) noexcept nogil:
    cdef double x2h, x2l, x3h, x3l
    cdef double fh, fl, tfh, tfl, gh, gl, tgh, tgl
    cdef double ph, pl, tph, tpl, qh, ql, tqh, tql
    cdef double ah, al, bh, bl, scale, tmax
    cdef int j

    x2h, x2l = _two_prod(x, x)
    x3h, x3l = _dd_mul_d(x2h, x2l, x)

    fh = 1.0; fl = 0.0; tfh = 1.0; tfl = 0.0
    gh = x;   gl = 0.0; tgh = x;   tgl = 0.0
    ph = 0.5 * x2h; pl = 0.5 * x2l
    tph = ph; tpl = pl
    qh = 1.0; ql = 0.0; tqh = 1.0; tql = 0.0

    for j in range(200):
        tfh, tfl = _dd_mul(tfh, tfl, x3h, x3l)
        tfh, tfl = _dd_div_d(tfh, tfl, <double>((3 * j + 2) * (3 * j + 3)))
        fh, fl = _dd_add(fh, fl, tfh, tfl)

        tgh, tgl = _dd_mul(tgh, tgl, x3h, x3l)
        tgh, tgl = _dd_div_d(tgh, tgl, <double>((3 * j + 3) * (3 * j + 4)))
        gh, gl = _dd_add(gh, gl, tgh, tgl)

        tph, tpl = _dd_mul(tph, tpl, x3h, x3l)
        tph, tpl = _dd_mul_d(tph, tpl, <double>(j + 2))
        tph, tpl = _dd_div_d(tph, tpl, <double>((j + 1) * (3 * j + 5) * (3 * j + 6)))
        ph, pl = _dd_add(ph, pl, tph, tpl)

        tqh, tql = _dd_mul(tqh, tql, x3h, x3l)
        tqh, tql = _dd_div_d(tqh, tql, <double>((3 * j + 1) * (3 * j + 3)))
        qh, ql = _dd_add(qh, ql, tqh, tql)

        scale = fabs(fh) + fabs(gh) + fabs(ph) + fabs(qh) + 1.0
        tmax = fabs(tfh)
        if fabs(tgh) > tmax: tmax = fabs(tgh)
        if fabs(tph) > tmax: tmax = fabs(tph)
        if fabs(tqh) > tmax: tmax = fabs(tqh)
        if tmax <= 1e-33 * scale:
            break

    ah, al = _dd_mul(fh, fl, AI_ZERO_HI, AI_ZERO_LO)
    bh, bl = _dd_mul(gh, gl, AIP_ZERO_HI, AIP_ZERO_LO)
    ah, al = _dd_add(ah, al, -bh, -bl)
    ai[0] = ah

    ah, al = _dd_mul(ph, pl, AI_ZERO_HI, AI_ZERO_LO)
    bh, bl = _dd_mul(qh, ql, AIP_ZERO_HI, AIP_ZERO_LO)
    ah, al = _dd_add(ah, al, -bh, -bl)
    aip[0] = ah


cdef double _asym_sum(const double *coef, int start, int step, double r) noexcept nogil:
    cdef double total = coef[start]
    cdef double rk = 1.0
    cdef double prev = fabs(coef[start])
    cdef double sign = -1.0
    cdef double term, mag
    cdef int k
    for k in range(1, (N_ASY - start) // step):
        rk *= r
        term = coef[start + step * k] * rk
        mag = fabs(term)
        if mag >= prev:
            break
        total += sign * term
        if mag <= 1e-18 * fabs(total):
            break
        prev = mag
        sign = -sign
    return total


cdef inline (double, double) _dd_zeta(double t) noexcept nogil:
    cdef double s = sqrt(t)
    cdef double p, pe, slo, h, l
    p, pe = _two_prod(s, s)
    slo = ((t - p) - pe) / (2.0 * s)
    h, l = _dd_mul_d(s, slo, t)
    return _dd_mul(h, l, TWO_THIRDS_HI, TWO_THIRDS_LO)


cdef void _asym_pos_both(double x, double *ai, double *aip) noexcept nogil:
    cdef double zh, zl, r, sa, sp, x4, damp
    zh, zl = _dd_zeta(x)
    r = 1.0 / zh
    sa = _asym_sum(_UK, 0, 1, r)
    sp = _asym_sum(_VK, 0, 1, r)
    x4 = sqrt(sqrt(x))
    damp = exp(-zh) * (1.0 - zl) / (2.0 * SQRT_PI)
    ai[0] = damp * sa / x4
    aip[0] = -damp * sp * x4


cdef void _asym_neg_both(double x, double *ai, double *aip) noexcept nogil:
    cdef double t = -x
    cdef double zh, zl, r2, p, q, rr, ss, th, tl, n, rh, rl, c, s, t4
    zh, zl = _dd_zeta(t)
    r2 = 1.0 / (zh * zh)
    p = _asym_sum(_UK, 0, 2, r2)
    q = _asym_sum(_UK, 1, 2, r2) / zh
    rr = _asym_sum(_VK, 0, 2, r2)
    ss = _asym_sum(_VK, 1, 2, r2) / zh
    th, tl = _dd_add(zh, zl, -QUARTER_PI_HI, -QUARTER_PI_LO)
    n = round(th / TWO_PI_HI)
    rh, rl = _dd_add(th, tl, -n * TWO_PI_HI, -n * TWO_PI_LO)
    c = cos(rh) - rl * sin(rh)
    s = sin(rh) + rl * cos(rh)
    t4 = sqrt(sqrt(t))
    ai[0] = (c * p + s * q) / (SQRT_PI * t4)
    aip[0] = (s * rr - c * ss) * t4 / SQRT_PI


cdef inline void _eval_one(double x, double *ai, double *aip) noexcept nogil:
    if x > SERIES_RADIUS:
        _asym_pos_both(x, ai, aip)
    elif x < -SERIES_RADIUS:
        _asym_neg_both(x, ai, aip)
    else:
        _series_both(x, ai, aip)


# --------------------------------------------------------------------------
# python-facing entry points (same contract as _airy_py)

def ai_and_prime(x):
    """Evaluate (Ai(x), Ai'(x)) elementwise for |x| <= 200."""
    arr = np.asarray(x, dtype=np.float64)
    cdef bint scalar = arr.ndim == 0
    flat = np.ascontiguousarray(np.atleast_1d(arr).ravel())
    cdef double[::1] xv = flat
    cdef Py_ssize_t n = xv.shape[0]
    out_ai = np.empty(n, dtype=np.float64)
    out_aip = np.empty(n, dtype=np.float64)
    cdef double[::1] av = out_ai
    cdef double[::1] pv = out_aip
    cdef Py_ssize_t i
    for i in range(n):
        if not (fabs(xv[i]) <= DOMAIN_LIMIT):
            _raise_domain(xv[i])
    with nogil:
        for i in range(n):
            _eval_one(xv[i], &av[i], &pv[i])
    if scalar:
        return float(out_ai[0]), float(out_aip[0])
    return out_ai.reshape(arr.shape), out_aip.reshape(arr.shape)


def _raise_domain(double x):
    if x != x or x == float("inf") or x == float("-inf"):
        raise ValueError("airy_ai: argument must be finite")
    raise ValueError("airy_ai: |x| must not exceed 200")


def ai(x):
    return ai_and_prime(x)[0]


def ai_prime(x):
    return ai_and_prime(x)[1]


BACKEND = "compiled"
