"""Pure NumPy evaluation of the Airy function Ai and its derivative.

This is the fallback backend; qbounce.airy prefers the compiled twin
(_airy_cy) when it is importable.  Both backends implement the same
algorithm:

* |x| <= SERIES_RADIUS: Maclaurin series of the two independent
  solutions of y'' = x*y, accumulated in double-double (compensated)
  arithmetic.  Plain doubles are not enough here: on the positive axis
  the two series grow like exp(+zeta) while Ai decays like exp(-zeta),
  so up to ~16 digits cancel in the final combination.
* beyond SERIES_RADIUS: Poincare asymptotic expansions, truncated at
  the smallest term (the expansions are exact to far below 1e-12 once
  zeta = (2/3)|x|^(3/2) exceeds ~12).

The switch radius is where both regimes agree to better than 1e-11,
which the test suite checks directly.  Relative accuracy is ~1e-12
wherever |Ai| is representable; near the oscillatory zeros the error
is the same small fraction of the local envelope.
"""

import numpy as np

SERIES_RADIUS = 8.5
DOMAIN_LIMIT = 200.0

# Ai(0) = 3**(-2/3)/Gamma(2/3) and |Ai'(0)| = 3**(-1/3)/Gamma(1/3) as
# double-double pairs (tools/gen_airy_constants.py).
AI_ZERO_HI = 0.3550280538878172
AI_ZERO_LO = 2.05233632436212e-17
AIP_ZERO_HI = 0.2588194037928068
AIP_ZERO_LO = -2.522243111610832e-17
SQRT_PI = 1.772453850905516
TWO_THIRDS_HI = 0.6666666666666666
TWO_THIRDS_LO = 3.700743415417188e-17
TWO_PI_HI = 6.283185307179586
TWO_PI_LO = 2.4492935982947064e-16
QUARTER_PI_HI = 0.7853981633974483
QUARTER_PI_LO = 3.061616997868383e-17

_SPLITTER = 134217729.0  # 2**27 + 1, Dekker splitting constant

_N_ASY = 64


def _asy_coefficients():
    # u_k of the Ai expansion and v_k of the Ai' expansion,
    # u_{k+1}/u_k = (6k+5)(6k+1)/(72(k+1)), v_k = u_k*(6k+1)/(1-6k).
    u = np.empty(_N_ASY)
    v = np.empty(_N_ASY)
    u[0] = v[0] = 1.0
    for k in range(_N_ASY - 1):
        u[k + 1] = u[k] * ((6 * k + 5) * (6 * k + 1)) / (72.0 * (k + 1))
        v[k + 1] = u[k + 1] * (6 * (k + 1) + 1) / (1.0 - 6 * (k + 1))
    return u, v


_UK, _VK = _asy_coefficients()


# ---------------------------------------------------------------------------
# double-double primitives (elementwise on ndarrays)

def _two_sum(a, b):
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _fast_two_sum(a, b):
    # requires |a| >= |b| (or a == 0)
    s = a + b
    return s, b - (s - a)


def _two_prod(a, b):
    p = a * b
    ta = _SPLITTER * a
    ah = ta - (ta - a)
    al = a - ah
    tb = _SPLITTER * b
    bh = tb - (tb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    return _fast_two_sum(s, e + (xl + yl))


def _dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    return _fast_two_sum(p, e + (xh * yl + xl * yh))


def _dd_mul_d(xh, xl, d):
    p, e = _two_prod(xh, d)
    return _fast_two_sum(p, e + xl * d)


def _dd_div_d(xh, xl, d):
    q = xh / d
    p, e = _two_prod(q, d)
    return _fast_two_sum(q, ((xh - p) - e + xl) / d)


def _dd_zeta(t):
    """(2/3) t^(3/2) as a double-double pair; t > 0.

    The oscillatory branch needs the phase to much better than one ulp
    of zeta (zeta reaches ~1900 at the domain edge, so a plain double
    phase would lose ~1e-13 rad to rounding before reduction mod 2*pi).
    """
    s = np.sqrt(t)
    p, pe = _two_prod(s, s)
    slo = ((t - p) - pe) / (2.0 * s)
    h, l = _dd_mul_d(s, slo, t)
    return _dd_mul(h, l, TWO_THIRDS_HI, TWO_THIRDS_LO)


def _dd_cos_sin(th, tl):
    """cos and sin of a double-double angle, reduced mod 2*pi."""
    n = np.round(th / TWO_PI_HI)
    rh, rl = _dd_add(th, tl, -n * TWO_PI_HI, -n * TWO_PI_LO)
    c = np.cos(rh) - rl * np.sin(rh)
    s = np.sin(rh) + rl * np.cos(rh)
    return c, s


# ---------------------------------------------------------------------------
# regime evaluators (each takes a 1-D float64 array)

def _series_both(x):
    """Maclaurin Ai, Ai' for |x| <= SERIES_RADIUS via double-double sums."""
    x2h, x2l = _two_prod(x, x)
    x3h, x3l = _dd_mul_d(x2h, x2l, x)

    one = np.ones_like(x)
    zero = np.zeros_like(x)

    # partial sums and current terms of f, g, f', g'
    fh, fl = one.copy(), zero.copy()
    tfh, tfl = one.copy(), zero.copy()
    gh, gl = x.copy(), zero.copy()
    tgh, tgl = x.copy(), zero.copy()
    ph, pl = 0.5 * x2h, 0.5 * x2l          # f' starts at x^2/2
    tph, tpl = ph.copy(), pl.copy()
    qh, ql = one.copy(), zero.copy()       # g' starts at 1
    tqh, tql = one.copy(), zero.copy()

    for j in range(200):
        tfh, tfl = _dd_mul(tfh, tfl, x3h, x3l)
        tfh, tfl = _dd_div_d(tfh, tfl, float((3 * j + 2) * (3 * j + 3)))
        fh, fl = _dd_add(fh, fl, tfh, tfl)

        tgh, tgl = _dd_mul(tgh, tgl, x3h, x3l)
        tgh, tgl = _dd_div_d(tgh, tgl, float((3 * j + 3) * (3 * j + 4)))
        gh, gl = _dd_add(gh, gl, tgh, tgl)

        tph, tpl = _dd_mul(tph, tpl, x3h, x3l)
        tph, tpl = _dd_mul_d(tph, tpl, float(j + 2))
        tph, tpl = _dd_div_d(tph, tpl, float((j + 1) * (3 * j + 5) * (3 * j + 6)))
        ph, pl = _dd_add(ph, pl, tph, tpl)

        tqh, tql = _dd_mul(tqh, tql, x3h, x3l)
        tqh, tql = _dd_div_d(tqh, tql, float((3 * j + 1) * (3 * j + 3)))
        qh, ql = _dd_add(qh, ql, tqh, tql)

        scale = np.abs(fh) + np.abs(gh) + np.abs(ph) + np.abs(qh) + 1.0
        tmax = np.maximum(np.maximum(np.abs(tfh), np.abs(tgh)),
                          np.maximum(np.abs(tph), np.abs(tqh)))
        if np.all(tmax <= 1e-33 * scale):
            break

    aih, ail = _dd_mul(fh, fl, AI_ZERO_HI, AI_ZERO_LO)
    bh, bl = _dd_mul(gh, gl, AIP_ZERO_HI, AIP_ZERO_LO)
    aih, ail = _dd_add(aih, ail, -bh, -bl)

    dih, dil = _dd_mul(ph, pl, AI_ZERO_HI, AI_ZERO_LO)
    ch, cl = _dd_mul(qh, ql, AIP_ZERO_HI, AIP_ZERO_LO)
    dih, dil = _dd_add(dih, dil, -ch, -cl)
    return aih, dih


def _asym_sum(coef, start, step, r):
    """sum_k (-1)^k coef[start + step*k] * r^k, truncated at the smallest term."""
    total = np.full_like(r, coef[start])
    rk = np.ones_like(r)
    prev = np.full_like(r, abs(coef[start]))
    active = np.ones_like(r, dtype=bool)
    sign = -1.0
    for k in range(1, (_N_ASY - start) // step):
        rk = rk * r
        term = coef[start + step * k] * rk
        mag = np.abs(term)
        active &= mag < prev
        total = np.where(active, total + sign * term, total)
        if not np.any(active):
            break
        active &= mag > 1e-18 * np.abs(total)
        prev = mag
        sign = -sign
    return total


def _asym_pos_both(x):
    """Asymptotic Ai, Ai' on x >= SERIES_RADIUS (exponentially small branch)."""
    zh, zl = _dd_zeta(x)
    r = 1.0 / zh
    sa = _asym_sum(_UK, 0, 1, r)
    sp = _asym_sum(_VK, 0, 1, r)
    x4 = np.sqrt(np.sqrt(x))
    damp = np.exp(-zh) * (1.0 - zl) / (2.0 * SQRT_PI)
    return damp * sa / x4, -damp * sp * x4


def _asym_neg_both(x):
    """Asymptotic Ai, Ai' on x <= -SERIES_RADIUS (oscillatory branch)."""
    t = -x
    zh, zl = _dd_zeta(t)
    r2 = 1.0 / (zh * zh)
    p = _asym_sum(_UK, 0, 2, r2)
    q = _asym_sum(_UK, 1, 2, r2) / zh
    rr = _asym_sum(_VK, 0, 2, r2)
    ss = _asym_sum(_VK, 1, 2, r2) / zh
    th, tl = _dd_add(zh, zl, -QUARTER_PI_HI, -QUARTER_PI_LO)
    c, s = _dd_cos_sin(th, tl)
    t4 = np.sqrt(np.sqrt(t))
    ai = (c * p + s * q) / (SQRT_PI * t4)
    aip = (s * rr - c * ss) * t4 / SQRT_PI
    return ai, aip


# ---------------------------------------------------------------------------
# public entry points

def ai_and_prime(x):
    """Evaluate (Ai(x), Ai'(x)) elementwise for |x| <= 200."""
    arr = np.asarray(x, dtype=np.float64)
    scalar = arr.ndim == 0
    flat = np.atleast_1d(arr).ravel().copy()
    if flat.size and not np.all(np.isfinite(flat)):
        raise ValueError("airy_ai: argument must be finite")
    if flat.size and np.any(np.abs(flat) > DOMAIN_LIMIT):
        raise ValueError(f"airy_ai: |x| must not exceed {DOMAIN_LIMIT:g}")

    ai = np.empty_like(flat)
    aip = np.empty_like(flat)
    mid = np.abs(flat) <= SERIES_RADIUS
    pos = flat > SERIES_RADIUS
    neg = flat < -SERIES_RADIUS
    if np.any(mid):
        ai[mid], aip[mid] = _series_both(flat[mid])
    if np.any(pos):
        ai[pos], aip[pos] = _asym_pos_both(flat[pos])
    if np.any(neg):
        ai[neg], aip[neg] = _asym_neg_both(flat[neg])

    if scalar:
        return float(ai[0]), float(aip[0])
    return ai.reshape(arr.shape), aip.reshape(arr.shape)


def ai(x):
    return ai_and_prime(x)[0]


def ai_prime(x):
    return ai_and_prime(x)[1]


BACKEND = "python"
