"""Airy function Ai, its derivative, and the zeros on the negative axis.

The evaluation kernel lives in a compiled extension (_airy_cy) with a
pure NumPy twin (_airy_py) selected automatically at import.  Set
QBOUNCE_PURE_PYTHON=1 to force the fallback (the benchmark suite uses
this to compare both).

Zeros are found by safeguarded Newton iteration from Bohr-Sommerfeld
seeds (3*pi*(4n-1)/8)**(2/3), which sit within 0.8% of the true zeros,
so Newton converges in a handful of steps and a bisection-style clamp
is only a safety net.
"""

import os

import numpy as np

from . import _airy_py

if os.environ.get("QBOUNCE_PURE_PYTHON"):
    _backend = _airy_py
else:
    try:
        from . import _airy_cy as _backend
    except ImportError:
        _backend = _airy_py

BACKEND = _backend.BACKEND

SERIES_RADIUS = _airy_py.SERIES_RADIUS
DOMAIN_LIMIT = _airy_py.DOMAIN_LIMIT


def airy_ai(x):
    """Ai(x) for finite |x| <= 200, scalar or elementwise on arrays."""
    return _backend.ai(x)


def airy_ai_prime(x):
    """Ai'(x) for finite |x| <= 200, scalar or elementwise on arrays."""
    return _backend.ai_prime(x)


def airy_ai_and_prime(x):
    """(Ai(x), Ai'(x)) in one evaluation."""
    return _backend.ai_and_prime(x)


def bohr_sommerfeld_zero(n):
    """Semiclassical seed for the n-th zero magnitude of Ai."""
    n = np.asarray(n)
    return (3.0 * np.pi * (4.0 * n - 1.0) / 8.0) ** (2.0 / 3.0)


def airy_zero(n):
    """Magnitude of the n-th zero of Ai on the negative axis (n >= 1).

    Newton iteration on Ai(-lam), clamped to a bracket around the
    Bohr-Sommerfeld seed; converges when |Ai| <= 1e-12 or the step
    falls below 1e-14 relative.
    """
    if n != int(n) or n < 1:
        raise ValueError("airy_zero: level index must be a positive integer")
    n = int(n)
    seed = float(bohr_sommerfeld_zero(n))
    if seed > DOMAIN_LIMIT - 1.0:
        raise ValueError("airy_zero: level index beyond evaluation domain")
    # bracket half-width: well inside the ~pi/sqrt(lam) spacing to the neighbours
    delta = min(0.25, 1.2 / np.sqrt(seed))
    lo, hi = seed - delta, seed + delta
    lam = seed
    for _ in range(60):
        f, fp = _backend.ai_and_prime(-lam)
        if abs(f) <= 1e-12:
            break
        step = f / fp  # d/d(lam) Ai(-lam) = -Ai'(-lam)
        new = lam + step
        if not lo < new < hi:
            new = 0.5 * (lo + hi)
        if f * _backend.ai(-lo) > 0.0:
            lo = lam
        else:
            hi = lam
        if abs(new - lam) <= 1e-14 * max(1.0, lam):
            lam = new
            break
        lam = new
    if abs(_backend.ai(-lam)) > 1e-10:
        raise ArithmeticError(f"airy_zero: zero {n} failed to converge")
    return lam


def airy_zeros(n_max):
    """First n_max zero magnitudes as an array (vectorized Newton)."""
    if n_max < 1:
        raise ValueError("airy_zeros: n_max must be >= 1")
    seeds = bohr_sommerfeld_zero(np.arange(1, n_max + 1, dtype=np.float64))
    if seeds[-1] > DOMAIN_LIMIT - 1.0:
        raise ValueError("airy_zeros: n_max beyond evaluation domain")
    delta = np.minimum(0.25, 1.2 / np.sqrt(seeds))
    lam = seeds.copy()
    for _ in range(30):
        f, fp = _backend.ai_and_prime(-lam)
        step = np.clip(f / fp, -0.2, 0.2)
        lam = np.clip(lam + step, seeds - delta, seeds + delta)
        if np.all(np.abs(f) <= 1e-13):
            break
    residual = np.abs(_backend.ai(-lam))
    if np.any(residual > 1e-10):
        worst = int(np.argmax(residual)) + 1
        raise ArithmeticError(f"airy_zeros: zero {worst} failed to converge")
    return lam
