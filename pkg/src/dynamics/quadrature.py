"""Adaptive quadrature over [0, inf) for smooth and oscillatory integrands.

Integrals with a cos(wt) or sin(wt) kernel are split at the first
HALF_PERIODS half-periods pi/t: the head is integrated with breakpoints at every
half-period, the tail with QUADPACK's Fourier-integral routine (QAWF).
"""
import logging
import math

import numpy as np
from scipy.integrate import quad

from src.constants import DEFAULT_RTOL
from src.errors import QuadratureError

logger = logging.getLogger(__name__)

HALF_PERIODS = 50
CUTOFF_FACTOR = 1e3
_ACCEPT_FACTOR = 100.0


def _checked_quad(f, lo, hi, rtol, epsabs, t=None, **kwargs):
    """Run scipy's quad and raise when the error estimate misses the tolerance badly."""
    out = quad(f, lo, hi, epsabs=epsabs, epsrel=rtol, full_output=1, **kwargs)
    value, abserr = out[0], out[1]
    if not np.isfinite(value):
        raise QuadratureError(f"non-finite integral over [{lo:g}, {hi:g}]", t=t)
    if len(out) > 3:
        allowed = max(_ACCEPT_FACTOR * rtol * abs(value), _ACCEPT_FACTOR * epsabs, 1e-300)
        if abserr > allowed:
            raise QuadratureError(f"integration over [{lo:g}, {hi:g}] failed: {out[3]}", t=t)
        logger.debug("quad on [%g, %g]: %s (abserr=%.2e accepted)", lo, hi, out[3], abserr)
    return value


def _inner_points(points, lo, hi):
    return sorted({p for p in points if lo < p < hi})


def integrate_panels(f, lo, hi, points=(), rtol=DEFAULT_RTOL, epsabs=0.0, t=None):
    """Integrate f over [lo, hi] (hi may be inf), splitting at the given points."""
    inner = _inner_points(points, lo, hi)
    if math.isinf(hi):
        if not inner:
            return _checked_quad(f, lo, hi, rtol, epsabs, t=t, limit=200)
        split = inner[-1]
        head = integrate_panels(f, lo, split, inner[:-1], rtol=rtol, epsabs=epsabs, t=t)
        return head + _checked_quad(f, split, hi, rtol, epsabs, t=t, limit=200)
    if inner:
        return _checked_quad(f, lo, hi, rtol, epsabs, t=t, points=inner,
                             limit=max(200, 4 * len(inner)))
    return _checked_quad(f, lo, hi, rtol, epsabs, t=t, limit=200)


def integrate_smooth(f, breakpoints=(), rtol=DEFAULT_RTOL, epsabs=0.0):
    """Integral of a non-oscillatory f over [0, inf), split at characteristic scales."""
    return integrate_panels(f, 0.0, math.inf, points=breakpoints, rtol=rtol, epsabs=epsabs)


def oscillation_edge(t, omega_max):
    """Upper edge of the head panel and its half-period breakpoints."""
    half = math.pi / t
    edge = min(HALF_PERIODS * half, omega_max)
    n = int(edge / half)
    return edge, [k * half for k in range(1, n + 1)]


def fourier_tail(f, lo, t, kind, scale, rtol=DEFAULT_RTOL):
    """Integral of f(w) cos(wt) or f(w) sin(wt) over [lo, inf) by QAWF.

    QAWF honours only an absolute tolerance, taken as rtol * scale.
    """
    if kind not in ("cos", "sin"):
        raise ValueError(f"kind must be 'cos' or 'sin', got {kind!r}")
    epsabs = max(rtol * abs(scale), 1e-300)
    out = quad(f, lo, math.inf, weight=kind, wvar=t, epsabs=epsabs, full_output=1, limlst=100)
    value, abserr = out[0], out[1]
    if not np.isfinite(value) or (len(out) > 3 and abserr > _ACCEPT_FACTOR * epsabs):
        message = out[3] if len(out) > 3 else "non-finite result"
        raise QuadratureError(f"oscillatory tail from {lo:g} rad/ps failed: {message}", t=t)
    return value


def breakpoints_for(rates):
    """Panel edges two decades either side of every characteristic rate."""
    pts = set()
    for r in rates:
        if r > 0:
            pts.update((1e-2 * r, 1e-1 * r, r, 1e1 * r, 1e2 * r))
    return tuple(sorted(pts))


def frequency_cutoff(omega_scale, t=0.0):
    """w_max = 1e3 * max(characteristic rate, 1/t)."""
    inv_t = 1.0 / t if t > 0 else 0.0
    return CUTOFF_FACTOR * max(omega_scale, inv_t)
