"""Multi-exponential fits of normalised solvation correlation data.

C(t) = sum_j A_j exp(-t / tau_j), with A on the simplex (softmax of n - 1 free
logits, the first fixed at 0) and tau_j = exp(v_j). The objective is minimised by
Levenberg-Marquardt from several log-spaced starting points.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import least_squares
from scipy.special import softmax

from src.errors import DatasetFormatError, InvalidParameterError

logger = logging.getLogger(__name__)

MAX_COMPONENTS = 4
MIN_STARTS = 8
GRADIENT_RTOL = 1e-6
STAGNATED = (1, 2, 3, 4)
DEGENERATE_TAU = 0.01
UNBOUNDED_TAU = 1e3
LOG_TAU_LIMIT = 50.0

DEGENERATE = "degenerate"
TAU_OUTSIDE_WINDOW = "tau_exceeds_window"
NOT_DECAYING = "not_decaying"


@dataclass(frozen=True)
class CorrelationSamples:
    t: np.ndarray
    c: np.ndarray
    sigma: Optional[np.ndarray] = None

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        c = np.asarray(self.c, dtype=float)
        if t.ndim != 1 or t.shape != c.shape:
            raise InvalidParameterError("t and C must be 1-D arrays of equal length")
        if t.size and t[0] < 0:
            raise InvalidParameterError(f"first sample time must be >= 0, got {t[0]} ps")
        if np.any(np.diff(t) <= 0):
            raise InvalidParameterError("sample times must be strictly increasing")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "c", c)
        if self.sigma is not None:
            sigma = np.asarray(self.sigma, dtype=float)
            if sigma.shape != t.shape or np.any(sigma <= 0):
                raise InvalidParameterError("sigma must be positive and match t")
            object.__setattr__(self, "sigma", sigma)

    def __len__(self):
        return int(self.t.size)

    @property
    def weights(self):
        return np.ones_like(self.t) if self.sigma is None else 1.0 / self.sigma


@dataclass(frozen=True)
class ExponentialFit:
    components: Tuple[Tuple[float, float], ...]
    residual_rms: float
    converged: bool
    flags: Tuple[str, ...] = field(default=())
    n_starts: int = 0

    @property
    def amplitudes(self):
        return np.array([a for a, _ in self.components])

    @property
    def taus(self):
        return np.array([tau for _, tau in self.components])

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        return sum(a * np.exp(-t / tau) for a, tau in self.components) + 0.0 * t


def load_correlation_file(path):
    """Read (t_ps, C[, sigma]) columns; '#' starts a comment, commas or whitespace separate."""
    frame = pd.read_csv(path, sep=r"[,\s]+", engine="python", comment="#", header=None)
    frame = frame.dropna(axis=1, how="all")
    frame.columns = range(frame.shape[1])
    if frame.shape[1] not in (2, 3):
        raise DatasetFormatError(path, 1, "columns", f"expected 2 or 3 columns, found {frame.shape[1]}")
    for column in frame.columns:
        numeric = pd.to_numeric(frame[column], errors="coerce")
        if numeric.isna().any():
            row = int(numeric.isna().to_numpy().nonzero()[0][0])
            raise DatasetFormatError(path, row + 1, ("t_ps", "C", "sigma")[column], "not a number")
        frame[column] = numeric
    sigma = frame.iloc[:, 2].to_numpy() if frame.shape[1] == 3 else None
    try:
        return CorrelationSamples(frame.iloc[:, 0].to_numpy(), frame.iloc[:, 1].to_numpy(), sigma)
    except InvalidParameterError as e:
        raise DatasetFormatError(path, 1, "sigma" if "sigma" in str(e) else "t_ps", str(e)) from e


def _unpack(x, n):
    logits = np.concatenate(([0.0], x[: n - 1]))
    return softmax(logits), np.exp(np.clip(x[n - 1:], -LOG_TAU_LIMIT, LOG_TAU_LIMIT))


def _model(x, n, t):
    amplitudes, taus = _unpack(x, n)
    return np.exp(-np.outer(t, 1.0 / taus)) @ amplitudes


def _seeds(data, n, n_starts, rng):
    """Log-spaced tau seeds across the sampled window, jittered per start."""
    positive = data.t[data.t > 0]
    lo = positive[0] if positive.size else 1.0
    hi = max(data.t[-1], lo * 10.0)
    grid = np.geomspace(lo, hi, n + 2)[1:-1]
    seeds = []
    for k in range(n_starts):
        if k == 0:
            taus = grid
        else:
            taus = np.sort(np.exp(rng.uniform(np.log(lo), np.log(hi), n)))
        seeds.append(np.concatenate((np.zeros(n - 1), np.log(taus))))
    return seeds


def quality_flags(data, taus):
    """Warnings about the data or about sorted fitted times that a small residual does not rule out."""
    flags = []
    if not data.c[-1] < data.c[0]:
        flags.append(NOT_DECAYING)
        logger.warning("correlation data do not decay (C[0]=%g, C[-1]=%g)", data.c[0], data.c[-1])
    taus = np.asarray(taus, dtype=float)
    if taus.size > 1 and np.any(taus[1:] / taus[:-1] < 1.0 + DEGENERATE_TAU):
        flags.append(DEGENERATE)
        logger.warning("fit is degenerate: relaxation times within %g%% of each other", 100 * DEGENERATE_TAU)
    if taus[-1] > UNBOUNDED_TAU * data.t[-1]:
        flags.append(TAU_OUTSIDE_WINDOW)
        logger.warning("fitted tau %.3g ps is far outside the sampled window", taus[-1])
    return tuple(flags)


def fit_multiexponential(data, n, n_starts=MIN_STARTS, seed=0):
    """Best of `n_starts` Levenberg-Marquardt fits of an n-term decay to `data`."""
    if not 1 <= n <= MAX_COMPONENTS:
        raise InvalidParameterError(f"number of components must be in 1..{MAX_COMPONENTS}, got {n}")
    if len(data) < 2 * n + 1:
        raise InvalidParameterError(f"{n} components need at least {2 * n + 1} samples, got {len(data)}")
    n_starts = max(int(n_starts), MIN_STARTS)
    rng = np.random.default_rng(seed)
    weights = data.weights

    def residuals(x):
        return (_model(x, n, data.t) - data.c) * weights

    best = None
    for x0 in _seeds(data, n, n_starts, rng):
        try:
            result = least_squares(residuals, x0, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                   max_nfev=2000 * (2 * n))
        except (ValueError, FloatingPointError) as e:
            logger.debug("start %s failed: %s", x0, e)
            continue
        if best is None or result.cost < best.cost:
            best = result
    if best is None:
        raise InvalidParameterError("every multi-start fit failed")

    amplitudes, taus = _unpack(best.x, n)
    order = np.argsort(taus)
    amplitudes = amplitudes[order] / amplitudes.sum()
    taus = taus[order]
    # LM stops on ftol/xtol once steps stagnate; the gradient is then judged against |J| |r|
    gradient_norm = float(np.linalg.norm(best.jac.T @ best.fun))
    gradient_scale = max(1.0, float(np.linalg.norm(best.jac)) * float(np.linalg.norm(best.fun)))
    converged = bool(best.status in STAGNATED and gradient_norm <= GRADIENT_RTOL * gradient_scale)

    flags = quality_flags(data, taus)
    if TAU_OUTSIDE_WINDOW in flags:
        converged = False

    rms = float(np.sqrt(np.mean(best.fun ** 2)))
    logger.info("fit n=%d: rms=%.3e, gradient=%.3e, converged=%s", n, rms, gradient_norm, converged)
    return ExponentialFit(tuple((float(a), float(tau)) for a, tau in zip(amplitudes, taus)), rms, converged,
                          flags, n_starts)
