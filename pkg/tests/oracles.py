"""Independent reference implementations used only by the tests.

Nothing here may call into the library's computation paths: the error
function is built from its power series and a continued fraction, frame
success is estimated by sampling per-bit errors, and the backoff
schedule is re-derived from a straight renewal-process walk.
"""

from __future__ import annotations

import math
import random

import numpy as np

SQRT_PI = math.sqrt(math.pi)
_SERIES_LIMIT = 2.5


def erfc_reference(x: float) -> float:
    """erfc from first principles: power series, then continued fraction.

    The alternating Maclaurin series of erf loses too much to
    cancellation past roughly x = 3, where the classical continued
    fraction of erfc converges quickly, so the two regimes are split at
    2.5.
    """
    if x < 0:
        return 2.0 - erfc_reference(-x)
    if x <= _SERIES_LIMIT:
        return 1.0 - _erf_series(x)
    return _erfc_continued_fraction(x)


def _erf_series(x: float) -> float:
    # erf(x) = 2/sqrt(pi) * sum_n (-1)^n x^(2n+1) / (n! (2n+1))
    term = x
    total = x
    n = 0
    while True:
        n += 1
        term *= -x * x / n
        contribution = term / (2 * n + 1)
        total += contribution
        if abs(contribution) < 1e-20:
            return 2.0 / SQRT_PI * total


def _erfc_continued_fraction(x: float, depth: int = 200) -> float:
    # erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    tail = 0.0
    for n in range(depth, 0, -1):
        tail = (n / 2.0) / (x + tail)
    return math.exp(-x * x) / SQRT_PI / (x + tail)


def mc_packet_success(frame_bits: int, bit_error: float, n_frames: int,
                      seed: int) -> float:
    """Monte Carlo frame success rate from per-bit error sampling.

    Each frame flips ``frame_bits`` independent bits with probability
    ``bit_error`` and survives only when the sampled flip count is
    zero. Drawing the count per frame is distribution-identical to
    drawing the bits one by one and keeps a million frames affordable.
    """
    rng = np.random.default_rng(seed)
    flips = rng.binomial(frame_bits, bit_error, size=n_frames)
    return float(np.count_nonzero(flips == 0) / n_frames)


def binomial_sigma(p: float, n: int) -> float:
    """Standard error of a frequency estimate over n trials."""
    return math.sqrt(p * (1.0 - p) / n)


def renewal_probe_fraction(max_backoff: int, n_periods: int,
                           rng: random.Random) -> float:
    """Probe-period fraction of the backoff schedule, re-derived directly.

    Under permanent channel failure the controller's life is a renewal
    process: one probing period, then a uniform 0..max_backoff silent
    stretch, repeat. This walks that process without touching the
    controller.
    """
    probes = 0
    t = 0
    while t < n_periods:
        probes += 1
        t += 1 + rng.randint(0, max_backoff)
    return probes / n_periods


def renewal_probe_sigma(max_backoff: int, n_periods: int) -> float:
    """CLT standard error of the probe fraction over n periods."""
    mean_cycle = 1.0 + max_backoff / 2.0
    var_cycle = ((max_backoff + 1) ** 2 - 1) / 12.0
    return math.sqrt(var_cycle / (n_periods * mean_cycle ** 3))


def expected_probe_fraction(max_backoff: int) -> float:
    return 1.0 / (1.0 + max_backoff / 2.0)
