"""Analytic link and energy model for backscatter and active radios.

Each radio has a signal-quality decay value ``f = (d / a) ** -r`` at
distance ``d``. A frame of ``payload_bits + overhead_bits`` bits is
received only if every bit survives, with independent per-bit error
probability ``erfc(f)``, so the expected payload fraction received per
transmit attempt is

    rx_bytes(d) = payload_bits / (payload_bits + overhead_bits)
                  * (1 - erfc(f)) ** (payload_bits + overhead_bits)

and the cost of a received byte-fraction is
``energy_per_frame / rx_bytes(d)``. Past a radio-specific distance the
frame success collapses (the brick-wall effect) and the per-byte cost
grows without bound; :class:`EnergyPerByte` carries that as an explicit
unbounded state instead of letting a float infinity leak into
arithmetic.

All functions here are pure and safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering
from typing import Sequence

__all__ = [
    "RadioModel",
    "EnergyPerByte",
    "UNBOUNDED",
    "WISP",
    "BLE",
    "NoCrossoverError",
    "erfc",
    "decay",
    "packet_success",
    "rx_bytes",
    "energy_per_byte",
    "energy_floor",
    "operational_range",
    "system_operational_range",
    "is_dominated",
    "lower_envelope",
    "crossover_distance",
]

# Bisection tolerances: far below any physical meaning, cheap to compute.
RANGE_REL_TOL = 1e-6
CROSSOVER_ABS_TOL_M = 1e-4
_CROSSOVER_SCAN_POINTS = 1024


@dataclass(frozen=True)
class RadioModel:
    """Link and energy parameters of one radio.

    ``a`` is the radio-intrinsic correction value of the decay law in
    metres; ``r`` is the dimensionless loss coefficient (4 for
    backscatter, 2 for active transmission). Energies are in
    microjoules. The model is valid on distances ``0 < d <
    max_distance``. ``idle_power_uw`` is an optional constant drain
    charged for periods in which the radio does not transmit; the
    default of zero keeps the accounting purely per-frame.
    """

    id: str
    a: float
    r: float
    payload_bits: int
    overhead_bits: int
    energy_per_frame: float
    max_distance: float = 200.0
    idle_power_uw: float = 0.0

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("radio id must be non-empty")
        if not self.a > 0:
            raise ValueError(f"{self.id}: a must be > 0")
        if not self.r > 0:
            raise ValueError(f"{self.id}: r must be > 0")
        if self.payload_bits <= 0:
            raise ValueError(f"{self.id}: payload_bits must be > 0")
        if self.overhead_bits < 0:
            raise ValueError(f"{self.id}: overhead_bits must be >= 0")
        if not self.energy_per_frame > 0:
            raise ValueError(f"{self.id}: energy_per_frame must be > 0")
        if not self.max_distance > 0:
            raise ValueError(f"{self.id}: max_distance must be > 0")
        if self.idle_power_uw < 0:
            raise ValueError(f"{self.id}: idle_power_uw must be >= 0")

    @property
    def frame_bits(self) -> int:
        return self.payload_bits + self.overhead_bits

    @property
    def payload_fraction(self) -> float:
        return self.payload_bits / self.frame_bits


#: Default backscatter radio (fitted curve of a WISP-class tag).
WISP = RadioModel(id="wisp", a=30.0, r=4.0, payload_bits=96,
                  overhead_bits=320, energy_per_frame=(96 + 320) * 5.0)

#: Default active radio (fitted curve of a BLE advertising module).
BLE = RadioModel(id="ble", a=87.0, r=2.0, payload_bits=96,
                 overhead_bits=320, energy_per_frame=(96 + 320) * 21.0)


@total_ordering
@dataclass(frozen=True)
class EnergyPerByte:
    """Microjoules per received byte-fraction, or the unbounded state.

    ``value`` is a finite positive float, or ``None`` for the unbounded
    state reached once no frames get through at all. Ordering treats
    unbounded as greater than every finite value and equal to itself.
    """

    value: float | None

    def __post_init__(self) -> None:
        if self.value is not None:
            if math.isnan(self.value) or math.isinf(self.value):
                raise ValueError("energy per byte must be finite or unbounded")
            if self.value <= 0:
                raise ValueError("energy per byte must be positive")

    @property
    def is_unbounded(self) -> bool:
        return self.value is None

    def __lt__(self, other: "EnergyPerByte") -> bool:
        if not isinstance(other, EnergyPerByte):
            return NotImplemented
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __repr__(self) -> str:
        if self.value is None:
            return "EnergyPerByte(unbounded)"
        return f"EnergyPerByte({self.value!r})"


#: The distinguished unbounded energy-per-byte state.
UNBOUNDED = EnergyPerByte(None)


class NoCrossoverError(ValueError):
    """Raised when two radio cost curves never cross on the scan."""


def erfc(x: float) -> float:
    """Complementary error function.

    Delegates to :func:`math.erfc`; decreasing, ``erfc(0) == 1``, and
    tends to zero (underflowing for x beyond roughly 27).
    """
    return math.erfc(x)


def _check_distance(model: RadioModel, d: float) -> None:
    if not d > 0 or not d < model.max_distance:
        raise ValueError(
            f"{model.id}: distance {d} outside validity interval "
            f"(0, {model.max_distance})")


def decay(model: RadioModel, d: float) -> float:
    """Signal-quality decay value ``(d / a) ** -r`` at distance d.

    Strictly decreasing in d and always positive. Raises ValueError for
    distances outside ``(0, max_distance)``.
    """
    _check_distance(model, d)
    return (d / model.a) ** -model.r


def packet_success(model: RadioModel, d: float) -> float:
    """Probability that one whole frame survives at distance d.

    Every one of the frame's bits must survive its independent
    ``erfc(decay)`` error. The result may underflow to exactly 0.0 for
    large d; that is a legitimate value, not an error.
    """
    per_bit_ok = 1.0 - erfc(decay(model, d))
    return per_bit_ok ** model.frame_bits


def rx_bytes(model: RadioModel, d: float) -> float:
    """Expected payload fraction received per transmit attempt."""
    return model.payload_fraction * packet_success(model, d)


def energy_per_byte(model: RadioModel, d: float) -> EnergyPerByte:
    """Energy cost of one received byte-fraction at distance d.

    Finite while any frames get through; unbounded once frame success
    underflows to zero (or the quotient overflows the float range,
    which happens a whisker earlier). Monotonically non-decreasing in
    d.
    """
    received = rx_bytes(model, d)
    if received == 0.0:
        return UNBOUNDED
    cost = model.energy_per_frame / received
    if math.isinf(cost):
        return UNBOUNDED
    return EnergyPerByte(cost)


def energy_floor(model: RadioModel) -> float:
    """Zero-distance cost floor: energy_per_frame / payload_fraction."""
    return model.energy_per_frame / model.payload_fraction


def operational_range(model: RadioModel, e_max: float) -> float:
    """Largest distance at which the per-byte cost stays within e_max.

    Well defined by monotonicity; found by bisection to a relative
    tolerance of 1e-6. ``e_max`` must exceed the zero-distance floor.
    """
    if not e_max > energy_floor(model):
        raise ValueError(
            f"{model.id}: e_max {e_max} does not exceed the zero-distance "
            f"floor {energy_floor(model)}")
    budget = EnergyPerByte(e_max)

    def within(d: float) -> bool:
        return energy_per_byte(model, d) <= budget

    lo = model.max_distance * 1e-12
    hi = model.max_distance * (1.0 - 1e-12)
    if within(hi):
        return hi
    while hi - lo > RANGE_REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if within(mid):
            lo = mid
        else:
            hi = mid
    return lo


def system_operational_range(models: Sequence[RadioModel], e_max: float) -> float:
    """Operational range of a multi-radio node: that of its longest radio.

    Radios whose cost floor already exceeds ``e_max`` contribute nothing;
    at least one radio must qualify.
    """
    ranges = [operational_range(m, e_max) for m in models
              if e_max > energy_floor(m)]
    if not ranges:
        raise ValueError("e_max below the cost floor of every radio")
    return max(ranges)


def is_dominated(candidate: RadioModel, others: Sequence[RadioModel],
                 grid: Sequence[float]) -> bool:
    """True iff some other radio is strictly cheaper at every grid distance.

    A dominated radio can be dropped from a hybrid design without losing
    anything. Unbounded compares greater than any finite cost and equal
    to itself, so nobody dominates at distances where all radios are
    unbounded.
    """
    if not grid:
        raise ValueError("grid must be non-empty")
    for d in grid:
        mine = energy_per_byte(candidate, d)
        if not any(energy_per_byte(other, d) < mine for other in others):
            return False
    return True


def lower_envelope(models: Sequence[RadioModel], grid: Sequence[float],
                   ) -> list[tuple[float, str, EnergyPerByte]]:
    """Cheapest radio and its cost at every grid distance.

    Ties go to the earliest model in the input list, which makes the
    selection deterministic.
    """
    if not models:
        raise ValueError("models must be non-empty")
    if not grid:
        raise ValueError("grid must be non-empty")
    rows = []
    for d in grid:
        best_model = models[0]
        best_cost = energy_per_byte(best_model, d)
        for m in models[1:]:
            cost = energy_per_byte(m, d)
            if cost < best_cost:
                best_model, best_cost = m, cost
        rows.append((d, best_model.id, best_cost))
    return rows


def _cost_sign(m1: RadioModel, m2: RadioModel, d: float) -> int:
    e1 = energy_per_byte(m1, d)
    e2 = energy_per_byte(m2, d)
    if e1 < e2:
        return -1
    if e2 < e1:
        return 1
    return 0


def crossover_distance(m1: RadioModel, m2: RadioModel) -> float:
    """Distance at which the two cost curves swap order.

    Requires m1 cheaper at short range and m2 cheaper somewhere before
    the shared validity bound, with exactly one order change on a
    1024-point scan; refined by bisection to 1e-4 m. Raises
    :class:`NoCrossoverError` otherwise (identical curves, or one radio
    pointwise cheaper wherever either cost is finite).
    """
    limit = min(m1.max_distance, m2.max_distance)
    step = limit / (_CROSSOVER_SCAN_POINTS + 1)
    signs = []  # (distance, sign) at scan points where the order is strict
    for k in range(1, _CROSSOVER_SCAN_POINTS + 1):
        d = k * step
        s = _cost_sign(m1, m2, d)
        if s != 0:
            signs.append((d, s))
    changes = [i for i in range(len(signs) - 1)
               if signs[i][1] != signs[i + 1][1]]
    if not changes:
        raise NoCrossoverError(
            f"no crossover between {m1.id!r} and {m2.id!r} on the scan")
    if len(changes) > 1:
        raise NoCrossoverError(
            f"cost curves of {m1.id!r} and {m2.id!r} cross more than once")
    i = changes[0]
    if signs[i][1] != -1:
        raise NoCrossoverError(
            f"{m1.id!r} is not the cheaper radio at short range")
    lo, hi = signs[i][0], signs[i + 1][0]
    while hi - lo > CROSSOVER_ABS_TOL_M:
        mid = 0.5 * (lo + hi)
        if _cost_sign(m1, m2, mid) <= 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
