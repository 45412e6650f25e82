"""Discrete-period experiment engine.

A run walks a mobility trace in fixed periods. Each period the
controller picks the radios, the backscatter radio (if chosen) runs one
inventory round of ``frames_per_transmission`` handshakes at the
current distance, the active radio (if chosen) broadcasts the same
messages as advertising frames at its own fixed distance, and the
period's decisions, outcomes, delivered message ids and spent energy go
into a :class:`PeriodRecord`. Energy is charged per transmitted frame
whether or not it was received; that is exactly what makes the per-byte
cost diverge out of range.

Runs are deterministic: repeat ``i`` of a scenario with seed ``s`` uses
a generator seeded with ``splitmix64(s XOR i)``, so repeats are
independent and every trace is reproducible bit for bit.
"""

from __future__ import annotations

import random
import struct
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Literal, Mapping, Sequence

from . import report
from .controller import ControllerState, Decision, Policy, controller_step, feed_back
from .link_model import BLE, UNBOUNDED, WISP, EnergyPerByte, RadioModel, packet_success
from .protocol import ChannelSample, FrameOutcome, ack_count, ble_advertise, inventory_round

__all__ = [
    "MobilityTrace",
    "Scenario",
    "Message",
    "PeriodRecord",
    "distance_at",
    "dedupe_unique",
    "make_message",
    "run",
    "run_repeats",
    "splitmix64",
]

PADDING_BYTE = b"\xa5"
SENSOR_BYTES = 4


def splitmix64(x: int) -> int:
    """Fixed 64-bit mixing function for deriving per-repeat seeds."""
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


@dataclass(frozen=True)
class MobilityTrace:
    """Piecewise-constant node-to-interrogator distance over time.

    ``segments`` are (start_second, distance_m) pairs with strictly
    increasing starts, the first at 0; each segment holds until the
    next one (the last until the end of the run). The active radio's
    receiver sits at the separate fixed ``ble_distance_m``.
    """

    segments: tuple[tuple[float, float], ...]
    ble_distance_m: float

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("trace needs at least one segment")
        if self.segments[0][0] != 0:
            raise ValueError("first trace segment must start at t=0")
        starts = [s for s, _ in self.segments]
        if any(b <= a for a, b in zip(starts, starts[1:])):
            raise ValueError("trace segment starts must strictly increase")
        if any(d <= 0 for _, d in self.segments) or self.ble_distance_m <= 0:
            raise ValueError("trace distances must be positive")

    @classmethod
    def static(cls, distance_m: float, ble_distance_m: float) -> "MobilityTrace":
        return cls(((0.0, distance_m),), ble_distance_m)

    @classmethod
    def alternating(cls, d_in: float, d_out: float, interval_s: float,
                    duration_s: float, ble_distance_m: float) -> "MobilityTrace":
        """Hop between an in-range and an out-range spot every interval."""
        if interval_s <= 0 or duration_s <= 0:
            raise ValueError("interval and duration must be positive")
        segments = []
        t, spot = 0.0, d_in
        while t < duration_s:
            segments.append((t, spot))
            spot = d_out if spot == d_in else d_in
            t += interval_s
        return cls(tuple(segments), ble_distance_m)


def distance_at(trace: MobilityTrace, t: float) -> float:
    """Distance of the segment containing time t (seconds)."""
    if t < 0:
        raise ValueError(f"time {t} before trace start")
    idx = bisect_right([s for s, _ in trace.segments], t) - 1
    return trace.segments[idx][1]


@dataclass(frozen=True)
class Message:
    """One 12-byte sensor message (at the default frame payload).

    ``id`` is the timestamp-since-start in frame slots and is the
    deduplication key; the 4 sensor bytes carry it together with a
    synthetic temperature, the rest is constant padding.
    """

    id: int
    sensor_bytes: bytes
    padding_bytes: bytes

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValueError("message id must be >= 0")
        if len(self.sensor_bytes) != SENSOR_BYTES:
            raise ValueError("sensor field must be 4 bytes")
        if self.padding_bytes != PADDING_BYTE * len(self.padding_bytes):
            raise ValueError("padding must be constant")

    @property
    def payload(self) -> bytes:
        return self.sensor_bytes + self.padding_bytes


def make_message(msg_id: int, payload_bytes: int = 12) -> Message:
    """Build the message for one frame slot."""
    if payload_bytes < SENSOR_BYTES:
        raise ValueError(f"payload_bytes must be >= {SENSOR_BYTES}")
    temperature_centi = 2100 + (msg_id % 16) * 25  # synthetic reading
    sensor = struct.pack("<HH", msg_id & 0xFFFF, temperature_centi)
    return Message(msg_id, sensor, PADDING_BYTE * (payload_bytes - SENSOR_BYTES))


Mode = Literal["blisp", "wisp_only", "ble_only"]
MODES = ("blisp", "wisp_only", "ble_only")


@dataclass(frozen=True)
class Scenario:
    """Everything one experiment needs, seeds included."""

    trace: MobilityTrace
    wisp_model: RadioModel = WISP
    ble_model: RadioModel = BLE
    duration_s: int = 120
    period_s: int = 1
    frames_per_transmission: int = 10
    payload_bytes_per_frame: int = 12
    data_rate_bps: int = 120
    policy: Policy = field(default_factory=Policy)
    seed: int = 0
    repeats: int = 5
    mode: Mode = "blisp"

    def validate(self) -> None:
        if self.duration_s <= 0 or self.period_s <= 0:
            raise ValueError("duration_s and period_s must be positive")
        if self.duration_s % self.period_s != 0:
            raise ValueError("duration_s must be a multiple of period_s")
        if self.frames_per_transmission <= 0:
            raise ValueError("frames_per_transmission must be > 0")
        if self.payload_bytes_per_frame < SENSOR_BYTES:
            raise ValueError(f"payload_bytes_per_frame must be >= {SENSOR_BYTES}")
        rate = self.frames_per_transmission * self.payload_bytes_per_frame / self.period_s
        if rate != self.data_rate_bps:
            raise ValueError(
                f"frames_per_transmission * payload_bytes_per_frame / period_s "
                f"= {rate} B/s does not match data_rate_bps = {self.data_rate_bps}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        for _, d in self.trace.segments:
            if not d < self.wisp_model.max_distance:
                raise ValueError(
                    f"trace distance {d} outside {self.wisp_model.id} validity")
        if not self.trace.ble_distance_m < self.ble_model.max_distance:
            raise ValueError(
                f"ble_distance_m outside {self.ble_model.id} validity")

    @property
    def n_periods(self) -> int:
        return self.duration_s // self.period_s


@dataclass(frozen=True)
class PeriodRecord:
    """Event log entry of one period.

    ``ble_delivered`` holds one flag per advertising frame (empty when
    the active radio stayed silent). With the default zero idle power a
    radio's energy is positive exactly when it transmitted.
    """

    t: int
    distance_m: float
    decision: Decision
    outcomes: tuple[FrameOutcome, ...]
    ble_delivered: tuple[bool, ...]
    wisp_energy_uJ: float
    ble_energy_uJ: float
    message_ids_delivered: Mapping[str, tuple[int, ...]]


def dedupe_unique(records: Sequence[PeriodRecord],
                  payload_bytes_per_frame: int = 12) -> tuple[int, int]:
    """Distinct delivered message ids over all radios, and their bytes.

    Messages carried by both radios around switching moments count
    once.
    """
    seen: set[int] = set()
    for rec in records:
        for ids in rec.message_ids_delivered.values():
            seen.update(ids)
    return len(seen), len(seen) * payload_bytes_per_frame


def _forced_decision(mode: Mode) -> Decision:
    if mode == "wisp_only":
        return Decision(wisp_tx=True, ble_tx=False)
    return Decision(wisp_tx=False, ble_tx=True)


def run(scenario: Scenario, repeat: int = 0,
        ) -> tuple[list[PeriodRecord], report.RunMetrics]:
    """Execute one run and return its per-period log and metrics."""
    scenario.validate()
    if repeat < 0:
        raise ValueError("repeat must be >= 0")
    rng = random.Random(splitmix64(scenario.seed ^ repeat))
    wisp, ble = scenario.wisp_model, scenario.ble_model
    frames = scenario.frames_per_transmission
    p_ble = packet_success(ble, scenario.trace.ble_distance_m)
    state = ControllerState()
    records: list[PeriodRecord] = []

    for t in range(scenario.n_periods):
        d = distance_at(scenario.trace, t * scenario.period_s)
        if scenario.mode == "blisp":
            decision, state = controller_step(state, scenario.policy, rng)
        else:
            decision = _forced_decision(scenario.mode)
        ids = range(t * frames, (t + 1) * frames)

        outcomes: tuple[FrameOutcome, ...] = ()
        wisp_ids: tuple[int, ...] = ()
        planned = acked = 0
        if decision.wisp_tx:
            ch = ChannelSample.symmetric(packet_success(wisp, d))
            outcomes = tuple(inventory_round(ch, frames, rng))
            planned, acked = frames, ack_count(outcomes)
            wisp_ids = tuple(i for i, o in zip(ids, outcomes) if o.epc_delivered)
            wisp_energy = frames * wisp.energy_per_frame
        else:
            wisp_energy = wisp.idle_power_uw * scenario.period_s
        if scenario.mode == "blisp":
            state = feed_back(state, planned, acked,
                              record_empty=scenario.policy.literal_alg1)

        ble_flags: tuple[bool, ...] = ()
        ble_ids: tuple[int, ...] = ()
        if decision.ble_tx:
            ble_flags = tuple(ble_advertise(p_ble, rng) for _ in range(frames))
            ble_ids = tuple(i for i, ok in zip(ids, ble_flags) if ok)
            ble_energy = frames * ble.energy_per_frame
        else:
            ble_energy = ble.idle_power_uw * scenario.period_s

        records.append(PeriodRecord(
            t=t, distance_m=d, decision=decision, outcomes=outcomes,
            ble_delivered=ble_flags, wisp_energy_uJ=wisp_energy,
            ble_energy_uJ=ble_energy,
            message_ids_delivered={wisp.id: wisp_ids, ble.id: ble_ids},
        ))

    return records, _collect_metrics(scenario, records)


def run_repeats(scenario: Scenario) -> list[report.RunMetrics]:
    """Metrics of ``scenario.repeats`` independent repeats."""
    return [run(scenario, repeat)[1] for repeat in range(scenario.repeats)]


def _collect_metrics(scenario: Scenario,
                     records: Sequence[PeriodRecord]) -> report.RunMetrics:
    unique_messages, unique_bytes = dedupe_unique(
        records, scenario.payload_bytes_per_frame)
    wisp_id, ble_id = scenario.wisp_model.id, scenario.ble_model.id
    raw = {
        wisp_id: sum(len(r.message_ids_delivered[wisp_id]) for r in records),
        ble_id: sum(len(r.message_ids_delivered[ble_id]) for r in records),
    }
    energy = {
        wisp_id: sum(r.wisp_energy_uJ for r in records),
        ble_id: sum(r.ble_energy_uJ for r in records),
    }
    total = energy[wisp_id] + energy[ble_id]
    per_byte = EnergyPerByte(total / unique_bytes) if unique_bytes > 0 else UNBOUNDED
    return report.RunMetrics(
        unique_messages=unique_messages,
        unique_bytes=unique_bytes,
        raw_messages_per_radio=raw,
        energy_uJ_per_radio=energy,
        energy_per_unique_byte=per_byte,
        goodput_Bps=unique_bytes / scenario.duration_s,
    )
