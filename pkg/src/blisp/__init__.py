"""Hybrid backscatter/active radio node: link model, protocol, and simulator.

The package models a sensor node that owns two radios: a backscatter
tag that is extremely cheap per byte but falls off a cliff out of
interrogator range, and an active advertising radio that costs more per
byte and keeps working far longer. The node estimates the backscatter
channel from inventory-handshake acknowledgements and backs off to the
active radio when the channel turns bad.

Typical entry points: the analytic cost curves in :mod:`blisp.link_model`,
the experiment engine :func:`blisp.sim.run`, and the ``blisp`` command
line for CSV exports.
"""

from .controller import ControllerState, Decision, Policy, controller_step, feed_back
from .link_model import (
    BLE,
    UNBOUNDED,
    WISP,
    EnergyPerByte,
    NoCrossoverError,
    RadioModel,
    crossover_distance,
    decay,
    energy_floor,
    energy_per_byte,
    erfc,
    is_dominated,
    lower_envelope,
    operational_range,
    packet_success,
    rx_bytes,
    system_operational_range,
)
from .protocol import ChannelSample, FrameOutcome, ack_count, ble_advertise, inventory_round
from .report import FieldStat, RunMetrics, aggregate, emit_curve, emit_run_table
from .sim import (
    Message,
    MobilityTrace,
    PeriodRecord,
    Scenario,
    dedupe_unique,
    distance_at,
    make_message,
    run,
    run_repeats,
)

__version__ = "0.1.0"

__all__ = [
    "BLE",
    "ChannelSample",
    "ControllerState",
    "Decision",
    "EnergyPerByte",
    "FieldStat",
    "FrameOutcome",
    "Message",
    "MobilityTrace",
    "NoCrossoverError",
    "PeriodRecord",
    "Policy",
    "RadioModel",
    "RunMetrics",
    "Scenario",
    "UNBOUNDED",
    "WISP",
    "ack_count",
    "aggregate",
    "ble_advertise",
    "controller_step",
    "crossover_distance",
    "decay",
    "dedupe_unique",
    "distance_at",
    "emit_curve",
    "emit_run_table",
    "energy_floor",
    "energy_per_byte",
    "erfc",
    "feed_back",
    "inventory_round",
    "is_dominated",
    "lower_envelope",
    "make_message",
    "operational_range",
    "packet_success",
    "run",
    "run_repeats",
    "rx_bytes",
    "system_operational_range",
]
