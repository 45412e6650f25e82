"""Inventory-handshake and advertising primitives.

One backscatter frame is a three-stage exchange: the tag answers the
interrogator's query with a 16-bit random number, the interrogator
echoes it back in an acknowledgement, and the tag finally carries the
data payload in its identifier reply. A stage can only succeed if every
stage before it did, which is what makes the acknowledgement count a
usable estimate of channel quality in both directions. The active radio
simply broadcasts fire-and-forget advertising frames.

All randomness comes from a caller-owned ``random.Random``. One "draw"
is one call to ``Random.random()``, and every operation consumes a
fixed number of draws regardless of outcomes, so traces replay
identically from a seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "FrameOutcome",
    "ChannelSample",
    "inventory_round",
    "ack_count",
    "ble_advertise",
]


@dataclass(frozen=True)
class FrameOutcome:
    """What happened to one backscatter frame.

    The three flags form a monotone ladder: the payload can only arrive
    after the acknowledgement, which can only arrive after the tag's
    random number did.
    """

    rn16_delivered: bool
    ack_received: bool
    epc_delivered: bool

    def __post_init__(self) -> None:
        if self.ack_received and not self.rn16_delivered:
            raise ValueError("ack without delivered RN16")
        if self.epc_delivered and not self.ack_received:
            raise ValueError("payload delivery without ack")


@dataclass(frozen=True)
class ChannelSample:
    """Per-frame success probabilities of the two link directions."""

    p_up: float
    p_down: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_up <= 1.0:
            raise ValueError(f"p_up {self.p_up} outside [0, 1]")
        if not 0.0 <= self.p_down <= 1.0:
            raise ValueError(f"p_down {self.p_down} outside [0, 1]")

    @classmethod
    def symmetric(cls, p: float) -> "ChannelSample":
        """Both directions attenuated alike (the default assumption)."""
        return cls(p_up=p, p_down=p)


def inventory_round(ch: ChannelSample, frames: int,
                    rng: random.Random) -> list[FrameOutcome]:
    """Run ``frames`` handshakes and report each frame's fate.

    Per frame: the random number goes up with probability ``p_up``, the
    acknowledgement comes down with ``p_down`` given that, and the
    payload goes up with ``p_up`` given the ack. Exactly three draws are
    consumed per frame, unconditionally.
    """
    if frames < 0:
        raise ValueError("frames must be >= 0")
    outcomes = []
    for _ in range(frames):
        u_rn16 = rng.random()
        u_ack = rng.random()
        u_epc = rng.random()
        rn16 = u_rn16 < ch.p_up
        ack = rn16 and u_ack < ch.p_down
        epc = ack and u_epc < ch.p_up
        outcomes.append(FrameOutcome(rn16, ack, epc))
    return outcomes


def ack_count(outcomes: Sequence[FrameOutcome]) -> int:
    """Number of frames whose acknowledgement reached the tag."""
    return sum(1 for o in outcomes if o.ack_received)


def ble_advertise(ch_ble: float, rng: random.Random) -> bool:
    """Send one advertising frame; True if it was received.

    Consumes exactly one draw.
    """
    if not 0.0 <= ch_ble <= 1.0:
        raise ValueError(f"ch_ble {ch_ble} outside [0, 1]")
    return rng.random() < ch_ble
