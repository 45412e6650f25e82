"""Per-period radio selection from acknowledgement feedback.

At the start of each period the node decides which radios transmit,
using nothing but last period's handshake bookkeeping: the backscatter
channel counts as good exactly when every planned frame was
acknowledged. While the verdict is bad the active radio carries the
data, and the node re-probes the backscatter channel after a uniformly
random backoff of at most ``max_backoff`` periods. A maximum of zero is
the naive policy: probe every period, maximum responsiveness, maximum
probing overhead.

Silent (backed-off) periods plan no frames, so by default the verdict
is frozen until the next probe rather than re-derived from an empty
period. ``Policy.literal_alg1`` switches to the literal reading where
an empty period's 0-of-0 count renders the verdict vacuously good,
which collapses every backoff to at most one silent slot; it exists for
comparison, with no claim about matching any firmware.

One controller instance drives one node; instances are independent.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace

__all__ = [
    "Policy",
    "ControllerState",
    "Decision",
    "controller_step",
    "feed_back",
]


@dataclass(frozen=True)
class Policy:
    """Backoff policy; ``max_backoff == 0`` is the naive variant."""

    max_backoff: int = 0
    literal_alg1: bool = False

    def __post_init__(self) -> None:
        if self.max_backoff < 0:
            raise ValueError("max_backoff must be >= 0")


@dataclass(frozen=True)
class Decision:
    """Which radios transmit this period; never both silent."""

    wisp_tx: bool
    ble_tx: bool

    def __post_init__(self) -> None:
        if not (self.wisp_tx or self.ble_tx):
            raise ValueError("a period must use at least one radio")


@dataclass(frozen=True)
class ControllerState:
    """Controller bookkeeping carried from period to period.

    The initial state is optimistic (channel good, no backoff) so the
    first period always probes the low-power radio.
    """

    backoff: int = 0
    wisp_ok: bool = True
    last_planned: int = 0
    last_acked: int = 0

    def __post_init__(self) -> None:
        if self.backoff < 0:
            raise ValueError("backoff must be >= 0")
        if self.last_acked > self.last_planned:
            raise ValueError("acked count exceeds planned count")


def _uniform_backoff(rng: random.Random, max_backoff: int) -> int:
    # One draw, always; randint is avoided because its rejection
    # sampling consumes a variable amount of the generator.
    return min(int(rng.random() * (max_backoff + 1)), max_backoff)


def controller_step(state: ControllerState, policy: Policy,
                    rng: random.Random) -> tuple[Decision, ControllerState]:
    """Advance one period: decide transmissions, update the backoff.

    The verdict is re-evaluated from the recorded counts when the last
    period planned frames (always, under ``literal_alg1``). A good
    verdict clears the backoff and keeps the active radio off. With a
    bad verdict, a probing period draws a fresh backoff (exactly one
    draw); a silent period just shifts the counter down.
    """
    wisp_ok = state.wisp_ok
    if state.last_planned > 0 or policy.literal_alg1:
        wisp_ok = state.last_acked == state.last_planned

    backoff = state.backoff
    if wisp_ok:
        backoff = 0
    if backoff == 0:
        wisp_tx = True
        if not wisp_ok:
            backoff = _uniform_backoff(rng, policy.max_backoff)
    else:
        wisp_tx = False
        backoff -= 1

    decision = Decision(wisp_tx=wisp_tx, ble_tx=not wisp_ok)
    return decision, replace(state, backoff=backoff, wisp_ok=wisp_ok)


def feed_back(state: ControllerState, planned: int, acked: int,
              record_empty: bool = False) -> ControllerState:
    """Record the finished period's planned and acknowledged frame counts.

    A period that planned nothing leaves the counts untouched (the
    freeze rule) unless ``record_empty`` is set for the literal
    variant. Feeding more acks than planned frames is a caller bug.
    """
    if planned < 0 or acked < 0:
        raise ValueError("counts must be >= 0")
    if acked > planned:
        raise ValueError(f"acked {acked} exceeds planned {planned}")
    if planned == 0 and not record_empty:
        return state
    return replace(state, last_planned=planned, last_acked=acked)
