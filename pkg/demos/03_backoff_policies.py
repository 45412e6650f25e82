"""How the backoff window trades probing cost against responsiveness.

Against a channel that never recovers, the controller probes the
backscatter radio once per backoff cycle; the expected probe fraction
is 1 / (1 + x/2) for a window of x. Against a channel that recovers at
a random period, a smaller window notices sooner.

Run:  python demos/03_backoff_policies.py
"""

import random

from blisp import ControllerState, Policy, controller_step, feed_back

PERIODS = 20_000


def probe_fraction(x: int, seed: int) -> float:
    rng = random.Random(seed)
    state = ControllerState()
    probes = 0
    for _ in range(PERIODS):
        decision, state = controller_step(state, Policy(x), rng)
        if decision.wisp_tx:
            probes += 1
            state = feed_back(state, planned=10, acked=0)  # never succeeds
    return probes / PERIODS


def recovery_lag(x: int, recover_at: int, seed: int) -> int:
    """Periods until the controller re-adopts a recovered channel."""
    rng = random.Random(seed)
    state = ControllerState()
    for t in range(10_000):
        decision, state = controller_step(state, Policy(x), rng)
        if decision.wisp_tx:
            acked = 10 if t >= recover_at else 0
            state = feed_back(state, planned=10, acked=acked)
            if t >= recover_at and not decision.ble_tx:
                return t - recover_at
    raise RuntimeError("never recovered")


def main():
    print(f"permanently broken channel, {PERIODS} periods")
    print(f"{'window x':>9} {'probe fraction':>15} {'1/(1+x/2)':>10}")
    for x in (0, 1, 3, 10, 30):
        print(f"{x:9d} {probe_fraction(x, seed=x):15.4f} "
              f"{1 / (1 + x / 2):10.4f}")

    print()
    print("channel recovers at period 500: periods of extra BLE use until")
    print("the hybrid node trusts the backscatter radio again")
    print(f"{'window x':>9} {'mean lag':>9} {'worst of 40':>12}")
    for x in (0, 3, 10, 30):
        lags = [recovery_lag(x, 500, seed) for seed in range(40)]
        print(f"{x:9d} {sum(lags) / len(lags):9.2f} {max(lags):12d}")

    print()
    print("Larger windows probe less while out of range but idle longer on")
    print("the expensive radio once coverage returns.")


if __name__ == "__main__":
    main()
