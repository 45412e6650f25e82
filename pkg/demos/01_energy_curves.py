"""Where does backscatter stop being the cheapest radio?

Walks the per-byte cost curves of the two default radios over
distance, locates the crossover and each radio's brick wall, and shows
why neither radio dominates the other.

Run:  python demos/01_energy_curves.py
"""

from blisp import (
    BLE,
    WISP,
    crossover_distance,
    energy_floor,
    energy_per_byte,
    is_dominated,
    lower_envelope,
    operational_range,
    packet_success,
    system_operational_range,
)


def fmt_cost(cost):
    if cost.is_unbounded:
        return "        unbounded"
    if cost.value >= 1e7:
        return f"{cost.value:17.2e}"
    return f"{cost.value:17.1f}"


def main():
    print("Per-byte cost over distance (uJ per received byte-fraction)")
    print(f"{'d [m]':>6} {'frame success (wisp)':>22} {'cost wisp':>17} "
          f"{'frame success (ble)':>21} {'cost ble':>17}")
    for d in (1, 5, 10, 20, 23, 24, 25, 26, 30, 40, 50, 55, 60, 65, 80, 120):
        print(f"{d:6d} {packet_success(WISP, d):22.6f} "
              f"{fmt_cost(energy_per_byte(WISP, d))} "
              f"{packet_success(BLE, d):21.6f} "
              f"{fmt_cost(energy_per_byte(BLE, d))}")

    print()
    print(f"cost floors:      wisp {energy_floor(WISP):8.1f} uJ/B   "
          f"ble {energy_floor(BLE):8.1f} uJ/B")
    d_star = crossover_distance(WISP, BLE)
    print(f"crossover:        {d_star:.4f} m (wisp cheaper before, ble after)")

    for model in (WISP, BLE):
        wall = operational_range(model, 2 * energy_floor(model))
        print(f"{model.id} wall:        {wall:8.3f} m "
              f"(cost doubles past this point)")

    budget = 2 * energy_floor(BLE)
    print(f"system range at {budget:.0f} uJ/B budget: "
          f"{system_operational_range([WISP, BLE], budget):.3f} m "
          f"(the longer radio sets it)")

    grid = [float(d) for d in range(1, 121)]
    print(f"wisp dominated by ble anywhere on 1..120 m? "
          f"{is_dominated(WISP, [BLE], grid)}")
    print(f"ble dominated by wisp? {is_dominated(BLE, [WISP], grid)}")

    switch_at = next(d for d, rid, _ in lower_envelope([WISP, BLE], grid)
                     if rid == "ble")
    print(f"cheapest-radio envelope switches to ble at {switch_at:.0f} m")


if __name__ == "__main__":
    main()
