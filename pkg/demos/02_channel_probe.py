"""Estimating the backscatter channel from handshake acknowledgements.

The tag never hears explicit delivery reports for its payload, but the
inventory handshake (random number up, acknowledgement down, payload
up) only completes when both link directions work. Counting
acknowledgements against planned frames therefore estimates the
channel: a full count reads as "channel good".

Run:  python demos/02_channel_probe.py
"""

import random

from blisp import WISP, ChannelSample, ack_count, inventory_round, packet_success

FRAMES = 10
ROUNDS = 300


def main():
    rng = random.Random(2024)
    print(f"{FRAMES} frames per round, {ROUNDS} rounds per distance")
    print(f"{'d [m]':>6} {'frame success':>14} {'mean acks':>10} "
          f"{'rounds with all acks':>21} {'payloads/round':>15}")
    for d in (5, 22, 23, 24, 25, 26, 28):
        p = packet_success(WISP, d)
        ch = ChannelSample.symmetric(p)
        acks = payloads = perfect = 0
        for _ in range(ROUNDS):
            outcomes = inventory_round(ch, FRAMES, rng)
            got = ack_count(outcomes)
            acks += got
            perfect += got == FRAMES
            payloads += sum(o.epc_delivered for o in outcomes)
        print(f"{d:6d} {p:14.4f} {acks / ROUNDS:10.2f} "
              f"{perfect / ROUNDS:20.1%} {payloads / ROUNDS:15.2f}")

    print()
    print("Near the wall the ack count collapses a period earlier than the")
    print("payload stream itself, which is exactly what the radio switch")
    print("needs: a verdict that is cheap, immediate, and pessimistic.")


if __name__ == "__main__":
    main()
