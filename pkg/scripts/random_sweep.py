"""Run the Van Kampen check on seeded random instances and print a tally.

    python3 scripts/random_sweep.py --seed 0 --trials 100
"""

import argparse
import time
from collections import Counter

from vankampen.vkcheck import Bounds, VkConfig, crosscheck_section4, random_instance, run_vk


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--crosscheck", action="store_true", help="also compare with the coproduct of pieces")
    ap.add_argument("--vertices", type=int, default=Bounds.vertices)
    ap.add_argument("--edges", type=int, default=Bounds.edges)
    ap.add_argument("--faces", type=int, default=Bounds.faces)
    args = ap.parse_args()

    bounds = Bounds(args.vertices, args.edges, args.faces)
    config = VkConfig()
    statuses, methods, verdicts = Counter(), Counter(), Counter()
    unknown = distinct = 0
    t0 = time.perf_counter()
    for seed in range(args.seed, args.seed + args.trials):
        B, c, S = random_instance(seed, bounds)
        _, _, rep = run_vk(c, S, config)
        statuses[rep.status] += 1
        methods.update(rep.methods)
        unknown += rep.round_trips.unknown + rep.well_defined.unknown
        distinct += rep.round_trips.distinct + rep.well_defined.distinct
        line = f"seed {seed:5d}  {B.describe():40s} |S|={len(S)}  {rep.status}"
        if args.crosscheck:
            cross = crosscheck_section4(c, S, config)
            verdicts[cross.verdict] += 1
            line += f"  {cross.verdict}"
        print(line)
    print(f"\n{args.trials} instances in {time.perf_counter() - t0:.1f}s")
    print("status:", dict(statuses))
    print("methods:", dict(methods))
    print(f"distinct verdicts: {distinct}  unknown verdicts: {unknown}")
    if args.crosscheck:
        print("cross-check:", dict(verdicts))


if __name__ == "__main__":
    main()
