"""Time the range scan and the identity sweeps at desk scale.

    python scripts/desk_scan.py --end 10000000 --workers 1 2 4
"""
import argparse
import time

from hailstone import build_memo, check_partition, check_step_identities, decomposition_consistency, verify_range
from hailstone.verify import VerifyConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--end", type=int, default=10**7)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    ap.add_argument("--max-k", type=int, default=10**6)
    ap.add_argument("--max-odd", type=int, default=10**6 - 1)
    args = ap.parse_args()

    keys = []
    for w in args.workers:
        r = verify_range(VerifyConfig(1, args.end, workers=w))
        keys.append(r.key())
        print(f"scan [1, {args.end}) workers={w}: {r.duration_ms / 1e3:.2f} s  "
              f"max steps {r.max_steps}  max excursion {r.max_excursion}  converged {r.all_converged}")
    print("reports identical across worker counts:", all(k == keys[0] for k in keys))

    t0 = time.perf_counter()
    table = build_memo(8 * args.max_k)
    print(f"memo to {table.limit}: {time.perf_counter() - t0:.2f} s")
    for report in (
        check_step_identities(args.max_k, VerifyConfig(1, 1, cache=table)),
        decomposition_consistency(args.max_odd, VerifyConfig(1, 1, cache=table)),
        check_partition(args.max_odd),
    ):
        print(f"{report.name}: {report.seeds_checked} checks, {len(report.identity_failures)} failures, "
              f"{report.duration_ms / 1e3:.2f} s")


if __name__ == "__main__":
    main()
