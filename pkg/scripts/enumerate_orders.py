"""Orders of every catalog presentation by coset enumeration over the
trivial subgroup, with peak table size and wall time.

    python scripts/enumerate_orders.py [--max-cosets N] [--strategy hlt|felsch] [NAME ...]
"""

import argparse
import time

from amalgam_cgt.catalog import NAMES, presentation
from amalgam_cgt.coset_enum import EnumerationLimits, LimitExceeded, enumerate_cosets


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("names", nargs="*", default=list(NAMES))
    ap.add_argument("--max-cosets", type=int, default=EnumerationLimits.max_cosets)
    ap.add_argument("--strategy", default="hlt")
    args = ap.parse_args()
    limits = EnumerationLimits(args.max_cosets, args.strategy)
    print(f"{'name':8} {'order':>8} {'peak rows':>10} {'seconds':>8}")
    for name in args.names:
        t0 = time.perf_counter()
        try:
            t = enumerate_cosets(presentation(name), (), limits)
            order, peak = t.live_count, t.stats["max_active"]
        except LimitExceeded:
            order, peak = "over cap", args.max_cosets
        print(f"{name:8} {order!s:>8} {peak:>10} {time.perf_counter() - t0:8.2f}")


if __name__ == "__main__":
    main()
