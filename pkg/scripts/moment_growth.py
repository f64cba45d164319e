#!/usr/bin/env python3
"""Diagnostic sweep of the moment ratios over a doubling grid.

The asymptotic growth statements themselves are not checkable at desk
scale (logloglog x is effectively constant), so this prints the ratios
and leaves the judgment to the reader.  Values are exact until the final
division.

Usage: python scripts/moment_growth.py [--xs 50,100,200,400] [--workers N]
"""

import argparse
import sys
import time

from lambdaroots.moments import MomentConfig, build_report


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--xs", default="50,100,200,400")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    xs = [int(v) for v in args.xs.split(",")]

    header = f"{'x':>6} {'mean*lll/x':>14} {'m2*lll^2/x^2':>14} {'phiphi ratio':>14} {'secs':>7}"
    print(header)
    print("-" * len(header))
    for x in xs:
        t0 = time.time()
        rep = build_report(MomentConfig(x=x, y=x), workers=args.workers)
        d = rep.diagnostics
        row = [
            f"{x:>6}",
            f"{d.get('mean_times_lll_over_x', float('nan')):>14.6f}",
            f"{d.get('m2_times_lll_sq_over_x_sq', float('nan')):>14.6f}",
            f"{d.get('phi_phi_over_pollack_shape', float('nan')):>14.6f}",
            f"{time.time() - t0:>7.1f}",
        ]
        print(" ".join(row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
