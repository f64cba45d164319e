#!/usr/bin/env python3
"""Print the four constants at high precision, with their certified bounds,
plus the sieve-threshold values of f.

Usage: python scripts/constants_table.py [--digits 25]
"""

import argparse
import sys

from lambdaroots.constants import all_constants, threshold_report


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--digits", type=int, default=25)
    args = ap.parse_args()

    for cv in all_constants(args.digits):
        print(f"{cv.name:<28} {cv.value:<{args.digits + 10}} +/- {cv.error_bound:.2e}")
    print()
    for name, value in threshold_report().items():
        print(f"{name:<28} {value:.10f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
