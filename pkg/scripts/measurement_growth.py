#!/usr/bin/env python3
"""Show why one real-valued measurement cannot serve every chain prefix.

The minimum feasible top value of an accurate measurement grows linearly
with the chain length, while any bounded monotone measurement of the same
chain plateaus: past some index, consecutive values are closer than any
fixed tolerance.
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from narch.measurement import diminishing_returns_index, min_feasible_top


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--r", default="1", help="threshold (rational)")
    parser.add_argument("--tol", default="1/100", help="plateau tolerance (rational)")
    args = parser.parse_args()
    r = Fraction(args.r)
    tol = Fraction(args.tol)

    print(f"minimum feasible top (threshold r = {r}):")
    n = 1
    lengths = [0]
    while n <= 4096:
        lengths.append(n)
        n *= 2
    for length in lengths:
        print(f"  chain index {length:>5}: {min_feasible_top(length, r)}")

    bounded = [1 - Fraction(1, 2**i) for i in range(40)]
    index = diminishing_returns_index(bounded, tol)
    print(f"\nbounded measurement 1 - 2^-i plateaus at index {index} (tolerance {tol})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
