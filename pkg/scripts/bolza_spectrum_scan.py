#!/usr/bin/env python3
"""Enumerate the Bolza length spectrum at increasing word lengths and
report shell counts, entropy fits, and the zeta quotient residual.

Usage: python3 scripts/bolza_spectrum_scan.py [--max-word-length W]
"""

import argparse
import time

from zetamult.geodesic_spectrum import (bolza_generators, counting_function,
                                        entropy_fit, enumerate_classes)
from zetamult.zeta_engine import check_quotient_identity


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-word-length", type=int, default=8)
    parser.add_argument("--s", type=float, default=2.5)
    args = parser.parse_args()

    presentation = bolza_generators()
    print(f"{'W':>3} {'classes':>8} {'N(6)':>6} {'h_hat':>8} "
          f"{'residual':>12} {'seconds':>8}")
    for w in range(1, args.max_word_length + 1):
        start = time.perf_counter()
        spec = enumerate_classes(presentation, w)
        dt = time.perf_counter() - start
        n6 = counting_function(spec, 6.0) if spec.max_geodesic_length >= 6 \
            else "-"
        try:
            h = f"{entropy_fit(spec).h_hat:8.4f}"
        except Exception:
            h = "   -    "
        try:
            residual = f"{check_quotient_identity(spec, args.s):12.3e}"
        except Exception:
            residual = "      -     "
        print(f"{w:>3} {len(spec.records):>8} {str(n6):>6} {h} "
              f"{residual} {dt:8.2f}")


if __name__ == "__main__":
    main()
