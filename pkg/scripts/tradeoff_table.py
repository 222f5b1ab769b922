#!/usr/bin/env python3
"""Whole-sequence success probability (1-eps)^n across sequence lengths.

Shows why shorter token sequences help an autoregressive decoder: at a
fixed per-token error rate, the chance of emitting an entire sequence
without a single error decays exponentially in its length. The default
grid includes the operating points (eps=0.00097, n=872) and (eps=0.0014,
n=300).

Usage:
    python3 scripts/tradeoff_table.py [--eps 0.00097 0.0014] [--n 100 300 872 2000]
"""

from __future__ import annotations

import argparse

from unitbpe import edge_case_probability


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--eps", type=float, nargs="+", default=[0.00097, 0.0014])
    parser.add_argument("--n", type=int, nargs="+", default=[100, 300, 872, 2000, 5000])
    args = parser.parse_args()

    header = "eps \\ n".rjust(9) + "".join(f"{n:>10}" for n in args.n)
    print(header)
    for eps in args.eps:
        row = f"{eps:>9.5f}"
        for n in args.n:
            row += f"{edge_case_probability(eps, n):>10.4f}"
        print(row)


if __name__ == "__main__":
    main()
