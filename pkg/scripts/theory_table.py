#!/usr/bin/env python3
"""Print closed-form vs empirical attachment statistics for a size ladder.

For each (n, m) it reports the expected first-draw correlation E[C1] and the
expected residual mass E[Q] alongside their late-stage empirical means over
replicated graph growths.

Usage: python scripts/theory_table.py [--replicates 30]
"""

import argparse
import sys

from corrba.cli import main as cli_main

LADDER = [(250, 5), (500, 5), (1000, 5), (2000, 5), (500, 100), (2000, 400)]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--replicates", type=int, default=30)
    args = parser.parse_args()

    argv = ["theory", "--replicates", str(args.replicates)]
    for n, m in LADDER:
        argv += ["--n", str(n), "--m", str(m)]
    return cli_main(argv)


if __name__ == "__main__":
    sys.exit(main())
