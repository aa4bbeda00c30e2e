#!/usr/bin/env python3
"""Run the full default experiment sweep and print the convergence diagnosis.

Writes results/results.csv (~12 cases x 12 sizes x 3 classes rows) and a
per-case classification table. Takes roughly 15 minutes on one core.

Usage: python scripts/run_full_sweep.py [--out results/results.csv] [--workers N]
"""

import argparse
import os
import sys
import time

from corrba.cli import main as cli_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/results.csv")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    start = time.monotonic()
    rc = cli_main(["sweep", "--out", args.out, "--workers", str(args.workers)])
    if rc != 0:
        return rc
    print(f"sweep finished in {time.monotonic() - start:.0f} s")
    return cli_main(["diagnose", "--in", args.out])


if __name__ == "__main__":
    sys.exit(main())
