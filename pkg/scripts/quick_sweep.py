#!/usr/bin/env python3
"""Smoke-test sweep: a reduced size grid and replicate count (~30 seconds).

Useful for checking the pipeline end to end before committing to the full run.
The reduced grid is too coarse for the reference convergence pattern; treat the
diagnosis it prints as a plumbing check only.

Usage: python scripts/quick_sweep.py [--out results/quick.csv]
"""

import argparse
import json
import os
import sys
import tempfile

from corrba.cli import main as cli_main

QUICK_CONFIG = {
    "sizes": [25, 50, 110, 240, 500],
    "replicates": 5,
    "d": 8,
}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/quick.csv")
    args = parser.parse_args()

    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        json.dump(QUICK_CONFIG, fh)
        cfg_path = fh.name
    try:
        rc = cli_main(["sweep", "--config", cfg_path, "--out", args.out])
        if rc != 0:
            return rc
        return cli_main(["diagnose", "--in", args.out])
    finally:
        os.unlink(cfg_path)


if __name__ == "__main__":
    sys.exit(main())
