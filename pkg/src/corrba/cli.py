"""Command-line entry points: sweep, theory, diagnose."""

from __future__ import annotations

import argparse
import sys

from . import experiment
from .asymptotics import empirical_c1, empirical_q, expected_c1, expected_q
from .generator import CorrelationMode, generate
from .rng import Rng


def _cmd_sweep(args) -> int:
    if args.config:
        config = experiment.ExperimentConfig.from_json(args.config)
    else:
        config = experiment.ExperimentConfig()
    rows = experiment.run_sweep(config, workers=args.workers, dump_dir=args.dump_graphs)
    experiment.write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_theory(args) -> int:
    if len(args.n) != len(args.m):
        print("need one --m per --n", file=sys.stderr)
        return 2
    print("n,m,expected_c1,expected_q,empirical_c1,empirical_q")
    for n, m in zip(args.n, args.m):
        if args.replicates > 0:
            c1s, qs = [], []
            for rep in range(args.replicates):
                rng = Rng(args.seed).child(rep)
                _, _, trace = generate(
                    n, m, 1, CorrelationMode.NONE, rng, record_trace=True
                )
                c1s.append(empirical_c1(trace, args.late_frac))
                qs.append(empirical_q(trace, args.late_frac))
            emp_c1 = sum(c1s) / len(c1s)
            emp_q = sum(qs) / len(qs)
            print(
                f"{n},{m},{expected_c1(n, m):.10g},{expected_q(n, m):.10g},"
                f"{emp_c1:.10g},{emp_q:.10g}"
            )
        else:
            print(f"{n},{m},{expected_c1(n, m):.10g},{expected_q(n, m):.10g},,")
    return 0


def _cmd_diagnose(args) -> int:
    rows = experiment.read_csv(args.infile)
    print("model,density,corr_mode,tail_std_ratio,classification")
    for model, density, mode, ratio, label in experiment.diagnose_all(rows):
        print(f"{model},{density},{mode},{ratio:.6g},{label}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="corrba")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run the full experiment sweep")
    p_sweep.add_argument("--config", help="JSON config file (fields optional)")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--dump-graphs", help="directory for per-replicate graph dumps")
    p_sweep.add_argument("--workers", type=int, default=1)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_theory = sub.add_parser("theory", help="closed-form vs empirical estimators")
    p_theory.add_argument("--n", type=int, action="append", required=True)
    p_theory.add_argument("--m", type=int, action="append", required=True)
    p_theory.add_argument("--replicates", type=int, default=30)
    p_theory.add_argument("--late-frac", type=float, default=0.25)
    p_theory.add_argument("--seed", type=int, default=0)
    p_theory.set_defaults(func=_cmd_theory)

    p_diag = sub.add_parser("diagnose", help="convergence classification of a result CSV")
    p_diag.add_argument("--in", dest="infile", required=True)
    p_diag.set_defaults(func=_cmd_diagnose)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (experiment.CsvFormatError, experiment.SweepError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
