"""Experiment driver: the (model x density x correlation-mode) sweep over
graph sizes, replicate statistics, convergence diagnostics, and CSV I/O."""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .generator import CorrelationMode, CovarianceError, generate
from .graphs import dump_graph
from .models import ModelKind, classify_forward, init_params
from .rng import Rng

CSV_HEADER = "model,density,corr_mode,n,class,mean_prob,std_prob,replicates"
N_CLASSES = 3

# canonical orderings; RNG stream keys index into these so that running a
# subset of cases never shifts another case's streams
MODEL_ORDER = (ModelKind.GCN, ModelKind.GAT)
DENSITY_ORDER = ("sparse", "dense")
MODE_ORDER = (CorrelationMode.NONE, CorrelationMode.SIMPLE, CorrelationMode.RESCALED)


def default_sizes(lo: int = 25, hi: int = 2000, count: int = 12) -> list[int]:
    """Log-spaced integer size grid with exact endpoints, strictly increasing."""
    raw = np.geomspace(lo, hi, count)
    sizes = sorted({int(round(x)) for x in raw} | {lo, hi})
    return sizes


@dataclass
class ExperimentConfig:
    sizes: list[int] = field(default_factory=default_sizes)
    replicates: int = 30
    d: int = 32
    sparse_m: int = 5
    dense_divisor: int = 5
    modes: tuple[CorrelationMode, ...] = MODE_ORDER
    models: tuple[ModelKind, ...] = MODEL_ORDER
    densities: tuple[str, ...] = DENSITY_ORDER
    seed: int = 0
    late_frac: float = 0.25
    rho_renormalize: bool = False

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes must be strictly increasing")
        if self.replicates < 2:
            raise ValueError("need at least 2 replicates")
        if min(self.sizes) < self.sparse_m:
            raise ValueError("every size must be >= sparse_m")
        if any(dens not in DENSITY_ORDER for dens in self.densities):
            raise ValueError(f"densities must be among {DENSITY_ORDER}")

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            raw = json.load(fh)
        if "modes" in raw:
            raw["modes"] = tuple(CorrelationMode(s) for s in raw["modes"])
        if "models" in raw:
            raw["models"] = tuple(ModelKind(s) for s in raw["models"])
        if "densities" in raw:
            raw["densities"] = tuple(raw["densities"])
        if "sizes" in raw:
            raw["sizes"] = list(raw["sizes"])
        return cls(**raw)


@dataclass(frozen=True)
class Case:
    model: ModelKind
    density: str
    mode: CorrelationMode

    @property
    def label(self) -> str:
        return f"{self.model.value}/{self.density}/{self.mode.value}"


@dataclass(frozen=True)
class SweepRow:
    model: str
    density: str
    corr_mode: str
    n: int
    cls: int
    mean_prob: float
    std_prob: float
    replicates: int


class SweepError(RuntimeError):
    pass


class CsvFormatError(ValueError):
    pass


def cases_of(config: ExperimentConfig) -> list[Case]:
    return [
        Case(model, density, mode)
        for model in config.models
        for density in config.densities
        for mode in config.modes
    ]


def attachment_count(config: ExperimentConfig, density: str, n: int) -> int:
    if density == "sparse":
        return config.sparse_m
    return max(1, n // config.dense_divisor)


def _case_key(case: Case) -> tuple[int, int, int]:
    return (
        MODEL_ORDER.index(case.model),
        DENSITY_ORDER.index(case.density),
        MODE_ORDER.index(case.mode),
    )


def run_replicate(
    config: ExperimentConfig,
    case: Case,
    n: int,
    replicate: int,
    params=None,
    dump_dir=None,
) -> np.ndarray:
    """One graph + forward pass; deterministic given (seed, case, n, replicate).

    Covariance failures are retried up to 3 times on derived retry streams;
    a replicate that still fails raises CovarianceError.
    """
    if params is None:
        params = init_params(case.model, d=config.d, classes=N_CLASSES, seed=config.seed)
    m = attachment_count(config, case.density, n)
    last_error = None
    for retry in range(4):
        rng = Rng(config.seed).child(*_case_key(case), n, replicate, retry)
        try:
            g, features = generate(
                n, m, config.d, case.mode, rng, rho_renormalize=config.rho_renormalize
            )
        except CovarianceError as err:
            last_error = err
            continue
        if dump_dir is not None:
            name = f"{case.label.replace('/', '_')}_n{n}_rep{replicate}.txt"
            dump_graph(g, features, os.path.join(dump_dir, name))
        return classify_forward(case.model, params, g, features)
    raise last_error


def _run_task(args):
    config, case, n, replicate, dump_dir = args
    try:
        probs = run_replicate(config, case, n, replicate, dump_dir=dump_dir)
        return case, n, replicate, probs, None
    except CovarianceError as err:
        return case, n, replicate, None, str(err)


def run_sweep(
    config: ExperimentConfig, workers: int = 1, dump_dir=None
) -> list[SweepRow]:
    """Full sweep; one row per (case, n, class). Results are keyed, so the
    output is byte-identical regardless of worker count or scheduling."""
    if dump_dir is not None:
        os.makedirs(dump_dir, exist_ok=True)
    tasks = [
        (config, case, n, rep, dump_dir)
        for case in cases_of(config)
        for n in config.sizes
        for rep in range(config.replicates)
    ]

    outcomes: dict[tuple[Case, int], list[np.ndarray]] = {}
    failures: dict[Case, int] = {}
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=8))
    else:
        # reuse per-model params in-process to skip re-deriving them per task
        params_cache = {
            kind: init_params(kind, d=config.d, classes=N_CLASSES, seed=config.seed)
            for kind in config.models
        }
        results = []
        for cfg, case, n, rep, dump in tasks:
            try:
                probs = run_replicate(cfg, case, n, rep, params_cache[case.model], dump)
                results.append((case, n, rep, probs, None))
            except CovarianceError as err:
                results.append((case, n, rep, None, str(err)))

    for case, n, _rep, probs, error in results:
        if error is not None:
            failures[case] = failures.get(case, 0) + 1
        else:
            outcomes.setdefault((case, n), []).append(probs)

    per_case_total = len(config.sizes) * config.replicates
    for case, count in failures.items():
        if count > 0.1 * per_case_total:
            raise SweepError(
                f"case {case.label}: {count}/{per_case_total} replicates failed"
            )

    rows = []
    for case in cases_of(config):
        for n in config.sizes:
            samples = np.asarray(outcomes.get((case, n), []))
            if samples.shape[0] < 2:
                raise SweepError(f"case {case.label} n={n}: too few replicates")
            mean = samples.mean(axis=0)
            std = samples.std(axis=0, ddof=1)
            for cls in range(N_CLASSES):
                rows.append(
                    SweepRow(
                        case.model.value,
                        case.density,
                        case.mode.value,
                        n,
                        cls,
                        float(mean[cls]),
                        float(std[cls]),
                        samples.shape[0],
                    )
                )
    return sort_rows(rows)


def sort_rows(rows) -> list[SweepRow]:
    return sorted(rows, key=lambda r: (r.model, r.density, r.corr_mode, r.n, r.cls))


def convergence_diagnostic(case_rows, min_tail_base: int = 100):
    """Classify one case's size series by the ratio of max-class std at the
    largest size to that at the smallest size >= min_tail_base.

    Returns (tail_std_ratio, classification) where classification is
    'Converging' (ratio < 0.5), 'NotConverging', or 'NotApplicable' when the
    baseline std is numerically zero or no baseline size exists.
    """
    by_n: dict[int, float] = {}
    for r in case_rows:
        by_n[r.n] = max(by_n.get(r.n, 0.0), r.std_prob)
    sizes = sorted(by_n)
    if len(sizes) < 4:
        raise ValueError("need at least 4 sizes to diagnose convergence")
    base_sizes = [n for n in sizes if n >= min_tail_base]
    if not base_sizes or base_sizes[0] == sizes[-1]:
        return math.nan, "NotApplicable"
    denom = by_n[base_sizes[0]]
    if denom < 1e-12:
        return math.nan, "NotApplicable"
    ratio = by_n[sizes[-1]] / denom
    return ratio, ("Converging" if ratio < 0.5 else "NotConverging")


def diagnose_all(rows) -> list[tuple[str, str, str, float, str]]:
    """Per-case (model, density, mode, ratio, classification) over a result."""
    grouped: dict[tuple[str, str, str], list[SweepRow]] = {}
    for r in rows:
        grouped.setdefault((r.model, r.density, r.corr_mode), []).append(r)
    out = []
    for key in sorted(grouped):
        ratio, label = convergence_diagnostic(grouped[key])
        out.append((*key, ratio, label))
    return out


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(CSV_HEADER + "\n")
        for r in sort_rows(rows):
            fh.write(
                f"{r.model},{r.density},{r.corr_mode},{r.n},{r.cls},"
                f"{r.mean_prob:.17g},{r.std_prob:.17g},{r.replicates}\n"
            )


def read_csv(path) -> list[SweepRow]:
    rows = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError("line 1: empty file, expected header")
        if ",".join(header) != CSV_HEADER:
            raise CsvFormatError(f"line 1: bad header {','.join(header)!r}")
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != 8:
                raise CsvFormatError(f"line {lineno}: expected 8 fields, got {len(rec)}")
            try:
                rows.append(
                    SweepRow(
                        rec[0],
                        rec[1],
                        rec[2],
                        int(rec[3]),
                        int(rec[4]),
                        float(rec[5]),
                        float(rec[6]),
                        int(rec[7]),
                    )
                )
            except ValueError as err:
                raise CsvFormatError(f"line {lineno}: {err}") from err
    return rows
