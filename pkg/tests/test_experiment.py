import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corrba.experiment import (
    Case,
    CsvFormatError,
    ExperimentConfig,
    SweepRow,
    attachment_count,
    cases_of,
    convergence_diagnostic,
    default_sizes,
    diagnose_all,
    read_csv,
    run_replicate,
    run_sweep,
    sort_rows,
    write_csv,
)
from corrba.generator import CorrelationMode
from corrba.models import ModelKind

TINY = dict(sizes=[25, 40, 60, 100, 160], replicates=3, d=4)


class TestConfig:
    def test_default_sizes(self):
        sizes = default_sizes()
        assert sizes[0] == 25 and sizes[-1] == 2000
        assert len(sizes) == 12
        assert all(b > a for a, b in zip(sizes, sizes[1:]))

    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(sizes=[50, 50])
        with pytest.raises(ValueError):
            ExperimentConfig(replicates=1)
        with pytest.raises(ValueError):
            ExperimentConfig(sizes=[3], sparse_m=5)

    def test_from_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(
            '{"sizes": [25, 50], "replicates": 2, "modes": ["none"],'
            ' "models": ["gcn"], "densities": ["sparse"], "seed": 9}'
        )
        cfg = ExperimentConfig.from_json(path)
        assert cfg.sizes == [25, 50]
        assert cfg.modes == (CorrelationMode.NONE,)
        assert cfg.models == (ModelKind.GCN,)
        assert cfg.seed == 9

    def test_attachment_count(self):
        cfg = ExperimentConfig()
        assert attachment_count(cfg, "sparse", 2000) == 5
        assert attachment_count(cfg, "dense", 2000) == 400
        assert attachment_count(cfg, "dense", 25) == 5
        assert attachment_count(cfg, "dense", 4) == 1

    def test_case_count(self):
        assert len(cases_of(ExperimentConfig())) == 12


class TestRunReplicate:
    def test_deterministic(self):
        cfg = ExperimentConfig(**TINY)
        case = Case(ModelKind.GCN, "sparse", CorrelationMode.RESCALED)
        a = run_replicate(cfg, case, 40, 1)
        b = run_replicate(cfg, case, 40, 1)
        assert np.array_equal(a, b)

    def test_on_simplex(self):
        cfg = ExperimentConfig(**TINY)
        case = Case(ModelKind.GAT, "dense", CorrelationMode.SIMPLE)
        out = run_replicate(cfg, case, 60, 0)
        assert out.shape == (3,)
        assert out.sum() == pytest.approx(1.0, abs=1e-12)

    def test_distinct_replicates(self):
        cfg = ExperimentConfig(**TINY)
        case = Case(ModelKind.GCN, "sparse", CorrelationMode.NONE)
        assert not np.array_equal(
            run_replicate(cfg, case, 40, 0), run_replicate(cfg, case, 40, 1)
        )


class TestRunSweep:
    def test_cardinality_and_simplex(self):
        cfg = ExperimentConfig(sizes=[25, 40, 60, 100], replicates=2, d=4)
        rows = run_sweep(cfg)
        assert len(rows) == 12 * 4 * 3
        by_case_n = {}
        for r in rows:
            by_case_n.setdefault((r.model, r.density, r.corr_mode, r.n), 0.0)
            by_case_n[(r.model, r.density, r.corr_mode, r.n)] += r.mean_prob
        assert all(abs(v - 1.0) < 1e-9 for v in by_case_n.values())
        assert all(r.std_prob >= 0 for r in rows)
        assert all(r.replicates == 2 for r in rows)

    def test_reproducible_and_scheduling_independent(self, tmp_path):
        cfg = ExperimentConfig(
            sizes=[25, 40], replicates=2, d=4,
            modes=(CorrelationMode.SIMPLE,), models=(ModelKind.GCN,),
        )
        p1, p2, p3 = (tmp_path / f"r{i}.csv" for i in range(3))
        write_csv(run_sweep(cfg, workers=1), p1)
        write_csv(run_sweep(cfg, workers=1), p2)
        write_csv(run_sweep(cfg, workers=2), p3)
        assert p1.read_bytes() == p2.read_bytes() == p3.read_bytes()

    def test_dump_graphs(self, tmp_path):
        cfg = ExperimentConfig(
            sizes=[25, 40], replicates=2, d=2,
            modes=(CorrelationMode.NONE,), models=(ModelKind.GCN,),
            densities=("sparse",),
        )
        run_sweep(cfg, dump_dir=tmp_path / "dumps")
        dumps = sorted((tmp_path / "dumps").iterdir())
        assert len(dumps) == 4
        header = dumps[0].read_text().splitlines()[0].split()
        assert header[0] in {"25", "40"} and header[2] == "2"


class TestConvergenceDiagnostic:
    @staticmethod
    def rows_with_stds(stds_by_n):
        rows = []
        for n, std in stds_by_n.items():
            for cls in range(3):
                rows.append(
                    SweepRow("gcn", "sparse", "none", n, cls, 1 / 3, std, 30)
                )
        return rows

    def test_constant_std_not_converging(self):
        rows = self.rows_with_stds({100: 0.05, 200: 0.05, 400: 0.05, 800: 0.05})
        ratio, label = convergence_diagnostic(rows)
        assert ratio == pytest.approx(1.0)
        assert label == "NotConverging"

    def test_halving_std_converging(self):
        stds = {100 * 2**i: 0.05 * 0.5**i for i in range(7)}
        ratio, label = convergence_diagnostic(self.rows_with_stds(stds))
        assert ratio == pytest.approx(0.5**6)
        assert label == "Converging"

    def test_baseline_is_smallest_size_at_least_100(self):
        rows = self.rows_with_stds({25: 1.0, 120: 0.08, 500: 0.05, 2000: 0.05})
        ratio, _ = convergence_diagnostic(rows)
        assert ratio == pytest.approx(0.05 / 0.08)

    def test_zero_baseline_not_applicable(self):
        rows = self.rows_with_stds({100: 0.0, 200: 0.0, 400: 0.0, 800: 0.0})
        ratio, label = convergence_diagnostic(rows)
        assert math.isnan(ratio)
        assert label == "NotApplicable"

    def test_too_few_sizes(self):
        with pytest.raises(ValueError):
            convergence_diagnostic(self.rows_with_stds({100: 0.1, 200: 0.1}))

    def test_diagnose_all_groups_cases(self):
        rows = []
        for model in ("gat", "gcn"):
            rows += [
                SweepRow(model, "sparse", "none", n, 0, 1 / 3, std, 30)
                for n, std in {100: 0.1, 200: 0.1, 400: 0.1, 800: 0.1}.items()
            ]
        out = diagnose_all(rows)
        assert len(out) == 2
        assert out[0][:3] == ("gat", "sparse", "none")


class TestCsvRoundTrip:
    def test_round_trip(self, tmp_path):
        rows = [
            SweepRow("gcn", "sparse", "none", 25, 0, 0.123456789012345678, 0.01, 30),
            SweepRow("gcn", "sparse", "none", 25, 1, 1 / 3, 0.0, 30),
            SweepRow("gat", "dense", "rescaled", 2000, 2, 0.9, 1e-17, 30),
        ]
        path = tmp_path / "r.csv"
        write_csv(rows, path)
        assert read_csv(path) == sort_rows(rows)

    def test_header_only_for_empty(self, tmp_path):
        path = tmp_path / "e.csv"
        write_csv([], path)
        assert path.read_text() == (
            "model,density,corr_mode,n,class,mean_prob,std_prob,replicates\n"
        )
        assert read_csv(path) == []

    def test_hand_written_fixture(self, tmp_path):
        path = tmp_path / "h.csv"
        path.write_text(
            "model,density,corr_mode,n,class,mean_prob,std_prob,replicates\n"
            "gcn,sparse,none,25,0,0.5,0.25,30\n"
            "gcn,sparse,none,25,1,0.25,0.125,30\n"
            "gcn,sparse,none,25,2,0.25,0.0,30\n"
        )
        rows = read_csv(path)
        assert len(rows) == 3
        assert rows[0] == SweepRow("gcn", "sparse", "none", 25, 0, 0.5, 0.25, 30)

    def test_bad_header(self, tmp_path):
        path = tmp_path / "b.csv"
        path.write_text("model,density\n")
        with pytest.raises(CsvFormatError, match="line 1"):
            read_csv(path)

    def test_bad_row_reports_line(self, tmp_path):
        path = tmp_path / "b.csv"
        path.write_text(
            "model,density,corr_mode,n,class,mean_prob,std_prob,replicates\n"
            "gcn,sparse,none,25,0,0.5,0.25,30\n"
            "gcn,sparse,none,not_an_int,0,0.5,0.25,30\n"
        )
        with pytest.raises(CsvFormatError, match="line 3"):
            read_csv(path)

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.sampled_from(["gcn", "gat"]),
                st.sampled_from(["sparse", "dense"]),
                st.sampled_from(["none", "simple", "rescaled"]),
                st.integers(5, 5000),
                st.integers(0, 2),
                st.floats(0, 1, allow_nan=False),
                st.floats(0, 1, allow_nan=False),
            ),
            max_size=20,
            unique_by=lambda t: t[:5],
        )
    )
    def test_round_trip_property(self, tmp_path_factory, tuples):
        rows = [SweepRow(*t, 30) for t in tuples]
        path = tmp_path_factory.mktemp("csv") / "r.csv"
        write_csv(rows, path)
        assert read_csv(path) == sort_rows(rows)


class TestCli:
    def test_theory_closed_forms(self, capsys):
        from corrba.cli import main

        assert main(["theory", "--n", "2000", "--m", "5", "--replicates", "0"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "n,m,expected_c1,expected_q,empirical_c1,empirical_q"
        fields = out[1].split(",")
        assert float(fields[2]) == pytest.approx(0.00149787, abs=1e-8)
        assert float(fields[3]) == pytest.approx(0.00998933, abs=1e-8)

    def test_theory_mismatched_args(self, capsys):
        from corrba.cli import main

        assert main(["theory", "--n", "100", "--n", "200", "--m", "5"]) == 2

    def test_sweep_then_diagnose(self, tmp_path, capsys):
        from corrba.cli import main

        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            '{"sizes": [25, 50, 110, 200, 400], "replicates": 2, "d": 4,'
            ' "models": ["gcn"], "densities": ["sparse"], "modes": ["none"]}'
        )
        out = tmp_path / "r.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        capsys.readouterr()
        assert main(["diagnose", "--in", str(out)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "model,density,corr_mode,tail_std_ratio,classification"
        assert lines[1].startswith("gcn,sparse,none,")
        assert lines[1].split(",")[-1] in {"Converging", "NotConverging", "NotApplicable"}

    def test_diagnose_bad_file_exit_code(self, tmp_path, capsys):
        from corrba.cli import main

        bad = tmp_path / "bad.csv"
        bad.write_text("not,a,result\n")
        assert main(["diagnose", "--in", str(bad)]) == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exit_code(self, tmp_path, capsys):
        from corrba.cli import main

        assert main(["diagnose", "--in", str(tmp_path / "nope.csv")]) == 1
