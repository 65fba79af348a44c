"""Command-line interface: fixtures, golden files, exit codes."""

import csv
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from pathsig.cli import main

DATA = Path(__file__).parent / "data"


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSig:
    def test_worked_example_row(self, capsys):
        code, out, _ = run_cli(
            ["sig", str(DATA / "two_column_stream.csv"), "--depth", "2", "--embedding", "linear"],
            capsys,
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert [float(v) for v in lines[1].split(",")] == [1, 7, 5, 24.5, 19, 16, 12.5]

    def test_log_variant(self, capsys):
        code, out, _ = run_cli(
            ["sig", str(DATA / "two_column_stream.csv"), "--log"], capsys
        )
        assert code == 0
        assert [float(v) for v in out.strip().split("\n")[1].split(",")] == [7, 5, 1.5]

    def test_round_trip_parses_to_exact_doubles(self, tmp_path, capsys):
        rng = np.random.default_rng(70)
        stream = tmp_path / "stream.csv"
        stream.write_text("\n".join(f"{a},{b}" for a, b in rng.standard_normal((6, 2))) + "\n")
        code, out, _ = run_cli(["sig", str(stream), "--depth", "3"], capsys)
        assert code == 0
        from pathsig import signature

        pts = np.loadtxt(stream, delimiter=",")
        expected = signature(pts, 3).coeffs
        parsed = np.array([float(v) for v in out.strip().split("\n")[1].split(",")])
        assert np.array_equal(parsed, expected)

    def test_empty_file_is_input_error(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        code, _, err = run_cli(["sig", str(empty)], capsys)
        assert code == 2
        assert "no data rows" in err

    def test_parse_error_reports_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("1,2\n3,oops\n")
        code, _, err = run_cli(["sig", str(bad)], capsys)
        assert code == 2
        assert "line 2" in err

    def test_config_errors(self, capsys):
        stream = str(DATA / "two_column_stream.csv")
        assert run_cli(["sig", stream, "--depth", "0"], capsys)[0] == 3
        assert run_cli(["sig", stream, "--embedding", "bogus"], capsys)[0] == 3
        assert run_cli(["sig", stream, "--embedding", "leadlag"], capsys)[0] == 3

    def test_missing_cells_require_missing_embedding(self, capsys):
        code, _, err = run_cli(
            ["sig", str(DATA / "missing_stream_row.csv"), "--layout", "rows"], capsys
        )
        assert code == 2
        assert "empty cell" in err
        code, out, _ = run_cli(
            [
                "sig",
                str(DATA / "missing_stream_row.csv"),
                "--layout",
                "rows",
                "--embedding",
                "missing",
            ],
            capsys,
        )
        assert code == 0
        header = out.split("\n")[0]
        assert header.startswith("S(),S(1),S(2),S(3)")


class TestGoldenFiles:
    @pytest.mark.parametrize(
        "golden,args",
        [
            ("golden_sig.csv", ["sig", "{input}", "--depth", "2", "--embedding", "linear"]),
            (
                "golden_sig_log.csv",
                ["sig", "{input}", "--depth", "2", "--embedding", "linear", "--log"],
            ),
        ],
    )
    def test_sig_outputs_byte_identical(self, golden, args, tmp_path, capsys):
        out_file = tmp_path / "out.csv"
        argv = [a.format(input=str(DATA / "two_column_stream.csv")) for a in args]
        assert main(argv + ["-o", str(out_file)]) == 0
        assert out_file.read_bytes() == (DATA / golden).read_bytes()

    def test_features_csv_golden(self, tmp_path):
        out_file = tmp_path / "out.csv"
        argv = [
            "features",
            str(DATA / "row_streams.csv"),
            "--labels",
            "--standardize",
            "--depth",
            "2",
            "-o",
            str(out_file),
        ]
        assert main(argv) == 0
        assert out_file.read_bytes() == (DATA / "golden_features.csv").read_bytes()

    def test_features_json_golden(self, tmp_path):
        out_file = tmp_path / "out.json"
        argv = [
            "features",
            str(DATA / "row_streams.csv"),
            "--labels",
            "--standardize",
            "--depth",
            "2",
            "-o",
            str(out_file),
        ]
        assert main(argv) == 0
        assert out_file.read_bytes() == (DATA / "golden_features.json").read_bytes()
        blob = json.loads(out_file.read_text())
        assert blob["labels"] == [0.0, 1.0, 0.0, 1.0]

    def test_rows_layout_golden(self, tmp_path):
        out_file = tmp_path / "out.csv"
        argv = [
            "sig",
            str(DATA / "row_streams.csv"),
            "--layout",
            "rows",
            "--embedding",
            "leadlag",
            "-o",
            str(out_file),
        ]
        assert main(argv) == 0
        assert out_file.read_bytes() == (DATA / "golden_sig_rows_leadlag.csv").read_bytes()

    def test_repeat_runs_identical(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["sig", str(DATA / "two_column_stream.csv"), "--depth", "3"]
        assert main(argv + ["-o", str(a)]) == 0
        assert main(argv + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestEmbedCommand:
    def test_leadlag_path(self, tmp_path, capsys):
        stream = tmp_path / "s.csv"
        stream.write_text("1\n4\n2\n6\n")
        code, out, _ = run_cli(["embed", str(stream), "--embedding", "leadlag"], capsys)
        assert code == 0
        rows = [[float(v) for v in line.split(",")] for line in out.strip().split("\n")[1:]]
        assert rows == [[1, 1], [1, 4], [4, 4], [4, 2], [2, 2], [2, 6], [6, 6]]

    def test_cumsum_basepoint(self, tmp_path, capsys):
        stream = tmp_path / "s.csv"
        stream.write_text("1\n4\n2\n6\n")
        code, out, _ = run_cli(["embed", str(stream), "--embedding", "cumsum-basepoint"], capsys)
        assert code == 0
        values = [float(line) for line in out.strip().split("\n")[1:]]
        assert values == [0, 1, 5, 7, 13]


class TestDemos:
    def test_cde_demo_errors_nonincreasing(self, tmp_path, capsys):
        out_file = tmp_path / "cde.csv"
        code, out, _ = run_cli(["cde-demo", "--max-depth", "12", "-o", str(out_file)], capsys)
        assert code == 0
        with open(out_file) as fh:
            records = list(csv.DictReader(fh))
        by_case = {}
        for rec in records:
            by_case.setdefault(rec["case"], []).append((int(rec["depth"]), float(rec["error"])))
        exp_errors = [e for _, e in sorted(by_case["exponential"])]
        assert exp_errors[-1] <= 1e-8
        for series in by_case.values():
            errors = [e for _, e in sorted(series)]
            assert all(b <= a + 1e-12 for a, b in zip(errors, errors[1:]))

    def test_classify_demo_smoke(self, tmp_path, capsys):
        out_file = tmp_path / "report.json"
        code, out, _ = run_cli(
            ["classify-demo", "--seed", "1", "-o", str(out_file)], capsys
        )
        assert code == 0
        report = json.loads(out_file.read_text())
        assert set(report) == {"seed", "lambda1", "lambda2", "train", "test", "selected_features"}
        assert report["train"]["tp"] + report["train"]["tn"] + report["train"]["fp"] + report[
            "train"
        ]["fn"] == 700
        assert "accuracy" in out


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pathsig", "sig", str(DATA / "two_column_stream.csv")],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.split("\n")[1] == "1,7,5,24.5,19,16,12.5"
