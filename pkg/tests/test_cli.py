import csv
import io

import pytest

import tricount as tc
from tricount.cli import main
from tricount.metrics import MEMORY_COLUMNS, RUN_COLUMNS

from conftest import complete_graph


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    tc.export_edge_list(complete_graph(4), path)
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_seq(capsys, k4_file):
    code, out, _ = run_cli(capsys, "count", "--algo", "seq", "--graph", k4_file)
    assert code == 0
    assert out.splitlines()[0] == "triangles,4"


def test_count_surrogate_single_rank_matches_seq(capsys, k4_file, tmp_path):
    metrics = tmp_path / "m.csv"
    code, out, _ = run_cli(
        capsys, "count", "--algo", "space-surrogate", "--graph", k4_file,
        "--ranks", "1", "--metrics-out", str(metrics),
    )
    assert code == 0
    assert out.splitlines()[0] == "triangles,4"
    rows = list(csv.DictReader(metrics.open()))
    assert len(rows) == 1
    assert rows[0]["data_msgs_sent"] == "0"
    assert list(rows[0].keys()) == RUN_COLUMNS


def test_count_all_algos_agree(capsys, k4_file):
    for algo, ranks in (("seq", "1"), ("space-direct", "3"),
                        ("space-surrogate", "3"), ("dynamic", "3")):
        code, out, _ = run_cli(
            capsys, "count", "--algo", algo, "--graph", k4_file, "--ranks", ranks
        )
        assert code == 0
        assert out.splitlines()[0] == "triangles,4"
    code, out, _ = run_cli(
        capsys, "count", "--algo", "dynamic", "--graph", k4_file,
        "--ranks", "3", "--static-only",
    )
    assert code == 0
    assert out.splitlines()[0] == "triangles,4"


def test_usage_errors_exit_1(capsys, k4_file):
    assert run_cli(capsys, "count", "--algo", "nope", "--graph", k4_file)[0] == 1
    assert run_cli(capsys, "count", "--graph", k4_file)[0] == 1
    assert run_cli(
        capsys, "count", "--algo", "dynamic", "--graph", k4_file, "--ranks", "1"
    )[0] == 1
    assert run_cli(
        capsys, "count", "--algo", "seq", "--graph", k4_file, "--ranks", "4"
    )[0] == 1
    assert run_cli(
        capsys, "count", "--algo", "seq", "--graph", k4_file, "--static-only"
    )[0] == 1
    assert run_cli(capsys, "bench", "--suite", "strong")[0] == 1


def test_runtime_errors_exit_2(capsys, tmp_path):
    code, _, err = run_cli(
        capsys, "count", "--algo", "seq", "--graph", str(tmp_path / "missing.txt")
    )
    assert code == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0 x\n")
    code, _, err = run_cli(capsys, "count", "--algo", "seq", "--graph", str(bad))
    assert code == 2
    assert "line 1" in err


def test_generate_pa_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    for path in (a, b):
        code, _, _ = run_cli(
            capsys, "generate-pa", "--n", "200", "--d", "4", "--seed", "9",
            "--out", str(path),
        )
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    g = tc.build_graph(tc.normalize(tc.load_edge_list_path(a)))
    assert g.m <= 200 * 4 / 2


def test_partition_stats(capsys, k4_file):
    code, out, _ = run_cli(
        capsys, "partition-stats", "--graph", k4_file, "--ranks", "2",
        "--cost", "predsum",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rank,core_len,edges,bytes_nonoverlap,bytes_overlap_estimate"
    assert len(lines) == 3
    rows = [line.split(",") for line in lines[1:]]
    assert sum(int(r[2]) for r in rows) == 6  # K4 edges split exactly
    for r in rows:
        assert int(r[4]) >= int(r[3])


def test_bench_memory_csv(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--suite", "memory", "--n", "4000",
        "--d-list", "4,10", "--ranks", "8",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [list(r.keys()) for r in rows] == [MEMORY_COLUMNS] * 2
    for r in rows:
        assert int(r["bytes_overlap_max"]) > int(r["bytes_nonoverlap_max"])


def test_bench_strong_det_totals_agree(capsys, tmp_path):
    pa = tmp_path / "pa.txt"
    run_cli(capsys, "generate-pa", "--n", "400", "--d", "6", "--out", str(pa))
    code, out, _ = run_cli(
        capsys, "bench", "--suite", "strong", "--algo", "space-surrogate",
        "--graph", str(pa), "--ranks-list", "1,2,4", "--backend", "det",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    totals = {}
    for r in rows:
        key = (r["algo"], r["ranks"])
        totals.setdefault(key, 0)
        totals[key] += int(r["triangles"])
    assert len(set(totals.values())) == 1  # same count from every run


def test_metrics_to_stdout(capsys, k4_file):
    code, out, _ = run_cli(
        capsys, "count", "--algo", "dynamic", "--graph", k4_file,
        "--ranks", "2", "--metrics-out", "-",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "triangles,4"
    assert lines[1].split(",")[:3] == RUN_COLUMNS[:3]


def test_bench_weak_det_smoke(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--suite", "weak", "--algo", "space-surrogate",
        "--base-n", "200", "--d", "4", "--ranks-list", "2,3", "--backend", "det",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["ranks"] for r in rows] == ["2", "2", "3", "3", "3"]
    assert {r["graph"] for r in rows} == {"pa(400,4,0)", "pa(600,4,0)"}


def test_bench_idle_smoke(capsys):
    code, out, _ = run_cli(
        capsys, "bench", "--suite", "idle", "--pa", "2000,8", "--ranks", "3",
        "--repeats", "1", "--backend", "par",
    )
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    modes = {r["mode"] for r in rows}
    assert modes == {"normal", "static"}


def test_det_runs_are_byte_identical(capsys, tmp_path):
    pa = tmp_path / "pa.txt"
    run_cli(capsys, "generate-pa", "--n", "300", "--d", "4", "--out", str(pa))
    outs = []
    for name in ("m1.csv", "m2.csv"):
        path = tmp_path / name
        code, out, _ = run_cli(
            capsys, "count", "--algo", "space-surrogate", "--graph", str(pa),
            "--ranks", "4", "--backend", "det", "--seed", "3",
            "--metrics-out", str(path),
        )
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
