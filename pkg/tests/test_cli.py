import csv
import io
import math
import subprocess
import sys

import pytest

from qgraph.cli import UsageError, main, parse_k_range, parse_real
from qgraph.families import star
from qgraph.io import save_graph


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def read_csv(text):
    return list(csv.reader(io.StringIO(text)))


@pytest.mark.parametrize("text, value", [("2pi", 2 * math.pi), ("0.5*pi", 0.5 * math.pi), ("pi", math.pi), ("1e-6", 1e-6), ("3", 3.0)])
def test_parse_real(text, value):
    assert parse_real(text) == pytest.approx(value)


@pytest.mark.parametrize("text", ["", "pipi", "two", "1e"])
def test_parse_real_rejects(text):
    with pytest.raises(UsageError):
        parse_real(text)


@pytest.mark.parametrize("text", ["0:1", "2:1", "1", "1:2:3", "-1:2"])
def test_parse_k_range_rejects(text):
    with pytest.raises(UsageError):
        parse_k_range(text)


def test_entropy_family(capsys):
    rc, out, _ = run(capsys, "entropy", "--family", "star:4")
    assert rc == 0
    rows = read_csv(out)
    assert rows[0] == ["graph", "entrance", "H_mean", "panels", "estimated_error", "converged"]
    assert float(rows[1][2]) == pytest.approx(0.557305, abs=1e-6)
    assert rows[1][5] == "True"


def test_entropy_graph_file(tmp_path, capsys):
    path = tmp_path / "s4.json"
    save_graph(star(4), path)
    rc, out, _ = run(capsys, "entropy", "--graph", str(path))
    assert rc == 0
    assert float(read_csv(out)[1][2]) == pytest.approx(0.557305, abs=1e-6)


def test_entropy_catalog_id(capsys):
    rc, out, _ = run(capsys, "entropy", "--graph", "Q.json")
    assert rc == 0
    assert float(read_csv(out)[1][2]) == pytest.approx(0.634882, abs=1e-4)


def test_sweep_rows_and_flags(capsys):
    rc, out, _ = run(capsys, "sweep", "--graph", "fig1a-n2.json", "--samples", "8")
    assert rc == 0
    rows = read_csv(out)
    assert rows[0] == ["k", "p_1", "p_2", "H", "flags"]
    assert len(rows) == 9
    for r in rows[1:]:
        assert float(r[1]) + float(r[2]) == pytest.approx(1.0, abs=1e-10)
    # the last grid point is 2 pi, a bound state of the ring
    assert rows[-1][4] == "perturbed"


def test_sweep_k_range(capsys):
    rc, out, _ = run(capsys, "sweep", "--family", "cycle:3", "--samples", "5", "--k-range", "0.5:pi")
    rows = read_csv(out)
    assert rc == 0
    assert float(rows[1][0]) == pytest.approx(0.5)
    assert float(rows[-1][0]) == pytest.approx(math.pi)


def test_sweep_is_byte_identical(tmp_path):
    outs = []
    for name in "ab":
        p = tmp_path / f"{name}.csv"
        assert main(["sweep", "--family", "wheel:5", "--leads", "all", "--samples", "64", "--out", str(p)]) == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_family_range(tmp_path, capsys):
    p = tmp_path / "star.csv"
    rc, _, _ = run(capsys, "family", "--family", "star:3..6", "--out", str(p))
    assert rc == 0
    rows = read_csv(p.read_text())
    assert rows[0][:3] == ["n", "graph", "H_mean"]
    assert [r[0] for r in rows[1:]] == ["3", "4", "5", "6"]
    assert float(rows[2][2]) == pytest.approx(0.557305, abs=1e-6)


def test_family_all_leads(capsys):
    rc, out, _ = run(capsys, "family", "--family", "complete:3..4", "--leads", "all")
    assert rc == 0
    assert float(read_csv(out)[2][2]) == pytest.approx(1.387883, abs=1e-5)


def test_custom_lead_placement(capsys):
    rc, out, _ = run(capsys, "validate", "--family", "cycle:5", "--leads", "1,3")
    assert rc == 0
    assert "leads: 1, 3" in out


def test_validate(capsys):
    rc, out, _ = run(capsys, "validate", "--graph", "Q.json")
    assert rc == 0
    assert out.startswith("name: ")
    assert "vertices:" in out and "edges:" in out and "degrees:" in out


def test_reproduce_writes_report_and_data(tmp_path, capsys):
    out = tmp_path / "rep.csv"
    rc, _, err = run(capsys, "reproduce", "oracle-star", "fig4", "--out", str(out))
    assert rc == 0
    rows = read_csv(out.read_text())
    assert rows[0] == ["label", "computed", "expected", "tolerance", "status"]
    labels = [r[0] for r in rows[1:]]
    assert labels == sorted(labels)
    assert all(r[4] == "pass" for r in rows[1:])
    assert (tmp_path / "rep.fig4.data.csv").exists()
    assert (tmp_path / "rep.oracle-star.data.csv").exists()


def test_reproduce_table_exits_one_on_the_failing_row(capsys):
    rc, out, err = run(capsys, "reproduce", "sec5-table")
    assert rc == 1
    status = {r[0]: r[4] for r in read_csv(out)[1:]}
    assert status.pop("sec5-table/XX") == "fail"
    assert set(status.values()) == {"pass"}
    assert "sec5-table/XX" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["entropy"],
        ["entropy", "--family", "blob:3"],
        ["entropy", "--family", "star:3..5"],
        ["entropy", "--graph", "no-such-graph.json"],
        ["entropy", "--family", "star:4", "--tol", "0"],
        ["sweep", "--family", "star:4", "--k-range", "3:1"],
        ["sweep", "--family", "star:4", "--samples", "1"],
        ["family", "--graph", "Q.json"],
        ["reproduce", "fig99"],
    ],
)
def test_usage_errors_exit_two(argv, capsys):
    rc, _, err = run(capsys, *argv)
    assert rc == 2
    assert err.startswith("qgraph:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["entropy", "--graph", "Q.json", "--family", "star:4"])
    assert exc.value.code == 2


def test_computation_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": [1, 2], "edges": [[1, 3, 1]], "leads": [1]}')
    rc, _, err = run(capsys, "validate", "--graph", str(bad))
    assert rc == 1
    rc, _, _ = run(capsys, "entropy", "--family", "star:4", "--entrance", "5")
    assert rc == 1


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qgraph", "entropy", "--family", "single_vertex:3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert float(read_csv(proc.stdout)[1][2]) == pytest.approx(1.3921472, abs=1e-6)
