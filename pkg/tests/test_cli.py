"""Command-line behavior: output shapes, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

from tropico import cli
from tropico.real import real_signed_count
from tropico.lattice import LatticePolygon, LinearOrder

D3 = '{"vertices": [[0,0],[3,0],[0,3]]}'
D2 = '{"vertices": [[0,0],[2,0],[0,2]]}'
CUSP = '{"vertices": [[0,0],[1,0],[0,1],[2,2]]}'
LINE = '{"terms": [{"exp": [1,0], "coeff": "3"}, {"exp": [0,1], "coeff": "5"}, {"exp": [0,0], "coeff": "1"}]}'


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_tsv(capsys):
    code, out, err = run(["count", "--polygon", D3, "--genus", "0"], capsys)
    assert code == 0
    assert out == "12\n"


def test_count_json(capsys):
    code, out, _ = run(
        ["count", "--polygon", D3, "--genus", "0", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == "12"
    assert doc["genus"] == 0
    assert doc["polygon"] == [[0, 0], [3, 0], [0, 3]]
    assert doc["order"] == {"primary": [1, 0], "tiebreak": [0, -1]}


def test_count_per_path_tsv(capsys):
    code, out, _ = run(
        ["count", "--polygon", D2, "--genus", "-1", "--per-path"], capsys
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "plus\tminus\tproduct\tpoints"
    rows = lines[1:-1]
    assert len(rows) == 2
    products = []
    for row in rows:
        plus, minus, product, points = row.split("\t")
        assert int(plus) * int(minus) == int(product)
        products.append(int(product))
        assert json.loads(points)["points"][0] == [0, 2]
    assert sorted(products) == [1, 2]
    assert lines[-1] == "3"


def test_count_polygon_from_file(tmp_path, capsys):
    p = tmp_path / "poly.json"
    p.write_text(D3)
    code, out, _ = run(["count", "--polygon", str(p), "--genus", "1"], capsys)
    assert code == 0
    assert out == "1\n"


def test_real_count_cusp_orders(capsys):
    code, out, _ = run(
        ["real-count", "--polygon", CUSP, "--genus", "0", "--order=-1,0/0,1"],
        capsys,
    )
    assert code == 0
    assert out == "5\n"
    code, out, _ = run(
        ["real-count", "--polygon", CUSP, "--genus", "0", "--order=1,0/0,1"],
        capsys,
    )
    assert code == 0
    assert out == "3\n"


def test_real_count_sign_list(capsys):
    tokens = ["++", "+-", "-+", "--", "++"]
    code, out, _ = run(
        [
            "real-count",
            "--polygon",
            D2,
            "--genus",
            "0",
            "--signs",
            ",".join(tokens),
            "--format",
            "json",
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    expected = real_signed_count(
        LatticePolygon([(0, 0), (2, 0), (0, 2)]),
        0,
        LinearOrder.default(),
        [cli.SIGN_TOKENS[t] for t in tokens],
    )
    assert doc["real_count"] == str(expected)
    assert doc["signs"] == ",".join(tokens)


def test_welschinger_cli(capsys):
    code, out, _ = run(["welschinger", "--polygon", D3, "--genus", "0"], capsys)
    assert code == 0
    assert out == "8\n"


def test_paths_summary(capsys):
    code, out, _ = run(
        ["paths", "--polygon", '{"vertices": [[0,0],[4,0],[0,4]]}', "--genus", "1"],
        capsys,
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n_paths\tcontributing\ttotal"
    assert lines[1] == "78\t33\t225"


def test_paths_list_json(capsys):
    code, out, _ = run(
        ["paths", "--polygon", D2, "--genus", "0", "--list", "--format", "json"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["n_paths"] == 1
    assert doc["contributing"] == 1
    assert doc["total"] == "1"
    assert len(doc["paths"]) == 1
    assert doc["paths"][0]["product"] == "1"


def test_table_projective(capsys):
    code, out, _ = run(["table", "--dmax", "3"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "g\td1\td2\td3"
    assert lines[1] == "-1\t0\t3\t21"
    assert lines[2] == "0\t1\t1\t12"
    assert lines[3] == "1\t0\t0\t1"


def test_table_bidegree_json(capsys):
    code, out, _ = run(
        ["table", "--family", "bidegree", "--dmax", "2", "--format", "json"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["columns"] == [1, 2]
    cells = {row["g"]: row["cells"] for row in doc["rows"]}
    assert cells[-1] == ["2", "22"]
    assert cells[0] == ["1", "12"]
    assert cells[1] == ["0", "1"]


def test_table_ceiling(capsys):
    code, _, err = run(["table", "--family", "bidegree", "--dmax", "4"], capsys)
    assert code == 2
    assert "out of range" in err


def test_curve_json_and_svg(tmp_path, capsys):
    svg = tmp_path / "line.svg"
    code, out, _ = run(["curve", "--poly", LINE, "--svg", str(svg)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["newton_polygon"] == [[0, 0], [1, 0], [0, 1]]
    assert doc["curve"]["vertices"] == [["-2", "-4"]]
    assert len(doc["curve"]["rays"]) == 3
    assert doc["genus"] == 0
    assert doc["smooth"] is True
    assert doc["dual_subdivision"]["cells"] == [
        {"vertices": [[0, 0], [1, 0], [0, 1]]}
    ]
    text = svg.read_text()
    assert text.startswith("<svg")
    assert text.count("<line") == 3
    assert text.count("<circle") == 1


def test_curve_from_file(tmp_path, capsys):
    p = tmp_path / "poly.json"
    p.write_text(LINE)
    code, out, _ = run(["curve", "--poly", str(p)], capsys)
    assert code == 0
    assert json.loads(out)["genus"] == 0


def test_exit_code_2_malformed_inputs(capsys):
    bad = [
        ["count", "--polygon", "{ not json", "--genus", "0"],
        ["count", "--polygon", "/nonexistent/poly.json", "--genus", "0"],
        ["count", "--polygon", '{"vertices": [[0,0],[1,1],[2,2]]}', "--genus", "0"],
        ["count", "--polygon", D2, "--genus", "0", "--order", "1,0"],
        ["real-count", "--polygon", D2, "--genus", "0", "--signs", "xx"],
        ["real-count", "--polygon", D2, "--genus", "0", "--signs", "++,--"],
        ["count", "--polygon", D2, "--genus", "0", "--jobs", "0"],
        ["count", "--polygon", D2, "--genus", "0", "--jobs", "many"],
    ]
    for argv in bad:
        code, _, err = run(argv, capsys)
        assert code == 2, argv
        assert err


def test_exit_code_2_usage_errors(capsys):
    with pytest.raises(SystemExit):
        cli.build_parser().parse_args(["count"])
    assert cli.main(["count"]) == 2
    capsys.readouterr()
    assert cli.main(["no-such-command"]) == 2
    capsys.readouterr()


def test_exit_code_3_mathematical_inputs(capsys):
    bad = [
        ["count", "--polygon", D2, "--genus", "-6"],
        ["count", "--polygon", D2, "--genus", "0", "--order", "1,0/2,0"],
        [
            "curve",
            "--poly",
            '{"terms": [{"exp": [0,0], "coeff": "0"}, {"exp": [1,1], "coeff": "1"}]}',
        ],
    ]
    for argv in bad:
        code, _, err = run(argv, capsys)
        assert code == 3, argv
        assert "error" in err


def test_jobs_determinism(capsys, monkeypatch):
    base = None
    for argv in (
        ["count", "--polygon", D3, "--genus", "-1", "--per-path"],
        ["count", "--polygon", D3, "--genus", "-1", "--per-path", "--jobs", "3"],
    ):
        code, out, _ = run(argv, capsys)
        assert code == 0
        if base is None:
            base = out
        assert out == base
    monkeypatch.setenv("TROPICO_JOBS", "2")
    code, out, _ = run(["count", "--polygon", D3, "--genus", "-1", "--per-path"], capsys)
    assert code == 0
    assert out == base
    monkeypatch.setenv("TROPICO_JOBS", "zero")
    code, _, err = run(["count", "--polygon", D3, "--genus", "-1"], capsys)
    assert code == 2


def test_cli_as_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "tropico.cli", "count", "--polygon", D3, "--genus", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout == "12\n"
