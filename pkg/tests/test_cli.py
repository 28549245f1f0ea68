import json
import math
import subprocess
import sys

import pytest

from infowidth import __version__
from infowidth.cli import EXIT_INFEASIBLE, EXIT_OK, EXIT_USAGE, main
from infowidth.figures import build_figure, read_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = text.split("\r\n")
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:] if line]


def test_width_example(capsys):
    code, out, _ = run(capsys, "width", "--ny", "4", "--members", "5")
    assert code == EXIT_OK
    (row,) = csv_rows(out)
    assert float(row["l"]) == pytest.approx(1.678072, abs=1e-6)
    assert row["r"] == "2"
    assert float(row["Istar"]) == pytest.approx(1.8, abs=1e-9)
    assert float(row["kappastar"]) == pytest.approx(0.93226, abs=1e-5)


def test_width_trivial_and_backends(capsys):
    _, out, _ = run(capsys, "width", "--ny", "8", "--members", "1")
    assert float(csv_rows(out)[0]["Istar"]) == 3.0
    _, exact, _ = run(capsys, "width", "--ny", "128", "--members", "1", "--backend", "exact")
    _, logd, _ = run(capsys, "width", "--ny", "128", "--members", "1", "--backend", "logdomain")
    a, b = csv_rows(exact)[0], csv_rows(logd)[0]
    assert abs(float(a["Istar"]) - float(b["Istar"])) <= 1e-9
    assert b["backend"] == "logdomain"


@pytest.mark.parametrize(
    "argv",
    [
        ["width", "--ny", "4", "--members", "16"],
        ["width", "--ny", "4"],
        ["width", "--ny", "4", "--l", "1", "--members", "2"],
        ["width", "--ny", "0", "--members", "1"],
        ["property", "--n", "3", "--prop", "expdecay", "--alpha", "0.5"],
        ["property", "--n", "5", "--prop", "vd", "--d", "2"],
        ["property", "--n", "3", "--prop", "vd"],
        ["property", "--n", "3", "--prop", "identity", "--gsize", "9"],
        ["figure", "--id", "9"],
        ["bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == EXIT_USAGE


def test_property_vd_exact(capsys):
    code, out, _ = run(capsys, "property", "--n", "2", "--prop", "vd", "--d", "1", "--method", "exact")
    assert code == EXIT_OK
    data = json.loads(out)
    assert {k: data[k] for k in ("I", "H", "l", "kappa", "eta")} == {"I": 2, "H": 0, "l": 2, "kappa": 1, "eta": 1}


def test_property_identity(capsys):
    _, out, _ = run(capsys, "property", "--n", "3", "--prop", "identity", "--gsize", "2", "--method", "exact")
    data = json.loads(out)
    assert (data["I"], data["l"], data["kappa"]) == (2, 8, 4)
    assert data["eta"] == pytest.approx(0.6666667, abs=1e-7)


def test_property_identity_from_class_file(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 3, "class": ["000", "110"]}))
    _, out, _ = run(capsys, "property", "--n", "3", "--prop", "identity", "--class", str(path))
    assert json.loads(out)["I"] == 2


def test_property_asym(capsys):
    code, out, _ = run(capsys, "property", "--n", "20", "--prop", "vdc", "--d", "4", "--method", "asym")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["I"] == pytest.approx(1.0, abs=0.1)
    assert data["warnings"]


def test_property_vdsm_sample_file(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"sample": [[1, 0], [2, 0]]}))
    _, a, _ = run(capsys, "property", "--n", "12", "--prop", "vdsm", "--d", "4", "--sample", str(path), "--method", "asym")
    _, b, _ = run(capsys, "property", "--n", "12", "--prop", "vdsm", "--d", "4", "--m", "2", "--method", "asym")
    assert json.loads(a)["I"] == json.loads(b)["I"]


def test_property_mc_is_deterministic(capsys, tmp_path):
    argv = ["property", "--n", "3", "--prop", "ld", "--d", "1", "--method", "mc", "--trials", "5000", "--seed", "4"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--threads", "3")
    assert a == b
    data = json.loads(a)
    assert data["trials"] == 5000 and data["seed"] == 4 and "stderr" in data


def test_property_mc_infeasible(capsys):
    code, _, err = run(capsys, "property", "--n", "10", "--prop", "vd", "--d", "2", "--method", "mc", "--trials", "10")
    assert code == EXIT_INFEASIBLE
    assert "infeasible" in err


def test_measure(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"ny": 4, "subsets": [[0], [1], [2], [3]]}))
    _, out, _ = run(capsys, "measure", "--input", str(p))
    data = json.loads(out)
    assert (data["I"], data["H"], data["l"]) == (2, 0, 2)
    p.write_text(json.dumps({"ny": 8, "subsets": [[0, 1], list(range(8))]}))
    data = json.loads(run(capsys, "measure", "--input", str(p))[1])
    assert (data["H"], data["I"]) == (2, 1)
    p.write_text(json.dumps({"ny": 4, "subsets": [[0]]}))
    t = tmp_path / "t.json"
    t.write_text(json.dumps({"target": [1, 2]}))
    data = json.loads(run(capsys, "measure", "--input", str(p), "--target", str(t))[1])
    assert data["I"] == 0 and data["target"] == [1, 2]


def test_measure_bad_json_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"ny": 4,\n "subsets": [[0]')
    code, _, err = run(capsys, "measure", "--input", str(p))
    assert code == EXIT_USAGE
    assert "line 2" in err


def test_figure_outputs(capsys, tmp_path):
    csv_path, svg_path = tmp_path / "f.csv", tmp_path / "f.svg"
    code, _, _ = run(capsys, "figure", "--id", "1a", "--out-csv", str(csv_path), "--out-svg", str(svg_path))
    assert code == EXIT_OK
    text = csv_path.read_bytes().decode()
    header, rows = read_csv(text)
    assert header == ["l", "Istar_n5", "Istar_n6", "Istar_n7"]
    assert rows[31][1] == 5.0
    assert "\r\n" in text
    assert svg_path.read_text().rstrip().endswith("</svg>")


def test_figure_stdout_and_precision(capsys):
    _, out, _ = run(capsys, "figure", "--id", "2b", "--precision", "4")
    header, rows = read_csv(out)
    fig = build_figure("2b")
    for row, x in zip(rows, fig.x):
        assert row[3] == pytest.approx(1 / math.sqrt(x), abs=5e-5)


def test_out_file(capsys, tmp_path):
    out = tmp_path / "w.csv"
    run(capsys, "width", "--ny", "4", "--members", "5", "--out", str(out))
    assert csv_rows(out.read_bytes().decode())[0]["r"] == "2"


def test_mc_validate(capsys):
    code, out, _ = run(capsys, "mc-validate", "--trials", "100000")
    assert code == EXIT_OK
    assert out.count("PASS") == len(out.strip().splitlines())


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "infowidth", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
