import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from labelsem import jsonspec
from labelsem.cli import main
from labelsem.hedge import apply_chain

LABEL = json.dumps({"prototype": 5, "threshold": {"dist": "uniform", "lo": 0, "hi": 3}})
WIDE = json.dumps({"prototype": {"interval": [4, 6]}, "threshold": {"dist": "uniform", "lo": 0, "hi": 3}})


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def read_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {name: [float(r[i]) for r in body] for i, name in enumerate(header)}


def test_eval_examples(capsys):
    assert run(capsys, "eval", "--label", LABEL, "--hedge", '"quite"', "--x", "6.5")[:2] == (0, "0.846574")
    assert run(capsys, "eval", "--label", LABEL, "--x", "5")[:2] == (0, "1.000000")
    # concentrate_mu(concentrate_mu(0.5)), not 0.022590
    assert run(capsys, "eval", "--label", LABEL, "--hedge", '"very"', "--hedge", '"very"', "--x", "6.5")[:2] == (0, "0.012423")
    assert run(capsys, "eval", "--label", LABEL, "--hedge", '"extremely"', "--x", "6.5")[:2] == (0, "0.012423")


def test_eval_label_file_and_stdin(tmp_path, capsys, monkeypatch):
    p = tmp_path / "L.json"
    p.write_text(LABEL)
    assert run(capsys, "eval", "--label", str(p), "--hedge", '{"hedge": "rescale", "k": 2}', "--x", "6.5")[1] == "0.750000"
    monkeypatch.setattr(sys, "stdin", __import__("io").StringIO(LABEL))
    assert run(capsys, "eval", "--label", "-", "--x", "6.5")[1] == "0.500000"


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--label", "{not json", "--x", "5"],
        ["eval", "--label", '{"prototype": 5}', "--x", "5"],
        ["eval", "--label", LABEL, "--hedge", '"somewhat"', "--x", "5"],
        ["eval", "--label", LABEL, "--hedge", '{"hedge": "rescale"}', "--x", "5"],
        ["eval", "--label", LABEL, "--x", "5", "6"],
        ["curve", "--label", LABEL, "--range", "9", "1", "--out", "x.csv"],
    ],
)
def test_malformed_input_exits_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:")


def test_curve_dilation_dominates(tmp_path, capsys):
    out = tmp_path / "q.csv"
    code = run(capsys, "curve", "--label", LABEL, "--hedge", '"quite"', "--range", "1", "9", "--steps", "161", "--out", str(out))[0]
    assert code == 0
    cols = read_csv(out)
    assert list(cols) == ["x", "mu_base", "mu_hedged"]
    assert len(cols["x"]) == 161
    assert all(h >= b for h, b in zip(cols["mu_hedged"], cols["mu_base"]))


def test_curve_empty_chain(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert run(capsys, "curve", "--label", LABEL, "--range", "1", "9", "--steps", "161", "--out", str(out))[0] == 0
    cols = read_csv(out)
    assert list(cols) == ["x", "mu_base"]
    i = int(np.argmax(cols["mu_base"]))
    assert cols["mu_base"][i] == 1.0 and cols["x"][i] == 5.0


def test_curve_prefix_columns(tmp_path, capsys):
    out = tmp_path / "c.csv"
    run(capsys, "curve", "--label", LABEL, "--hedge", '["very", "quite"]', "--hedge", '"very"',
        "--range", "1", "9", "--steps", "9", "--out", str(out))
    assert list(read_csv(out)) == ["x", "mu_base", "mu_hedged_1", "mu_hedged_2", "mu_hedged"]


def test_curve_contracted_prototype_shape(tmp_path, capsys):
    out = tmp_path / "v.csv"
    hedge = '{"hedge": "very", "prototype": {"interval": [4.5, 5.5]}}'
    run(capsys, "curve", "--label", WIDE, "--hedge", hedge, "--range", "0", "10", "--steps", "201", "--out", str(out))
    cols = read_csv(out)
    x, base, v = map(np.array, (cols["x"], cols["mu_base"], cols["mu_hedged"]))
    assert np.all(base[(x >= 4) & (x <= 6)] == 1.0)
    assert np.all(v[(x >= 4.5) & (x <= 5.5)] == 1.0)
    assert np.all(v[(x > 4) & (x < 4.5)] < 1.0)
    assert np.all(v[(x <= 1.5) | (x >= 8.5)] == 0.0)
    assert np.all(v[(x > 1.5) & (x < 8.5)] > 0.0)
    assert np.all(v <= base)
    # symmetric about 5
    assert np.allclose(v, v[::-1], atol=1e-12)


def test_curve_csv_round_trip(tmp_path, capsys):
    out = tmp_path / "r.csv"
    run(capsys, "curve", "--label", LABEL, "--hedge", '"quite"', "--hedge", '"very"',
        "--range", "1", "9", "--steps", "37", "--out", str(out))
    cols = read_csv(out)
    L = jsonspec.label_from_json(json.loads(LABEL))
    hl = apply_chain(jsonspec.hedges_from_json(["quite", "very"]), L)
    assert [hl(x) for x in cols["x"]] == cols["mu_hedged"]
    assert [L(x) for x in cols["x"]] == cols["mu_base"]


def test_curve_json_format(tmp_path, capsys):
    out = tmp_path / "c.json"
    run(capsys, "curve", "--label", LABEL, "--hedge", '"quite"', "--range", "1", "9", "--steps", "5",
        "--out", str(out), "--format", "json")
    cols = json.loads(out.read_text())
    assert cols["x"] == [1.0, 3.0, 5.0, 7.0, 9.0]
    assert cols["mu_base"][2] == 1.0


def test_curve_unwritable_path(tmp_path, capsys):
    bad = tmp_path / "missing" / "c.csv"
    code, _, err = run(capsys, "curve", "--label", LABEL, "--range", "1", "9", "--out", str(bad))
    assert code != 0 and "cannot write" in err


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "bosc")
    assert code == 0 and out.endswith("PASS")
    code, out, _ = run(capsys, "verify", "power", "--k", "2", "--b", "3")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "novak")
    assert code == 0


def test_verify_dilate(capsys):
    code, out, _ = run(capsys, "verify", "dilate", "--samples", "1000000", "--seed", "0")
    assert code == 0
    assert out.count("PASS") == 7


def test_verify_reports_failure(capsys, monkeypatch):
    from labelsem import verify

    monkeypatch.setattr(verify, "EXACT_LIMIT", -1.0)
    code, out, _ = run(capsys, "verify", "power")
    assert code == 2 and out.endswith("FAIL")


def test_limit_examples(capsys):
    code, out, _ = run(capsys, "limit", "dilate", "--m0", "0.5", "--tol", "1e-6")
    assert code == 0 and out.startswith("1 (") and out.endswith(" steps)")
    assert run(capsys, "limit", "concentrate", "--m0", "1")[1] == "1 (0 steps)"
    out = run(capsys, "limit", "concentrate", "--m0", "0.5", "--tol", "1e-6")[1]
    assert out.startswith("0 (")
    assert run(capsys, "limit", "dilate", "--m0", "1e-300", "--max-iter", "2")[0] == 2


def test_compose(capsys):
    assert run(capsys, "compose", "dilate", "--m0", "0.5", "--n", "2")[1] == "0.987577"
    assert run(capsys, "compose", "concentrate", "--m0", "1", "--n", "50")[1] == "1.000000"
    assert run(capsys, "compose", "concentrate", "--label", LABEL, "--x", "6.5", "--n", "2")[1] == "0.012423"
    assert run(capsys, "compose", "dilate", "--m0", "1.5")[0] == 1


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "labelsem", "compose", "dilate", "--m0", "0.5"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip() == "0.846574"
