import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from zetapsi.cli import RunConfig, build_config, build_parser, main, read_config_file

SCHEMA = json.loads((Path(__file__).parents[1] / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def certify_small(tmp_path_factory):
    out = tmp_path_factory.mktemp("certify") / "report.json"
    code = main(["certify", "--grid-points", "20", "--out", str(out)])
    return code, json.loads(out.read_text())


# --- eval ---------------------------------------------------------------------


def test_eval_F(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "F", "--s", "0.5")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"fn", "s", "value", "err", "path"}
    assert abs(doc["value"] - 0.5031555) < 1e-6
    assert doc["path"] == "composition"


def test_eval_direct_path(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "Fprime", "--s", "0.5", "--path", "direct")
    assert code == 0
    doc = json.loads(out)
    assert doc["path"] == "direct" and doc["value"] > 0


def test_eval_zeta_pole(capsys):
    code, _, err = run(capsys, "eval", "--fn", "zeta", "--s", "1")
    assert code == 2
    assert "pole at s=1" in err


def test_eval_P_at_zero_uses_inset(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "P", "--s", "0.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["s"] == 1e-6
    assert abs(doc["value"] - 0.40411380632) < 1e-4


@pytest.mark.parametrize("fn", ["zeta", "digamma", "F", "Fprime", "Fsecond", "P", "J"])
def test_eval_every_function(capsys, fn):
    code, out, _ = run(capsys, "eval", "--fn", fn, "--s", "0.3")
    assert code == 0
    assert json.loads(out)["fn"] == fn


def test_eval_text_and_csv(capsys):
    code, out, _ = run(capsys, "eval", "--fn", "zeta", "--s", "2", "--format", "text")
    assert code == 0 and out.startswith("zeta(2.0) = 1.6449340668482264365")
    code, out, _ = run(capsys, "eval", "--fn", "zeta", "--s", "2", "--format", "csv")
    header, row = out.strip().splitlines()
    assert header == "fn,s,value,err,path"
    assert row.startswith("zeta,2.00000000000000e+00,1.64493406684823e+00,")


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--fn", "F", "--s", "abc"],
        ["eval", "--fn", "F", "--s", "nan"],
        ["eval", "--fn", "digamma", "--s", "-1"],
        ["eval", "--fn", "F", "--s", "1.5"],
    ],
)
def test_eval_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eval", "--fn", "nope", "--s", "0.5"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["certify", "--precision", "-3"])
    assert info.value.code == 2


def test_unwritable_output_exits_2(capsys, tmp_path):
    target = tmp_path / "missing-dir" / "out.json"
    code, _, err = run(capsys, "eval", "--fn", "F", "--s", "0.5", "--out", str(target))
    assert code == 2 and err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "zetapsi", "eval", "--fn", "zeta", "--s", "0", "--format", "text"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("zeta(0.0) = -0.5 ")


# --- configuration --------------------------------------------------------------


def test_config_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment line\nprecision = 30\ngrid_points=500  # trailing\nformat=text\n", encoding="utf-8")
    parser = build_parser()
    from_file = build_config(parser.parse_args(["verify", "--config", str(cfg)]))
    assert from_file.precision_digits == 30 and from_file.grid_points == 500
    assert from_file.output_format == "text" and from_file.sigma_N == 200
    flags_win = build_config(parser.parse_args(["verify", "--config", str(cfg), "--precision", "40"]))
    assert flags_win.precision_digits == 40 and flags_win.grid_points == 500
    defaults = build_config(parser.parse_args(["verify"]))
    assert defaults == RunConfig()


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour=blue\n", encoding="utf-8")
    with pytest.raises(ValueError, match="unknown key"):
        read_config_file(bad)
    code, _, err = run(capsys, "verify", "--config", str(bad))
    assert code == 2 and "unknown key" in err
    code, _, _ = run(capsys, "verify", "--config", str(tmp_path / "absent.cfg"))
    assert code == 2


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(sigma_N=1)
    with pytest.raises(ValueError):
        RunConfig(output_format="xml")
    with pytest.raises(ValueError):
        RunConfig(grid_inset=0)
    assert RunConfig(precision_digits=50).context().target_tol == 1e-30
    assert RunConfig(precision_digits=25).context().target_tol == 1e-20


# --- plot-data -------------------------------------------------------------------


def test_plot_data(tmp_path, capsys):
    out = tmp_path / "plot.csv"
    code, _, _ = run(capsys, "plot-data", "--grid-points", "101", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "s,F,lower,upper"
    assert len(lines) == 102
    first = [float(x) for x in lines[1].split(",")]
    assert first[0] == 1e-6 and first[2] == 1e-6
    rows = [[float(x) for x in line.split(",")] for line in lines[1:]]
    assert all(a[1] < b[1] for a, b in zip(rows, rows[1:]))
    assert all(r[2] < r[1] < r[3] for r in rows)
    middle = next(line for line in lines if line.startswith("0.5,"))
    assert middle.startswith("0.5,0.503155")
    assert ",0.5,0.61582" in middle


def test_plot_data_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["plot-data", "--grid-points", "50", "--out", str(a)]) == 0
    assert main(["plot-data", "--grid-points", "50", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_plot_data_unwritable(tmp_path, capsys):
    code, _, _ = run(capsys, "plot-data", "--grid-points", "5", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2


# --- certify and verify ------------------------------------------------------------


def test_certify_small_grid(certify_small):
    code, doc = certify_small
    assert code == 0
    jsonschema.validate(doc, SCHEMA)
    assert doc["overall_pass"] is True
    chain = next(e for e in doc["entries"] if e["name"] == "final_chain")
    assert chain["op"] == "<"
    assert abs(chain["value"] - 0.373751) < 5e-6
    assert chain["reference"] == 0.40411380632
    names = [e["name"] for e in doc["entries"]]
    assert "Fprime_limit_0" in names and "sigma_upper" in names


def test_certify_short_majorant_sum_fails(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["certify", "--grid-points", "5", "--sigma-N", "50", "--out", str(out)])
    assert code == 1
    doc = json.loads(out.read_text())
    failed = {e["name"] for e in doc["entries"] if not e["pass"]}
    assert {"sigma_upper", "I3_bound"} <= failed
    assert doc["overall_pass"] is False


def test_certify_lower_precision_same_outcomes(certify_small, tmp_path):
    out = tmp_path / "r25.json"
    code = main(["certify", "--grid-points", "20", "--precision", "25", "--out", str(out)])
    doc = json.loads(out.read_text())
    assert code == certify_small[0]
    assert [(e["name"], e["pass"]) for e in doc["entries"]] == [
        (e["name"], e["pass"]) for e in certify_small[1]["entries"]
    ]


def test_verify_coarse_grid(tmp_path):
    out = tmp_path / "v.json"
    code = main(["verify", "--grid-points", "100", "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    jsonschema.validate(doc, SCHEMA)
    assert abs(doc["s0"] - 0.484993) < 1e-4
    assert abs(doc["min_G"] - 0.00306469) < 1e-6
    assert doc["worst_lower_slack"] >= doc["min_G"]
    assert doc["overall_pass"] is True


def test_verify_text_format(capsys):
    code, out, _ = run(capsys, "verify", "--grid-points", "20", "--format", "text", "--precision", "25")
    assert code == 0
    assert "overall: PASS" in out.splitlines()
    assert "s0: 0.48499" in out
