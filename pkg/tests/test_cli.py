import json
import subprocess
import sys

import pytest

from leafduffing.cli import main, parse_real


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_published_value(capsys):
    assert run(["eval", "--kind", "sleafh2", "--t", "0.5"], capsys) == (0, "0.503141363\n", "")


def test_eval_trivial_value(capsys):
    assert run(["eval", "--kind", "cleafh2", "--t", "0"], capsys)[:2] == (0, "1\n")


def test_eval_beyond_the_pole(capsys):
    code, out, err = run(["eval", "--kind", "sleafh2", "--t", "1.9"], capsys)
    assert code == 2
    assert out == ""
    assert err.startswith("DomainExceeded: pole at 1.85407")


def test_eval_missing_b(capsys):
    code, _, err = run(["eval", "--type", "XIII", "--t", "1"], capsys)
    assert code == 2
    assert err.startswith("MissingB")


def test_eval_grid_and_integral_kind(capsys):
    code, out, _ = run(["eval", "--kind", "CLH2", "--grid", "0:1:0.5"], capsys)
    assert code == 0
    assert out.splitlines() == ["t,CLH2(t)", "0,0", "0.5,0.545169614", "1,1.514209452"]


def test_eval_higher_basis(capsys):
    code, out, _ = run(["eval", "--kind", "sleaf1", "--t", "1", "--precision", "12"], capsys)
    assert code == 0
    assert out == "0.841470984808\n"


def test_eval_solution_with_named_constant(capsys):
    code, out, _ = run(["eval", "--type", "XIII", "--B", "pi2/2", "--t", "0"], capsys)
    assert code == 0
    assert out == "1\n"


def test_const(capsys):
    code, out, _ = run(["const"], capsys)
    assert code == 0
    rows = dict(line.split(",") for line in out.splitlines()[1:])
    assert rows["zeta2"].startswith("1.85407")
    assert rows["eta2"].startswith("1.31102")


def test_table_rows(capsys):
    _, out, _ = run(["table", "--id", "T4"], capsys)
    assert "0,2.414213562,14.07106781,0.414213562" in out.splitlines()
    _, out, _ = run(["table", "--id", "T1"], capsys)
    lines = out.splitlines()
    assert lines[0] == "t,sleafh2(t),cleafh2(t),int_0^t sleafh2(u)du,int_0^t cleafh2(u)du"
    assert lines[1] == "0,0,1,0,0"


def test_table_json(capsys):
    _, out, _ = run(["table", "--id", "T7", "--format", "json"], capsys)
    payload = json.loads(out)
    assert payload["id"] == "T7"
    assert payload["rows"][1]["number"] == "(2U)"


def test_figure_column_groups(capsys):
    _, out, _ = run(["figure", "--id", "3"], capsys)
    assert len(out.splitlines()[0].split(",")) == 12


def test_solution_subcommands(capsys):
    base = ["--type", "XII", "--phi", "-2", "--B", "2"]
    _, out, _ = run(["solution", "domain", *base], capsys)
    assert out.splitlines()[1].startswith("interval,-1.06570")
    _, out, _ = run(["solution", "coeffs", "--type", "VIII"], capsys)
    assert out.splitlines()[1] == "0,3,-4,0"
    _, out, _ = run(["solution", "initial", "--type", "XIII", "--phi", "-1", "--B", "1"], capsys)
    assert out.splitlines()[1] == "0,1"
    code, out, _ = run(["solution", "residual", "--type", "X"], capsys)
    assert code == 0 and out.splitlines()[1].endswith(",pass")
    _, out, _ = run(["solution", "eval", "--type", "VIII", "--t", "0"], capsys)
    assert out.splitlines() == ["t,x(t),dx/dt,d2x/dt2", "0,1,0,1"]


def test_periods_and_extrema(capsys):
    _, out, _ = run(["periods", "--type", "XIII", "--count", "2"], capsys)
    assert out.splitlines()[2].startswith("2,0.693147181,1.386294361,2.079441542,")
    _, out, _ = run(["extrema", "--type", "XIII", "--k-max", "2"], capsys)
    assert out.splitlines()[3].startswith("(2U),1.620875816,5.028840775,1.609437912,5")


def test_verify_subset(capsys):
    code, out, _ = run(["verify", "--only", "identities"], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "7/7 checks passed"


def test_verify_with_loose_tolerance_fails_the_tables(capsys):
    code, out, _ = run(["verify", "--only", "tables", "--tol", "1e-2", "--rel-tol", "1e-2"], capsys)
    assert code == 1
    assert "FAIL [tables] table T2" in out


def test_usage_errors(capsys):
    assert run(["table", "--id", "T99"], capsys)[0] == 2
    assert run(["verify", "--only", "nonsense"], capsys)[0] == 2
    assert run(["eval", "--kind", "tanh2", "--t", "0"], capsys)[0] == 2
    assert run(["eval", "--kind", "sleaf2", "--t", "0", "--precision", "0"], capsys)[0] == 2
    assert run(["nonsense"], capsys)[0] == 2
    assert run(["eval", "--kind", "sleaf2", "--t", "abc"], capsys)[0] == 2


def test_config_file_supplies_defaults(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"type": "XIII", "B": "pi2/2", "precision": 5}))
    _, out, _ = run(["solution", "eval", "--config", str(cfg), "--t", "1"], capsys)
    assert out.splitlines()[1] == "1,-2.37085,-8.65879,24.5759"
    # explicit flags win over the file
    _, out, _ = run(["solution", "eval", "--config", str(cfg), "--t", "1", "--precision", "3"], capsys)
    assert out.splitlines()[1].startswith("1,-2.371,")
    cfg.write_text(json.dumps({"colour": "red"}))
    assert run(["const", "--config", str(cfg)], capsys)[0] == 2


def test_out_file_and_io_failure(tmp_path, capsys):
    target = tmp_path / "t2.csv"
    assert run(["table", "--id", "T2", "--out", str(target)], capsys)[:2] == (0, "")
    assert target.read_text().startswith("t,x(t),x(t)^3,d2x/dt2\n-1.3,")
    code, _, err = run(["table", "--id", "T2", "--out", str(tmp_path / "missing" / "x.csv")], capsys)
    assert code == 2 and err.startswith("IOFailure")


@pytest.mark.parametrize("args", [["table", "--id", "T11"], ["figure", "--id", "26"]])
def test_runs_are_byte_identical(tmp_path, args):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for p in paths:
        assert main([*args, "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_spec_json_round_trip_through_the_cli(tmp_path, capsys):
    from leafduffing import SolutionSpec

    spec = SolutionSpec("XIV", -2.0, 1.3, 1.0, 2.0)
    cfg = tmp_path / "spec.json"
    cfg.write_text(spec.to_json())
    _, a, _ = run(["solution", "eval", "--config", str(cfg), "--grid", "0:1:0.25", "--precision", "15"], capsys)
    flags = ["--type", "XIV", "--A", "-2", "--omega", "1.3", "--phi", "1", "--B", "2"]
    _, b, _ = run(["solution", "eval", *flags, "--grid", "0:1:0.25", "--precision", "15"], capsys)
    assert a == b


def test_parse_real_named_constants():
    assert parse_real("pi2/2") == pytest.approx(1.311028777146, abs=1e-12)
    assert parse_real("-zeta2") == pytest.approx(-1.854074677301, abs=1e-12)
    assert parse_real("1e-3") == 1e-3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "leafduffing.cli", "eval", "--kind", "sleafh2", "--t", "0.5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout == "0.503141363\n"
