import csv
import io
import json
import os
import subprocess
import sys

import pytest

from specact.cli import main, parse_grid

THERMO = ["thermo", "--stat", "fermi", "--variant", "sqrt", "--spectrum", "circle:500",
          "--beta", "0.5", "--mu", "-1"]


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_thermo_json_object(capsys):
    code, out, _ = run(THERMO + ["--format", "json"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert {"log_Z", "entropy", "energy", "modes_used", "tail_bound"} <= set(obj)
    assert obj["modes_used"] == 1000


def test_thermo_csv_columns_mirror_json(capsys):
    _, out_csv, _ = run(THERMO + ["--beta", "0.5,1.0"], capsys)
    _, out_json, _ = run(THERMO + ["--beta", "0.5,1.0", "--format", "json"], capsys)
    rows = list(csv.DictReader(io.StringIO(out_csv)))
    objs = json.loads(out_json)
    assert [list(r) for r in rows] == [list(o) for o in objs]
    assert [float(r["entropy"]) for r in rows] == [o["entropy"] for o in objs]


def test_coeff_grid_reps_agree_within_printed_error(capsys):
    code, out, _ = run(["coeff", "--kind", "gamma", "--a", "-1:3:0.5", "--mu", "-1",
                        "--rep", "bessel,poisson", "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 18
    for b, p in zip(rows[::2], rows[1::2]):
        assert (b["rep"], p["rep"]) == ("bessel", "poisson") and b["a"] == p["a"]
        gap = abs(float(b["value"]) - float(p["value"]))
        assert gap <= float(b["est_error"]) + float(p["est_error"])


def test_numbers_have_seventeen_digits(capsys):
    _, out, _ = run(["coeff", "--kind", "chi", "--a", "1", "--mu", "-1"], capsys)
    value = list(csv.DictReader(io.StringIO(out)))[0]["value"]
    assert value == format(float(value), ".17g")


def test_expand_and_compare(capsys, tmp_path):
    code, out, _ = run(["expand", "--stat", "bose", "--mu", "-1", "--beta", "0.1", "--L", "1"], capsys)
    assert code == 0 and out.splitlines()[0] == "beta,term,value,partial_sum"
    dest = tmp_path / "cmp.json"
    code, out, _ = run(["compare", "--mu", "-1", "--beta", "0.2:0.05:-0.05", "--spectrum", "circle:1000",
                        "--format", "json", "--output", str(dest)], capsys)
    assert code == 0 and out == ""
    rows = json.loads(dest.read_text())
    assert [r["beta"] for r in rows] == [0.2, 0.15, 0.1, 0.05]
    assert len({r["slope"] for r in rows}) == 1


@pytest.mark.parametrize("args,flag", [
    (["thermo", "--spectrum", "sphere:3", "--beta", "1", "--mu", "-1"], "--spectrum"),
    (["thermo", "--spectrum", "circle:3", "--beta", "1:2:-1", "--mu", "-1"], "--beta"),
    (["thermo", "--stat", "bose", "--spectrum", "circle:3", "--beta", "1", "--mu", "0"], "--mu"),
    (["coeff", "--kind", "gamma", "--a", "1", "--mu", "-1", "--rep", "magic"], "--rep"),
    (["coeff", "--kind", "delta", "--a", "1", "--mu", "-1"], "--kind"),
])
def test_config_errors_exit_2_naming_the_flag(capsys, args, flag):
    with pytest.raises(SystemExit) as exc:
        main(args)
    assert exc.value.code == 2
    assert flag in capsys.readouterr().err


def test_domain_errors_exit_1_with_module(capsys):
    code, _, err = run(["coeff", "--kind", "gamma", "--a", "1", "--mu", "-4", "--rep", "xi"], capsys)
    assert code == 1 and "coeffs" in err
    code, _, err = run(["coeff", "--kind", "chi", "--a", "1", "--mu", "0"], capsys)
    assert code == 1


def test_ranges():
    assert parse_grid("-1:3:0.5", "--a")[0] == -1.0 and parse_grid("-1:3:0.5", "--a")[-1] == 3.0
    assert parse_grid("0.1:0.3:0.1", "--a") == [0.1, 0.2, 0.3]
    assert parse_grid("1,2.5", "--a") == [1.0, 2.5]


def _cli(args, threads):
    env = dict(os.environ, SPECACT_THREADS=str(threads))
    return subprocess.run([sys.executable, "-m", "specact", *args], env=env, capture_output=True)


def test_output_is_byte_deterministic_across_runs_and_threads():
    args = ["coeff", "--kind", "kappa", "--a", "-2:2:0.5", "--mu", "-0.5,-2", "--rep", "auto,poisson",
            "--format", "json"]
    runs = [_cli(args, t) for t in (1, 1, 4)]
    assert all(r.returncode == 0 for r in runs)
    assert runs[0].stdout == runs[1].stdout == runs[2].stdout
