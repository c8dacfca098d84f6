from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from algrat.cli import COMMANDS, run
from algrat.experiments import FIG1_EQUATION, FIG1_TRIPLES


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_approx_example():
    code, out, _ = call("approx", "--eq", "y^2-y-z", "--init", "1,1", "--z", "6", "--n", "40")
    assert code == 0
    value = complex(out.split("=")[1].strip().replace("i", "j"))
    assert abs(value - 3) < 1e-6


def test_approx_json_matches_integer_oracle():
    code, out, _ = call("approx", "--eq", "y^2-y-z", "--init", "1,1", "--z", "6", "--n", "6", "--json")
    u = [1, 1]
    for _ in range(5):
        u.append(u[-1] + 6 * u[-2])
    data = json.loads(out)
    assert code == 0 and data["r_n"][0] == pytest.approx(u[6] / u[5], rel=1e-14)
    assert "tolerances" in data


def _csv_rows(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["set_tag", "re", "im", "order_or_mult", "aux", "class"]
    return rows[1:]


@pytest.fixture(scope="module")
def fig1_loci_csv():
    return call("loci", "--eq", FIG1_EQUATION, "--init", FIG1_TRIPLES["paper"],
                "--window", "-3,3,-3,3", "--grid", "256,256", "--format", "csv")


def test_loci_csv_reports_sigma(fig1_loci_csv):
    code, out, _ = fig1_loci_csv
    assert code == 0
    sigma = [r for r in _csv_rows(out) if r[0] == "sigma"]
    # the count itself is checked by the acceptance suite
    assert len(sigma) == sum(int(r[3]) for r in sigma) >= 1
    assert {r[0] for r in _csv_rows(out)} >= {"xi", "upsilon", "delta_T", "S", "sigma"}


def test_loci_csv_is_byte_identical(fig1_loci_csv):
    again = call("loci", "--eq", FIG1_EQUATION, "--init", FIG1_TRIPLES["paper"],
                 "--window", "-3,3,-3,3", "--grid", "256,256", "--format", "csv")
    assert again[1] == fig1_loci_csv[1]


def test_threeconj_example():
    code, out, _ = call("threeconj", "--C", "4", "--n", "41", "--check", "real-zeros")
    assert code == 0 and "all_real=true" in out


def test_threeconj_below_three_reports_nonreal():
    code, out, _ = call("threeconj", "--C", "-1", "--n", "41", "--check", "real-zeros", "--json")
    data = json.loads(out)
    assert code == 0 and data["checks"]["real_zeros"]["all_real"] is False
    assert data["regime"] == "C=-1"


def test_threeconj_all_checks():
    code, out, _ = call("threeconj", "--C", "4", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["checks"]["discriminant"]["holds"] is True
    assert sorted(round(d["C"]) for d in data["checks"]["degenerate"]) == [-1, 3]
    assert data["checks"]["interlacing"]["ok"] is True


@pytest.mark.parametrize("argv", [
    ["approx", "--eq", "y^2-y-z"],                        # missing --z
    ["approx", "--eq", "y^2-y-z", "--z", "z"],            # non-constant point
    ["loci", "--eq", "y^2-y-z", "--window", "1,2,3"],     # wrong arity
    ["loci", "--eq", "y^2-y-z", "--grid", "1,8"],
    ["threeconj"],
    ["nosuchcommand"],
    ["approx", "--bogus"],
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_computation_error_exit_1_names_the_error():
    code, _, err = call("approx", "--eq", "(z-1)*y^2 - y - z", "--init", "1,1", "--z", "1", "--n", "5")
    assert code == 1 and "PoleLocusPoint" in err
    code, _, err = call("approx", "--eq", "y^2 + * z", "--z", "1")
    assert code == 1 and "EquationSyntaxError" in err


def test_negative_window_values():
    code, out, _ = call("loci", "--eq", "y^2-y-z", "--window", "-3,1,-1,1", "--grid", "64,32", "--json")
    data = json.loads(out)
    assert code == 0 and data["window"] == [-3, 1, -1, 1]
    code, out, _ = call("rate", "--eq", "y^2-y-z", "--init", "1,1", "--z", "-0.1", "--json")
    assert code == 0 and json.loads(out)["class"] == "Dominant"


def test_every_command_has_json_tolerances(tmp_path):
    argvs = {
        "approx": ["--eq", "y^2-y-z", "--z", "2"],
        "ratio": ["--eq", "y^2-y-z", "--init", "1,-1", "--n", "4", "--z", "2"],
        "loci": ["--eq", "y^2-y-z", "--grid", "32,32"],
        "poles": ["--eq", "y^2-y-z", "--init", "1,-1", "--n", "8", "--grid", "64,64"],
        "slowgrowth": ["--eq", "y^2-y-z", "--init", "1,-1", "--z", "2"],
        "rate": ["--eq", "y^2-y-z", "--init", "1,1", "--z", "6"],
        "threeconj": ["--C", "4", "--n", "12"],
        "figure1": ["--triple", "standard", "--n", "8", "--grid", "64,64"],
        "figure3": ["--n", "12", "--grid", "64,64"],
    }
    assert set(argvs) == set(COMMANDS)
    for name, extra in argvs.items():
        code, out, err = call(name, *extra, "--json")
        assert code == 0, (name, err)
        data = json.loads(out)
        assert data["command"] == name and "tolerances" in data


def test_slowgrowth_example():
    code, out, _ = call("slowgrowth", "--eq", "y^2-y-z", "--init", "1,-1", "--z", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["sigma_count"] == 1
    assert data["sigma"][0][0] == pytest.approx([2, 0])
    assert abs(complex(*data["g"])) < 1e-10


def test_files_and_overwrite_refusal(tmp_path):
    args = ["poles", "--eq", "y^2-y-z", "--init", "1,1", "--n", "6", "--grid", "32,32",
            "--out", str(tmp_path / "run")]
    assert call(*args)[0] == 0
    names = sorted(p.name for p in (tmp_path / "run").iterdir())
    assert names == ["poles.csv", "poles.json", "poles.svg"]
    before = (tmp_path / "run" / "poles.csv").read_bytes()
    code, _, err = call(*args)
    assert code == 2 and "--force" in err
    assert call(*args, "--force")[0] == 0
    assert (tmp_path / "run" / "poles.csv").read_bytes() == before


def test_svg_output_is_self_contained():
    code, out, _ = call("loci", "--eq", "y^2-y-z", "--window", "-3,1,-1,1", "--grid", "64,32",
                        "--format", "svg")
    assert code == 0 and out.startswith("<svg") and 'viewBox="' in out
    assert "href" not in out and "<style" not in out.split(">")[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "algrat", "approx", "--eq", "y - z", "--z", "2", "--n", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "r_3" in proc.stdout
