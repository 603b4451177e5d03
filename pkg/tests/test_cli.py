import json
import subprocess
import sys

import pytest

from jordanscope import cli
from jordanscope.algebra import parse_entry
from jordanscope.family import MatrixFamily

NILPOTENT = {
    "n": 2,
    "params": ["z", "w"],
    "entries": [["z*w", "-z^2"], ["w^2", "-z*w"]],
    "label": "rank-one nilpotent family",
}
SHEAR = {
    "n": 2,
    "params": ["z"],
    "entries": [["z", "1"], ["0", "-z"]],
    "label": "shear",
}
IDENTITY3 = {
    "n": 3,
    "params": ["z"],
    "entries": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
    "label": "identity",
}
CONSTANT = {
    "n": 2,
    "params": ["z"],
    "entries": [["1", "1"], ["0", "2"]],
    "label": "constant",
}


@pytest.fixture
def family_file(tmp_path):
    def write(doc, name="family.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out


# ---------------------------------------------------------------------------
# census


def test_census_nilpotent_family_generic_point(family_file, capsys):
    path = family_file(NILPOTENT)
    code, out = run_cli(["census", path, "--point", "1.0,1.0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "v1"
    assert doc["census"]["blocks"] == [{"2": 1}]
    assert doc["census"]["eigenvalues"] == [[0.0, 0.0]] or abs(
        doc["census"]["eigenvalues"][0][0]
    ) < 1e-8


def test_census_identity_family(family_file, capsys):
    path = family_file(IDENTITY3)
    code, out = run_cli(["census", path, "--point", "0.3"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["census"]["aggregate"] == {"1": 3}
    assert doc["census"]["eigenvalues"] == [[1.0, 0.0]]


def test_census_shear_family_two_simple_eigenvalues(family_file, capsys):
    path = family_file(SHEAR)
    code, out = run_cli(["census", path, "--point", "2.0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["census"]["aggregate"] == {"1": 2}
    eigs = sorted(e[0] for e in doc["census"]["eigenvalues"])
    assert eigs == pytest.approx([-2.0, 2.0])


# ---------------------------------------------------------------------------
# split-set / jst-set


def test_split_set_shear(family_file, capsys):
    path = family_file(SHEAR)
    code, out = run_cli(["split-set", path, "--samples", "200"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["r_max"] == 3
    assert len(doc["functions"]) == 1
    poly = parse_entry(doc["functions"][0], ["z"])
    expect = parse_entry("4*z^2", ["z"])
    assert poly in (expect, -expect)
    assert doc["bound_check"]["passed"]
    assert not doc["empty"]


def test_jst_set_nilpotent(family_file, capsys):
    path = family_file(NILPOTENT)
    code, out = run_cli(["jst-set", path, "--samples", "200"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["denominator_is_one"]
    assert doc["k0"] == 1
    assert doc["rank_values"] == {"1": 1}
    assert not doc["empty"]
    # common zero set of the emitted polynomials is exactly the origin
    hs = [parse_entry(s, ["z", "w"]) for s in doc["functions"]]
    from fractions import Fraction

    from jordanscope.algebra import GaussianRational

    origin = [GaussianRational(0), GaussianRational(0)]
    assert all(h.eval_exact(origin).is_zero() for h in hs)
    probe = [GaussianRational(Fraction(1, 3)), GaussianRational(0)]
    assert not all(h.eval_exact(probe).is_zero() for h in hs)
    assert doc["bound_check"]["passed"]


def test_jst_set_constant_family_empty_marker(family_file, capsys):
    path = family_file(CONSTANT)
    code, out = run_cli(["jst-set", path], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["empty"] is True


# ---------------------------------------------------------------------------
# scan


def test_scan_shear_flags_origin(family_file, capsys):
    path = family_file(SHEAR)
    code, out = run_cli(
        ["scan", path, "--box=-1:1", "--res", "11"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["Split"] == 1
    flagged = [p for p in doc["points"] if p["kind"] == "Split"]
    assert flagged[0]["point"] == [[0.0, 0.0]]


def test_scan_deterministic_and_jobs_invariant(family_file, tmp_path, capsys):
    path = family_file(NILPOTENT)
    outs = []
    for jobs in ("1", "1", "2"):
        out_path = tmp_path / f"scan_{len(outs)}.json"
        code, _ = run_cli(
            [
                "scan", path, "--box=-1:1,-1:1", "--res", "5",
                "--jobs", jobs, "--out", str(out_path),
            ],
            capsys,
        )
        assert code == 0
        outs.append(out_path.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0] == outs[2]


def test_scan_csv_projection(family_file, tmp_path, capsys):
    path = family_file(SHEAR)
    csv_path = tmp_path / "grid.csv"
    code, _ = run_cli(
        ["scan", path, "--box=-1:1", "--res", "5", "--csv", str(csv_path)],
        capsys,
    )
    assert code == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "re_z,kind,rank_theta"
    assert len(lines) == 6


# ---------------------------------------------------------------------------
# track


def test_track_emits_samples_and_events(family_file, tmp_path, capsys):
    path = family_file(SHEAR)
    csv_path = tmp_path / "branches.csv"
    code, out = run_cli(
        [
            "track", path, "--path", "[[1.0],[-1.0]]", "--steps", "50",
            "--csv", str(csv_path),
        ],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert len(doc["events"]) == 1
    assert doc["events"][0]["type"] == "split"
    za = complex(*doc["events"][0]["point_bracket"][0][0])
    assert abs(za) < 1e-5
    assert csv_path.read_text().startswith("t,branch,lambda_re,lambda_im")


# ---------------------------------------------------------------------------
# verify


def test_verify_builtin_corpus_passes(capsys):
    code, out = run_cli(["verify", "--builtin-corpus"], capsys)
    assert code == 0
    assert "FAIL" not in out


def test_verify_detects_corruption(family_file, capsys, monkeypatch):
    # corrupt the identity checker: a failing report must give exit 1
    from jordanscope.jordan import IdentityCheck, IdentityReport

    def broken(*a, **k):
        return IdentityReport([IdentityCheck("forced", "negative control", False)])

    monkeypatch.setattr(cli, "verify_rank_identities", broken)
    path = family_file(CONSTANT)
    code, out = run_cli(["verify", path], capsys)
    assert code == 1
    assert "FAIL" in out


# ---------------------------------------------------------------------------
# wire format / errors


def test_family_roundtrip_identical_polynomials(family_file):
    fam = MatrixFamily.from_spec_dict(NILPOTENT)
    emitted = fam.to_spec_dict()
    fam2 = MatrixFamily.from_spec_dict(emitted)
    assert fam.entries == fam2.entries


def test_missing_file_is_input_error(capsys):
    code = cli.main(["census", "/nonexistent.json", "--point", "1.0"])
    assert code == 2


def test_bad_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code = cli.main(["census", str(path), "--point", "1.0"])
    assert code == 2


def test_bad_entry_expression_is_input_error(tmp_path, capsys):
    doc = dict(SHEAR, entries=[["z/2", "1"], ["0", "-z"]])  # '/' not in grammar
    path = tmp_path / "bad_entry.json"
    path.write_text(json.dumps(doc))
    code = cli.main(["census", str(path), "--point", "1.0"])
    assert code == 2


def test_env_tolerance_override(family_file, capsys, monkeypatch):
    monkeypatch.setenv("JORDANSCOPE_TOL", "1e-6")
    path = family_file(CONSTANT)
    code, out = run_cli(["census", path, "--point", "0.0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["manifest"]["tolerances"]["rel_tol"] == 1e-6


def test_builtin_family_listing_error(capsys):
    code = cli.main(["census", "--builtin", "no-such", "--point", "1.0"])
    assert code == 2


def test_console_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "jordanscope.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert result.stdout.strip() == "0.1.0"
