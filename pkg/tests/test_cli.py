import csv
import io
import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from osprmat import superdata as sdm
from osprmat.cli import main
from osprmat.exactring import from_json
from osprmat.rfinite import build_R0
from osprmat.superlinalg import GradedMatrix

OSP12 = ["--family", "osp", "--m", "1", "--n", "2", "--parity", "1"]
OSP22 = ["--family", "osp", "--m", "2", "--n", "2", "--parity", "01"]
GL11 = ["--family", "glA", "--m", "1", "--n", "1", "--parity", "01"]


@pytest.fixture
def runner():
    return CliRunner()


def test_finite_json_round_trip_is_bit_exact(runner, tmp_path):
    out = tmp_path / "r0.json"
    res = runner.invoke(main, ["finite", *OSP22, "-o", str(out)])
    assert res.exit_code == 0, res.output
    text = out.read_text()
    sd = sdm.build("osp", 2, 2, "01")
    M = GradedMatrix.from_json(json.loads(text), sd)
    assert M == build_R0(sd)
    assert json.dumps(M.to_json(), indent=1) == text


def test_finite_csv_export(runner):
    res = runner.invoke(main, ["finite", *GL11, "--which", "rinf", "--eval-q", "2", "--format", "csv"])
    assert res.exit_code == 0, res.output
    rows = list(csv.reader(io.StringIO(res.output)))
    cells = [r for r in rows if r]
    assert len(cells[-4:]) == 4
    flat = [c for r in cells for c in r]
    assert "3/2" in flat  # q - 1/q at q = 2


def test_eval_q_with_fourth_root_and_fractional_powers(runner):
    # osp(1|2) entries carry q^(1/2); 16 has a rational fourth root, 3/2 does not
    res = runner.invoke(main, ["finite", *OSP12, "--eval-q", "16"])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["ring"] == "Fraction"
    res = runner.invoke(main, ["finite", *OSP12, "--eval-q", "3/2"])
    assert res.exit_code == 2
    assert "--eval-t" in res.output
    res = runner.invoke(main, ["finite", *OSP12, "--eval-t", "3/2"])
    assert res.exit_code == 0


def test_affine_export_and_pole(runner):
    res = runner.invoke(main, ["affine", *OSP12])
    assert res.exit_code == 0
    assert json.loads(res.output)["ring"] == "ZRat"
    res = runner.invoke(main, ["affine", *OSP12, "--z", "1"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["affine", *OSP12, "--z", "3", "--eval-t", "2"])
    assert res.exit_code == 0
    data = json.loads(res.output)
    assert all(Fraction(e["value"]) for e in data["entries"])


def test_usage_errors_exit_two(runner):
    assert runner.invoke(main, ["finite", "--family", "osp", "--m", "2", "--n", "1", "--parity", "1"]).exit_code == 2
    assert runner.invoke(main, ["finite", *OSP12, "--theta", "x"]).exit_code == 2
    assert runner.invoke(main, ["verify", "finite", "--family", "osp"]).exit_code == 2
    assert runner.invoke(main, ["verify", "bogus"]).exit_code == 2
    assert runner.invoke(main, ["rep", "dump", *OSP12, "--generator", "h1"]).exit_code == 2


def test_rep_dump(runner):
    res = runner.invoke(main, ["rep", "dump", *OSP22])
    data = json.loads(res.output)
    assert {"e0", "f0", "e1", "kinv2"} <= set(data)
    res = runner.invoke(main, ["rep", "dump", *OSP22, "--generator", "e1"])
    assert list(json.loads(res.output)) == ["e1"]


def test_lists(runner):
    res = runner.invoke(main, ["lyndon", "list", "--family", "osp", "--m", "3", "--n", "2", "--parity", "10"])
    assert res.output.splitlines()[0].startswith("[1]")
    res = runner.invoke(main, ["list", "roots", *OSP22, "--format", "json"])
    assert len(json.loads(res.output)) == len(sdm.build("osp", 2, 2, "01").reduced_positive_roots)
    res = runner.invoke(main, ["list", "pairings", *GL11])
    assert res.exit_code == 0 and "t^" in res.output


def test_theta_build_and_mismatch(runner, monkeypatch):
    assert runner.invoke(main, ["theta", "build", *OSP22]).exit_code == 0
    import osprmat.lyndonpbw as lp
    from osprmat.superlinalg import E, kron_graded

    real = lp.theta_closed
    monkeypatch.setattr(lp, "theta_closed", lambda sd: real(sd) + kron_graded(E(sd, 1, 1), E(sd, 1, 1)))
    res = runner.invoke(main, ["theta", "build", *OSP22])
    assert res.exit_code == 1
    assert runner.invoke(main, ["theta", "build", *OSP22, "--check", "rmatrix"]).exit_code == 0


def test_decomp_verify(runner):
    res = runner.invoke(main, ["decomp", "verify", *OSP22])
    assert res.exit_code == 0
    ids = {c["id"] for c in json.loads(res.output)["checks"]}
    assert {"codimension-one", "w3-containment", "generate-w1-w2-w3"} <= ids


def test_verify_single_instance_json_and_csv(runner):
    res = runner.invoke(main, ["verify", "relations", *OSP22])
    assert res.exit_code == 0
    assert json.loads(res.output)["status"] == "pass"
    res = runner.invoke(main, ["verify", "decomp", *GL11, "--format", "csv"])
    lines = res.output.strip().splitlines()
    assert lines[0] == "instance,suite,check,status,residual"
    assert all(",pass," in line for line in lines[1:])


def test_injected_sign_error_reports_location(runner, monkeypatch):
    import osprmat.rfinite as rf

    real = rf.build_R0

    def flipped(sd):
        R = real(sd)
        (r, c), v = next(iter((k, x) for k, x in R.items() if k[0] != k[1]))
        return R - GradedMatrix.from_entries(sd, "VV", {(r, c): 2 * v})

    monkeypatch.setattr(rf, "build_R0", flipped)
    res = runner.invoke(main, ["verify", "finite", *OSP22])
    assert res.exit_code == 1
    data = json.loads(res.output)
    fails = [c for c in data["reports"][0]["checks"] if c["status"] == "fail"]
    assert fails and any("nonzero entries; first (" in c.get("residual", "") for c in fails)


def test_points_and_seed_are_reproducible(runner):
    args = ["verify", "affine", *GL11, "--ybe-mode", "specialize", "--points", "7", "--seed", "11"]
    res = runner.invoke(main, args)
    assert res.exit_code == 0
    ids = [c["id"] for c in json.loads(res.output)["reports"][0]["checks"] if c["id"].startswith("spectral-YBE[t=")]
    assert len(ids) == 7
    again = runner.invoke(main, args)
    ids2 = [c["id"] for c in json.loads(again.output)["reports"][0]["checks"] if c["id"].startswith("spectral-YBE[t=")]
    assert ids == ids2


def test_jobs_from_environment(runner, tmp_path):
    batch = tmp_path / "b.json"
    batch.write_text(json.dumps({"instances": [
        {"family": "osp", "m": 1, "n": 2, "parity": "1"},
        {"family": "glA", "m": 1, "n": 1, "parity": "01"},
    ]}))
    res = runner.invoke(main, ["verify", "decomp", "--batch", str(batch)], env={"RMAT_JOBS": "2"})
    assert res.exit_code == 0, res.output
    reports = json.loads(res.output)["reports"]
    assert [r["instance"] for r in reports] == ["osp(1|2)[1]", "gl(1|1)[01]"]
    res = runner.invoke(main, ["verify", "decomp", "--batch", str(batch)], env={"RMAT_JOBS": "many"})
    assert res.exit_code == 2


def test_bad_batch_file(runner, tmp_path):
    batch = tmp_path / "b.json"
    batch.write_text('{"instances": [{"family": "osp", "m": 2, "n": 1, "parity": "1"}]}')
    assert runner.invoke(main, ["verify", "decomp", "--batch", str(batch)]).exit_code == 2
