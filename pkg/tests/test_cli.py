"""End-to-end checks of the command-line front end.

Everything drives ``main(argv)`` in-process; stdout is captured with
capsys and compared against the library it wraps, so these are wiring
tests, not re-derivations of the math.
"""

import json

import pytest

from acflab.cli import main
from acflab.intervals import enumerate_QE


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestScan:
    def test_csv_shape_and_determinism(self, capsys):
        argv = ["scan", "--lo", "0.5", "--hi", "0.7", "--points", "3",
                "--iters", "2000", "--seed", "7"]
        code1, out1, _ = run(capsys, *argv)
        code2, out2, _ = run(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2
        lines = out1.splitlines()
        header = [ln for ln in lines if ln.startswith("#")]
        body = [ln for ln in lines if not ln.startswith("#")]
        assert body[0] == "alpha,h,stderr,iterations,restarts,seed"
        assert len(body) == 1 + 3
        assert not any(ln.startswith("# generated=") for ln in header)
        keys = [ln[2:].split("=")[0] for ln in header]
        assert "total_range_violations" in keys
        assert body[1].startswith("0.5,") and body[3].startswith("0.7,")

    def test_jobs_do_not_change_output(self, capsys):
        argv = ["scan", "--lo", "0.5", "--hi", "0.7", "--points", "3",
                "--iters", "2000", "--seed", "7"]
        _, serial, _ = run(capsys, *argv)
        _, pooled, _ = run(capsys, *argv, "--jobs", "2")
        assert pooled == serial

    def test_timestamp_is_opt_in(self, capsys):
        code, out, _ = run(capsys, "scan", "--lo", "0.5", "--hi", "0.6",
                           "--points", "2", "--iters", "1000", "--timestamp")
        assert code == 0
        assert out.splitlines()[0].startswith("# generated=")

    def test_window_mode_uses_exact_endpoints(self, capsys):
        code, out, _ = run(capsys, "scan", "--window", "1/2", "--points", "3",
                           "--iters", "1000")
        assert code == 0
        body = [ln for ln in out.splitlines() if not ln.startswith("#")]
        first = float(body[1].split(",")[0])
        last = float(body[3].split(",")[0])
        assert first == pytest.approx(0.3819660112501051, abs=1e-12)
        assert last == pytest.approx(0.6180339887498949, abs=1e-12)
        assert "# window=1/2" in out

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "rows.csv"
        code, out, _ = run(capsys, "scan", "--lo", "0.5", "--hi", "0.6",
                           "--points", "2", "--iters", "1000",
                           "--out", str(target))
        assert code == 0
        assert out == ""
        text = target.read_text()
        assert "alpha,h,stderr,iterations,restarts,seed" in text

    def test_zero_left_endpoint_is_rejected(self, capsys):
        code, _, err = run(capsys, "scan", "--lo", "0", "--hi", "0.5",
                           "--points", "3", "--iters", "100")
        assert code == 2
        assert "lo" in err

    def test_degenerate_grid_is_rejected(self, capsys):
        code, _, _ = run(capsys, "scan", "--lo", "0.5", "--hi", "0.6",
                         "--points", "1", "--iters", "100")
        assert code == 2


class TestClassify:
    def test_locally_constant_verdict(self, capsys):
        code, out, _ = run(capsys, "classify", "[0;(2)]")
        assert code == 0
        doc = json.loads(out)
        assert doc["class"] == "LocallyConstant"
        assert doc["witnesses"]["window"]["r"] == "1/2"

    def test_rational_interval_verdict(self, capsys):
        code, out, _ = run(capsys, "classify", "1/2")
        assert code == 0
        doc = json.loads(out)
        assert doc["class"] == "MonotoneConstantOnInterval"
        assert doc["witnesses"]["interval"]["r"] == "1/2"

    def test_phase_transition_verdict(self, capsys):
        code, out, _ = run(capsys, "classify", "[0;(1)]")
        assert code == 0
        doc = json.loads(out)
        assert doc["class"] == "PhaseTransition"
        assert doc["witnesses"]["untuned"] is True

    def test_out_of_range_parameter(self, capsys):
        code, _, err = run(capsys, "classify", "3/2")
        assert code == 2
        assert err.startswith("error:")

    def test_unparseable_parameter(self, capsys):
        code, _, _ = run(capsys, "classify", "wibble")
        assert code == 2


class TestQe:
    def test_text_listing(self, capsys):
        code, out, _ = run(capsys, "qe", "--max-q", "10")
        assert code == 0
        lines = out.splitlines()
        assert "r=1/2 index=0 N=1 M=1 alpha1=[0;(2)] alpha0=[0;(1)]" in lines
        assert any(ln.startswith("r=1/3 index=1 ") for ln in lines)
        assert any(ln.startswith("r=3/10 index=0 ") for ln in lines)
        assert lines[-1] == f"count={len(enumerate_QE(10))}"

    def test_json_listing(self, capsys):
        code, out, _ = run(capsys, "qe", "--max-q", "10", "--json")
        assert code == 0
        docs = json.loads(out)
        assert len(docs) == len(enumerate_QE(10))
        by_r = {doc["r"]: doc for doc in docs}
        assert by_r["3/10"]["index"] == 0
        assert by_r["1/3"]["N"] == 1 and by_r["1/3"]["M"] == 2


class TestTune:
    def test_finitely_renormalizable_plateau(self, capsys):
        code, out, _ = run(capsys, "tune", "--r", "3/10")
        assert code == 0
        doc = json.loads(out)
        assert doc["untuned_factors"] == ["1/3", "1/2"]
        assert doc["plateau"]["kind"] == "PlateauFR"
        assert doc["plateau"]["r0"] == "1/2"
        assert doc["plateau"]["r1"] == "1/3"

    def test_non_plateau_rational(self, capsys):
        code, out, _ = run(capsys, "tune", "--r", "1/3")
        assert code == 0
        doc = json.loads(out)
        assert doc["plateau"]["kind"] == "NotPlateau"

    def test_non_extremal_rational_is_rejected(self, capsys):
        code, _, err = run(capsys, "tune", "--r", "3/7")
        assert code == 2
        assert "maximal" in err


class TestMatch:
    def test_small_survey_all_verified(self, capsys):
        code, out, _ = run(capsys, "match", "--max-q", "6", "--points", "2")
        assert code == 0
        assert "all Verified" in out
        assert "mismatches=0" in out


class TestDict:
    def test_commute(self, capsys):
        code, out, _ = run(capsys, "dict", "commute", "--r", "1/2",
                           "--samples", "5", "--bits", "30")
        assert code == 0
        assert "all_commute=True" in out
        assert out.count("commutes=True") == 5

    def test_commute_is_seed_deterministic(self, capsys):
        argv = ["dict", "commute", "--r", "1/3", "--samples", "4",
                "--bits", "25", "--seed", "11"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_phi_of_golden_mean(self, capsys):
        code, out, _ = run(capsys, "dict", "phi", "--x", "[0;(1)]")
        assert code == 0
        assert "phi=0.(01)" in out
        assert "value=1/3" in out
        assert "real_ray=True" in out

    def test_phi_of_rational(self, capsys):
        code, out, _ = run(capsys, "dict", "phi", "--x", "1/2")
        assert code == 0
        assert "value=3/8" in out

    def test_angles(self, capsys):
        code, out, _ = run(capsys, "dict", "angles", "--r", "1/3")
        assert code == 0
        assert "Sigma0=011" in out
        assert "Sigma1=100" in out
        assert "length=3" in out


class TestDims:
    def test_default_pair_alphabet(self, capsys):
        code, out, _ = run(capsys, "dims")
        assert code == 0
        assert "branches=4" in out
        assert "upper=0.430676558073" in out
        assert "below_half=True" in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "dims", "--r", "3/10", "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["branches"] == 4
        assert doc["upper"] < 0.5
        assert doc["below_half"] is True

    def test_non_extremal_rational_is_rejected(self, capsys):
        code, _, _ = run(capsys, "dims", "--r", "3/7")
        assert code == 2


def test_missing_subcommand_exits_via_argparse(capsys):
    with pytest.raises(SystemExit):
        main([])
