import json
import math

import numpy as np
import pytest

from dpstates.cli import main, render_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def write_state(path, matrix, dims=None):
    M = np.asarray(matrix, dtype=complex)
    doc = {"dim": M.shape[0]}
    if dims is not None:
        doc["dims"] = list(dims)
    doc["matrix"] = [[[z.real, z.imag] for z in row] for row in M]
    path.write_text(json.dumps(doc))
    return str(path)


class TestRenderJson:
    def test_scalars_and_nesting(self):
        text = render_json({"a": 1, "b": [1.5, None, True], "c": {"d": "x"}})
        assert json.loads(text) == {"a": 1, "b": [1.5, None, True], "c": {"d": "x"}}
        assert text.endswith("\n")

    def test_full_float_precision(self):
        text = render_json({"x": 0.1 + 0.2})
        assert json.loads(text)["x"] == 0.1 + 0.2

    def test_numpy_values(self):
        text = render_json({"v": np.float64(0.5), "n": np.int64(3), "a": np.arange(2)})
        assert json.loads(text) == {"v": 0.5, "n": 3, "a": [0, 1]}


class TestGenAnalyze:
    def test_round_trip_recovers_p(self, capsys, tmp_path):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "dps", "--dim", "4", "--p", "-0.15", "--seed", "11", "--out", path)
        rep = run_json(capsys, "analyze", path)
        assert rep["results"]["verdict"] == "DPS"
        assert rep["results"]["p"] == pytest.approx(-0.15, abs=1e-9)
        assert rep["inputs"]["state"]["sha256"]

    def test_haar_pure_has_unit_p(self, capsys, tmp_path):
        path = str(tmp_path / "pure.json")
        run_json(capsys, "gen", "haar-pure", "--dim", "3", "--seed", "5", "--out", path)
        rep = run_json(capsys, "analyze", path)
        assert rep["results"]["p"] == pytest.approx(1.0, abs=1e-9)

    def test_gen_writes_to_stdout_without_out(self, capsys):
        code, out = run(capsys, "gen", "dps", "--dim", "2", "--p", "0.5", "--seed", "1")
        assert code == 0
        doc = json.loads(out)
        assert doc["dim"] == 2
        assert len(doc["matrix"]) == 2

    def test_analyze_reports_non_dps(self, capsys, tmp_path):
        path = write_state(tmp_path / "m.json", np.diag([0.5, 0.3, 0.2]))
        rep = run_json(capsys, "analyze", path)
        assert rep["results"]["verdict"] == "NOT_DPS"
        assert rep["results"]["p"] is None


class TestExitCodes:
    def test_missing_key_is_2(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"dim": 2}')
        assert main([str("analyze"), str(path)]) == 2

    def test_invalid_json_is_2(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        assert main(["analyze", str(path)]) == 2

    def test_missing_file_is_2(self, tmp_path):
        assert main(["analyze", str(tmp_path / "absent.json")]) == 2

    def test_non_hermitian_is_2(self, tmp_path):
        path = tmp_path / "nh.json"
        doc = {
            "dim": 2,
            "matrix": [[[1.0, 0.0], [0.1, 0.0]], [[0.0, 0.0], [0.0, 0.0]]],
        }
        path.write_text(json.dumps(doc))
        assert main(["analyze", str(path)]) == 2

    def test_domain_error_is_3(self, capsys, tmp_path):
        path = write_state(tmp_path / "m.json", np.diag([0.5, 0.3, 0.2]))
        # closed-form distance demands DPS inputs
        assert main(["distance", path, path, "--method", "closed"]) == 3

    def test_dims_mismatch_is_3(self, tmp_path):
        path = write_state(tmp_path / "m.json", np.eye(4) / 4.0)
        assert main(["schmidt", path, "--dims", "2", "3"]) == 3

    def test_usage_error_is_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["no-such-command"])
        assert exc.value.code == 2

    def test_out_of_range_parameter_is_3(self):
        assert main(["gen", "dps", "--dim", "2", "--p", "2.0", "--seed", "1"]) == 3


class TestDistance:
    def test_both_methods_agree(self, capsys, tmp_path):
        a = str(tmp_path / "a.json")
        b = str(tmp_path / "b.json")
        run_json(capsys, "gen", "dps", "--dim", "5", "--p", "0.6", "--seed", "21", "--out", a)
        run_json(capsys, "gen", "dps", "--dim", "5", "--p", "-0.1", "--seed", "22", "--out", b)
        rep = run_json(capsys, "distance", a, b, "--method", "both")
        assert rep["results"]["delta"]["fidelity"] < 1e-10
        assert rep["results"]["delta"]["trace_distance"] < 1e-10
        assert rep["results"]["closed"]["fuchs_chain_ok"]

    def test_oracle_method_accepts_any_state(self, capsys, tmp_path):
        path = write_state(tmp_path / "m.json", np.diag([0.5, 0.3, 0.2]))
        rep = run_json(capsys, "distance", path, path, "--method", "oracle")
        assert rep["results"]["oracle"]["trace_distance"] == pytest.approx(0.0, abs=1e-12)
        assert rep["results"]["oracle"]["fidelity"] == pytest.approx(1.0, abs=1e-10)


class TestBipartiteCommands:
    def test_schmidt_uses_dims_from_file(self, capsys, tmp_path):
        path = str(tmp_path / "iso.json")
        run_json(capsys, "gen", "isotropic", "--da", "3", "--F", "0.8", "--out", path)
        rep = run_json(capsys, "schmidt", path)
        assert rep["parameters"]["dims"] == [3, 3]
        b = rep["results"]["schmidt_coefficients"]
        assert b == pytest.approx([1.0 / math.sqrt(3.0)] * 3, abs=1e-10)
        assert rep["results"]["closed_form_deviation_a"] < 1e-10

    def test_entanglement_reports_thresholds(self, capsys, tmp_path):
        path = str(tmp_path / "iso.json")
        run_json(capsys, "gen", "isotropic", "--da", "2", "--F", "0.9", "--out", path)
        rep = run_json(capsys, "entanglement", path)
        assert rep["results"]["entangled"]
        assert rep["results"]["negative_count"] == 1
        assert rep["results"]["threshold_pair"] == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert "sufficient but not necessary" in rep["results"]["caveat"]

    def test_werner2q_state_file_round_trip(self, capsys, tmp_path):
        path = str(tmp_path / "w.json")
        rep = run_json(capsys, "werner2q", "--p", "0.8", "--omega", "1.3", "--out", path)
        assert rep["results"]["entangled"]
        ent = run_json(capsys, "entanglement", path)
        assert ent["results"]["entangled"]
        mu4 = min(rep["results"]["pt_eigenvalues"])
        assert min(ent["results"]["pt_spectrum"]) == pytest.approx(mu4, abs=1e-10)

    def test_isotropic_separability(self, capsys):
        rep = run_json(capsys, "isotropic", "--da", "3", "--F", "0.2")
        assert rep["results"]["separable"]
        assert not rep["results"]["entangled"]


class TestChannelCommands:
    def test_depolarize_require_cp(self, capsys, tmp_path):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "haar-pure", "--dim", "3", "--seed", "31", "--out", path)
        rep = run_json(capsys, "channel", "depolarize", path, "--p", "-0.2")
        assert not rep["results"]["physically_realizable"]
        assert main(["channel", "depolarize", path, "--p", "-0.2", "--require-cp"]) == 3

    def test_protocol1_matches_formula(self, capsys, tmp_path):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "haar-pure", "--dim", "2", "--seed", "32", "--out", path)
        rep = run_json(capsys, "channel", "protocol1", path, "--beta2", "0.75")
        assert rep["results"]["formula_delta"] < 1e-10
        assert rep["results"]["p_equivalent"] == pytest.approx(0.25)

    def test_protocol1_rejects_mixed_input(self, capsys, tmp_path):
        path = write_state(tmp_path / "m.json", np.diag([0.6, 0.4]))
        assert main(["channel", "protocol1", path, "--beta2", "0.5"]) == 3

    def test_twirl_channel_file(self, capsys, tmp_path):
        from dpstates import random_channel

        ch = random_channel(2, 3, seed=33)
        doc = {
            "dim": 2,
            "kraus": [[[[z.real, z.imag] for z in row] for row in K] for K in ch.kraus],
        }
        path = tmp_path / "ch.json"
        path.write_text(json.dumps(doc))
        rep = run_json(capsys, "channel", "twirl", str(path))
        assert rep["results"]["p_hat"] == pytest.approx(rep["results"]["p_exact"], abs=1e-12)
        assert rep["results"]["depolarizing_deviation"] < 1e-10

    def test_twirl_rejects_bad_channel_file(self, tmp_path):
        path = tmp_path / "ch.json"
        path.write_text(json.dumps({"dim": 2, "kraus": [[[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]]}))
        assert main(["channel", "twirl", str(path)]) == 2

    def test_recipe_reports_target(self, capsys, tmp_path):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "haar-pure", "--dim", "2", "--seed", "34", "--out", path)
        rep = run_json(
            capsys, "channel", "recipe", path, "--f", "0.7", "--seed", "35", "--trials", "4000"
        )
        assert rep["results"]["p_target"] == pytest.approx(0.6)
        assert rep["results"]["p_hat"] == pytest.approx(0.6, abs=0.05)

    def test_local_scales_isotropic_polarization(self, capsys, tmp_path):
        path = str(tmp_path / "iso.json")
        gen = run_json(capsys, "gen", "isotropic", "--da", "2", "--F", "0.85", "--out", path)
        rep = run_json(capsys, "channel", "local", path, "--pa", "0.5", "--pb", "0.9")
        assert rep["results"]["dps_verdict"] == "DPS"
        assert rep["results"]["p"] == pytest.approx(0.5 * 0.9 * gen["parameters"]["p"], abs=1e-9)


class TestMomentsCommand:
    def test_exact_and_recovery(self, capsys, tmp_path):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "dps", "--dim", "4", "--p", "0.45", "--seed", "41", "--out", path)
        rep = run_json(capsys, "moments", path, "--mode", "exact", "--assume-dps")
        rec = rep["results"]["recovered"]
        assert rec["sign_resolved"]
        assert rec["p"] == pytest.approx(0.45, abs=1e-9)

    def test_mc_requires_seed(self, tmp_path, capsys):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "dps", "--dim", "2", "--p", "0.5", "--seed", "42", "--out", path)
        assert main(["moments", path, "--mode", "mc"]) == 3

    def test_mc_reports_std_error(self, capsys, tmp_path):
        path = str(tmp_path / "s.json")
        run_json(capsys, "gen", "dps", "--dim", "2", "--p", "0.5", "--seed", "43", "--out", path)
        rep = run_json(
            capsys, "moments", path, "--m", "2", "--mode", "mc", "--shots", "5000", "--seed", "44"
        )
        (m2,) = rep["results"]["moments"]
        assert m2["shots"] == 5000
        assert m2["std_error"] > 0
        assert abs(m2["value"] - 0.625) < 5.0 * m2["std_error"]


class TestFig1:
    def test_csv_shape_and_content(self, capsys):
        code, out = run(capsys, "fig1", "--dim", "3", "--grid", "6")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "p,f,bures,trace_distance,sqrt_one_minus_F"
        assert len(lines) == 1 + 36
        first = [float(x) for x in lines[1].split(",")]
        assert first[0] == pytest.approx(-1.0 / 8.0)
        assert first[1] == 0.0
        # identical states at f = 1: all distances vanish
        last = [float(x) for x in lines[-1].split(",")]
        assert last[1] == 1.0
        assert last[2] == last[3] == last[4] == 0.0

    def test_writes_file_with_lf(self, capsys, tmp_path):
        path = tmp_path / "surf.csv"
        code, _ = run(capsys, "fig1", "--dim", "2", "--grid", "3", "--out", str(path))
        assert code == 0
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw.endswith(b"\n")


class TestDeterminism:
    def test_repeat_invocations_are_byte_identical(self, capsys, tmp_path):
        state = str(tmp_path / "s.json")
        run(capsys, "gen", "dps", "--dim", "3", "--p", "0.3", "--seed", "51", "--out", state)
        pure = str(tmp_path / "p.json")
        run(capsys, "gen", "haar-pure", "--dim", "2", "--seed", "52", "--out", pure)
        invocations = [
            ["analyze", state],
            ["gen", "dps", "--dim", "5", "--p", "-0.05", "--seed", "53"],
            ["moments", state, "--mode", "mc", "--m", "2", "3", "--shots", "2000", "--seed", "54"],
            ["channel", "recipe", pure, "--f", "0.8", "--seed", "55", "--trials", "300"],
            ["fig1", "--dim", "4", "--grid", "4"],
            ["isotropic", "--da", "4", "--F", "0.55"],
        ]
        for argv in invocations:
            first = run(capsys, *argv)
            second = run(capsys, *argv)
            assert first == second, argv

    def test_gen_output_files_byte_identical(self, capsys, tmp_path):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        run(capsys, "gen", "dps", "--dim", "4", "--p", "0.2", "--seed", "56", "--out", str(a))
        run(capsys, "gen", "dps", "--dim", "4", "--p", "0.2", "--seed", "56", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()
