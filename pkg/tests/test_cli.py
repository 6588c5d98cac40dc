"""End-to-end tests for the command-line interface.

Each test invokes main(argv) in-process and parses the captured output.
The numeric oracles repeat the frozen anchors of the library tests: the
alien derivative of the lattice-pole shape at its first singular point
is exactly 1, the angle-0 ray sum of that shape at z = 10 reproduces
the exact factorial-correction constant, the lateral jump of the
geometric-pole shape at z = -3 has modulus 2 pi e^-3, and the depth-one
nested sum at index 2 is pi^2 / 6.  Exit codes follow the contract:
0 on success, 2 on domain refusals (with a machine-readable error
object), 1 on usage mistakes.
"""

import json

import mpmath
import pytest

from resurgence.cli import main
from resurgence.laplace import RaySpec, laplace_ray
from resurgence.borelfun import euler_minor
from resurgence.moulds import exp_scale_mould, mould_from_json, mould_to_json
from resurgence.scalars import ExactScalar, parse_scalar
from resurgence.series import euler_series
from resurgence.words import Alphabet


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err or out
    return json.loads(out)


def as_mpc(value):
    """Read the CLI's numeric JSON form: a string or a {re, im} pair."""
    if isinstance(value, dict):
        return mpmath.mpc(mpmath.mpf(value["re"]), mpmath.mpf(value["im"]))
    return mpmath.mpc(mpmath.mpf(value))


class TestAlien:
    def test_lattice_first_point_is_one(self, capsys):
        data = run_json(capsys, "alien", "--input", "stirling",
                        "--omega", "2pii", "--derivation")
        assert data["value"] == "1"
        assert parse_scalar(data["constant_term"]).is_one()

    def test_lattice_point_multiplier_literal(self, capsys):
        for r in (2, 3):
            data = run_json(capsys, "alien", "--input", "stirling",
                            "--omega", f"{r}*2pii")
            assert data["value"] == f"1/{r}"

    def test_geometric_plus_gives_exact_period(self, capsys):
        data = run_json(capsys, "alien", "--input", "euler",
                        "--omega", "-1", "--plus")
        assert parse_scalar(data["value"]) == ExactScalar.tau()

    def test_derivation_agrees_at_nearest_point(self, capsys):
        plus = run_json(capsys, "alien", "--input", "euler",
                        "--omega", "-1", "--plus")
        der = run_json(capsys, "alien", "--input", "euler",
                       "--omega", "-1", "--derivation")
        assert plus["coefficients"] == der["coefficients"]
        assert plus["constant_term"] == der["constant_term"]


class TestSum:
    def test_ray_factorial_correction(self, capsys):
        data = run_json(capsys, "sum", "--input", "stirling",
                        "--theta", "0", "--z", "10",
                        "--target-err", "1e-10")
        with mpmath.workprec(120):
            target = (mpmath.log(mpmath.mpf(362880))
                      - mpmath.mpf("9.5") * mpmath.log(10)
                      + 10 - mpmath.log(2 * mpmath.pi) / 2)
            assert abs(mpmath.mpf(data["value"]) - target) < 1e-9
        assert float(data["error"]) <= 1e-10
        assert data["diagnostics"]["rigorous_tail"] is True

    def test_lateral_jump_modulus_and_phase(self, capsys):
        data = run_json(capsys, "sum", "--jump", "--input", "euler",
                        "--theta-star", "pi", "--z", "-3")
        with mpmath.workprec(80):
            target = 2 * mpmath.pi * mpmath.exp(-3)
            assert abs(mpmath.mpf(data["jump"]["abs"]) - target) < 1e-7
        assert abs(float(data["jump"]["value"]["re"])) < 1e-12
        assert float(data["jump"]["value"]["im"]) > 0
        for side in ("plus", "minus"):
            assert "error" in data[side]

    def test_hankel_power_kernel(self, capsys):
        data = run_json(capsys, "sum", "--input", "I_sigma:1/2",
                        "--hankel", "--theta", "0", "--z", "2")
        with mpmath.workprec(80):
            assert abs(as_mpc(data["value"]) - 1 / mpmath.sqrt(2)) < 1e-8
        assert data["contour"] == "hankel"

    def test_pi_literal_angle_matches_library(self, capsys):
        data = run_json(capsys, "sum", "--input", "euler",
                        "--theta", "3pi/4", "--z=-2-2i")
        res = laplace_ray(euler_minor(), 0,
                          RaySpec(3 * float(mpmath.pi) / 4,
                                  mpmath.mpc(-2, -2)))
        with mpmath.workprec(80):
            got = as_mpc(data["value"])
            assert abs(got - res.value) <= 4 * res.error_estimate + 1e-15

    def test_dilog_named_input(self, capsys):
        data = run_json(capsys, "sum", "--input", "dilog",
                        "--theta", "-0.5", "--z", "4")
        assert data["diagnostics"]["rigorous_tail"] is True
        assert float(data["error"]) < 1e-10

    def test_deterministic_output(self, capsys):
        argv = ("sum", "--jump", "--input", "euler",
                "--theta-star", "pi", "--z", "-3")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_blocked_ray_is_domain_error(self, capsys):
        code, out, _ = run(capsys, "sum", "--input", "euler",
                           "--theta", "pi", "--z", "-3")
        assert code == 2
        payload = json.loads(out)
        assert payload["error"] == "ray-blocked"
        assert "nearest" in payload["details"]

    def test_negative_margin_is_domain_error(self, capsys):
        code, out, _ = run(capsys, "sum", "--input", "stirling",
                           "--theta", "0", "--z", "-4")
        assert code == 2
        assert json.loads(out)["error"] == "decay-margin"

    def test_hankel_unsupported_shape_is_domain_error(self, capsys):
        code, out, _ = run(capsys, "sum", "--input", "dilog", "--hankel",
                           "--theta", "-0.5", "--z", "4")
        assert code == 2
        assert json.loads(out)["error"] == "unsupported"

    def test_jump_requires_theta_star(self, capsys):
        code, _, err = run(capsys, "sum", "--jump", "--input", "euler",
                           "--z", "-3")
        assert code == 1
        assert json.loads(err)["error"] == "usage"


class TestMzv:
    def test_eval_depth_one(self, capsys):
        data = run_json(capsys, "mzv", "eval", "--s", "2")
        with mpmath.workprec(80):
            assert abs(mpmath.mpf(data["value"])
                       - mpmath.pi ** 2 / 6) <= 1e-10
        assert float(data["error"]) <= 1e-10
        assert data["certified"] is True

    def test_depth_two_collapse(self, capsys):
        a = run_json(capsys, "mzv", "eval", "--s", "2,1")
        b = run_json(capsys, "mzv", "eval", "--s", "3")
        assert abs(mpmath.mpf(a["value"]) - mpmath.mpf(b["value"])) < 1e-9

    def test_relation_both_modes(self, capsys):
        data = run_json(capsys, "mzv", "relation", "--a", "2", "--b", "2",
                        "--mode", "stuffle,shuffle")
        assert data["ok"] is True
        modes = [check["mode"] for check in data["checks"]]
        assert modes == ["stuffle", "shuffle"]
        stuffle_terms = {term["index"]: term["multiplicity"]
                         for term in data["checks"][0]["terms"]}
        assert stuffle_terms["Ze(2, 2)"] == 2

    def test_unknown_mode_is_usage_error(self, capsys):
        code, _, err = run(capsys, "mzv", "relation", "--a", "2",
                           "--b", "2", "--mode", "bogus")
        assert code == 1
        assert json.loads(err)["error"] == "usage"


class TestMould:
    def test_make_check_roundtrip(self, capsys, tmp_path):
        made = run_json(capsys, "mould", "make", "--exp-scale", "1/2",
                        "--letters", "1", "--order", "4")
        path = tmp_path / "m.json"
        path.write_text(json.dumps(made), encoding="utf-8")
        checked = run_json(capsys, "mould", "check", "--file", str(path),
                           "--symmetral", "--alternal")
        assert checked["symmetral"] is True
        assert checked["alternal"] is False
        assert mould_to_json(mould_from_json(made)) == made

    def test_make_matches_library_object(self, capsys):
        made = run_json(capsys, "mould", "make", "--exp-scale", "1/2",
                        "--letters", "1", "--order", "4")
        alphabet = Alphabet([parse_scalar("1")])
        direct = exp_scale_mould(parse_scalar("1/2")).materialize(alphabet, 4)
        assert mould_from_json(made).same_entries(direct)

    def test_check_requires_a_predicate(self, capsys, tmp_path):
        path = tmp_path / "m.json"
        made = run_json(capsys, "mould", "make", "--unit",
                        "--letters", "1", "--order", "2")
        path.write_text(json.dumps(made), encoding="utf-8")
        code, _, err = run(capsys, "mould", "check", "--file", str(path))
        assert code == 1
        assert json.loads(err)["error"] == "usage"


class TestHyperlog:
    def test_word_series_coefficients(self, capsys):
        data = run_json(capsys, "hyperlog", "--word", "1,2", "--order", "8")
        assert data["coefficients"][2] == "1/3"
        parsed = [parse_scalar(c) for c in data["coefficients"]]
        assert parsed[0].is_zero() and parsed[1].is_zero()

    def test_depth_one_singular_value(self, capsys):
        data = run_json(capsys, "hyperlog", "--L", "1", "--prec", "80")
        with mpmath.workprec(100):
            assert abs(mpmath.mpf(data["value"]["im"])
                       - 2 * mpmath.pi) < 1e-15
            assert abs(mpmath.mpf(data["value"]["re"])) < 1e-15
        assert float(data["error"]) < 1e-10

    def test_word_or_L_required(self, capsys):
        code, _, err = run(capsys, "hyperlog", "--order", "8")
        assert code == 1
        assert json.loads(err)["error"] == "usage"


class TestSeries:
    def test_euler_series_roundtrip(self, capsys):
        data = run_json(capsys, "series", "--input", "euler",
                        "--order", "5", "--borel")
        assert data["coefficients"] == ["0", "1", "-1", "2", "-6", "24"]
        fs = euler_series(5)
        parsed = [parse_scalar(c) for c in data["coefficients"]]
        assert parsed == [fs[n] for n in range(6)]
        assert data["borel"]["coefficients"] == ["1", "-1", "1", "-1", "1"]

    def test_table_format(self, capsys):
        code, out, _ = run(capsys, "series", "--input", "euler",
                           "--order", "3", "--format", "table")
        assert code == 0
        assert "= " in out
        assert not out.lstrip().startswith("{")


class TestUsage:
    def test_unknown_flag_rejected(self, capsys):
        code, _, err = run(capsys, "alien", "--input", "euler",
                           "--omega", "-1", "--bogus")
        assert code == 1
        assert json.loads(err)["error"] == "usage"

    def test_subcommand_required(self, capsys):
        code, _, err = run(capsys)
        assert code == 1
        assert json.loads(err)["error"] == "usage"

    def test_unknown_input_name(self, capsys):
        code, _, err = run(capsys, "sum", "--input", "nope",
                           "--theta", "0", "--z", "2")
        assert code == 1
        assert "unknown input" in json.loads(err)["message"]

    def test_seed_flag_accepted(self, capsys):
        data = run_json(capsys, "mzv", "eval", "--s", "2", "--seed", "7")
        assert data["certified"] is True
