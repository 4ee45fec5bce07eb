"""
Command-line tests: golden text output, JSON payloads and exit codes.
"""

import json
from unittest.mock import patch

import pytest
from typer.testing import CliRunner

from app import app
from core.errors import InternalInconsistency
from core.types import EXIT_CODES
from orchestrator import cmd_apply, cmd_classify
from symbolic import apply_A, equals, read

runner = CliRunner()


def invoke(*args):
    return runner.invoke(app, list(args))


def invoke_json(*args):
    result = invoke(*args, "--json")
    return result, json.loads(result.stdout)


# ======================== APPLY ========================

@pytest.mark.cli
@pytest.mark.golden
class TestApplyCommand:
    """Test `apply`."""

    def test_period_two_step(self):
        """Test apply x/(1-x) prints 1/(1 - x)."""
        result = invoke("apply", "x/(1-x)")
        assert result.exit_code == 0
        assert result.stdout == "1/(1 - x)\n"

    def test_logistic_step(self):
        """Test apply x/(1+x) prints 1/(1 + x)."""
        result = invoke("apply", "x/(1+x)")
        assert result.exit_code == 0
        assert result.stdout == "1/(1 + x)\n"

    def test_zero_function(self):
        """Test apply 0 exits 2 with the domain message."""
        result = invoke("apply", "0")
        assert result.exit_code == 2
        assert "operator undefined on the zero function" in result.output

    def test_parse_error(self):
        """Test a bad logarithm exits 1."""
        result = invoke("apply", "ln(1+x)")
        assert result.exit_code == 1
        assert "logarithm argument must be x" in result.output

    def test_not_representable(self):
        """Test a rational power of a sum exits 2."""
        assert invoke("apply", "(1+x)^(1/2)").exit_code == 2

    def test_json(self):
        """Test the JSON payload and that it re-parses to the internal value."""
        result, payload = invoke_json("apply", "x/(1-x)")
        assert result.exit_code == 0
        assert payload == {"input": "x/(1 - x)", "output": "1/(1 - x)"}
        assert equals(read(payload["output"]), apply_A(read(payload["input"])))

    def test_json_error(self):
        """Test errors in JSON mode carry status and message."""
        result, payload = invoke_json("apply", "0")
        assert result.exit_code == 2
        assert payload["status"] == "domain_error"
        assert "zero function" in payload["error"]


# ======================== ORBIT ========================

@pytest.mark.cli
@pytest.mark.golden
class TestOrbitCommand:
    """Test `orbit`."""

    def test_preperiodic(self):
        """Test the logistic orbit text."""
        result = invoke("orbit", "x/(1+x)")
        assert result.exit_code == 0
        assert result.stdout.splitlines() == [
            "0: x/(1 + x)",
            "1: 1/(1 + x)",
            "2: -x/(1 + x)",
            "3: 1/(1 + x)",
            "preperiod 1, period 2",
        ]

    def test_fixed_point_json(self):
        """Test 1/(5-ln(x)) reports preperiod 0, period 1."""
        result, payload = invoke_json("orbit", "1/(5-ln(x))")
        assert result.exit_code == 0
        assert payload["preperiod"] == 0
        assert payload["period"] == 1
        assert payload["truncated"] is False
        assert len(payload["iterates"]) == 2

    def test_zero_function_note(self):
        """Test x^2 -> 2 -> 0 ends with a note."""
        result, payload = invoke_json("orbit", "x^2")
        assert result.exit_code == 0
        assert payload == {
            "iterates": ["x^2", "2", "0"],
            "preperiod": None,
            "period": None,
            "truncated": False,
            "note": "zero_function",
        }
        text = invoke("orbit", "x^2").stdout
        assert "zero function reached at step 2" in text

    def test_step_cap(self):
        """Test --max-steps 1 reports no repeat."""
        result = invoke("orbit", "x/(1+x)", "--max-steps", "1")
        assert result.exit_code == 0
        assert result.stdout.splitlines()[-1] == "no repeat within 1 steps"

    def test_invalid_step_cap(self):
        """Test --max-steps 0 exits 2."""
        assert invoke("orbit", "x", "--max-steps", "0").exit_code == 2

    def test_iterates_reparse(self):
        """Test every emitted iterate re-parses to the computed value."""
        _, payload = invoke_json("orbit", "x/(1+x)")
        f = read("x/(1+x)")
        for text in payload["iterates"]:
            assert equals(read(text), f)
            f = apply_A(f)


# ======================== CLASSIFY ========================

@pytest.mark.cli
@pytest.mark.golden
class TestClassifyCommand:
    """Test `classify`."""

    def test_period_two(self):
        """Test 1/(1-x) classifies as period2."""
        result = invoke("classify", "1/(1-x)")
        assert result.exit_code == 0
        assert result.stdout == "period2, a=1, c=-1, partner=x/(1 - x)\n"

    def test_period_two_json(self):
        """Test the JSON verdict."""
        _, payload = invoke_json("classify", "1/(1-x)")
        assert payload == {"kind": "period2", "a": "1", "c": "-1", "partner": "x/(1 - x)", "k": None}

    def test_fixed(self):
        """Test 1/(5-ln(x)) classifies as fixed with a=5."""
        result = invoke("classify", "1/(5-ln(x))")
        assert result.stdout == "fixed, a=5\n"

    def test_none(self):
        """Test x/(1+x) is in neither family."""
        result = invoke("classify", "x/(1+x)")
        assert result.stdout == "none\n"

    def test_constant(self):
        """Test a constant is reported as such."""
        result = invoke("classify", "2/7")
        assert result.stdout == "constant, k=2/7\n"

    def test_internal_inconsistency_exit_code(self):
        """Test an extraction failure surfaces as exit 4."""
        with patch("orchestrator.classify", side_effect=InternalInconsistency("shape test failed")):
            result = invoke("classify", "1/(1-x)")
        assert result.exit_code == 4
        assert "internal inconsistency" in result.output


# ======================== MAKE ========================

@pytest.mark.cli
@pytest.mark.golden
class TestMakeCommand:
    """Test `make period2|fixed|logistic`."""

    def test_period_two(self):
        """Test make period2 --a 1 --c 1."""
        result = invoke("make", "period2", "--a", "1", "--c", "1")
        assert result.exit_code == 0
        assert result.stdout == "x/(1 - x)\n1/(1 - x)\n"

    def test_period_two_gaussian_parameter(self):
        """Test a Gaussian-rational --a round-trips through classify."""
        _, payload = invoke_json("make", "period2", "--a", "1/2+1/3*i", "--c", "3/4")
        verdict = cmd_classify(payload["first"])["payload"]
        assert (verdict["kind"], verdict["a"], verdict["c"]) == ("period2", "1/2 + 1/3*i", "3/4")

    def test_fixed(self):
        """Test make fixed --a 0 prints -1/ln(x)."""
        result = invoke("make", "fixed", "--a", "0")
        assert result.exit_code == 0
        assert result.stdout == "-1/ln(x)\n"

    def test_logistic(self):
        """Test make logistic with default and explicit rates."""
        assert invoke("make", "logistic").stdout == "x/(1 + x)\n"
        assert invoke("make", "logistic", "--k", "2").stdout == "x^2/(1 + x^2)\n"

    @pytest.mark.parametrize("args", [
        ["period2", "--a", "0", "--c", "1"],
        ["period2", "--a", "1", "--c", "0"],
        ["period2", "--a", "1", "--c", "i"],
        ["logistic", "--k", "0"],
    ])
    def test_invalid_parameters(self, args):
        """Test degenerate parameters exit 2."""
        assert invoke("make", *args).exit_code == 2

    def test_parameter_parse_error(self):
        """Test a non-constant parameter exits 1."""
        assert invoke("make", "fixed", "--a", "x").exit_code == 1


# ======================== VERIFY ========================

@pytest.mark.cli
class TestVerifyCommand:
    """Test `verify`."""

    def test_logistic_passes(self):
        """Test verify x/(1+x) --tol 1e-6 exits 0."""
        result = invoke("verify", "x/(1+x)", "--tol", "1e-6")
        assert result.exit_code == 0
        assert result.stdout.startswith("pass: max_rel_err=")

    def test_fixed_point_passes(self):
        """Test verify 1/(5-ln(x)) exits 0."""
        assert invoke("verify", "1/(5-ln(x))", "--tol", "1e-6").exit_code == 0

    def test_insufficient_points(self):
        """Test a narrow window around a pole exits 3."""
        result = invoke("verify", "x/(1-x)", "--lo", "0.9", "--hi", "1.1", "--samples", "4")
        assert result.exit_code == 3
        assert "sample points survived the pole guard" in result.output

    def test_json_report(self):
        """Test the JSON report keys."""
        result, payload = invoke_json("verify", "x/(1+x)", "--samples", "32", "--seed", "3")
        assert result.exit_code == 0
        assert set(payload) == {"pass", "max_rel_err", "worst_point", "points_used", "points_skipped", "tol"}
        assert payload["pass"] is True
        assert payload["points_used"] + payload["points_skipped"] == 32

    def test_tolerance_failure(self):
        """Test an impossible tolerance exits 3 with a fail line."""
        result = invoke("verify", "x/(1+x)", "--tol", "1e-300")
        assert result.exit_code == 3
        assert result.stdout.startswith("fail: ")

    def test_invalid_plan(self):
        """Test lo >= hi exits 2."""
        assert invoke("verify", "x", "--lo", "2", "--hi", "1").exit_code == 2


# ======================== CONTRACT ========================

@pytest.mark.cli
class TestContract:
    """Test exit-code mapping and determinism."""

    def test_exit_code_table(self):
        """Test the status to exit-code map is fixed."""
        assert EXIT_CODES == {
            "ok": 0,
            "parse_error": 1,
            "domain_error": 2,
            "verification_failure": 3,
            "internal_inconsistency": 4,
        }

    def test_command_result_shape(self):
        """Test a CommandResult carries status, payload and exit code."""
        result = cmd_apply("x/(1-x)")
        assert result["status"] == "ok"
        assert result["exit_code"] == 0
        assert result["payload"]["output"] == "1/(1 - x)"
        assert result["message"] is None

    @pytest.mark.parametrize("args", [
        ["orbit", "x/(1+x)", "--json"],
        ["classify", "1/(1-x)", "--json"],
        ["verify", "x/(1+x)", "--seed", "11", "--json"],
        ["verify", "x/(1+x)", "--seed", "11"],
    ])
    def test_deterministic_stdout(self, args):
        """Test identical argv gives byte-identical stdout."""
        assert invoke(*args).stdout == invoke(*args).stdout

    def test_every_command_has_json_flag(self):
        """Test --json is accepted everywhere."""
        for args in (["apply", "x"], ["orbit", "x"], ["classify", "x"],
                     ["make", "fixed", "--a", "1"], ["make", "logistic"],
                     ["make", "period2", "--a", "1", "--c", "1"], ["verify", "x"]):
            result = invoke(*args, "--json")
            assert result.exit_code == 0, args
            json.loads(result.stdout)


# ======================== LARGE INPUT ========================

@pytest.mark.cli
class TestLargeInput:
    """Test oversized input ends in a documented exit code."""

    @pytest.mark.parametrize("depth", [300, 2000])
    def test_deep_nesting_is_parse_error(self, depth):
        """Test deeply nested parentheses exit 1 with an offset."""
        result = invoke("apply", "(" * depth + "x" + ")" * depth)
        assert result.exit_code == 1
        assert result.exception is None or isinstance(result.exception, SystemExit)
        assert "nested deeper" in result.output

    def test_long_sum(self):
        """Test a 1500-term sum applies to 1."""
        result = invoke("apply", "+".join(["x"] * 1500))
        assert result.exit_code == 0
        assert result.stdout == "1\n"

    def test_long_sum_orbit(self):
        """Test the same sum as an orbit start."""
        _, payload = invoke_json("orbit", "+".join(["x"] * 1500))
        assert payload["iterates"] == ["1500*x", "1", "0"]
        assert payload["note"] == "zero_function"

    def test_huge_exponent(self):
        """Test apply x^99999999 prints the exponent."""
        result = invoke("apply", "x^99999999")
        assert result.exit_code == 0
        assert result.stdout == "99999999\n"
