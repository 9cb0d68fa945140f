import json
from fractions import Fraction
from pathlib import Path

import pytest

from cyclic_fsignature.cli import REPORT_MODELS, main
from cyclic_fsignature.models import AnalyzeReport, CertifyReport, FrobeniusReport, TauComparison

GOLDEN = Path(__file__).parent / "golden"


class TestAnalyzeCommand:
    """Test cases for `fsig analyze`."""

    def test_seven_three(self, capsys):
        """Test the special module rows of 1/7(1,3)."""
        code = main(["analyze", "--n", "7", "--a", "3"])
        out = capsys.readouterr().out

        assert code == 0
        assert "M_2: gens x^2, y^3; s = 3/7" in out
        assert "M_1: gens x, y^5; s = 2/7" in out
        assert "M_3: gens x^3, y; s = 2/7" in out
        assert "HJ continued fraction: [3, 2, 2]" in out
        assert "≈" in out

    def test_eight_five(self, capsys):
        """Test s(M_2) = 5/16 for 1/8(1,5)."""
        assert main(["analyze", "--n", "8", "--a", "5"]) == 0
        assert "M_2: gens x^2, y^2; s = 5/16" in capsys.readouterr().out

    def test_pseudo_reflection(self, capsys):
        """Test exit code 2 and a gcd message on stderr."""
        code = main(["analyze", "--n", "6", "--a", "4"])
        captured = capsys.readouterr()

        assert code == 2
        assert "gcd" in captured.err
        assert captured.out == ""

    def test_json_round_trip(self, capsys):
        """Test that the JSON report re-renders to identical bytes."""
        assert main(["analyze", "--n", "7", "--a", "3", "--format", "json"]) == 0
        text = capsys.readouterr().out.rstrip("\n")

        assert AnalyzeReport.model_validate_json(text).model_dump_json(indent=2) == text
        assert json.loads(text)["specials"][2]["dual_fsignature"] == "3/7"


class TestFrobeniusCommand:
    """Test cases for `fsig frobenius`."""

    def test_counts(self, capsys):
        """Test the decomposition of ^1R over 1/7(1,3), p = 2."""
        code = main(["frobenius", "--n", "7", "--a", "3", "--p", "2", "--e", "1", "--t", "0"])
        out = capsys.readouterr().out

        assert code == 0
        assert "counts = (1,0,1,1,0,1,0)" in out
        assert "a_e = 1" in out

    def test_all_labels(self, capsys):
        """Test that omitting --t lists every label."""
        assert main(["frobenius", "--n", "7", "--a", "3", "--p", "2", "--e", "2", "--format", "json"]) == 0
        report = FrobeniusReport.model_validate_json(capsys.readouterr().out)

        assert [row.label for row in report.rows] == list(range(7))
        assert all(sum(row.ratios) == 1 for row in report.rows)

    def test_p_divides_n(self, capsys):
        """Test the p | n error."""
        code = main(["frobenius", "--n", "7", "--a", "3", "--p", "7", "--e", "1"])

        assert code == 2
        assert "p divides n" in capsys.readouterr().err

    def test_missing_p(self, capsys):
        """Test that --p and --e are required."""
        assert main(["frobenius", "--n", "7", "--a", "3"]) == 2
        assert "--p" in capsys.readouterr().err


class TestQuiverCommand:
    """Test cases for `fsig quiver`."""

    def test_dot_golden(self, capsys):
        """Test that DOT output matches the golden file byte-for-byte."""
        assert main(["quiver", "--n", "7", "--a", "3", "--format", "dot"]) == 0
        expected = (GOLDEN / "quiver_7_3.dot").read_text(encoding="utf-8")
        assert capsys.readouterr().out == expected

    def test_json(self, capsys):
        """Test the JSON export."""
        assert main(["quiver", "--n", "7", "--a", "3", "--format", "json"]) == 0
        data = json.loads(capsys.readouterr().out)

        assert len(data["vertices"]) == 7
        assert len(data["arrows"]) == 14

    def test_unknown_format(self, capsys):
        """Test that svg is rejected."""
        assert main(["quiver", "--n", "7", "--a", "3", "--format", "svg"]) == 2
        assert "format" in capsys.readouterr().err

    def test_png(self, tmp_path, capsys):
        """Test the PNG drawing written to a file."""
        target = tmp_path / "quiver.png"
        assert main(["quiver", "--n", "7", "--a", "3", "--format", "png", "--output", str(target)]) == 0
        assert target.read_bytes().startswith(b"\x89PNG")

    def test_png_needs_output(self, capsys):
        """Test that PNG output requires a file."""
        assert main(["quiver", "--n", "7", "--a", "3", "--format", "png"]) == 2


class TestCertifyCommand:
    """Test cases for `fsig certify`."""

    def test_pass_within_bound(self, capsys):
        """Test PASS with b/q^2 within 14/64 of 3/7."""
        argv = ["certify", "--n", "7", "--a", "3", "--p", "2", "--e", "3", "--t", "2"]
        assert main(argv) == 0
        assert capsys.readouterr().out.rstrip().endswith("PASS")

        assert main(argv + ["--format", "json"]) == 0
        report = CertifyReport.model_validate_json(capsys.readouterr().out)
        assert report.passed
        assert abs(report.ratio - Fraction(3, 7)) <= Fraction(14, 64)

    def test_ring(self, capsys):
        """Test that t = 0 reports the splitting number."""
        assert main(["certify", "--n", "7", "--a", "3", "--p", "2", "--e", "2", "--t", "0"]) == 0
        out = capsys.readouterr().out

        assert "b = 2 = a_e" in out
        assert "PASS" in out

    def test_non_special(self, capsys):
        """Test that a non-special index exits with 2."""
        assert main(["certify", "--n", "7", "--a", "3", "--p", "2", "--e", "1", "--t", "5"]) == 2
        assert "special" in capsys.readouterr().err

    def test_guard(self, capsys):
        """Test that very large q needs --unsafe-large."""
        assert main(["certify", "--n", "7", "--a", "3", "--p", "2", "--e", "11", "--t", "1"]) == 2
        assert "--unsafe-large" in capsys.readouterr().err


class TestCompareTauCommand:
    """Test cases for `fsig compare-tau`."""

    def test_gorenstein(self, capsys):
        """Test the Gorenstein equality message."""
        assert main(["compare-tau", "--n", "4", "--a", "3", "--t", "1", "--p", "3", "--e", "1"]) == 0
        assert "tau = self; equality (Gorenstein)" in capsys.readouterr().out

    def test_deterministic(self, capsys):
        """Test that a fixed seed gives identical reports."""
        argv = ["compare-tau", "--n", "7", "--a", "3", "--t", "2", "--p", "2", "--e", "2", "--seed", "1"]
        assert main(argv + ["--format", "json"]) == 0
        first = capsys.readouterr().out
        assert main(argv + ["--format", "json"]) == 0
        second = capsys.readouterr().out

        assert first == second
        record = TauComparison.model_validate_json(first)
        assert record.tau_label == 5
        assert record.b_self <= record.b_tau

    def test_missing_characteristic(self, capsys):
        """Test that missing --p/--e is a usage error."""
        assert main(["compare-tau", "--n", "7", "--a", "3", "--t", "2"]) == 2

    def test_seed_from_environment(self, capsys, monkeypatch):
        """Test that FSIG_SEED overrides --seed."""
        argv = ["compare-tau", "--n", "7", "--a", "3", "--t", "2", "--p", "2", "--e", "2"]
        monkeypatch.setenv("FSIG_SEED", "1")
        assert main(argv + ["--seed", "99"]) == 0
        assert "seed 1" in capsys.readouterr().out

    def test_bad_seed_from_environment(self, capsys, monkeypatch):
        """Test that a non-integer FSIG_SEED is a usage error."""
        monkeypatch.setenv("FSIG_SEED", "abc")
        argv = ["compare-tau", "--n", "7", "--a", "3", "--t", "2", "--p", "2", "--e", "2"]
        assert main(argv) == 2
        assert "FSIG_SEED" in capsys.readouterr().err


class TestOtherCommands:
    """Test cases for `fsig convergence`, `fsig estimate` and option handling."""

    def test_convergence_table(self, capsys):
        """Test the convergence table and plot."""
        assert main(["convergence", "--n", "7", "--a", "3", "--p", "2", "--e", "4"]) == 0
        out = capsys.readouterr().out

        assert "a_e/q^2 -> 1/7" in out
        assert "NO" not in out

    def test_convergence_plot(self, tmp_path, capsys):
        """Test that --plot writes a PNG."""
        target = tmp_path / "conv.png"
        argv = ["convergence", "--n", "8", "--a", "5", "--p", "3", "--e", "3", "--plot", str(target)]
        assert main(argv) == 0
        assert target.read_bytes().startswith(b"\x89PNG")

    def test_estimate(self, capsys):
        """Test the estimator on 1/2(1,1), p = 3."""
        assert main(["estimate", "--n", "2", "--a", "1", "--p", "3", "--e", "1", "--t", "1"]) == 0
        assert "estimate = 7 (exact)" in capsys.readouterr().out

    def test_estimate_guard(self, capsys):
        """Test the estimator guard and its escape hatch flag."""
        argv = ["estimate", "--n", "7", "--a", "3", "--p", "2", "--e", "7", "--t", "1"]
        assert main(argv) == 2
        assert "guard" in capsys.readouterr().err

    def test_table_only_commands(self, capsys):
        """Test that dot output is refused outside quiver."""
        assert main(["analyze", "--n", "7", "--a", "3", "--format", "dot"]) == 2

    def test_negative_trials(self, capsys):
        """Test that --trials 0 is a validation error."""
        argv = ["estimate", "--n", "7", "--a", "3", "--p", "2", "--e", "1", "--t", "1", "--trials", "0"]
        assert main(argv) == 2

    def test_unknown_command(self, capsys):
        """Test that argparse errors map to exit 2."""
        assert main(["frobnicate", "--n", "7", "--a", "3"]) == 2

    def test_verbose_logs_to_stderr(self, capsys):
        """Test that -v sends info logs to stderr only."""
        assert main(["frobenius", "--n", "7", "--a", "3", "--p", "2", "--e", "1", "--t", "0", "-v"]) == 0
        captured = capsys.readouterr()

        assert "INFO" in captured.err
        assert "INFO" not in captured.out


class TestLargeInputs:
    """Test cases for characteristics and levels far beyond the usual range."""

    def test_certify_with_large_prime(self, capsys):
        """Test that a prime above 2^16 certifies without field tables."""
        argv = ["certify", "--n", "7", "--a", "3", "--p", "70001", "--e", "0", "--t", "1"]
        assert main(argv) == 0
        assert capsys.readouterr().out.rstrip().endswith("PASS")

    def test_estimate_with_large_prime(self, capsys):
        """Test the estimator over GF(70001) itself."""
        argv = ["estimate", "--n", "7", "--a", "3", "--p", "70001", "--e", "0", "--t", "2"]
        assert main(argv) == 0
        assert "field size 70001" in capsys.readouterr().out

    def test_frobenius_beyond_int64(self, capsys):
        """Test q = 2^33, where q^2/n no longer fits in int64."""
        argv = ["frobenius", "--n", "7", "--a", "3", "--p", "2", "--e", "33", "--t", "0"]
        assert main(argv + ["--format", "json"]) == 0
        report = FrobeniusReport.model_validate_json(capsys.readouterr().out)

        assert sum(report.rows[0].counts) == 2**66
        assert all(abs(7 * c - 2**66) <= 7 * 2**33 for c in report.rows[0].counts)


class TestOutputFiles:
    """Test cases for PNG output paths."""

    def test_quiver_png_into_missing_directory(self, tmp_path, capsys):
        """Test that an unwritable path is a usage error, not a traceback."""
        target = tmp_path / "missing" / "quiver.png"
        argv = ["quiver", "--n", "7", "--a", "3", "--format", "png", "--output", str(target)]

        assert main(argv) == 2
        assert "error: cannot write" in capsys.readouterr().err

    def test_convergence_plot_into_missing_directory(self, tmp_path, capsys):
        """Test the same for convergence plots."""
        target = tmp_path / "missing" / "conv.png"
        argv = ["convergence", "--n", "7", "--a", "3", "--p", "2", "--e", "2", "--plot", str(target)]

        assert main(argv) == 2
        assert "cannot write" in capsys.readouterr().err


class TestSchemaCommand:
    """Test cases for `fsig schema`."""

    @pytest.mark.parametrize(
        "command",
        ["analyze", "frobenius", "quiver", "certify", "compare-tau", "convergence", "estimate"],
    )
    def test_every_report_has_a_schema(self, command, capsys):
        """Test that each JSON-producing command has a schema."""
        assert main(["schema", command]) == 0
        schema = json.loads(capsys.readouterr().out)

        assert schema["type"] == "object"
        assert schema["properties"]

    def test_rationals_are_strings(self, capsys):
        """Test that exact rationals are described as num/den strings."""
        assert main(["schema", "certify"]) == 0
        schema = json.loads(capsys.readouterr().out)

        assert schema["properties"]["ratio"]["type"] == "string"
        assert "/" in schema["properties"]["ratio"]["pattern"]

    def test_report_matches_schema_keys(self, capsys):
        """Test that a real report carries exactly the documented keys."""
        assert main(["schema", "analyze"]) == 0
        keys = set(json.loads(capsys.readouterr().out)["properties"])
        assert main(["analyze", "--n", "7", "--a", "3", "--format", "json"]) == 0

        assert set(json.loads(capsys.readouterr().out)) == keys

    def test_unknown_report(self, capsys):
        """Test that an unknown report name is rejected."""
        assert main(["schema", "nothing"]) == 2

    def test_readme_documents_every_field(self):
        """Test that the README lists every top-level report field."""
        readme = (Path(__file__).parent.parent / "README.md").read_text(encoding="utf-8")
        for model in REPORT_MODELS.values():
            assert model.__name__ in readme
            for name in model.model_json_schema(mode="serialization")["properties"]:
                assert f"`{name}`" in readme, (model.__name__, name)


class TestEstimateSpecialLine:
    """Test cases for the special-module line of `fsig estimate`."""

    def test_special_label(self, capsys):
        """Test that a special label is compared with its formula."""
        argv = ["estimate", "--n", "7", "--a", "3", "--p", "2", "--e", "1", "--t", "2"]
        assert main(argv) == 0
        out = capsys.readouterr().out

        assert "M_2 is special (t = 2)" in out
        assert "estimate/q^2 = " in out

    def test_non_special_label(self, capsys):
        """Test the message for a module outside the special family."""
        argv = ["estimate", "--n", "7", "--a", "3", "--p", "2", "--e", "1", "--t", "5"]
        assert main(argv) == 0
        assert "M_5 is not special" in capsys.readouterr().out
