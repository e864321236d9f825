"""
SnCharLab Application Tests

Tests for the command line: dispatch, output and exit codes.
"""

import io
import json

import pytest

from app.application import SnCharLabApp, parse_ks
from models.series import PSeries
from services.series_service import SeriesService


def output(app: SnCharLabApp) -> str:
    """Everything the app wrote to its stdout."""
    return app.stdout.getvalue()


class TestCommands:
    """Tests for subcommands and their output."""

    def test_density_exact_csv(self, app):
        """Test the S_3 density row."""
        assert app.run(["density", "exact", "--n", "3", "--mod", "2"]) == 0
        assert output(app) == (
            "n,p,method,total_entries,divisible_count,certified_count,zero_count,density_decimal\n"
            "3,2,exact-table,9,2,2,1,0.222222\n"
        )

    def test_density_exact_without_prime(self, app):
        """Test that no --mod gives the zero density."""
        assert app.run(["density", "exact", "--n", "4"]) == 0
        assert output(app).splitlines()[1] == "4,,exact-table,25,,,4,0.160000"

    def test_density_certified(self, app):
        """Test a range of certified densities."""
        assert app.run(["density", "certified", "--max-n", "5", "--mod", "2"]) == 0
        lines = output(app).splitlines()
        assert len(lines) == 6
        assert lines[3].startswith("3,2,certificate-exact,9,,2,")

    def test_density_sampled_json(self, app):
        """Test sampled densities with RNG metadata."""
        assert app.run(
            ["density", "sampled", "--n", "15", "--mod", "3", "--samples", "50", "--seed", "2", "--format", "json"]
        ) == 0
        document = json.loads(output(app))
        assert document["parameters"]["rng"] == "numpy.random.PCG64"
        assert document["parameters"]["seed"] == 2
        assert document["rows"][0]["method"] == "certificate-sampled"

    def test_verify_core_vanishing(self, app):
        """Test the t-core vanishing check."""
        assert app.run(["verify", "lemma22", "--max-n", "6"]) == 0
        assert output(app) == "0 violations\n"

    def test_verify_merge_congruence_with_report(self, app, temp_dir):
        """Test that --out writes the per-instance report."""
        path = temp_dir / "merge.json"
        assert app.run(["verify", "lemma21", "--max-n", "5", "--format", "json", "--out", str(path)]) == 0
        document = json.loads(path.read_text(encoding="utf-8"))
        assert len(document["rows"]) == 5 * 4
        assert document["summary"] == {"violations": 0}

    def test_verify_covering(self, app):
        """Test the base-2 covering check."""
        assert app.run(["verify", "covering"]) == 0

    def test_verify_covering_fails(self, app):
        """Test that two arcs do not cover."""
        assert app.run(["verify", "covering", "--ks", "1,3"]) == 1
        assert output(app) == "1 violations\n"

    def test_verify_covering_other_prime(self, app):
        """Test that only p = 2 is accepted."""
        assert app.run(["verify", "covering", "--mod", "3"]) == 2

    def test_verify_threshold_predicate(self, app):
        """Test the threshold predicate over all partitions."""
        assert app.run(["verify", "eq21", "--n", "20", "--mod", "2"]) == 0

    def test_count_pn(self, app):
        """Test p(0..10)."""
        assert app.run(["count", "pn", "--n", "10"]) == 0
        lines = output(app).splitlines()
        assert lines[0] == "n,p"
        assert lines[-1] == "10,42"

    def test_count_r_with_cap(self, app):
        """Test restricted counts with the capped-fraction parameters."""
        assert app.run(
            ["count", "r", "--n", "12", "--mod", "2", "--ks", "1,3", "--cap", "12", "--format", "json"]
        ) == 0
        document = json.loads(output(app))
        assert document["parameters"]["eq41_bound"] == "1.000000"
        assert document["parameters"]["ks"] == "1,3"

    def test_table(self, app):
        """Test the S_3 table as CSV."""
        assert app.run(["table", "--n", "3"]) == 0
        assert output(app).splitlines() == [
            "lambda,(3),\"(2,1)\",\"(1,1,1)\"",
            "(3),1,1,1",
            "\"(2,1)\",-1,0,2",
            "\"(1,1,1)\",1,-1,1",
        ]

    def test_moments(self, app):
        """Test moment cross-checks for default ks."""
        assert app.run(["moments", "--max-n", "8"]) == 0
        assert len(output(app).splitlines()) == 1 + 8 * 3

    def test_critical_primes(self, app):
        """Test the sign table at the default delta."""
        assert app.run(["asym", "critical-primes"]) == 0
        lines = output(app).splitlines()
        assert "13,1" in lines
        assert "17,-1" in lines

    def test_gp(self, app):
        """Test g_p at its default gamma."""
        assert app.run(["asym", "gp", "--mod", "3", "--delta", "0.001", "--format", "json"]) == 0
        document = json.loads(output(app))
        assert document["parameters"]["gamma"] == pytest.approx(1.001)
        assert [row["quantity"] for row in document["rows"]] == ["g_p", "g_p_max_closed_form"]

    def test_rademacher(self, app):
        """Test estimate rows for a range of n."""
        assert app.run(["asym", "rademacher", "--n-min", "10", "--n-max", "12"]) == 0
        assert len(output(app).splitlines()) == 4

    def test_erdos_lehner(self, app):
        """Test the default offsets."""
        assert app.run(["asym", "erdos-lehner", "--n", "100"]) == 0
        assert len(output(app).splitlines()) == 4

    def test_sample_deterministic(self, config_manager):
        """Test that the same seed prints the same partitions."""
        texts = []
        for _ in range(2):
            app = SnCharLabApp(config_manager, stdout=io.StringIO(), stderr=io.StringIO())
            assert app.run(["sample", "--n", "30", "--samples", "5", "--seed", "7"]) == 0
            texts.append(output(app))
        assert texts[0] == texts[1]
        assert len(texts[0].splitlines()) == 6

    def test_trend(self, app):
        """Test a short trend table."""
        assert app.run(["trend", "--n-min", "2", "--n-max", "4", "--mod", "2", "--samples", "20"]) == 0
        assert len(output(app).splitlines()) == 4


class TestExitCodes:
    """Tests for error handling and exit codes."""

    def test_negative_n(self, app):
        """Test a domain error."""
        assert app.run(["table", "--n", "-1"]) == 2
        assert "Error" in app.stderr.getvalue()

    def test_budget(self, app):
        """Test an exceeded budget."""
        assert app.run(["table", "--n", "19"]) == 3
        assert "exact_table_max_n" in app.stderr.getvalue()

    def test_unknown_command(self, app):
        """Test an unknown subcommand."""
        assert app.run(["frobnicate"]) == 2
        assert "invalid choice" in app.stderr.getvalue()

    def test_usage_error_captured(self, app, capsys):
        """Test that parser errors go to the application stream only."""
        assert app.run(["count", "pn", "--n", "ten"]) == 2
        assert "invalid int value" in app.stderr.getvalue()
        assert capsys.readouterr().err == ""

    def test_help_captured(self, app):
        """Test that --help is written to the application stdout."""
        assert app.run(["count", "pn", "--help"]) == 0
        assert "--max-n" in app.stdout.getvalue()

    def test_missing_flag(self, app):
        """Test a missing required flag."""
        assert app.run(["count", "tcore", "--n", "10"]) == 2
        assert "--t" in app.stderr.getvalue()

    def test_xlsx_without_out(self, app):
        """Test that Excel output needs a path."""
        assert app.run(["table", "--n", "3", "--format", "xlsx"]) == 2

    def test_xlsx_with_out(self, app, temp_dir):
        """Test Excel output to a file."""
        path = temp_dir / "table.xlsx"
        assert app.run(["table", "--n", "4", "--format", "xlsx", "--out", str(path)]) == 0
        assert path.exists()

    def test_moment_mismatch(self, app, monkeypatch):
        """Test that a moment mismatch exits with 1."""
        monkeypatch.setattr(SeriesService, "fk_series", lambda self, k, p, n: PSeries.zero(n))
        assert app.run(["moments", "--n", "6", "--k", "1"]) == 1
        assert "Moment mismatch" in app.stderr.getvalue()

    def test_bad_threads(self, app):
        """Test that --threads 0 is rejected."""
        assert app.run(["count", "pn", "--n", "3", "--threads", "0"]) == 2

    def test_sampler_exhausted(self, app, config_manager):
        """Test that an exhausted sampler exits with 3."""
        config_manager.load().max_rejections = 1
        assert app.run(["sample", "--n", "1000", "--samples", "20"]) == 3


class TestCache:
    """Tests for cache folder resolution from the command line."""

    def test_env_cache_dir(self, app, temp_dir, monkeypatch):
        """Test that SNCHARLAB_CACHE_DIR receives the table file."""
        cache = temp_dir / "env-cache"
        monkeypatch.setenv("SNCHARLAB_CACHE_DIR", str(cache))
        assert app.run(["table", "--n", "4"]) == 0
        assert (cache / "sn4_exact.jsonl").exists()

    def test_flag_beats_env(self, app, temp_dir, monkeypatch):
        """Test that --cache-dir takes precedence."""
        monkeypatch.setenv("SNCHARLAB_CACHE_DIR", str(temp_dir / "env-cache"))
        flag = temp_dir / "flag-cache"
        assert app.run(["table", "--n", "3", "--mod", "2", "--cache-dir", str(flag)]) == 0
        assert (flag / "sn3_mod2.jsonl").exists()
        assert not (temp_dir / "env-cache").exists()

    def test_corrupt_cache(self, app, temp_dir):
        """Test that a corrupt cache file is a usage error."""
        cache = temp_dir / "bad-cache"
        cache.mkdir()
        (cache / "sn3_exact.jsonl").write_text("garbage\n", encoding="utf-8")
        assert app.run(["table", "--n", "3", "--cache-dir", str(cache)]) == 2


class TestParseKs:
    """Tests for the --ks parser."""

    def test_parse(self):
        """Test a comma list."""
        assert parse_ks("1,3,5") == [1, 3, 5]
        assert parse_ks("7") == [7]
