"""
SnCharLab Command-Line Application

Parses the command line, wires the services together and maps outcomes
to exit codes: 0 success, 1 violations or a moment mismatch, 2 usage or
domain errors, 3 exceeded budgets.
"""

import argparse
import logging
import sys
from contextlib import redirect_stderr, redirect_stdout
from dataclasses import replace
from typing import IO, Any, Callable, Dict, List, Optional, Sequence

from app.constants import (
    APP_DESCRIPTION,
    APP_NAME,
    APP_VERSION,
    LEMMA21_PRIMES,
    MOMENT_KS,
    TREND_DEFAULT_SAMPLES,
    ExitCode,
    OutputFormat,
)
from core.budgets import BudgetExceededError
from core.cache import CacheFormatError, TableCache
from core.config import ConfigManager, LabConfig
from models.asymptotic import GpParams
from models.report import DensityReport
from reports.base_report import ReportData
from services.asymptotic_service import AsymptoticService, covering_bound_p2
from services.character_service import CharacterService
from services.experiment_service import ExperimentService, MomentMismatchError
from services.report_service import ReportService
from services.sampler_service import SamplerExhaustedError, SamplerService
from services.series_service import DegenerateRatioError, SeriesService

logger = logging.getLogger(__name__)

DEFAULT_CRITICAL_DELTA = 1e-6


def parse_ks(text: str) -> List[int]:
    """
    Parse a comma-separated list of positive integers.

    Raises:
        argparse.ArgumentTypeError: If an item is not an integer
    """
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


class SnCharLabApp:
    """
    Command-line front end.

    Services are built per invocation from the loaded configuration, the
    --threads override and the resolved cache folder.
    """

    def __init__(
        self,
        config_manager: Optional[ConfigManager] = None,
        stdout: Optional[IO[str]] = None,
        stderr: Optional[IO[str]] = None,
    ):
        """
        Initialize the application.

        Args:
            config_manager: Configuration source (default: the singleton)
            stdout: Stream for report data (default sys.stdout)
            stderr: Stream for diagnostics (default sys.stderr)
        """
        self.config_manager = config_manager or ConfigManager.get_instance()
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr
        self.reports = ReportService()
        self.parser = self.build_parser()

    # Parser

    def build_parser(self) -> argparse.ArgumentParser:
        """Build the argument parser with every subcommand."""
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--n", type=int, help="size of the symmetric group / partitions")
        common.add_argument("--max-n", dest="max_n", type=int, help="run every n from 1 to MAX_N")
        common.add_argument("--n-min", dest="n_min", type=int, help="first n of a range")
        common.add_argument("--n-max", dest="n_max", type=int, help="last n of a range")
        common.add_argument("--mod", type=int, help="prime p")
        common.add_argument("--k", type=int, help="k coprime to p")
        common.add_argument("--ks", type=parse_ks, help="comma-separated ks, e.g. 1,3,5")
        common.add_argument("--t", type=int, help="core size t")
        common.add_argument("--cap", type=int, help="cap on l in the r*q sum")
        common.add_argument("--gamma", type=float, help="threshold slack gamma")
        common.add_argument("--delta", type=float, help="delta in [0, 1)")
        common.add_argument("--eps", type=float, help="epsilon in [0, 1/4]")
        common.add_argument("--M", dest="M", type=float, help="largest-part offset M")
        common.add_argument("--samples", type=int, help="number of sampled partitions")
        common.add_argument("--seed", type=int, help="sampler seed (unsigned 64-bit)")
        common.add_argument("--threads", type=int, help="worker processes")
        common.add_argument(
            "--format",
            dest="output_format",
            choices=[fmt.value for fmt in OutputFormat],
            default=OutputFormat.CSV.value,
            help="output format",
        )
        common.add_argument("--out", help="write the report to PATH instead of stdout")
        common.add_argument("--cache-dir", dest="cache_dir", help="table cache folder")
        common.add_argument(
            "--all-parts",
            dest="all_parts",
            action="store_true",
            help="certify with every part of the p-reduction, not only the largest",
        )
        common.add_argument(
            "--log-level",
            dest="log_level",
            default="WARNING",
            choices=["DEBUG", "INFO", "WARNING", "ERROR"],
            help="logging level",
        )

        parser = argparse.ArgumentParser(prog=APP_NAME.lower(), description=APP_DESCRIPTION)
        parser.add_argument("--version", action="version", version=f"{APP_NAME} {APP_VERSION}")
        commands = parser.add_subparsers(dest="command", required=True)

        commands.add_parser("table", parents=[common], help="character table of S_n")
        commands.add_parser("moments", parents=[common], help="moment cross-check of M^(k)")
        commands.add_parser("sample", parents=[common], help="uniform random partitions")
        commands.add_parser("trend", parents=[common], help="density trend over a range of n")

        groups = {
            "density": ("divisibility densities", ["exact", "certified", "sampled"]),
            "verify": ("exhaustive verifiers", ["lemma21", "lemma22", "covering", "eq21"]),
            "count": ("counting functions", ["pn", "tcore", "qp", "r"]),
            "asym": (
                "asymptotic estimates",
                ["rademacher", "mahler", "gp", "critical-primes", "erdos-lehner"],
            ),
        }
        for name, (help_text, actions) in groups.items():
            group = commands.add_parser(name, help=help_text)
            subcommands = group.add_subparsers(dest="action", required=True)
            for action in actions:
                subcommands.add_parser(action, parents=[common])

        return parser

    # Entry point

    def run(self, argv: Sequence[str]) -> int:
        """
        Parse argv, dispatch the subcommand and return the exit code.

        Args:
            argv: Arguments without the program name

        Returns:
            Exit code (see ExitCode)
        """
        try:
            with redirect_stdout(self.stdout), redirect_stderr(self.stderr):
                args = self.parser.parse_args(list(argv))
        except SystemExit as e:
            return int(ExitCode.SUCCESS if e.code in (0, None) else ExitCode.USAGE)

        logging.getLogger().setLevel(args.log_level)
        handler = self._handler(args)

        try:
            self._build_services(args)
            return int(handler(args))
        except MomentMismatchError as e:
            self._error(f"Moment mismatch: {e}")
            return int(ExitCode.VIOLATIONS)
        except (BudgetExceededError, SamplerExhaustedError) as e:
            self._error(str(e))
            return int(ExitCode.BUDGET)
        except (CacheFormatError, DegenerateRatioError, ValueError) as e:
            self._error(f"Error: {e}")
            return int(ExitCode.USAGE)
        except OSError as e:
            logger.error(f"I/O error: {e}")
            self._error(f"Error: {e}")
            return int(ExitCode.USAGE)

    def _handler(self, args: argparse.Namespace) -> Callable[[argparse.Namespace], int]:
        key = args.command if not getattr(args, "action", None) else f"{args.command}_{args.action}"
        return getattr(self, f"_cmd_{key.replace('-', '_')}")

    def _build_services(self, args: argparse.Namespace) -> None:
        config = self.config_manager.load()
        if args.threads is not None:
            if args.threads < 1:
                raise ValueError(f"--threads must be positive, got {args.threads}")
            config = replace(config, threads=args.threads)
        self.config: LabConfig = config

        self.cache = TableCache(self.config_manager.resolve_cache_dir(args.cache_dir))
        self.series = SeriesService()
        self.asymptotic = AsymptoticService(self.series)
        self.characters = CharacterService(config, self.cache)
        self.sampler = SamplerService(config, self.series, self.asymptotic)
        self.experiments = ExperimentService(
            config, self.characters, self.series, self.asymptotic, self.sampler
        )

    # Output helpers

    def _emit(self, data: ReportData, args: argparse.Namespace) -> None:
        self.reports.write(data, OutputFormat(args.output_format), args.out, self.stdout)

    def _say(self, message: str) -> None:
        self.stdout.write(message + "\n")

    def _error(self, message: str) -> None:
        self.stderr.write(message + "\n")

    # Argument helpers

    def _require(self, args: argparse.Namespace, *names: str) -> None:
        missing = [name for name in names if getattr(args, name) is None]
        if missing:
            flags = ", ".join("--" + name.replace("_", "-") for name in missing)
            raise ValueError(f"Missing required flags: {flags}")

    def _sizes(self, args: argparse.Namespace) -> List[int]:
        """Values of n from --n, --max-n (1..MAX_N) or --n-min/--n-max."""
        if args.n is not None:
            return [args.n]
        if args.max_n is not None:
            if args.max_n < 1:
                raise ValueError(f"--max-n must be positive, got {args.max_n}")
            return list(range(1, args.max_n + 1))
        if args.n_min is not None and args.n_max is not None:
            if args.n_max < args.n_min:
                raise ValueError(f"Empty range: --n-min {args.n_min} > --n-max {args.n_max}")
            return list(range(args.n_min, args.n_max + 1))
        raise ValueError("Give --n, --max-n or --n-min/--n-max")

    def _seed(self, args: argparse.Namespace) -> int:
        return self.config.default_seed if args.seed is None else args.seed

    def _parameters(self, args: argparse.Namespace, *names: str) -> Dict[str, Any]:
        return {name: getattr(args, name) for name in names if getattr(args, name) is not None}

    def _violations(self, name: str, results: List[Dict[str, Any]], args: argparse.Namespace) -> int:
        total = sum(result["violations"] for result in results)
        if args.out:
            self._emit(self.reports.build_verification_report(name, results), args)
        self._say(f"{total} violations")
        logger.info(f"{name}: {total} violations over {len(results)} instances")
        return ExitCode.SUCCESS if total == 0 else ExitCode.VIOLATIONS

    # Commands

    def _cmd_table(self, args: argparse.Namespace) -> int:
        self._require(args, "n")
        table = self.characters.character_table(args.n, modulus=args.mod)
        self._emit(self.reports.build_table_report(table), args)
        return ExitCode.SUCCESS

    def _cmd_density_exact(self, args: argparse.Namespace) -> int:
        reports: List[DensityReport] = []
        for n in self._sizes(args):
            if args.mod is None:
                reports.append(self.experiments.zeros_report(n))
            else:
                reports.append(self.experiments.exact_density_report(n, args.mod))
        self._emit(self.reports.build_density_report(reports, self._parameters(args, "mod")), args)
        return ExitCode.SUCCESS

    def _cmd_density_certified(self, args: argparse.Namespace) -> int:
        self._require(args, "mod")
        reports = [
            self.experiments.certified_density_report(n, args.mod, all_parts=args.all_parts)
            for n in self._sizes(args)
        ]
        parameters = self._parameters(args, "mod")
        parameters["all_parts"] = args.all_parts
        self._emit(self.reports.build_density_report(reports, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_density_sampled(self, args: argparse.Namespace) -> int:
        self._require(args, "mod")
        samples = TREND_DEFAULT_SAMPLES if args.samples is None else args.samples
        seed = self._seed(args)
        reports = [
            self.experiments.sampled_density_report(n, args.mod, samples, seed)
            for n in self._sizes(args)
        ]
        parameters = {"mod": args.mod, "samples": samples, "seed": seed}
        parameters.update(self.sampler.rng_metadata())
        self._emit(self.reports.build_density_report(reports, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_verify_lemma21(self, args: argparse.Namespace) -> int:
        primes = [args.mod] if args.mod is not None else list(LEMMA21_PRIMES)
        results = []
        for n in self._sizes(args):
            for p in primes:
                results.append({"n": n, "p": p, "violations": self.experiments.verify_lemma21(n, p)})
        return self._violations("lemma21", results, args)

    def _cmd_verify_lemma22(self, args: argparse.Namespace) -> int:
        results = [
            {"n": n, "violations": self.experiments.verify_lemma22(n)} for n in self._sizes(args)
        ]
        return self._violations("lemma22", results, args)

    def _cmd_verify_covering(self, args: argparse.Namespace) -> int:
        p = 2 if args.mod is None else args.mod
        if p != 2:
            raise ValueError(f"The covering check is defined for p = 2, got {p}")
        ks = args.ks
        if ks is None:
            covered = self.asymptotic.covering_check_p2()
            ks_text = "1,3,5"
        else:
            covered = self.asymptotic.covering_check(ks, p, covering_bound_p2())
            ks_text = ",".join(str(k) for k in ks)
        results = [
            {"p": p, "ks": ks_text, "bound": covering_bound_p2(), "violations": 0 if covered else 1}
        ]
        return self._violations("covering", results, args)

    def _cmd_verify_eq21(self, args: argparse.Namespace) -> int:
        self._require(args, "mod")
        k = 1 if args.k is None else args.k
        gamma = 0.0 if args.gamma is None else args.gamma
        results = []
        for n in self._sizes(args):
            if args.samples is not None:
                violations = self.experiments.verify_eq21_sampled(
                    n, args.mod, k, gamma, args.samples, self._seed(args)
                )
            else:
                violations = self.experiments.verify_eq21(n, args.mod, k, gamma)
            results.append({"n": n, "p": args.mod, "k": k, "gamma": gamma, "violations": violations})
        return self._violations("eq21", results, args)

    def _cmd_count_pn(self, args: argparse.Namespace) -> int:
        self._require(args, "n")
        series = self.series.partition_numbers(args.n)
        self._emit(self.reports.build_count_report("p", series, {"n": args.n}), args)
        return ExitCode.SUCCESS

    def _cmd_count_tcore(self, args: argparse.Namespace) -> int:
        self._require(args, "n", "t")
        series = self.series.tcore_counts(args.t, args.n)
        parameters = self._parameters(args, "n", "t")
        self._emit(self.reports.build_count_report("c_t", series, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_count_qp(self, args: argparse.Namespace) -> int:
        self._require(args, "n", "mod")
        series = self.series.qp_counts(args.mod, args.n)
        parameters = self._parameters(args, "n", "mod")
        self._emit(self.reports.build_count_report("q_p", series, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_count_r(self, args: argparse.Namespace) -> int:
        self._require(args, "n", "mod", "ks")
        series = self.series.r_counts(args.ks, args.mod, args.n)
        parameters = self._parameters(args, "n", "mod")
        parameters["ks"] = ",".join(str(k) for k in args.ks)
        if args.cap is not None:
            parameters["eq41_bound"] = self.series.eq41_bound(args.n, args.mod, args.ks, args.cap)
            if len(args.ks) >= 2:
                parameters["lemma41_ratio"] = self.series.lemma41_ratio(
                    args.n, args.mod, args.ks, args.cap
                )
        self._emit(self.reports.build_count_report("r", series, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_moments(self, args: argparse.Namespace) -> int:
        p = 2 if args.mod is None else args.mod
        if args.k is not None:
            ks = [args.k]
        else:
            ks = list(args.ks) if args.ks is not None else list(MOMENT_KS)
        reports = [
            self.experiments.moment_crosscheck(n, k, p) for n in self._sizes(args) for k in ks
        ]
        self._emit(self.reports.build_moment_report(reports, {"mod": p}), args)
        return ExitCode.SUCCESS

    def _cmd_asym_rademacher(self, args: argparse.Namespace) -> int:
        reports = [(n, self.asymptotic.rademacher_report(n)) for n in self._sizes(args)]
        self._emit(self.reports.build_asymptotic_report(reports), args)
        return ExitCode.SUCCESS

    def _cmd_asym_mahler(self, args: argparse.Namespace) -> int:
        self._require(args, "mod")
        reports = [(n, self.asymptotic.mahler_report(args.mod, n)) for n in self._sizes(args)]
        self._emit(self.reports.build_asymptotic_report(reports, {"mod": args.mod}), args)
        return ExitCode.SUCCESS

    def _cmd_asym_gp(self, args: argparse.Namespace) -> int:
        self._require(args, "mod")
        delta = 0.0 if args.delta is None else args.delta
        gamma = 1 + delta if args.gamma is None else args.gamma
        eps = 0.0 if args.eps is None else args.eps
        m = args.n if args.n is not None else 1
        params = GpParams.for_size(args.mod, m, gamma, eps, delta)
        rows = [
            {"quantity": "g_p", "value": self.asymptotic.g_p(params)},
            {"quantity": "g_p_max_closed_form", "value": self.asymptotic.g_p_max_closed_form(args.mod, delta)},
        ]
        parameters = {"mod": args.mod, "gamma": gamma, "eps": eps, "delta": delta}
        self._emit(self.reports.build_values_report("g_p", rows, ["quantity", "value"], parameters), args)
        return ExitCode.SUCCESS

    def _cmd_asym_critical_primes(self, args: argparse.Namespace) -> int:
        delta = DEFAULT_CRITICAL_DELTA if args.delta is None else args.delta
        signs = self.asymptotic.critical_prime_check(delta)
        rows = [{"p": p, "sign": sign} for p, sign in sorted(signs.items())]
        self._emit(
            self.reports.build_values_report("Critical Primes", rows, ["p", "sign"], {"delta": delta}),
            args,
        )
        return ExitCode.SUCCESS

    def _cmd_asym_erdos_lehner(self, args: argparse.Namespace) -> int:
        self._require(args, "n")
        offsets = [args.M] if args.M is not None else [-1.0, 0.0, 1.0]
        rows = []
        for M in offsets:
            threshold, probability = self.asymptotic.erdos_lehner(args.n, M)
            row: Dict[str, Any] = {"n": args.n, "M": M, "threshold": threshold, "probability": probability}
            if args.samples is not None:
                row["frequency"] = self.sampler.erdos_lehner_frequency(
                    args.n, M, args.samples, self._seed(args)
                )
            rows.append(row)
        keys = ["n", "M", "threshold", "probability"]
        parameters: Dict[str, Any] = {}
        if args.samples is not None:
            keys.append("frequency")
            parameters = {"samples": args.samples, "seed": self._seed(args)}
            parameters.update(self.sampler.rng_metadata())
        self._emit(self.reports.build_values_report("Largest Part Law", rows, keys, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_sample(self, args: argparse.Namespace) -> int:
        self._require(args, "n")
        samples = 1 if args.samples is None else args.samples
        cfg = self.sampler.make_config(args.n, self._seed(args))
        partitions = self.sampler.sample_partitions(cfg, samples)
        parameters = {"n": args.n, "samples": samples, "seed": cfg.seed}
        parameters.update(self.sampler.rng_metadata())
        self._emit(self.reports.build_samples_report(partitions, parameters), args)
        return ExitCode.SUCCESS

    def _cmd_trend(self, args: argparse.Namespace) -> int:
        self._require(args, "n_min", "n_max", "mod")
        samples = TREND_DEFAULT_SAMPLES if args.samples is None else args.samples
        seed = self._seed(args)
        rows = self.experiments.trend_suite(args.n_min, args.n_max, args.mod, samples, seed)
        parameters = {"mod": args.mod, "samples": samples, "seed": seed}
        parameters.update(self.sampler.rng_metadata())
        self._emit(self.reports.build_trend_report(rows, parameters), args)
        return ExitCode.SUCCESS


def run(argv: Sequence[str]) -> int:
    """Run the command line with argv (without the program name) and return the exit code."""
    return SnCharLabApp().run(argv)
