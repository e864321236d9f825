"""
SnCharLab Application Constants

Defines all enums, static values, and configuration defaults.
"""

from enum import Enum, IntEnum
from typing import Dict, List, Tuple


class DensityMethod(str, Enum):
    """How a density report was obtained."""

    EXACT_TABLE = "exact-table"
    CERTIFICATE_EXACT = "certificate-exact"
    CERTIFICATE_SAMPLED = "certificate-sampled"


class OutputFormat(str, Enum):
    """Serialization formats accepted by --format."""

    CSV = "csv"
    JSON = "json"
    XLSX = "xlsx"


class ExitCode(IntEnum):
    """Process exit codes of the command-line front end."""

    SUCCESS = 0
    VIOLATIONS = 1
    USAGE = 2
    BUDGET = 3


# Application info
APP_NAME: str = "SnCharLab"
APP_VERSION: str = "1.0.0"
APP_DESCRIPTION: str = "Symmetric-group character tables and divisibility experiments"

# Local folders
LOCAL_APP_FOLDER: str = ".sncharlab"
LOCAL_CONFIG_FILE: str = "config.json"
LOCAL_LOGS_FOLDER: str = "logs"
LOCAL_CACHE_FOLDER: str = "cache"
LOG_FILENAME: str = "sncharlab.log"

# Environment
ENV_CACHE_DIR: str = "SNCHARLAB_CACHE_DIR"

# Table cache (JSON Lines)
CACHE_FORMAT: str = "sgct-cache"
CACHE_VERSION: int = 1
CACHE_ORDER: str = "revlex"

# Budgets (largest n each experiment accepts); overridable in config.json
DEFAULT_BUDGETS: Dict[str, int] = {
    "lemma21_max_n": 12,
    "lemma22_max_n": 14,
    "exact_table_max_n": 18,
    "mod_table_max_n": 20,
    "exact_density_max_n": 16,
    "zeros_max_n": 14,
    "certificate_max_n": 70,
    "moment_max_n": 40,
    "all_parts_max_n": 30,
}

# Sampler
DEFAULT_MAX_REJECTIONS: int = 10**6
DEFAULT_SEED: int = 20201
SAMPLER_RNG_ALGORITHM: str = "numpy.random.PCG64"
SAMPLER_MAX_BATCH_CELLS: int = 4_000_000
SAMPLER_MAX_BATCH_ROWS: int = 65_536
SAMPLER_CHUNK_SIZE: int = 10_000
# Parts j with x^j < e^-36 are drawn by thinning instead of densely
SAMPLER_TAIL_EXPONENT: float = 36.0
EXACT_TCORE_MAX_N: int = 200

# Estimators
FK_NUMERIC_CUTOFF: float = 1e-15
CRITICAL_PRIME_LIMIT: int = 50
COVERING_KS: Tuple[int, ...] = (1, 3, 5)
COVERING_SLACK: float = 1 / 100
# Working precision (decimal digits) for arc endpoints in the covering check
COVERING_DPS: int = 50

# Experiments
LEMMA21_PRIMES: Tuple[int, ...] = (2, 3, 5, 7)
MOMENT_KS: Tuple[int, ...] = (1, 3, 5)
DENSITY_DECIMAL_PLACES: int = 6

# Report columns
DENSITY_CSV_COLUMNS: List[str] = [
    "n",
    "p",
    "method",
    "total_entries",
    "divisible_count",
    "certified_count",
    "zero_count",
    "density_decimal",
]

TREND_CSV_COLUMNS: List[str] = [
    "n",
    "p",
    "divisible_density",
    "odd_density",
    "certified_density",
    "zero_density",
    "sampled_density",
    "sampled_stderr",
    "methods",
]

MOMENT_CSV_COLUMNS: List[str] = [
    "n",
    "k",
    "p",
    "partitions",
    "exact_sum",
    "exact_sum_sq",
    "gf_sum",
    "gf_sum_sq",
    "main_term",
    "main_term_sq",
    "ratio",
    "ratio_sq",
]

TREND_DEFAULT_SAMPLES: int = 2000
