"""Constants for the thompoly package."""

from __future__ import annotations

from typing import Final

# Version for the package
VERSION = "0.1.0"

DOMAIN = "thompoly"

# Environment variables
ENV_REGISTRY_PATH: Final = "THOMPOLY_REGISTRY_PATH"
ENV_LOG_LEVEL: Final = "THOMPOLY_LOG_LEVEL"
ENV_WORKERS: Final = "THOMPOLY_WORKERS"

# Configuration keys
CONF_REGISTRY_PATH = "registry_path"
CONF_LOG_LEVEL = "log_level"
CONF_WORKERS = "workers"
CONF_PREFER_CLOSED_FORM = "prefer_closed_form"

# Default values
DEFAULT_LOG_LEVEL = "WARNING"
DEFAULT_WORKERS = 4  # threads used by verify
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")

# Exit codes
EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_SOLVER = 2
EXIT_UNKNOWN = 3
EXIT_MALFORMED = 4

# Variable naming
SOURCE_PREFIX = "c"
TARGET_PREFIX = "cp"
QUOTIENT_PREFIX = "cb"
TORUS_PREFIX = "a"
HYPERPLANE_VAR = "a"
PULLBACK_VAR = "h"
FIBER_VAR = "t"

# Formal characters
SURFACE_CHARS = ("d", "xi1", "xi2", "xi01")
ORDINARY_CHARS = ("d", "eps0", "C", "T")
COMPLETE_INTERSECTION_CHARS = ("d1", "d2")
PRIMAL_CHARS = ("d",)

# Ambient projective dimensions with a flag construction
SUPPORTED_AMBIENT_DIMS = (3, 4)

# Dimension pairs covered by the bundled registry
PAIR_2_2 = (2, 2)
PAIR_2_3 = (2, 3)
PAIR_3_3 = (3, 3)

# Alternative type names, per dimension pair
TYPE_ALIASES: dict[tuple[int, int], dict[str, str]] = {
    PAIR_2_2: {
        "A0": "Regular",
        "A1": "Fold",
        "A2": "Cusp",
        "A3": "Swallowtail",
        "A4": "Butterfly",
        "I22": "Sharksfin",
        "Lips": "Lips/Beaks",
        "Beaks": "Lips/Beaks",
    },
    PAIR_2_3: {
        "Immersion": "A0",
        "A1": "S0",
        "Crosscap": "S0",
        "S1": "B1",
        "H1": "B1",
        "A2": "H2",
    },
    PAIR_3_3: {
        "Regular": "A0",
        "I2,2": "I22",
    },
}

# Registry file keys, in file order
REGISTRY_KEYS = (
    "name",
    "source_dim",
    "target_dim",
    "codim",
    "torus_rank",
    "source_weights",
    "target_weights",
    "unfolding_weights",
    "normal_weights",
    "known_tp",
    "solvable",
    "notes",
)

REGISTRY_RESOURCE = "registry.json"

# Output formats
FORMAT_TEXT = "text"
FORMAT_JSON = "json"
FORMAT_LATEX = "latex"
FORMATS = (FORMAT_TEXT, FORMAT_JSON, FORMAT_LATEX)

STATUS_PASS = "PASS"
STATUS_FAIL = "FAIL"

# Verification tables, in published order
TABLE_TP_2_2 = "tp-2-2"
TABLE_TP_2_3 = "tp-2-3"
TABLE_TP_3_3 = "tp-3-3"
TABLE_P3_SURFACE = "p3-surface"
TABLE_P3_ORDINARY = "p3-ordinary"
TABLE_P4_SURFACE = "p4-surface"
TABLE_P4_COMPLETE_INTERSECTION = "p4-complete-intersection"
TABLE_P4_PRIMAL = "p4-primal"
TABLE_MULTI = "multi"
TABLE_ALL = "all"
TABLES = (
    TABLE_TP_2_2,
    TABLE_TP_2_3,
    TABLE_TP_3_3,
    TABLE_P3_SURFACE,
    TABLE_P3_ORDINARY,
    TABLE_P4_SURFACE,
    TABLE_P4_COMPLETE_INTERSECTION,
    TABLE_P4_PRIMAL,
    TABLE_MULTI,
)
# Numeric selectors accepted by verify
TABLE_NUMBERS = {str(number): table for number, table in enumerate(TABLES[:8], start=4)}
