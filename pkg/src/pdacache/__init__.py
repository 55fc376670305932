"""Placement delivery arrays for coded caching: build, check, bound, solve, simulate."""

from .core import (
    EMPTY,
    FrequencyCensus,
    ParseError,
    PdaGrid,
    PdaParams,
    VerificationReport,
    canonical_equal,
    canonicalize,
    combinations_bt,
    combinations_tb,
    frequency_census,
    read_pda,
    verify,
    write_pda,
)

__version__ = "0.1.0"
