"""Exact SET/SEQ calculus and connectivity asymptotics for fast-growing labeled classes."""

__version__ = "0.1.0"

from .decomp import (
    DerivedSequences,
    bender_compose_check,
    connected_counts,
    derivative_coeffs,
    derivative_coeffs_by_partitions,
)
from .diagnostics import Verdict, gargantuan_check, product_check
from .errors import SetSeqError
from .expansion import (
    InvNSeries,
    evaluate_at,
    exact_probability,
    inv_n_series,
    leading_term_report,
    term_list,
)
from .models import ModelSpec, RatioKind, builtin, custom_from_file
from .series import CountingSequence, Egf, egf_from_counts

__all__ = [
    "CountingSequence",
    "DerivedSequences",
    "Egf",
    "InvNSeries",
    "ModelSpec",
    "RatioKind",
    "SetSeqError",
    "Verdict",
    "bender_compose_check",
    "builtin",
    "connected_counts",
    "custom_from_file",
    "derivative_coeffs",
    "derivative_coeffs_by_partitions",
    "egf_from_counts",
    "evaluate_at",
    "exact_probability",
    "gargantuan_check",
    "inv_n_series",
    "leading_term_report",
    "product_check",
    "term_list",
]
