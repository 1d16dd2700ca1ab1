"""Asymmetric streaming algorithms for edit distance, LCS and LNST, with
exact oracles and hard-instance generators."""

from .ed_stream import EdStreamParams, approx_ed_streaming, three_approx
from .fls import FlsParams, find_longest_substring, fls_base, guarantee_factor
from .inner import InnerEstimator
from .lcs_binary import approx_lcs_binary, best_match, classify_balance
from .lnst import approx_lnst, grid
from .model import OfflineText, OnlineStream, RunReport, SpaceMeter

__all__ = [
    "EdStreamParams",
    "FlsParams",
    "InnerEstimator",
    "OfflineText",
    "OnlineStream",
    "RunReport",
    "SpaceMeter",
    "approx_ed_streaming",
    "approx_lcs_binary",
    "approx_lnst",
    "best_match",
    "classify_balance",
    "find_longest_substring",
    "fls_base",
    "grid",
    "guarantee_factor",
    "three_approx",
]
