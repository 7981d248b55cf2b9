"""Paged, congruence-sieved meet-in-the-middle search for x^4 + 2y^4 = z^4 + 4w^4."""

from .congruence import CaseId, SearchConfig
from .engine import Checkpoint, EngineKind, run, run_page
from .oracle import exact_search, quadruple_scan, verify_residue_claims
from .verify import Solution

__all__ = [
    "CaseId",
    "Checkpoint",
    "EngineKind",
    "SearchConfig",
    "Solution",
    "exact_search",
    "quadruple_scan",
    "run",
    "run_page",
    "verify_residue_claims",
]

__version__ = "0.1.0"
