"""Causal geometry of hyperspin quantum space-times."""

from .chronometry import (
    DEFAULT_TOL,
    CanonicalDecomposition,
    CausalClass,
    Label,
    Tolerance,
    canonical_decompose,
    causal_classify,
    chronometric_form,
    event_to_minkowski,
    is_future_causal,
    is_weakly_hermitian,
    minkowski_to_event,
    mixed_chronometric,
    polarized_covector,
    proper_time,
)
from .errors import HyperchronError

__version__ = "0.1.0"
