"""Exact computations for Lie pairs over Q: the polydifferential Hopf complex, HKR, free Lie algebras and Atiyah classes."""

from .atiyah import Connection, atiyah_cocycle, atiyah_report, canonical_connection, class_is_nonzero, curvature, independence_check
from .ce_cohomology import CECochain, HModule, ce_differential, coboundary_witness, cohomology_dim
from .dpoly import DTensor, PolyDifferentialComplex, TruncationSpec, antipode, counit, cup, shuffle_coproduct, unit
from .exact_linalg import Echelon, SparseMatrix, nullspace_basis, rank, solve
from .free_lie import (
    SymWord,
    beta,
    bracket_compatibility_check,
    d_stability_check,
    lie_bracket_tensor,
    lyndon_basis,
    symmetrization_I,
    verify_I_iso,
)
from .graded_oracle import graded_oracle_betti
from .hkr import ExteriorElement, hkr_map, hkr_report
from .hopf import hopf_axiom_report
from .lie_core import CORPUS, LiePair, PairValidationError, load_pair, validate_pair
from .pbw import D1Element, EnvelopingAlgebra, UEAElement

__version__ = "0.1.0"
