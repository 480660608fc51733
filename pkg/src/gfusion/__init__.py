"""Continuous g-fusion frames discretized on finite weighted measure spaces."""

from .duality import (
    alternate_dual_lower_bound,
    canonical_alternate_dual,
    canonical_dual,
    is_alternate_dual,
    is_parseval,
    parsevalize,
    rescale,
    tight_constant,
)
from .errors import *  # noqa: F401,F403
from .gen import (
    GenConfig,
    alternate_dual_pair,
    mercedes_frame,
    orthonormal_basis_frame,
    perturbed_dual_pair,
    random_frame,
    random_pair,
    two_atom_frame,
)
from .identities import SuiteConfig, run_suite
from .io import load_frame, save_frame
from .model import (
    CoefficientVector,
    FrameBounds,
    GFusionFrame,
    MeasureAtom,
    MeasureSpace,
    Subspace,
    SubsetMask,
    subset_complement,
    validate_frame,
)
from .operators import (
    AWeights,
    a_weighted_operator,
    analysis_apply,
    energy,
    frame_bounds,
    frame_operator,
    inverse_frame_operator,
    is_frame,
    mixed_partial_operator,
    pair_operator,
    partial_frame_operator,
    synthesis_apply,
)
from .pairs import analyze_pair, perturbation_check, resolution_witness, verify_resolution
from .reports import CheckSuiteResult, IdentityReport

__version__ = "0.1.0"
