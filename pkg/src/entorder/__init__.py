"""Entanglement order of pure bipartite states.

Schmidt spectra, Renyi-entropy measures, majorization and LOCC
convertibility, light-cone classification, permutohedron geometry and
random-field evolution of mixed-state spectra.
"""

__version__ = "0.1.0"

from .errors import EntorderError
from .geometry import Polytope, arch_line_point, future_polytope, weyl_fs_distance, weyl_hs_distance
from .locc import CausalClass, can_convert, classify, conversion_probability, incomparability_fraction
from .majorize import (
    TTransformStep,
    horn_unistochastic,
    majorizes,
    t_transform_chain,
    weakly_submajorized,
)
from .measures import MeasureRecord, closest_separable_mixed, measure_suite, vidal_monotones
from .mixedstates import RandomFieldChannel, apply_channel, channel_from_target, nk00_test
from .numkernel import EigenSystem, hermitian_eigensystem, partial_trace, partial_transpose
from .schmidt import (
    PureBipartiteState,
    SchmidtDecomposition,
    haar_random_state,
    schmidt_angle,
    schmidt_decompose,
    state_from_hyperspherical,
)
from .spectra import elementary_symmetric, participation_ratio, renyi_entropy
