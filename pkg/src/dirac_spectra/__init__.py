"""Spectral decompositions of one-dimensional Dirac operators
i diag(1,-1) d/dx + v(x) on [0, pi] under regular boundary conditions.

Submodules:
  bc          boundary conditions, classification, spectral parameters
  basis       the explicit Riesz basis Phi, its biorthogonal system, A
  potential   off-diagonal potentials and their matrix representation
  galerkin    truncated operators, spectra, localization geometry
  expansion   partial sums, equiconvergence deficits, point-wise limits
  transforms  weighted/gauge reduction to canonical form, adjoints
  selfadjoint separated self-adjoint problems and the real system
  hilbert     discrete Hilbert transform and weighted-space tools
  cli         command-line front end (the only module that plots)
"""

from .bc import (
    ANTIPERIODIC,
    BcClass,
    BoundaryCondition,
    ClassifiedBc,
    NotRegularError,
    PERIODIC_PLUS,
    SpectralParams,
    char_roots,
    classify_bc,
    spectral_params,
    tau_from_root,
)
from .basis import Jump, SpectralBasis, VectorFunction, expand, inner
from .potential import Entry, MatrixRep, PotentialSpec, fourier_coeffs, matrix_rep, r_tail
from .galerkin import (
    LocalizationReport,
    TruncatedOperator,
    build_truncated,
    localize,
    resolvent_size,
    resolvent_size_bound,
    riesz_projection_diag,
    spectrum,
)
from .expansion import (
    ExpansionReport,
    PointwiseReport,
    endpoint_limits,
    equiconv_deficit,
    free_partial_sum,
    perturbed_partial_sum,
    pointwise_limit,
    transition_matrix,
    verify_pointwise,
)
from .transforms import (
    GaugeData,
    WeightedProblem,
    adjoint_bc,
    change_of_variable,
    endpoint_limits_general,
    gauge_endpoint_limits,
    gauge_reduce,
    is_selfadjoint,
    reduce_problem,
)
from .selfadjoint import (
    RealDiracProblem,
    SeparatedSelfAdjointBC,
    real_to_complex,
    realness_rotation,
    sa_endpoint_limit,
    sa_expand,
    sa_partial_sum,
    sa_spectrum,
)
# the transform function itself stays namespaced (dirac_spectra.hilbert.hilbert)
# so the submodule attribute is not shadowed
from .hilbert import (
    WeightSeq,
    muckenhoupt_running,
    muckenhoupt_sup,
    multiply_in_weighted_space,
    weighted_norm,
)

__version__ = "0.1.0"
