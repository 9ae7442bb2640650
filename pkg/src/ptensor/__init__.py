"""Sign-property certification and complementarity tools for dense tensors.

The package implements, for order-m dimension-n real tensors:

* dense tensor algebra: contractions, principal subtensors, comparison
  tensor, symmetrization, outer powers (``ptensor.core``);
* spectral radius of nonnegative tensors and a multistart H-eigenpair
  search (``ptensor.spectral``);
* structured classes: diagonal dominance, Z/M/H, B/B0, Cauchy, hypergraph
  Laplacians, completely positive constructions, copositivity and
  definiteness sampling tests (``ptensor.classes``);
* a certify-or-refute engine for the strong/weak sign properties and the
  feasibility property, with machine-checkable witnesses and auditable
  certificate chains (``ptensor.pcheck``);
* a tensor complementarity solver with solution-set exploration
  (``ptensor.tcp``);
* deterministic JSON file formats (``ptensor.tensorio``) and a command line
  front end (``ptensor.cli``).
"""

from .budget import SearchBudget
from .classes import (
    CERTIFIED,
    LIKELY,
    REFUTED,
    UNKNOWN,
    ClassReport,
    FactorSet,
    Hypergraph,
    cauchy_tensor,
    classify_m_tensor,
    cp_tensor,
    dnn_consistency,
    is_b_tensor,
    is_copositive,
    is_diagonally_dominant,
    is_h_tensor,
    is_psd,
    is_z_tensor,
    laplacian_tensors,
)
from .core import (
    Tensor,
    all_ones_tensor,
    as_vector,
    canonicalize_direction,
    comparison_tensor,
    contract_full,
    contract_m1,
    contract_m1_jacobian,
    diagonal_tensor,
    embed_vector,
    hadamard_power,
    identity_tensor,
    is_diagonal_index,
    outer_power,
    principal_subtensor,
    support,
    symmetrize,
    zero_tensor,
)
from .errors import (
    ArityError,
    DegenerateInput,
    DiagonalNegationError,
    DimensionError,
    NotNonnegative,
    NotPBehaviorAt,
    ParseError,
    PTensorError,
    SingularCauchy,
)
from .pcheck import (
    LIKELY_NOT,
    PVerdict,
    basis_p0_tensor,
    check_p,
    check_p0,
    check_s,
    hull_membership,
    phi_p,
    phi_p0,
    scaling_matrix,
)
from .spectral import (
    EigenPair,
    SpectralRadiusResult,
    find_h_eigenpairs,
    nqz_spectral_radius,
    verify_eigenpair,
)
from .tcp import (
    NoSolutionFound,
    SolutionSet,
    TcpInstance,
    TcpSolution,
    explore_solutions,
    fb_merit,
    natural_residual,
    solve_tcp,
    tcp_F,
)

__version__ = "0.1.0"
