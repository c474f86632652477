"""Entropy-based causal direction inference for bipartite quantum states."""

from .causal import (
    CausalVerdict,
    DegeneracyWarning,
    Direction,
    JointDistribution,
    classical_eci,
    conditional_spectra,
    qeci_infer,
)
from .channels import (
    ChannelSpec,
    bitflip_entangled,
    depolarizing_component,
    depolarizing_mixture,
    qsc_computational,
    qsc_hadamard,
)
from .classicalmap import diag_embed, rotate_to_classical
from .coupling import (
    CouplingResult,
    MarginalError,
    MarginalSet,
    Placement,
    bruteforce_coupling_2rows,
    coupling_to_joint_density,
    greedy_min_entropy_coupling,
    shannon_entropy,
)
from .density import (
    DensityMatrix,
    NotPSD,
    PureState,
    TraceNotOne,
    ZeroProbabilityCondition,
    instance_conditional,
    pure_state,
    spin_singlet,
    star_product,
    validate_density,
    von_neumann_entropy,
)
from .linalg import (
    DimensionMismatch,
    EigenConvergenceError,
    EigenDecomposition,
    NotHermitian,
    dagger,
    hermitian_eig,
    kron,
    matmul,
    partial_trace,
    swap_subsystems,
)

__all__ = [
    "CausalVerdict",
    "ChannelSpec",
    "CouplingResult",
    "DegeneracyWarning",
    "DensityMatrix",
    "DimensionMismatch",
    "Direction",
    "EigenConvergenceError",
    "EigenDecomposition",
    "JointDistribution",
    "MarginalError",
    "MarginalSet",
    "NotHermitian",
    "NotPSD",
    "Placement",
    "PureState",
    "TraceNotOne",
    "ZeroProbabilityCondition",
    "bitflip_entangled",
    "bruteforce_coupling_2rows",
    "classical_eci",
    "conditional_spectra",
    "coupling_to_joint_density",
    "dagger",
    "depolarizing_component",
    "depolarizing_mixture",
    "diag_embed",
    "greedy_min_entropy_coupling",
    "hermitian_eig",
    "instance_conditional",
    "kron",
    "matmul",
    "partial_trace",
    "pure_state",
    "qeci_infer",
    "qsc_computational",
    "qsc_hadamard",
    "rotate_to_classical",
    "shannon_entropy",
    "spin_singlet",
    "star_product",
    "swap_subsystems",
    "validate_density",
    "von_neumann_entropy",
]

__version__ = "0.1.0"
