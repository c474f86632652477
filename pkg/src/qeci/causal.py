"""Causal direction inference for joint densities and joint distributions."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coupling import MarginalSet, greedy_min_entropy_coupling, shannon_entropy
from .density import (
    DensityMatrix,
    instance_conditional,
    pure_state,
    validate_density,
    von_neumann_entropy,
)
from .linalg import DEFAULT_EIG_TOL, DimensionMismatch, hermitian_eig, partial_trace, require_finite

TIE_TOL = 1e-9
BRANCH_FLOOR = 1e-12
DEGENERACY_GAP = 1e-8


class DegeneracyWarning(UserWarning):
    """Reduced density has (near-)degenerate eigenvalues; its eigenbasis, and
    therefore the verdict, is gauge-dependent."""


class Direction(Enum):
    A_TO_B = "AtoB"
    B_TO_A = "BtoA"
    TIE = "Tie"

    @property
    def arrow(self) -> str:
        return {"AtoB": "A->B", "BtoA": "B->A", "Tie": "Tie"}[self.value]


@dataclass(frozen=True)
class JointDistribution:
    """Joint probability table; rows index the first variable."""

    table: np.ndarray

    @classmethod
    def from_table(cls, table) -> "JointDistribution":
        t = np.asarray(table, dtype=float)
        if t.ndim != 2:
            raise ValueError(f"joint table must be 2-D, got shape {t.shape}")
        require_finite(t, "joint table")
        if (t < -1e-12).any():
            raise ValueError(f"joint table has negative entry {t.min():.3e}")
        t = np.clip(t, 0.0, None)
        if abs(t.sum() - 1.0) > 1e-9:
            raise ValueError(f"joint table sums to {t.sum()!r}, not 1")
        t = t.copy()
        t.setflags(write=False)
        return cls(table=t)


@dataclass(frozen=True)
class CausalVerdict:
    """Direction verdict with the entropies behind it, all in bits.

    s_forward = s_cause_fwd + s_exo_fwd is the score of the A-to-B model
    (cause marginal entropy plus coupled exogenous entropy); s_backward
    mirrors it for B-to-A.
    """

    direction: Direction
    s_forward: float
    s_backward: float
    s_cause_fwd: float
    s_exo_fwd: float
    s_cause_bwd: float
    s_exo_bwd: float


def _warn_if_degenerate(eigenvalues: np.ndarray, label: str) -> None:
    vals = np.sort(np.asarray(eigenvalues))
    if vals.size >= 2 and (np.diff(vals) < DEGENERACY_GAP).any():
        warnings.warn(
            f"reduced density of side {label} has near-degenerate eigenvalues; "
            "the conditioning eigenbasis is not unique",
            DegeneracyWarning,
            stacklevel=3,
        )


def conditional_spectra(
    rho_ab: DensityMatrix, direction: str, eig_tol: float = DEFAULT_EIG_TOL
) -> MarginalSet:
    """Spectra of the effect-side conditionals, one row per cause eigenbranch.

    The cause-side reduced density is eigendecomposed; for every eigenvalue
    above the branch floor, the effect side is conditioned on that eigenket
    and the conditional's eigenvalue spectrum (descending) becomes one row.
    """
    if len(rho_ab.dims) != 2:
        raise DimensionMismatch(f"need a bipartite density, got dims {rho_ab.dims}")
    dim_a, dim_b = rho_ab.dims
    if direction == "forward":
        reduced = partial_trace(rho_ab.mat, dim_a, dim_b, "B")
        side, label = "first", "A"
    elif direction == "backward":
        reduced = partial_trace(rho_ab.mat, dim_a, dim_b, "A")
        side, label = "second", "B"
    else:
        raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")
    eig = hermitian_eig(reduced, eig_tol)
    _warn_if_degenerate(eig.eigenvalues, label)
    rows = []
    for i, value in enumerate(eig.eigenvalues):
        if value <= BRANCH_FLOOR:
            continue
        ket = pure_state(eig.eigenvectors[:, i])
        conditional = instance_conditional(rho_ab, ket, side)
        spectrum = np.clip(hermitian_eig(conditional.mat, eig_tol).eigenvalues, 0.0, None)
        rows.append(spectrum)
    return MarginalSet.from_rows(rows)


def qeci_infer(rho_ab: DensityMatrix, tie_tol: float = TIE_TOL) -> CausalVerdict:
    """Infer the causal direction between the two subsystems of a joint density.

    Scores each direction by the entropy of the cause-side reduced density
    plus the greedily coupled entropy of the effect-side conditional spectra,
    and prefers the smaller score.
    """
    if len(rho_ab.dims) != 2:
        raise DimensionMismatch(f"need a bipartite density, got dims {rho_ab.dims}")
    dim_a, dim_b = rho_ab.dims
    rho_a = validate_density(partial_trace(rho_ab.mat, dim_a, dim_b, "B"), (dim_a,))
    rho_b = validate_density(partial_trace(rho_ab.mat, dim_a, dim_b, "A"), (dim_b,))
    s_cause_fwd = von_neumann_entropy(rho_a)
    s_cause_bwd = von_neumann_entropy(rho_b)
    s_exo_fwd = greedy_min_entropy_coupling(conditional_spectra(rho_ab, "forward")).entropy_bits
    s_exo_bwd = greedy_min_entropy_coupling(conditional_spectra(rho_ab, "backward")).entropy_bits
    return _verdict(s_cause_fwd, s_exo_fwd, s_cause_bwd, s_exo_bwd, tie_tol)


def classical_eci(joint: JointDistribution, tie_tol: float = TIE_TOL) -> CausalVerdict:
    """Classical counterpart of qeci_infer, scoring a joint probability table.

    Conditional rows whose cause state has marginal probability at the floor
    are skipped; their conditionals are undefined.
    """
    table = joint.table
    p_row = table.sum(axis=1)
    p_col = table.sum(axis=0)
    if p_row.max() <= BRANCH_FLOOR or p_col.max() <= BRANCH_FLOOR:
        raise ValueError("degenerate joint table: a marginal carries no mass")
    fwd_rows = [table[i] / p_row[i] for i in range(table.shape[0]) if p_row[i] > BRANCH_FLOOR]
    bwd_rows = [table[:, j] / p_col[j] for j in range(table.shape[1]) if p_col[j] > BRANCH_FLOOR]
    s_cause_fwd = shannon_entropy(p_row)
    s_cause_bwd = shannon_entropy(p_col)
    s_exo_fwd = greedy_min_entropy_coupling(MarginalSet.from_rows(fwd_rows)).entropy_bits
    s_exo_bwd = greedy_min_entropy_coupling(MarginalSet.from_rows(bwd_rows)).entropy_bits
    return _verdict(s_cause_fwd, s_exo_fwd, s_cause_bwd, s_exo_bwd, tie_tol)


def _verdict(
    s_cause_fwd: float,
    s_exo_fwd: float,
    s_cause_bwd: float,
    s_exo_bwd: float,
    tie_tol: float,
) -> CausalVerdict:
    s_forward = s_cause_fwd + s_exo_fwd
    s_backward = s_cause_bwd + s_exo_bwd
    if s_forward < s_backward - tie_tol:
        direction = Direction.A_TO_B
    elif s_backward < s_forward - tie_tol:
        direction = Direction.B_TO_A
    else:
        direction = Direction.TIE
    return CausalVerdict(
        direction=direction,
        s_forward=s_forward,
        s_backward=s_backward,
        s_cause_fwd=s_cause_fwd,
        s_exo_fwd=s_exo_fwd,
        s_cause_bwd=s_cause_bwd,
        s_exo_bwd=s_exo_bwd,
    )
