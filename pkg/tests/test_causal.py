import warnings

import numpy as np
import pytest

from qeci.causal import (
    DegeneracyWarning,
    Direction,
    JointDistribution,
    classical_eci,
    conditional_spectra,
    qeci_infer,
)
from qeci.channels import bitflip_entangled, qsc_computational, qsc_hadamard
from qeci.classicalmap import diag_embed
from qeci.density import instance_conditional, pure_state, validate_density
from qeci.linalg import dagger, kron, swap_subsystems

from _helpers import (
    random_density,
    random_nondegenerate_density,
    random_nondegenerate_table,
    random_unitary,
)

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _rows_as_set(marginals):
    return {tuple(np.round(r, 10)) for r in marginals.rows}


def test_conditional_spectra_forward_worked():
    ms = conditional_spectra(qsc_computational(0.4, 0.05), "forward")
    assert _rows_as_set(ms) == {(0.95, 0.05)}
    assert ms.rows.shape == (2, 2)


def test_conditional_spectra_backward_worked():
    ms = conditional_spectra(qsc_computational(0.4, 0.05), "backward")
    expected = {
        tuple(np.round([0.38 / 0.41, 0.03 / 0.41], 10)),
        tuple(np.round([0.57 / 0.59, 0.02 / 0.59], 10)),
    }
    assert _rows_as_set(ms) == expected


def test_conditional_spectra_product_state():
    rng = np.random.default_rng(41)
    rho_a = random_density(rng, (2,))
    rho_b = random_density(rng, (3,))
    joint = validate_density(kron(rho_a.mat, rho_b.mat), (2, 3))
    ms = conditional_spectra(joint, "forward")
    from qeci.linalg import hermitian_eig

    spectrum = hermitian_eig(rho_b.mat).eigenvalues
    for row in ms.rows:
        assert np.allclose(row, spectrum, atol=1e-9)


def test_qeci_infer_worked_example():
    verdict = qeci_infer(qsc_computational(0.4, 0.05))
    assert verdict.direction is Direction.A_TO_B
    assert verdict.s_forward == pytest.approx(1.2573, abs=5e-4)
    assert verdict.s_backward == pytest.approx(1.4270, abs=5e-4)
    assert verdict.s_exo_fwd == pytest.approx(0.2864, abs=5e-5)
    assert verdict.s_exo_bwd == pytest.approx(0.4505, abs=5e-5)


def test_qeci_infer_hadamard_tie():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegeneracyWarning)
        verdict = qeci_infer(qsc_hadamard(0.4, 0.5))
    assert verdict.direction is Direction.TIE
    assert verdict.s_forward == pytest.approx(1.97, abs=0.02)
    assert abs(verdict.s_forward - verdict.s_backward) < 1e-9


def test_qeci_infer_product_state_ties():
    rng = np.random.default_rng(42)
    rho_a = random_density(rng, (2,))
    rho_b = random_density(rng, (2,))
    joint = validate_density(kron(rho_a.mat, rho_b.mat), (2, 2))
    verdict = qeci_infer(joint)
    assert verdict.direction is Direction.TIE
    assert verdict.s_forward == pytest.approx(
        verdict.s_cause_fwd + verdict.s_cause_bwd, abs=1e-9
    )
    assert verdict.s_backward == pytest.approx(verdict.s_forward, abs=1e-9)


def test_verdict_score_decomposition():
    verdict = qeci_infer(qsc_computational(0.3, 0.1))
    assert verdict.s_forward == verdict.s_cause_fwd + verdict.s_exo_fwd
    assert verdict.s_backward == verdict.s_cause_bwd + verdict.s_exo_bwd


def test_swap_antisymmetry():
    rho = qsc_computational(0.4, 0.05)
    swapped = validate_density(swap_subsystems(rho.mat, 2, 2), (2, 2))
    v1 = qeci_infer(rho)
    v2 = qeci_infer(swapped)
    assert v1.s_forward == v2.s_backward
    assert v1.s_backward == v2.s_forward
    assert v1.direction is Direction.A_TO_B and v2.direction is Direction.B_TO_A


def test_classical_eci_symmetric_channel_table():
    q, p = 0.4, 0.05
    table = JointDistribution.from_table(
        [[q * (1 - p), q * p], [(1 - q) * p, (1 - q) * (1 - p)]]
    )
    verdict = classical_eci(table)
    assert verdict.s_forward == pytest.approx(1.2573, abs=5e-4)
    assert verdict.s_forward < verdict.s_backward
    assert verdict.direction is Direction.A_TO_B


def test_classical_eci_uniform_table_ties():
    verdict = classical_eci(JointDistribution.from_table(np.full((2, 2), 0.25)))
    assert verdict.direction is Direction.TIE


def test_classical_eci_deterministic_effect():
    verdict = classical_eci(JointDistribution.from_table(np.diag([0.3, 0.7])))
    assert verdict.s_exo_fwd == pytest.approx(0.0, abs=1e-12)
    assert verdict.s_forward == pytest.approx(verdict.s_cause_fwd, abs=1e-12)


def test_classical_reduction_matches_quantum_on_diagonal_embeddings():
    rng = np.random.default_rng(43)
    for shape in ((2, 2), (3, 3)):
        for _ in range(10):
            table = random_nondegenerate_table(rng, shape)
            joint = JointDistribution.from_table(table)
            cv = classical_eci(joint)
            qv = qeci_infer(diag_embed(joint))
            assert abs(cv.s_cause_fwd - qv.s_cause_fwd) <= 1e-9
            assert abs(cv.s_exo_fwd - qv.s_exo_fwd) <= 1e-9
            assert abs(cv.s_cause_bwd - qv.s_cause_bwd) <= 1e-9
            assert abs(cv.s_exo_bwd - qv.s_exo_bwd) <= 1e-9
            assert cv.direction is qv.direction


def test_rotational_invariance_of_verdict_entropies():
    rng = np.random.default_rng(44)
    for _ in range(10):
        rho = random_nondegenerate_density(rng, (2, 2))
        u = random_unitary(rng, 2)
        v = random_unitary(rng, 2)
        local = kron(u, v)
        rotated = validate_density(local @ rho.mat @ dagger(local), (2, 2))
        base = qeci_infer(rho)
        moved = qeci_infer(rotated)
        assert abs(base.s_cause_fwd - moved.s_cause_fwd) <= 1e-6
        assert abs(base.s_exo_fwd - moved.s_exo_fwd) <= 1e-6
        assert abs(base.s_cause_bwd - moved.s_cause_bwd) <= 1e-6
        assert abs(base.s_exo_bwd - moved.s_exo_bwd) <= 1e-6
        assert base.direction is moved.direction


@pytest.mark.parametrize("p", [0.1, 0.3, 0.7])
def test_bitflip_structural_equation(p):
    rho = bitflip_entangled(p)
    exo = 0.5 * np.diag([1 - p, p, p, 1 - p]).astype(complex)
    for a in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
        cond = instance_conditional(rho, pure_state(a), "first")
        flipped = SIGMA_X @ a
        closed_form = (1 - p) * np.outer(a, a.conj()) + p * np.outer(
            flipped, flipped.conj()
        )
        assert np.allclose(cond.mat, closed_form, atol=1e-9)
        m = kron(a.conj()[None, :], np.eye(2, dtype=complex))
        assert np.allclose(cond.mat, 2.0 * m @ exo @ dagger(m), atol=1e-9)


def test_degeneracy_warning_on_maximally_mixed_marginal():
    with pytest.warns(DegeneracyWarning):
        conditional_spectra(bitflip_entangled(0.2), "forward")


def test_pure_joint_skips_zero_branches():
    # rank-1 reduced density: only one eigenbranch survives
    rho = qsc_computational(1.0, 0.3)
    ms = conditional_spectra(rho, "forward")
    assert ms.rows.shape[0] == 1
    assert np.allclose(ms.rows[0], [0.7, 0.3])
    verdict = qeci_infer(rho)
    assert verdict.s_cause_fwd == pytest.approx(0.0, abs=1e-10)


def test_joint_distribution_validation():
    with pytest.raises(ValueError):
        JointDistribution.from_table([[0.5, 0.6]])
    with pytest.raises(ValueError):
        JointDistribution.from_table([[1.2, -0.2]])
