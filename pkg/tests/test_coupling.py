import math

import numpy as np
import pytest

from qeci.coupling import (
    MarginalError,
    MarginalSet,
    bruteforce_coupling_2rows,
    coupling_to_joint_density,
    greedy_min_entropy_coupling,
    shannon_entropy,
)
from qeci.density import von_neumann_entropy
from qeci.linalg import partial_trace


def test_shannon_entropy_worked_value():
    assert shannon_entropy([0.95, 0.05]) == pytest.approx(0.2864, abs=5e-5)


def test_shannon_entropy_point_mass():
    assert shannon_entropy([1.0, 0.0]) == 0.0


def test_shannon_entropy_uniform_four():
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0, abs=1e-12)


def test_shannon_entropy_rejects_negative():
    with pytest.raises(MarginalError):
        shannon_entropy([1.1, -0.1])


def test_marginal_set_pads_and_clamps():
    ms = MarginalSet.from_rows([[0.5, 0.5], [0.25, 0.25, 0.25, 0.25]])
    assert ms.rows.shape == (2, 4)
    assert np.allclose(ms.rows[0], [0.5, 0.5, 0.0, 0.0])
    ms2 = MarginalSet.from_rows([[1.0, -1e-13], [0.5, 0.5]])
    assert (ms2.rows >= 0).all()


def test_marginal_set_rejects_unnormalized_row():
    with pytest.raises(MarginalError):
        MarginalSet.from_rows([[0.5, 0.4], [0.5, 0.5]])


def test_greedy_worked_forward_coupling():
    result = greedy_min_entropy_coupling(MarginalSet.from_rows([[0.05, 0.95], [0.05, 0.95]]))
    assert result.entropy_bits == pytest.approx(0.2864, abs=5e-5)
    by_coords = {p.coords: p.mass for p in result.placements}
    assert by_coords[(1, 1)] == pytest.approx(0.95, abs=1e-12)
    assert by_coords[(0, 0)] == pytest.approx(0.05, abs=1e-12)


def test_greedy_worked_backward_coupling():
    # rounded presentation of the conditionals reproduces the quoted masses
    rows = [[0.9268, 0.0732], [0.9661, 0.0339]]
    result = greedy_min_entropy_coupling(MarginalSet.from_rows(rows))
    masses = sorted(p.mass for p in result.placements)
    assert np.allclose(masses, [0.0339, 0.0393, 0.9268], atol=1e-12)
    # the quoted entropy belongs to the unrounded conditionals
    exact = [[0.38 / 0.41, 0.03 / 0.41], [0.57 / 0.59, 0.02 / 0.59]]
    result = greedy_min_entropy_coupling(MarginalSet.from_rows(exact))
    assert result.entropy_bits == pytest.approx(0.4505, abs=5e-5)


def test_greedy_identical_rows_reproduce_row_entropy():
    row = [0.5, 0.3, 0.2]
    result = greedy_min_entropy_coupling(MarginalSet.from_rows([row, row]))
    assert abs(result.entropy_bits - shannon_entropy(row)) <= 1e-12


def test_greedy_forced_coupling():
    result = greedy_min_entropy_coupling(MarginalSet.from_rows([[1.0, 0.0], [0.3, 0.7]]))
    assert result.entropy_bits == pytest.approx(shannon_entropy([0.3, 0.7]), abs=1e-12)


def test_greedy_marginal_consistency():
    rng = np.random.default_rng(31)
    for _ in range(30):
        nrows = rng.integers(2, 5)
        width = rng.integers(2, 6)
        rows = [rng.dirichlet(np.ones(width)) for _ in range(nrows)]
        ms = MarginalSet.from_rows(rows)
        result = greedy_min_entropy_coupling(ms)
        for k in range(nrows):
            recovered = np.zeros(width)
            for coords, mass in result.placements:
                recovered[coords[k]] += mass
            assert np.allclose(recovered, ms.rows[k], atol=1e-9)


def test_greedy_entropy_bounds():
    rng = np.random.default_rng(32)
    for _ in range(30):
        rows = [rng.dirichlet(np.ones(4)) for _ in range(3)]
        result = greedy_min_entropy_coupling(MarginalSet.from_rows(rows))
        lower = max(shannon_entropy(r) for r in rows)
        upper = sum(shannon_entropy(r) for r in rows)
        assert result.entropy_bits >= lower - 1e-9
        assert result.entropy_bits <= upper + 1e-9


def test_greedy_row_order_invariance():
    rng = np.random.default_rng(33)
    rows = [rng.dirichlet(np.ones(5)) for _ in range(4)]
    base = greedy_min_entropy_coupling(MarginalSet.from_rows(rows)).entropy_bits
    perm = greedy_min_entropy_coupling(MarginalSet.from_rows(rows[::-1])).entropy_bits
    assert base == pytest.approx(perm, abs=1e-12)


def test_greedy_masses_sum_to_one():
    rng = np.random.default_rng(34)
    rows = [rng.dirichlet(np.ones(3)) for _ in range(2)]
    result = greedy_min_entropy_coupling(MarginalSet.from_rows(rows))
    total = sum(p.mass for p in result.placements)
    assert total == pytest.approx(1.0, abs=1e-9)
    assert all(p.mass > 0 for p in result.placements)
    recomputed = -sum(p.mass * math.log2(p.mass) for p in result.placements)
    assert result.entropy_bits == pytest.approx(recomputed, abs=1e-12)


def test_bruteforce_uniform_pair():
    assert bruteforce_coupling_2rows([0.5, 0.5], [0.5, 0.5], 1000) == pytest.approx(
        1.0, abs=1e-12
    )


def test_bruteforce_forced_coupling():
    q = [0.3, 0.7]
    assert bruteforce_coupling_2rows([1.0, 0.0], q, 100) == pytest.approx(
        shannon_entropy(q), abs=1e-12
    )


def test_bruteforce_matches_greedy_on_worked_pair():
    p = [0.05, 0.95]
    brute = bruteforce_coupling_2rows(p, p, 10000)
    greedy = greedy_min_entropy_coupling(MarginalSet.from_rows([p, p])).entropy_bits
    assert brute == pytest.approx(0.2864, abs=5e-5)
    assert greedy <= brute + 1e-9


def test_greedy_within_one_bit_of_bruteforce():
    rng = np.random.default_rng(35)
    for _ in range(50):
        p = rng.dirichlet(np.ones(2))
        q = rng.dirichlet(np.ones(2))
        greedy = greedy_min_entropy_coupling(MarginalSet.from_rows([p, q])).entropy_bits
        brute = bruteforce_coupling_2rows(p, q, 10000)
        assert greedy <= brute + 1.0 + 1e-6


def test_coupling_to_joint_single_placement():
    result = greedy_min_entropy_coupling(MarginalSet.from_rows([[1.0, 0.0], [1.0, 0.0]]))
    rho = coupling_to_joint_density(result, [np.eye(2), np.eye(2)])
    assert np.allclose(rho.mat, np.diag([1.0, 0.0, 0.0, 0.0]))
    assert rho.dims == (2, 2)


def test_coupling_to_joint_worked_example():
    result = greedy_min_entropy_coupling(MarginalSet.from_rows([[0.05, 0.95], [0.05, 0.95]]))
    rho = coupling_to_joint_density(result, [np.eye(2), np.eye(2)])
    # placements land on |11> (mass 0.95) and |00> (mass 0.05)
    assert np.allclose(rho.mat, np.diag([0.05, 0.0, 0.0, 0.95]), atol=1e-12)


def test_coupling_to_joint_entropy_and_marginals_match():
    rng = np.random.default_rng(36)
    rows = [rng.dirichlet(np.ones(2)) for _ in range(2)]
    result = greedy_min_entropy_coupling(MarginalSet.from_rows(rows))
    rho = coupling_to_joint_density(result, [np.eye(2), np.eye(2)])
    assert von_neumann_entropy(rho) == pytest.approx(result.entropy_bits, abs=1e-9)
    # each subsystem's reduced density carries that marginal on its basis
    reduced = partial_trace(rho.mat, 2, 2, "B")
    assert np.allclose(np.diag(reduced).real, rows[0], atol=1e-9)
