import numpy as np
import pytest

from cadopt.errors import BadInput, BadPovm
from cadopt.matrix_core import min_eigenvalue
from cadopt.problems import custom_problem, qcp_problem, qsad_params, qsad_problem
from cadopt.solver import (
    PovmRealization,
    outcome_distribution,
    probabilities,
    reconstruct_povm,
    residual_matrix,
    simulate_outcomes,
    solve_cad,
)
from cadopt.structure import adjoint_map, embed_block

from reference import random_unit_diag_gram, reference_sdp_value


def test_two_state_unambiguous_value():
    sol = solve_cad(qcp_problem(2, 0.6, 0))
    assert sol.status == "optimal"
    assert sol.primal_value == pytest.approx(0.4, abs=1e-6)


def test_two_state_minimum_error_value():
    sol = solve_cad(qcp_problem(2, 0.6, 1))
    assert sol.primal_value == pytest.approx(0.9, abs=1e-6)


def test_qsad_endpoints_small():
    n, c = 9, 0.5
    params = qsad_params(n, c)
    ud = solve_cad(qsad_problem(n, c, 0))
    assert ud.primal_value == pytest.approx(1 - c * c, abs=1e-6)
    assert ud.primal_value == pytest.approx(
        min_eigenvalue(qsad_problem(n, c, 0).gram), abs=1e-6
    )
    me = solve_cad(qsad_problem(n, c, n - 1))
    assert me.primal_value == pytest.approx(params.a**2, abs=1e-6)


def test_monotone_in_error_radius():
    values = [solve_cad(qcp_problem(7, 0.6, d)).primal_value for d in range(7)]
    assert all(b >= a - 1e-7 for a, b in zip(values, values[1:]))


def test_probability_breakdown_sums_to_one():
    sol = solve_cad(qcp_problem(8, 0.55, 2))
    pb = probabilities(sol)
    assert pb.ps + pb.pe + pb.pi == pytest.approx(1.0, abs=1e-8)
    assert min(pb.ps, pb.pe, pb.pi) >= 0.0


def test_no_errors_at_delta_zero():
    pb = probabilities(solve_cad(qcp_problem(6, 0.7, 0)))
    assert pb.pe == 0.0  # one-entry blocks cannot hold error mass


def test_no_inconclusive_at_full_radius():
    pb = probabilities(solve_cad(qcp_problem(6, 0.7, 5)))
    assert pb.pi <= 1e-6


def test_weak_duality_and_certificates():
    sol = solve_cad(qcp_problem(6, 0.4, 2))
    assert sol.status == "optimal"
    assert sol.dual_value >= sol.primal_value - 1e-9
    assert 0.0 <= sol.primal_value <= sol.dual_value + 1e-7
    assert min_eigenvalue(residual_matrix(sol)) >= -1e-8
    assert min_eigenvalue(sol.y) >= -1e-8
    n = sol.problem.n
    for r, window in enumerate(adjoint_map(sol.y, sol.structure)):
        selector = np.zeros_like(window)
        center = sol.structure.centers[r]
        selector[center, center] = 1.0 / n
        assert min_eigenvalue(window - selector) >= -1e-8


def test_solution_mass_stays_in_windows():
    sol = solve_cad(qcp_problem(7, 0.6, 1))
    total = sum(
        embed_block(z, r, sol.structure) for r, z in enumerate(sol.z)
    )
    off = np.abs(np.triu(total, k=2 * 1 + 1))
    assert off.max() == 0.0


def test_max_iter_status():
    sol = solve_cad(qcp_problem(10, 0.6, 3), max_iter=2)
    assert sol.status == "max_iter"
    assert sol.iterations <= 2


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_matches_reference_on_random_instances(seed):
    rng = np.random.default_rng(100 + seed)
    n = int(rng.integers(2, 6))
    gram = random_unit_diag_gram(n, rng)
    delta = int(rng.integers(0, n))
    problem = custom_problem(delta, gram=gram)
    mine = solve_cad(problem).primal_value
    ref = reference_sdp_value(gram, delta)
    assert mine == pytest.approx(ref, abs=1e-6)


def test_povm_orthogonal_states_are_projectors():
    sol = solve_cad(qcp_problem(4, 0.0, 1))
    povm = reconstruct_povm(sol)
    for r, element in enumerate(povm.elements):
        target = np.zeros((4, 4))
        target[r, r] = 1.0
        np.testing.assert_allclose(element, target, atol=1e-6)
    np.testing.assert_allclose(povm.e0, np.zeros((4, 4)), atol=1e-6)


def test_povm_two_state_unambiguous():
    sol = solve_cad(qcp_problem(2, 0.6, 0))
    povm = reconstruct_povm(sol)
    psi0 = povm.states[:, 0]
    psi1 = povm.states[:, 1]
    assert psi1 @ povm.elements[0] @ psi1 == pytest.approx(0.0, abs=1e-8)
    assert psi0 @ povm.elements[0] @ psi0 == pytest.approx(0.4, abs=1e-6)


def test_povm_round_trip_and_validity():
    rng = np.random.default_rng(42)
    for _ in range(4):
        n = int(rng.integers(2, 7))
        gram = random_unit_diag_gram(n, rng)
        delta = int(rng.integers(0, n))
        sol = solve_cad(custom_problem(delta, gram=gram))
        povm = reconstruct_povm(sol)
        s_root = povm.states
        for r, element in enumerate(povm.elements):
            assert min_eigenvalue(element) >= -1e-8
            rebuilt = s_root @ element @ s_root
            np.testing.assert_allclose(
                rebuilt, embed_block(sol.z[r], r, sol.structure), atol=1e-8
            )
        assert min_eigenvalue(povm.e0) >= -1e-8


def test_simulate_orthogonal_is_deterministic_outcome():
    sol = solve_cad(qcp_problem(5, 0.0, 1))
    povm = reconstruct_povm(sol)
    counts = simulate_outcomes(povm, 2, 1000, seed=5)
    assert counts.per_site[2] == 1000
    assert counts.inconclusive == 0


def test_simulate_two_state_frequency():
    sol = solve_cad(qcp_problem(2, 0.6, 0))
    povm = reconstruct_povm(sol)
    counts = simulate_outcomes(povm, 0, 10**5, seed=123)
    assert counts.per_site[0] / 1e5 == pytest.approx(0.4, abs=0.01)
    assert counts.per_site[1] == 0  # certified: never the wrong site


def test_simulate_seed_determinism():
    sol = solve_cad(qcp_problem(4, 0.5, 1))
    povm = reconstruct_povm(sol)
    first = simulate_outcomes(povm, 1, 5000, seed=77)
    second = simulate_outcomes(povm, 1, 5000, seed=77)
    np.testing.assert_array_equal(first.per_site, second.per_site)
    assert first.inconclusive == second.inconclusive


def test_simulate_rejects_bad_site_and_povm():
    sol = solve_cad(qcp_problem(3, 0.5, 1))
    povm = reconstruct_povm(sol)
    with pytest.raises(BadInput):
        outcome_distribution(povm, 3)
    broken = PovmRealization(
        elements=[0.5 * e for e in povm.elements], e0=povm.e0, states=povm.states
    )
    with pytest.raises(BadPovm):
        simulate_outcomes(broken, 0, 10, seed=0)
