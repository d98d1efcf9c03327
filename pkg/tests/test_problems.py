import json

import numpy as np
import pytest

from cadopt.errors import BadDelta, BadDimension, BadInput, BadState, LinearDependence
from cadopt.matrix_core import min_eigenvalue, sqrt_psd
from cadopt.problems import (
    CadProblem,
    canonical_states,
    custom_problem,
    gram_from_states,
    gram_qcp,
    gram_qsad,
    load_problem_json,
    qcp_problem,
    qsad_params,
)


def test_gram_qcp_values():
    np.testing.assert_allclose(gram_qcp(3, 0.0), np.eye(3), atol=0)
    expected = np.array([[1, 0.6, 0.36], [0.6, 1, 0.6], [0.36, 0.6, 1]])
    np.testing.assert_allclose(gram_qcp(3, 0.6), expected, atol=1e-15)
    np.testing.assert_allclose(gram_qcp(2, 0.6), [[1, 0.6], [0.6, 1]], atol=0)


def test_gram_qcp_is_toeplitz():
    g = gram_qcp(9, 0.37)
    for off in range(9):
        band = np.diagonal(g, offset=off)
        assert np.ptp(band) == 0.0


def test_gram_family_errors():
    with pytest.raises(LinearDependence):
        gram_qcp(3, 1.0)
    with pytest.raises(BadDimension):
        gram_qcp(1, 0.5)
    with pytest.raises(BadInput):
        gram_qsad(3, -0.2)


def test_gram_qsad_values():
    np.testing.assert_allclose(gram_qsad(2, 0.0), np.eye(2), atol=0)
    g = gram_qsad(3, 0.6)
    assert np.allclose(np.diag(g), 1.0)
    off = g[~np.eye(3, dtype=bool)]
    np.testing.assert_allclose(off, 0.36, atol=1e-15)
    assert min_eigenvalue(gram_qsad(25, 0.6)) == pytest.approx(0.64, abs=1e-12)


def test_gram_from_states_basis():
    np.testing.assert_allclose(gram_from_states(np.eye(3)), np.eye(3), atol=0)


def test_gram_from_states_two_vectors():
    theta = np.arccos(0.6)
    states = np.array([[1.0, 0.0], [np.cos(theta), np.sin(theta)]])
    np.testing.assert_allclose(
        gram_from_states(states), [[1, 0.6], [0.6, 1]], atol=1e-12
    )


def test_gram_from_states_equiangular_matches_qsad():
    # three unit vectors tilted from the z-axis by equal polar angle, spaced
    # 120 degrees apart: pairwise dot = 1 - 1.5 sin^2(alpha) = 0.36
    sin2 = 2.0 * (1.0 - 0.36) / 3.0
    sin_a, cos_a = np.sqrt(sin2), np.sqrt(1.0 - sin2)
    azimuths = 2.0 * np.pi * np.arange(3) / 3.0
    states = np.stack(
        [sin_a * np.cos(azimuths), sin_a * np.sin(azimuths), cos_a * np.ones(3)],
        axis=1,
    )
    np.testing.assert_allclose(gram_from_states(states), gram_qsad(3, 0.6), atol=1e-12)


def test_gram_from_states_errors():
    with pytest.raises(BadState):
        gram_from_states(np.array([[1.0, 0.0], [0.5, 0.5]]))
    with pytest.raises(LinearDependence):
        gram_from_states(np.array([[1.0, 0.0], [1.0, 0.0]]))


def test_qsad_params_values():
    params = qsad_params(25, 0.6)
    assert params.a == pytest.approx(0.8921934, abs=1e-7)
    assert params.b == pytest.approx(0.0921934, abs=1e-7)
    assert params.a - params.b == pytest.approx(np.sqrt(1 - 0.36), abs=1e-12)
    trivial = qsad_params(11, 0.0)
    assert trivial.a == 1.0 and trivial.b == 0.0


@pytest.mark.parametrize("n,c", [(2, 0.1), (7, 0.45), (25, 0.9)])
def test_qsad_params_gap_identity(n, c):
    params = qsad_params(n, c)
    assert params.a - params.b == pytest.approx(np.sqrt(1 - c * c), abs=1e-12)


def test_canonical_state_round_trip():
    rng = np.random.default_rng(21)
    for n in (2, 4, 7):
        vecs = rng.normal(size=(n, n + 1))
        vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
        gram = gram_from_states(vecs)
        rebuilt = gram_from_states(canonical_states(gram).T)
        assert np.abs(rebuilt - gram).max() <= 1e-9


def test_problem_validation():
    with pytest.raises(BadDelta):
        qcp_problem(5, 0.5, 5)
    with pytest.raises(BadState):
        CadProblem(kind="custom", n=2, c=None, delta=0, gram=np.array([[2.0, 0], [0, 1]]))
    with pytest.raises(LinearDependence):
        CadProblem(kind="custom", n=2, c=None, delta=0, gram=np.ones((2, 2)))
    with pytest.raises(BadInput):
        CadProblem(kind="nope", n=2, c=None, delta=0, gram=np.eye(2))


def test_custom_problem_exclusive_inputs():
    with pytest.raises(BadInput):
        custom_problem(0)
    with pytest.raises(BadInput):
        custom_problem(0, gram=np.eye(2), states=np.eye(2))


def test_load_problem_json(tmp_path):
    gram_doc = tmp_path / "gram.json"
    gram_doc.write_text(json.dumps({"n": 2, "gram": [[1.0, 0.5], [0.5, 1.0]]}))
    problem = load_problem_json(gram_doc, delta=1)
    assert problem.kind == "custom" and problem.n == 2
    np.testing.assert_allclose(problem.gram, [[1, 0.5], [0.5, 1]], atol=0)

    states_doc = tmp_path / "states.json"
    states_doc.write_text(json.dumps({"n": 2, "states": [[1.0, 0.0], [0.0, 1.0]]}))
    np.testing.assert_allclose(load_problem_json(states_doc, 0).gram, np.eye(2), atol=0)

    both = tmp_path / "both.json"
    both.write_text(json.dumps({"n": 2, "gram": [[1, 0], [0, 1]], "states": [[1, 0]]}))
    with pytest.raises(BadInput):
        load_problem_json(both, 0)

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"n": 3, "gram": [[1.0, 0.5], [0.5, 1.0]]}))
    with pytest.raises(BadInput):
        load_problem_json(wrong, 0)


def test_sqrt_matches_qsad_closed_form_via_problems():
    from cadopt.problems import qsad_problem

    for n, c in ((6, 0.3), (13, 0.75)):
        params = qsad_params(n, c)
        expected = (params.a - params.b) * np.eye(n) + params.b * np.ones((n, n))
        assert np.abs(sqrt_psd(qsad_problem(n, c, 0).gram) - expected).max() <= 1e-9
