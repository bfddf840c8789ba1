from fractions import Fraction

import numpy as np
import pytest

from conftest import some_protocols
from reconlab.constructors import random_protocol, random_unitary
from reconlab.exceptions import NotHermitianError, NotProjectionError, ShapeError
from reconlab.feasibility import (Violation, grammian_projection_factor, klyachko_feasible,
                                  numeric_oracle, protocol_feasible, q_fundamental_check,
                                  uwp_existence)
from reconlab.spectra import eigvals_desc
from reconlab.systems import block_spectra, classify, grammian


def test_actual_sums_are_feasible():
    rng = np.random.default_rng(0)
    for _ in range(200):
        d = int(rng.integers(1, 6))
        m = int(rng.integers(1, 4))
        As = []
        for _ in range(m):
            H = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            As.append((H + H.conj().T) / 2)
        total = sum(As)
        v = klyachko_feasible(eigvals_desc(total), [eigvals_desc(A) for A in As])
        assert v.feasible and v.trace_ok and not v.violated


def test_single_summand_needs_equal_spectra():
    assert klyachko_feasible([3, 1], [[3, 1]]).feasible
    v = klyachko_feasible([3, 1], [[2, 2]])
    assert not v.feasible and v.trace_ok


def test_two_by_two_weyl_violation():
    # λ_1(A + B) <= λ_1(A) + λ_1(B)
    v = klyachko_feasible([3, 0], [[1, 0], [1, 0]])
    assert not v.feasible and not v.trace_ok
    v = klyachko_feasible([2.5, -0.5], [[1, 0], [1, 0]])
    assert v.trace_ok and not v.feasible
    assert any(viol.tuples == ((1,), (1,), (1,)) for viol in v.violated)


def test_verdict_fields_consistent():
    for lam0, spectra in [([1, 1], [[1, 0], [1, 0]]), ([2, 0], [[1, 0], [1, 0]]),
                          ([1, 1], [[1.5, 0], [0.5, 0]]), ([1, 1, 1], [[1, 1, 0], [1, 0, 0]])]:
        v = klyachko_feasible(lam0, spectra)
        assert v.feasible == (not v.violated and v.trace_ok)
        d = v.to_dict()
        assert d["feasible"] == v.feasible and len(d["violated"]) == len(v.violated)
    first = klyachko_feasible([1, 1], [[1.5, 0], [0.5, 0]], stop_at_first=True)
    assert not first.feasible and first.violated


def test_violation_format():
    v = Violation(1, ((2,), (2,), (1,)), 1.0, 0.5)
    assert str(v) == "(1; (2) | (2),(1)): 1 > 0.5"


def test_shape_errors():
    with pytest.raises(ShapeError):
        klyachko_feasible([1, 1], [[1]])
    with pytest.raises(ValueError):
        klyachko_feasible([1], [])
    with pytest.raises(ShapeError):
        protocol_feasible([[1, 0], [1]], 2)
    with pytest.raises(ShapeError):
        protocol_feasible([[0.5, 0.5, 0.5]], 2)
    with pytest.raises(ValueError):
        protocol_feasible([[-1.0], [2.0]], 1)
    with pytest.raises(ShapeError):
        q_fundamental_check([0.5, 0.5], [1], 1)
    with pytest.raises(ValueError):
        q_fundamental_check([0.5, 0.5], [0, 1], 1)


@pytest.mark.parametrize("V", some_protocols(100, seed=30, max_m=4, max_l=3, max_d=6), ids=repr)
def test_block_spectra_of_protocols_are_feasible(V):
    assert classify(V).is_protocol
    assert protocol_feasible(block_spectra(V), V.d).feasible


def test_overweight_block_is_infeasible():
    # a block with eigenvalue above 1 cannot sit inside a protocol
    v = protocol_feasible([[1.5], [0.5]], 2)
    assert not v.feasible and v.trace_ok


@pytest.mark.parametrize("m,d", [(m, d) for m in range(2, 7) for d in range(1, m + 1)])
def test_frames_reduce_to_max_weight(m, d):
    rng = np.random.default_rng(m * 10 + d)
    for _ in range(10):
        w = rng.random(m)
        w *= d / w.sum()
        expected = bool(w.max() <= 1 + 1e-12)
        assert q_fundamental_check(w, [1] * m, d).feasible == expected


@pytest.mark.parametrize("m,l,d,expected", [
    (4, 2, 4, True), (3, 2, 4, True), (2, 2, 3, False), (2, 3, 4, False), (2, 3, 5, False),
    (2, 2, 4, True), (2, 2, 2, True), (5, 1, 3, True), (3, 3, 6, True)])
def test_uwp_existence(m, l, d, expected):
    assert uwp_existence(m, l, d).feasible is expected


def test_oracle_finds_feasible_instance():
    spectra = block_spectra(random_protocol(3, 2, 3, seed=4))
    res = numeric_oracle(spectra, 3, attempts=2000, seed=1)
    assert res.found
    total = sum(res.witness)
    assert np.linalg.norm(total - np.eye(3)) <= 1e-7
    for A, lam in zip(res.witness, spectra):
        np.testing.assert_allclose(eigvals_desc(A), np.concatenate([lam, [0.0]]), atol=1e-9)


def test_oracle_reproducible():
    a = numeric_oracle([[0.6], [0.7], [0.7]], 2, attempts=1000, seed=3)
    b = numeric_oracle([[0.6], [0.7], [0.7]], 2, attempts=1000, seed=3)
    assert a.found == b.found and a.attempts == b.attempts


def test_oracle_fails_on_infeasible_instance():
    res = numeric_oracle([[1.5], [0.5]], 2, attempts=200, seed=0)
    assert not res.found and res.residual > 1e-3
    with pytest.raises(ValueError):
        numeric_oracle([[0.5], [0.5]], 2)


@pytest.mark.parametrize("n,rank,m,l", [(4, 2, 2, 2), (6, 3, 3, 2), (6, 4, 2, 3), (5, 2, 5, 1)])
def test_projection_factor_round_trip(n, rank, m, l):
    rng = np.random.default_rng(n + rank)
    U = random_unitary(n, rng)
    P = U[:, :rank] @ U[:, :rank].conj().T
    V = grammian_projection_factor(P, m, l)
    assert V.d == rank and classify(V).is_protocol
    np.testing.assert_allclose(grammian(V), P, atol=1e-8)
    for i, lam in enumerate(block_spectra(V)):
        Pii = P[i * l:(i + 1) * l, i * l:(i + 1) * l]
        np.testing.assert_allclose(lam, eigvals_desc(Pii), atol=1e-8)


def test_projection_factor_identity():
    V = grammian_projection_factor(np.eye(6), 3, 2)
    assert V.shape.triple == (3, 2, 6)


def test_projection_factor_real_field():
    P = np.array([[0.5, 0.5], [0.5, 0.5]])
    V = grammian_projection_factor(P, 2, 1, field="real")
    assert V.shape.field == "real"
    np.testing.assert_allclose(grammian(V).real, P, atol=1e-12)


def test_projection_factor_rejects_non_projections():
    with pytest.raises(NotProjectionError):
        grammian_projection_factor(np.diag([1.0, 0.5]), 2, 1)
    with pytest.raises(NotHermitianError):
        grammian_projection_factor(np.array([[1.0, 1.0], [0.0, 0.0]]), 2, 1)
    with pytest.raises(ShapeError):
        grammian_projection_factor(np.eye(3), 2, 1)
    with pytest.raises(NotProjectionError):
        grammian_projection_factor(np.zeros((2, 2)), 2, 1)


@pytest.mark.parametrize("m,l,d", [(m, l, d) for m in (2, 3) for l in (1, 2, 3)
                                   for d in range(l, min(m * l, 6) + 1)])
def test_uwp_existence_matches_projection_sums(m, l, d):
    # m projections of rank l summing to (ml/d) I exist iff ml/d lies in
    # {1, 2} for two projections and {1, 3/2, 2, 3} for three
    allowed = {2: {1, 2}, 3: {1, Fraction(3, 2), 2, 3}}[m]
    assert uwp_existence(m, l, d).feasible == (Fraction(m * l, d) in allowed)
