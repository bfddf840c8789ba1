import itertools
import math

import pytest

from conftest import some_protocols
from reconlab.constructors import dft_uwp, harmonic_uwp, random_protocol, unitary_conjugate
from reconlab.erasures import (c_mld, compressed_grammian, e1_lower_bound, e2_lower_bound,
                               error_matrix, in_class_C, is_two_uniform, lemma_identities,
                               max_cross_trace, pattern_error, two_erasure_value, welch_check,
                               welch_constant, worst_case_error)
from reconlab.exceptions import ShapeError
from reconlab.spectra import FROBENIUS, OPERATOR, TRACE, GaugeNorm, norm_eval
from reconlab.systems import SystemShape, classify

NORMS = [TRACE, FROBENIUS, OPERATOR, GaugeNorm.p_norm(3), GaugeNorm.ky_fan(1)]
STRICT = [psi for psi in NORMS if psi.strict]
ETF = [(3, {1, 2}), (4, {1, 2, 3}), (7, {1, 2, 4}), (13, {0, 1, 3, 9}), (5, {1, 2, 3, 4})]


def _uwp_family():
    out = [dft_uwp(4, 2, 2), dft_uwp(5, 2, 3), dft_uwp(3, 3, 2), dft_uwp(6, 1, 4)]
    out += [unitary_conjugate(V, seed=s) for s, V in enumerate(list(out))]
    return out


def test_c_mld_values():
    assert math.isclose(c_mld((3, 1, 2)), 1 / 3)
    assert math.isclose(c_mld((4, 2, 2)), math.sqrt(2 / 24 * 0.75))
    assert c_mld((3, 1, 3)) == 0.0
    assert math.isclose(c_mld(SystemShape(4, 2, 4)), c_mld(dft_uwp(4, 2, 2)))
    with pytest.raises(ValueError):
        c_mld((1, 2, 2))


def test_e1_bound_values():
    assert math.isclose(e1_lower_bound((4, 2, 2), OPERATOR), 0.25)
    assert math.isclose(e1_lower_bound((4, 2, 2), TRACE), 0.5)
    assert math.isclose(e1_lower_bound((4, 2, 2), FROBENIUS), 2 / 4 * math.sqrt(2) / 2)


def test_e2_bound_value_for_mercedes_frame():
    assert math.isclose(e2_lower_bound((3, 1, 2), OPERATOR), 1.0)
    assert math.isclose(e2_lower_bound((3, 1, 2), TRACE), 4 / 3)


@pytest.mark.parametrize("psi", NORMS, ids=str)
@pytest.mark.parametrize("V", some_protocols(6, seed=20), ids=repr)
def test_compatible_norm_identity_all_patterns(V, psi):
    for p in range(1, min(V.m, 3) + 1):
        for K in itertools.combinations(range(V.m), p):
            a = norm_eval(psi, error_matrix(V, K))
            b = norm_eval(psi, compressed_grammian(V, K))
            assert abs(a - b) <= 1e-9 * max(1, a)


@pytest.mark.parametrize("V", some_protocols(10, seed=21), ids=repr)
def test_monotone_in_p(V):
    for psi in (OPERATOR, TRACE):
        vals = [worst_case_error(V, p, psi).worst_error for p in range(V.m + 1)]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        assert vals[0] == 0.0


@pytest.mark.parametrize("V", some_protocols(25, seed=22), ids=repr)
def test_one_erasure_bound(V):
    uwp = classify(V).is_uwp_rank_l_protocol
    for psi in NORMS:
        rep = worst_case_error(V, 1, psi)
        assert rep.meets_bound
        if psi.strict and abs(rep.worst_error - rep.bound) <= 1e-7:
            assert uwp


@pytest.mark.parametrize("psi", STRICT, ids=str)
def test_uwp_attains_one_erasure_bound(psi):
    for V in _uwp_family():
        rep = worst_case_error(V, 1, psi)
        assert abs(rep.worst_error - rep.bound) <= 1e-9


@pytest.mark.parametrize("V", _uwp_family(), ids=repr)
def test_two_erasure_block_formula(V):
    for psi in NORMS:
        for i, j in itertools.combinations(range(V.m), 2):
            assert abs(pattern_error(V, (i, j), psi) - two_erasure_value(V, i, j, psi)) <= 1e-9


@pytest.mark.parametrize("m,S", ETF)
def test_equiangular_frames_attain_two_erasure_bound(m, S):
    V = harmonic_uwp(m, 1, S)
    assert is_two_uniform(V) and in_class_C(V)
    for psi in NORMS:
        rep = worst_case_error(V, 2, psi)
        assert abs(rep.worst_error - rep.bound) <= 1e-7


def test_non_equiangular_frame_exceeds_bound():
    V = harmonic_uwp(6, 1, {1, 3, 4})
    assert in_class_C(V) and not is_two_uniform(V)
    rep = worst_case_error(V, 2, OPERATOR)
    assert rep.worst_error > rep.bound + 1e-7


@pytest.mark.parametrize("V", _uwp_family(), ids=repr)
def test_cross_block_identities(V):
    for i in range(V.m):
        rep = lemma_identities(V, i)
        assert rep.hypothesis
        assert all(rep.holds.values()), rep.to_dict()


def test_cross_block_identity_is_informational_off_hypothesis():
    V = random_protocol(4, 2, 3, seed=1)
    rep = lemma_identities(V, 0)
    assert not rep.hypothesis
    with pytest.raises(ShapeError):
        lemma_identities(V, 4)


@pytest.mark.parametrize("psi", NORMS, ids=str)
def test_welch_type_bound(psi):
    for V in _uwp_family():
        assert welch_check(V, psi).holds
    for m, S in ETF:
        rep = welch_check(harmonic_uwp(m, 1, S), psi)
        assert rep.holds and rep.equality and rep.two_uniform


def test_welch_constant_value():
    assert math.isclose(welch_constant((3, 1, 2)), 1 / 9)


def test_worst_case_report_details(dft422):
    rep = worst_case_error(dft422, 1, table=True)
    assert len(rep.table) == 4 and rep.argmax_pattern.K == (0,)
    assert math.isclose(rep.worst_error, 0.5)
    d = rep.to_dict()
    assert d["argmax_pattern"] == [0] and len(d["table"]) == 4
    early = worst_case_error(dft422, 2, stop_at=0.0)
    assert early.argmax_pattern.K == (0, 1)
    assert worst_case_error(dft422, 0).bound == 0.0
    assert worst_case_error(dft422, 3).bound is None
    with pytest.raises(ShapeError):
        worst_case_error(dft422, 5)


def test_max_cross_trace_and_class_membership(dft422):
    assert in_class_C(dft422)
    assert not is_two_uniform(dft422)
    assert max_cross_trace(dft422) >= dft422.l * c_mld(dft422)
    assert not in_class_C(random_protocol(4, 2, 3, seed=0))


@pytest.mark.parametrize("l", [1, 2, 3])
def test_two_block_protocols(l):
    # with m = 2 a u.w.p. rank-l protocol needs d = l or d = 2l
    for d in (l, 2 * l):
        V = dft_uwp(2, l, d // l)
        assert in_class_C(V) and is_two_uniform(V)
        for psi in NORMS:
            rep = worst_case_error(V, 2, psi)
            assert abs(rep.worst_error - rep.bound) <= 1e-9
