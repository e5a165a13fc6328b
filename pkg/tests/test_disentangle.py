from math import sqrt

import numpy as np
import pytest

from gmerobust.disentangle import (
    ghz_coefficients,
    lemma2_construction,
    orthogonal_core,
    pairwise_eliminate,
    theorem4_construction,
    theorem5_construction,
    verify_plan,
)
from gmerobust.errors import (
    CancellationToZeroError,
    MaximallyEntangledError,
    MaximallyEntangledPairError,
    NotBipartiteError,
    NotGHZFormError,
    RankTooLowError,
)
from gmerobust.fixtures import (
    example5_alpha1,
    example5_coefficients,
    example5_plan_states,
    example5_state,
    example5_target,
    psi3,
)
from gmerobust.robustness import Kind, classify
from gmerobust.schmidt import rank_profile
from gmerobust.states import (
    SuperpositionPlan,
    fidelity,
    ghz,
    ket,
    make_state,
    product_state,
    random_state,
    superpose,
)

PLUS = np.array([1, 1]) / sqrt(2)


def diag_state(coeffs):
    return make_state([len(coeffs)] * 2, np.diag(coeffs))


def random_coeffs(rng, r):
    a = rng.uniform(0.1, 1, size=r)
    return a / np.linalg.norm(a)


def gram_and_overlaps(base, plan):
    check = verify_plan(base, plan)
    return check, np.max(np.abs(check.gram - np.eye(len(plan.terms)))), np.max(np.abs(check.base_overlaps))


# -- pairwise elimination --------------------------------------------------


def test_pairwise_residuals_for_unequal_pair():
    step = pairwise_eliminate(0.6, 0.8)
    assert 0 < step.p < 1
    assert abs(step.orthogonality_residual) < 1e-10
    assert abs(step.separability_residual) < 1e-10
    s = np.linalg.svd(step.superposed().reshape(2, 2), compute_uv=False)
    assert s[1] < 1e-10 * s[0]


def test_pairwise_picks_weight_nearest_half():
    # oracle: dense scan of tan(a) tan(b) = -a0/a1, p from the 2x2 determinant
    a0, a1 = 0.6, 0.8
    al = np.linspace(1e-4, np.pi - 1e-4, 200_001)
    be = np.arctan(-a0 / (a1 * np.tan(al)))
    k = np.abs(a0 * np.sin(al) * np.sin(be) + a1 * np.cos(al) * np.cos(be))
    p = k**2 / (a0**2 * a1**2 + k**2)
    best = p[np.argmin(np.abs(p - 0.5))]
    assert pairwise_eliminate(a0, a1).p == pytest.approx(best, abs=1e-6)


def test_pairwise_equal_pair_is_rejected():
    with pytest.raises(MaximallyEntangledPairError):
        pairwise_eliminate(1 / sqrt(2), 1 / sqrt(2))


def test_pairwise_rejects_nonpositive():
    with pytest.raises(ValueError):
        pairwise_eliminate(0, 1)


def test_pairwise_at_fixed_angle_gives_known_step():
    step = pairwise_eliminate(1 / sqrt(5), 2 / sqrt(5), alpha=float(np.arctan2(2, -1)))
    assert step.p == pytest.approx(9 / 26, abs=1e-12)
    assert sqrt(1 - step.p) == pytest.approx(sqrt(17 / 26), abs=1e-12)
    # product state up to sign: (-|0>+2|1>)/sqrt5 (x) (4|0>+|1>)/sqrt17
    expected = np.kron(np.array([-1, 2]) / sqrt(5), np.array([4, 1]) / sqrt(17))
    assert abs(np.vdot(expected, step.product.vector())) == pytest.approx(1, abs=1e-12)
    out = np.kron(np.array([-1, 8]) / sqrt(65), PLUS)
    assert abs(np.vdot(out, step.resulting_factor.vector())) == pytest.approx(1, abs=1e-12)
    assert step.scale == pytest.approx(np.linalg.norm(step.superposed()), abs=1e-12)


def test_pairwise_random_pairs():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a0, a1 = rng.uniform(0.05, 1, size=2)
        if abs(a0 - a1) < 1e-3:
            continue
        step = pairwise_eliminate(a0, a1)
        assert abs(step.orthogonality_residual) < 1e-10
        assert abs(step.separability_residual) < 1e-10
        s = np.linalg.svd(step.superposed().reshape(2, 2), compute_uv=False)
        assert s[1] < 1e-10 * s[0]


# -- Lemma-2 style plan -------------------------------------------------------


def test_r_state_plan_on_diagonal_state_gives_expected_product():
    a = np.array([0.2, 0.5, 0.7])
    a = a / np.linalg.norm(a)
    psi = diag_state(a)
    plan = lemma2_construction(psi)
    assert len(plan.terms) == 3
    assert plan.lead == pytest.approx(1 / sqrt(3))
    out = plan.apply(psi)
    expected = make_state([3, 3], np.kron(a, np.ones(3) / sqrt(3)))
    assert fidelity(out, expected) == pytest.approx(1, abs=1e-12)


def test_r_state_plan_orthogonality():
    psi = random_state([3, 4], np.random.default_rng(12))
    plan = lemma2_construction(psi)
    check, gram_err, overlap = gram_and_overlaps(psi, plan)
    assert gram_err < 1e-10
    assert overlap < 1e-10
    assert check.kind is Kind.SEPARABLE


def test_r_state_plan_bell_state():
    plan = lemma2_construction(ghz(2, 2))
    assert len(plan.terms) == 2
    assert verify_plan(ghz(2, 2), plan).kind is Kind.SEPARABLE


def test_r_state_plan_errors():
    with pytest.raises(NotBipartiteError):
        lemma2_construction(ghz(3, 2))
    with pytest.raises(RankTooLowError):
        lemma2_construction(ket("01"))


# -- two-party plan with r - 1 states -----------------------------------------


def test_orthogonal_core_identity():
    a = np.array([0.1, 0.3, 0.5, 0.8])
    a = a / np.linalg.norm(a)
    e, w, avec, bvec = orthogonal_core(a)
    assert np.allclose(np.diag(a) - np.outer(avec, bvec), e @ w, atol=1e-12)
    assert np.allclose(e.T @ e, np.eye(3), atol=1e-12)
    assert np.allclose(np.einsum("ki,k,ik->i", e, a, w), 0, atol=1e-12)


@pytest.mark.parametrize("r", [2, 3, 4, 5])
def test_orthogonal_plan_has_r_minus_one_states(r):
    rng = np.random.default_rng(20 + r)
    for _ in range(20):
        psi = random_state([r, r], rng)
        plan = theorem4_construction(psi)
        assert len(plan.terms) == r - 1
        check, gram_err, overlap = gram_and_overlaps(psi, plan)
        assert gram_err < 1e-10
        assert overlap < 1e-10
        assert check.kind is Kind.SEPARABLE
        assert rank_profile(check.state).r1_max == 1


def test_orthogonal_plan_on_rank_three_state():
    psi = example5_state()
    plan = theorem4_construction(psi)
    check = verify_plan(psi, plan)
    assert len(plan.terms) == 2
    assert check.kind is Kind.SEPARABLE


def test_sequential_plan_is_separable():
    rng = np.random.default_rng(30)
    for r in (2, 3, 4):
        for _ in range(10):
            psi = diag_state(random_coeffs(rng, r))
            plan = theorem4_construction(psi, strategy="sequential")
            assert len(plan.terms) == r - 1
            assert verify_plan(psi, plan).kind is Kind.SEPARABLE


def test_orthogonal_plan_rejects_maximally_entangled():
    with pytest.raises(MaximallyEntangledError):
        theorem4_construction(ghz(2, 2))
    with pytest.raises(MaximallyEntangledError):
        theorem4_construction(ghz(2, 3), strategy="sequential")


def test_unknown_strategy():
    with pytest.raises(ValueError):
        theorem4_construction(example5_state(), strategy="greedy")


def test_explicit_rank_three_plan():
    psi = example5_state()
    p1, p2 = example5_plan_states()
    lam, mu1, mu2 = example5_coefficients()
    out = superpose(lam, psi, [(mu1, p1), (mu2, p2)])
    assert rank_profile(out).r1_max == 1
    assert fidelity(out, example5_target()) >= 1 - 1e-10
    # its two states are not mutually orthogonal
    assert abs(np.vdot(p1.vector(), p2.vector())) > 0.3
    assert np.linalg.norm(example5_alpha1()) == pytest.approx(1)


# -- three-party GHZ form ------------------------------------------------------


def test_ghz_coefficients():
    a = np.array([3, 6, 2 * sqrt(26)]) / sqrt(149)
    coeffs = ghz_coefficients(ghz(3, 3, a))
    assert list(coeffs) == [0, 1, 2]
    assert np.allclose(list(coeffs.values()), a)
    with pytest.raises(NotGHZFormError):
        ghz_coefficients(psi3())
    with pytest.raises(NotGHZFormError):
        ghz_coefficients(ghz(2, 2))


def test_ghz_form_plan_has_five_states():
    a = np.array([3, 6, 2 * sqrt(26)]) / sqrt(149)
    psi = ghz(3, 3, a)
    plan = theorem5_construction(psi)
    assert len(plan.terms) == 5
    check = verify_plan(psi, plan)
    assert np.max(np.abs(check.base_overlaps)) < 1e-10
    assert check.kind is Kind.FULLY_SEPARABLE


def test_ghz_form_intermediate_state_is_biseparable_product():
    a = np.array([0.3, 0.5, 0.81])
    a = a / np.linalg.norm(a)
    psi = ghz(3, 3, a)
    plan = theorem5_construction(psi)
    partial = SuperpositionPlan(plan.lead, plan.terms[:3]).apply(psi)
    expected = make_state([3, 3, 3], np.kron(np.diag(a).ravel(), np.ones(3) / sqrt(3)))
    assert fidelity(partial, expected) == pytest.approx(1, abs=1e-12)
    assert classify(partial).kind is Kind.BISEPARABLE


def test_ghz_form_complex_and_padded_support():
    a = np.array([0.4, 0.0, 0.6j, -0.2 + 0.3j])
    psi = ghz(3, 4, a)
    plan = theorem5_construction(psi)
    assert len(plan.terms) == 5
    check = verify_plan(psi, plan)
    assert np.max(np.abs(check.base_overlaps)) < 1e-10
    assert check.kind is Kind.FULLY_SEPARABLE


def test_ghz_form_errors():
    with pytest.raises(MaximallyEntangledError):
        theorem5_construction(ghz(3, 3))
    with pytest.raises(RankTooLowError):
        theorem5_construction(ket("000"))


# -- verification -------------------------------------------------------------


def test_verify_empty_plan_classifies_base():
    check = verify_plan(ghz(3, 2), SuperpositionPlan(1.0, ()))
    assert check.kind is Kind.GME
    assert check.gram.shape == (0, 0)


def test_verify_plan_on_psi3_with_000():
    plan = SuperpositionPlan(2 * sqrt(2) / 3, ((1 / 3, product_state([[1, 0]] * 3)),))
    check = verify_plan(psi3(), plan)
    assert check.kind is Kind.FULLY_SEPARABLE
    assert abs(check.base_overlaps[0]) < 1e-12


def test_verify_reports_cancellation():
    plan = SuperpositionPlan(1.0, ((-1.0, product_state([[1, 0]] * 3)),))
    with pytest.raises(CancellationToZeroError):
        verify_plan(ket("000"), plan)
