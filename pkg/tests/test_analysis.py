import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from consensuslab import (
    AssumptionViolated,
    BadSpectrum,
    DegenerateSpectrum,
    ModelParams,
    NotConvergent,
    Spectrum,
    build_augmented,
    check_mla_convergence,
    consensus_value,
    eigendecompose_symmetric,
    improving_gamma_exists,
    lambda_hat_max,
    make_ring,
    map_eigenvalue,
    map_eigenvalue_accelerated,
    optimal_beta,
    optimal_gamma,
    rho_ess,
    rho_ess_accelerated,
    rho_ess_mla,
    roots_in_unit_disk_via_halfplane,
    simulate_trajectory,
    validate,
)

GAMMA_STAR = 0.8541019662496845  # 2.5 * (sqrt(1.8) - 1) for rho = 0.8
RATE_STAR = 0.3416407864998738  # sqrt(1.8) - 1


def synthetic_spectrum(eigenvalues):
    w = np.asarray(eigenvalues, dtype=float)
    return Spectrum(eigenvalues=w, eigenvectors=np.eye(w.size))


def direct_roots(a, b):
    """Quadratic formula for z^2 + a z + b with complex coefficients."""
    sq = cmath.sqrt(a * a - 4.0 * b)
    return (-a + sq) / 2.0, (-a - sq) / 2.0


class TestMapEigenvalue:
    def test_dominant_pair(self):
        pair = map_eigenvalue(1.0, 0.5)
        assert pair.lambda_plus == 1.0
        assert pair.lambda_minus == -0.5

    def test_zero_collapses(self):
        for g in (-0.5, 0.0, 1.0, 2.5):
            pair = map_eigenvalue(0.0, g)
            assert pair.lambda_plus == 0.0 and pair.lambda_minus == 0.0

    def test_complex_pair_example(self):
        pair = map_eigenvalue(-1.0, 0.5)
        want = complex(-0.25, math.sqrt(1.75) / 2.0)
        assert abs(pair.lambda_plus - want) <= 1e-12
        assert abs(pair.lambda_minus - want.conjugate()) <= 1e-12
        assert abs(abs(pair.lambda_plus) - math.sqrt(0.5)) <= 1e-12

    def test_degroot_embedding_is_exact(self):
        for lam in np.linspace(-1.0, 1.0, 41):
            pair = map_eigenvalue(float(lam), 1.0)
            assert {pair.lambda_plus, pair.lambda_minus} == {complex(lam), 0j}

    @given(
        lam=st.floats(min_value=-1.0, max_value=1.0),
        gamma=st.floats(min_value=-0.5, max_value=2.5),
    )
    @settings(max_examples=300, deadline=None)
    def test_residual_and_vieta(self, lam, gamma):
        pair = map_eigenvalue(lam, gamma)
        for z in (pair.lambda_plus, pair.lambda_minus):
            assert abs(z * z - gamma * lam * z + (gamma - 1.0) * lam) <= 1e-12
        assert abs(pair.lambda_plus * pair.lambda_minus - (gamma - 1.0) * lam) <= 1e-12
        assert abs(pair.lambda_plus + pair.lambda_minus - gamma * lam) <= 1e-12

    def test_complex_region_modulus_is_root_product(self):
        rng = np.random.Generator(np.random.Philox(key=5))
        for _ in range(200):
            lam = rng.uniform(-1.0, 1.0)
            g = rng.uniform(-0.5, 2.5)
            pair = map_eigenvalue(lam, g)
            if pair.discriminant < 0:
                assert abs(abs(pair.lambda_plus) ** 2 - (g - 1.0) * lam) <= 1e-12

    def test_small_memory_perturbation_approximation(self):
        # gamma = 1 + delta with tiny delta: roots approach {lam + delta*(lam-1), delta}
        delta = 1e-5
        for lam in (-0.9, -0.3, 0.3, 0.9):
            pair = map_eigenvalue(lam, 1.0 + delta)
            roots = sorted(
                [pair.lambda_plus, pair.lambda_minus], key=lambda z: abs(z)
            )
            assert abs(roots[0] - delta) <= 1e-8
            assert abs(roots[1] - (lam + delta * (lam - 1.0))) <= 1e-8


class TestMapEigenvalueAccelerated:
    def test_periodic_eigenvalue_pair(self):
        for beta in (-0.5, 0.3, 1.0, 1.2, 2.4):
            pair = map_eigenvalue_accelerated(-1.0, beta)
            roots = {pair.lambda_plus, pair.lambda_minus}
            assert any(abs(z + 1.0) <= 1e-12 for z in roots)
            assert any(abs(z - (1.0 - beta)) <= 1e-12 for z in roots)

    def test_beta_one_reduces_to_degroot(self):
        pair = map_eigenvalue_accelerated(1.0, 1.0)
        assert {pair.lambda_plus, pair.lambda_minus} == {1 + 0j, 0j}
        for lam in (-0.7, 0.0, 0.4):
            pair = map_eigenvalue_accelerated(lam, 1.0)
            assert {pair.lambda_plus, pair.lambda_minus} == {complex(lam), 0j}

    @given(
        lam=st.floats(min_value=-1.0, max_value=1.0),
        beta=st.floats(min_value=-0.5, max_value=2.5),
    )
    @settings(max_examples=300, deadline=None)
    def test_residual_and_vieta(self, lam, beta):
        pair = map_eigenvalue_accelerated(lam, beta)
        for z in (pair.lambda_plus, pair.lambda_minus):
            assert abs(z * z - beta * lam * z + (beta - 1.0)) <= 1e-12
        assert abs(pair.lambda_plus * pair.lambda_minus - (beta - 1.0)) <= 1e-12
        assert abs(pair.lambda_plus + pair.lambda_minus - beta * lam) <= 1e-12


class TestConvergenceVerdict:
    def test_pure_ring_converges_below_one(self, ring4):
        spec = eigendecompose_symmetric(ring4)
        v = check_mla_convergence(spec, 0.5)
        assert v.converges and v.gamma_in_range
        assert v.criterion_ii_value == pytest.approx(1.0, abs=1e-10)
        assert v.limiting_eigenvalue_modulus == pytest.approx(
            math.sqrt(0.5), abs=1e-10
        )

    def test_pure_ring_boundary_at_one(self, ring4):
        spec = eigendecompose_symmetric(ring4)
        v = check_mla_convergence(spec, 1.0)
        assert not v.converges
        assert abs(v.criterion_ii_value) <= 1e-12

    def test_gamma_two_never_converges(self, ring4_loops_spectrum):
        v = check_mla_convergence(ring4_loops_spectrum, 2.0)
        assert not v.converges and not v.gamma_in_range

    def test_rejects_non_stochastic_spectrum(self):
        with pytest.raises(AssumptionViolated):
            check_mla_convergence(synthetic_spectrum([0.9, 0.1]), 0.5)

    def test_verdict_agrees_with_explicit_eigenvalues(self, corpus20):
        rng = np.random.Generator(np.random.Philox(key=21))
        checked = 0
        for A, spec in corpus20:
            lam_n = float(spec.eigenvalues[-1])
            for g in rng.uniform(-0.5, 2.5, 30):
                boundary = (lam_n - 1.0) / (2.0 * lam_n)
                if min(abs(g), abs(g - 2.0), abs(g - boundary)) < 1e-9:
                    continue
                v = check_mla_convergence(spec, g)
                assert v.converges == (v.limiting_eigenvalue_modulus < 1.0)
                if v.converges:
                    assert v.limiting_eigenvalue_modulus < 1.0 + 1e-10
                # independent oracle: numpy on the explicit block matrix
                ev = np.linalg.eigvals(build_augmented(A, g).matrix)
                rest = np.delete(ev, np.argmin(np.abs(ev - 1.0)))
                assert v.converges == (np.max(np.abs(rest)) < 1.0)
                checked += 1
        assert checked >= 500


class TestHalfplaneTransform:
    def test_origin_roots(self):
        assert roots_in_unit_disk_via_halfplane(0.0, 0.0) is True

    def test_on_circle_roots(self):
        assert roots_in_unit_disk_via_halfplane(0.0, 1.0) is False

    def test_root_at_one_degenerate(self):
        # z^2 - z = 0 has roots {0, 1}: the leading coefficient vanishes
        assert roots_in_unit_disk_via_halfplane(-1.0, 0.0) is False

    def test_matches_mapped_modulus_near_critical_point(self):
        lam, g = -0.8, 0.8541019662
        pair = map_eigenvalue(lam, g)
        direct = max(abs(pair.lambda_plus), abs(pair.lambda_minus)) < 1.0
        assert roots_in_unit_disk_via_halfplane(-g * lam, (g - 1.0) * lam) == direct

    @given(
        ar=st.floats(-3, 3), ai=st.floats(-3, 3),
        br=st.floats(-3, 3), bi=st.floats(-3, 3),
    )
    @settings(max_examples=300, deadline=None)
    def test_matches_direct_moduli(self, ar, ai, br, bi):
        a, b = complex(ar, ai), complex(br, bi)
        assume(abs(a) <= 3.0 and abs(b) <= 3.0)
        z1, z2 = direct_roots(a, b)
        assume(abs(abs(z1) - 1.0) > 1e-10 and abs(abs(z2) - 1.0) > 1e-10)
        want = abs(z1) < 1.0 and abs(z2) < 1.0
        assert roots_in_unit_disk_via_halfplane(a, b) == want


class TestConsensusValue:
    def test_single_impulse_gives_mean(self, ring4_loops, ring4_loops_spectrum):
        got = consensus_value(ring4_loops, ring4_loops_spectrum, [1.0, 0.0, 0.0, 0.0])
        assert got == pytest.approx(0.25, abs=1e-12)

    def test_consensus_state_is_its_own_value(self, ring4_loops, ring4_loops_spectrum):
        got = consensus_value(ring4_loops, ring4_loops_spectrum, np.full(4, 2.5))
        assert got == pytest.approx(2.5, abs=1e-12)

    def test_matches_long_simulation(self, ring4_loops, ring4_loops_spectrum):
        x0 = np.array([2.0, 4.0, 6.0, 8.0])
        got = consensus_value(ring4_loops, ring4_loops_spectrum, x0)
        assert got == pytest.approx(5.0, abs=1e-10)
        traj = simulate_trajectory(ring4_loops, ModelParams.mla(0.5), x0, 200)
        assert np.max(np.abs(traj[-1] - got)) <= 1e-8

    def test_rejects_non_simple_dominant(self):
        W = np.zeros((4, 4))
        W[0, 1] = W[1, 0] = 1.0
        W[2, 3] = W[3, 2] = 1.0
        A = validate(W)
        with pytest.raises(AssumptionViolated):
            consensus_value(A, eigendecompose_symmetric(A), np.arange(4.0))


class TestRhoEssMla:
    def test_pure_ring_at_half(self, ring4):
        spec = eigendecompose_symmetric(ring4)
        assert rho_ess_mla(spec, 0.5) == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_optimal_point_value(self, ring4_loops_spectrum):
        assert rho_ess_mla(ring4_loops_spectrum, GAMMA_STAR) == pytest.approx(
            RATE_STAR, abs=1e-9
        )

    def test_gamma_one_is_degroot_rate(self, corpus20):
        for _, spec in corpus20:
            if check_mla_convergence(spec, 1.0).converges:
                assert rho_ess_mla(spec, 1.0) == pytest.approx(
                    rho_ess(spec), abs=1e-12
                )

    def test_raises_when_not_convergent(self, ring4):
        spec = eigendecompose_symmetric(ring4)
        with pytest.raises(NotConvergent):
            rho_ess_mla(spec, 1.0)


class TestLambdaHatMax:
    def test_dominant_value(self):
        assert lambda_hat_max(1.0, 0.5) == pytest.approx(1.0, abs=1e-15)
        assert lambda_hat_max(1.0, 1.0) == pytest.approx(1.0, abs=1e-15)

    def test_real_root_region_value(self):
        # roots of z^2 + 0.72 z + 0.08: {-0.582711..., -0.137289...}
        got = lambda_hat_max(-0.8, 0.9)
        ref = max(abs(z) for z in np.roots([1.0, 0.72, 0.08]))
        assert got == pytest.approx(ref, abs=1e-12)
        assert got == pytest.approx(0.5827105745132011, abs=1e-12)

    def test_critically_damped_point(self):
        assert lambda_hat_max(-0.8, GAMMA_STAR) == pytest.approx(
            RATE_STAR, abs=1e-9
        )

    def test_monotone_ordering_at_optimum(self):
        # positive eigenvalues: larger lam gives a larger plus-branch root
        lams = np.linspace(0.05, 1.0, 20)
        plus = [map_eigenvalue(float(l), GAMMA_STAR).lambda_plus.real for l in lams]
        assert np.all(np.diff(plus) > 0)
        # negative eigenvalues in [lam_n, 0]: modulus grows with |lam|
        lams = np.linspace(-0.8, 0.0, 20)
        mods = [lambda_hat_max(float(l), GAMMA_STAR) for l in lams]
        assert np.all(np.diff(mods) < 0)


class TestOptimalGamma:
    def test_ring_with_loops(self, ring4_loops_spectrum):
        gs = optimal_gamma(ring4_loops_spectrum)
        assert gs.gamma == pytest.approx(GAMMA_STAR, abs=1e-9)
        assert gs.rate == pytest.approx(RATE_STAR, abs=1e-9)
        assert gs.hypotheses_met
        # the closed-form rate is exactly what the exhaustive mapping reports
        assert gs.rate == pytest.approx(
            rho_ess_mla(ring4_loops_spectrum, gs.gamma), abs=1e-9
        )

    def test_discriminant_vanishes_at_optimum(self, ring4_loops_spectrum):
        lam_n = float(ring4_loops_spectrum.eigenvalues[-1])
        gs = optimal_gamma(ring4_loops_spectrum)
        D = gs.gamma**2 * lam_n**2 - 4.0 * (gs.gamma - 1.0) * lam_n
        assert abs(D) <= 1e-10
        assert lam_n == pytest.approx(4.0 * (gs.gamma - 1.0) / gs.gamma**2, abs=1e-10)

    def test_grid_search_oracle(self, ring4_loops_spectrum):
        gammas = np.arange(0.01, 1.0, 1e-4)
        vals = []
        for g in gammas:
            v = check_mla_convergence(ring4_loops_spectrum, float(g))
            vals.append(v.limiting_eigenvalue_modulus if v.converges else np.inf)
        best = int(np.argmin(vals))
        gs = optimal_gamma(ring4_loops_spectrum)
        assert abs(gammas[best] - gs.gamma) <= 1e-4
        assert vals[best] >= gs.rate - 1e-9

    def test_hypotheses_not_met_recomputes_rate(self):
        # 6-ring with self loops: lam_2 = 0.55 > |lam_n|/3 = 0.8/3
        spec = eigendecompose_symmetric(make_ring(6, 0.1))
        gs = optimal_gamma(spec)
        assert not gs.hypotheses_met
        assert gs.rate == pytest.approx(rho_ess_mla(spec, gs.gamma), abs=1e-12)
        assert gs.rate > math.sqrt(1.0 + 0.8) - 1.0

    def test_rejects_bad_spectra(self, ring4):
        with pytest.raises(BadSpectrum):
            optimal_gamma(synthetic_spectrum([1.0, 0.5, 0.2]))  # lam_n >= 0
        with pytest.raises(BadSpectrum):
            optimal_gamma(eigendecompose_symmetric(ring4))  # rho = 1


class TestOptimalBeta:
    def test_ring_with_loops(self, ring4_loops_spectrum):
        bs = optimal_beta(ring4_loops_spectrum)
        assert bs.rate == pytest.approx(0.5, abs=1e-12)
        assert bs.beta == pytest.approx(1.25, abs=1e-6)
        achieved = rho_ess_accelerated(ring4_loops_spectrum, bs.beta)
        assert achieved == pytest.approx(bs.rate, abs=1e-6)

    def test_numeric_minimum_matches_closed_form(self, corpus20):
        for _, spec in corpus20[:6]:
            lam_n = float(spec.eigenvalues[-1])
            rho = rho_ess(spec)
            if not (0.0 < rho < 1.0):
                continue
            bs = optimal_beta(spec)
            achieved = rho_ess_accelerated(spec, bs.beta)
            # the closed form assumes the extreme eigenvalue rules; always
            # true for the symmetric spectra here
            assert achieved <= bs.rate + 1e-6
            assert achieved >= bs.rate - 1e-6 or lam_n > 0

    def test_rate_vanishes_with_the_radius(self):
        bs = optimal_beta(synthetic_spectrum([1.0, 1e-6, -1e-6]))
        assert 0.0 < bs.rate < 1e-5

    def test_rejects_degenerate_radius(self, ring4):
        with pytest.raises(BadSpectrum):
            optimal_beta(eigendecompose_symmetric(ring4))

    def test_rate_ordering_chain_example(self, ring4_loops_spectrum):
        gs = optimal_gamma(ring4_loops_spectrum)
        bs = optimal_beta(ring4_loops_spectrum)
        rho = rho_ess(ring4_loops_spectrum)
        assert gs.rate < bs.rate < rho


class TestRateChainInequality:
    def test_holds_on_fine_grid(self):
        for rho in np.arange(0.01, 0.995, 0.01):
            mla = math.sqrt(1.0 + rho) - 1.0
            acc = rho / (1.0 + math.sqrt(1.0 - rho * rho))
            assert acc - mla > 1e-12
            assert rho - acc > 1e-12


class TestImprovingGamma:
    def test_ring_with_loops_improves_with_negative_delta(self, ring4_loops_spectrum):
        got = improving_gamma_exists(ring4_loops_spectrum)
        assert got is not None
        delta, rate = got
        assert delta < 0
        assert rate < rho_ess(ring4_loops_spectrum) - 1e-12
        assert rate == pytest.approx(
            rho_ess_mla(ring4_loops_spectrum, 1.0 + delta), abs=1e-15
        )

    def test_complete_graph_already_optimal(self):
        A = validate(np.full((3, 3), 1.0 / 3.0))
        assert improving_gamma_exists(eigendecompose_symmetric(A)) is None

    def test_degenerate_spectrum_raises(self):
        with pytest.raises(DegenerateSpectrum):
            improving_gamma_exists(synthetic_spectrum([1.0, 0.6, -0.6]))

    def test_positive_essential_eigenvalue_uses_positive_delta(self):
        got = improving_gamma_exists(synthetic_spectrum([1.0, 0.7, -0.2]))
        assert got is not None
        assert got[0] > 0
