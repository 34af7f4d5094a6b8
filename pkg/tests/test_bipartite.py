import math

import numpy as np
import pytest

from dpstates import (
    AmbiguousAtPZeroError,
    DensityMatrix,
    FOutOfRangeError,
    InvalidSchmidtVectorError,
    NonUnitVectorError,
    NotDPSError,
    PolarizationOutOfRangeError,
    SubsystemOrderError,
    consistency_check,
    dps_test,
    generate_basis,
    isotropic,
    make_dps,
    negativity,
    pair_threshold,
    partial_trace,
    partial_transpose,
    pt_spectrum_closed,
    reduced_spectrum_dps,
    schmidt_dps,
    schmidt_pure,
    two_qubit_canonical,
)
from dpstates.channels import haar_state

from conftest import random_non_dps, rng_for

DIM_PAIRS = [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)]


def bipartite_pure(dA, dB, rng):
    return haar_state(dA * dB, rng)


class TestSchmidtPure:
    @pytest.mark.parametrize("dA,dB", DIM_PAIRS)
    def test_locally_rotates_to_diagonal_form(self, dA, dB):
        rng = rng_for(50, dA, dB)
        psi = bipartite_pure(dA, dB, rng)
        form = schmidt_pure(psi, dA, dB)
        assert form.b.shape == (dA,)
        assert np.all(np.diff(form.b) <= 1e-14)
        assert np.sum(form.b**2) == pytest.approx(1.0, abs=1e-12)
        rotated = np.kron(form.U, form.V) @ psi
        expect = np.zeros(dA * dB, dtype=complex)
        for j in range(dA):
            expect[j * dB + j] = form.b[j]
        assert np.max(np.abs(rotated - expect)) < 1e-12

    def test_rejects_subsystem_order(self):
        rng = rng_for(51)
        with pytest.raises(SubsystemOrderError):
            schmidt_pure(bipartite_pure(3, 2, rng), 3, 2)

    def test_rejects_non_unit(self):
        with pytest.raises(NonUnitVectorError):
            schmidt_pure(np.ones(4), 2, 2)


class TestSchmidtDps:
    @pytest.mark.parametrize("dA,dB", DIM_PAIRS)
    def test_recovers_p_and_coefficients(self, dA, dB):
        rng = rng_for(52, dA, dB)
        basis = generate_basis(dA * dB)
        psi = bipartite_pure(dA, dB, rng)
        direct = schmidt_pure(psi, dA, dB)
        for p in (0.7, -0.05):
            dps = make_dps(psi, p)
            got_p, form = schmidt_dps(dps.to_matrix(), dA, dB, basis)
            assert got_p == pytest.approx(p, abs=1e-10)
            assert np.max(np.abs(form.b - direct.b)) < 1e-9

    def test_rejects_non_dps(self):
        basis = generate_basis(4)
        with pytest.raises(NotDPSError):
            schmidt_dps(random_non_dps(4, rng_for(53)), 2, 2, basis)

    def test_ambiguous_at_p_zero(self):
        basis = generate_basis(4)
        dps = make_dps(bipartite_pure(2, 2, rng_for(54)), 0.0)
        with pytest.raises(AmbiguousAtPZeroError):
            schmidt_dps(dps.to_matrix(), 2, 2, basis)


class TestReducedSpectrum:
    @pytest.mark.parametrize("dA,dB", DIM_PAIRS)
    def test_matches_eigensolved_marginals(self, dA, dB):
        rng = rng_for(55, dA, dB)
        psi = bipartite_pure(dA, dB, rng)
        form = schmidt_pure(psi, dA, dB)
        for p in (0.45, -0.08):
            M = make_dps(psi, p).to_matrix().matrix
            specA = np.linalg.eigvalsh(partial_trace(M, dA, dB, keep="A"))
            specB = np.linalg.eigvalsh(partial_trace(M, dA, dB, keep="B"))
            assert np.max(np.abs(reduced_spectrum_dps(p, form.b, dA) - specA)) < 1e-10
            assert np.max(np.abs(reduced_spectrum_dps(p, form.b, dB) - specB)) < 1e-10

    def test_rejects_bad_coefficients(self):
        with pytest.raises(InvalidSchmidtVectorError):
            reduced_spectrum_dps(0.5, [0.9, 0.9], 2)
        with pytest.raises(InvalidSchmidtVectorError):
            reduced_spectrum_dps(0.5, [1.2, -0.1], 2)


class TestConsistencyCheck:
    def test_accepts_true_marginal_pair(self):
        rng = rng_for(56)
        dA, dB = 3, 4
        psi = bipartite_pure(dA, dB, rng)
        M = make_dps(psi, 0.6).to_matrix().matrix
        rhoA = DensityMatrix(partial_trace(M, dA, dB, keep="A"))
        rhoB = DensityMatrix(partial_trace(M, dA, dB, keep="B"))
        res = consistency_check(rhoA, rhoB)
        assert res.consistent
        assert res.p == pytest.approx(0.6, abs=1e-8)

    def test_rejects_mismatched_polarizations(self):
        rng = rng_for(57)
        dA, dB = 2, 3
        psi = bipartite_pure(dA, dB, rng)
        MA = make_dps(psi, 0.5).to_matrix().matrix
        MB = make_dps(psi, 0.2).to_matrix().matrix
        rhoA = DensityMatrix(partial_trace(MA, dA, dB, keep="A"))
        rhoB = DensityMatrix(partial_trace(MB, dA, dB, keep="B"))
        res = consistency_check(rhoA, rhoB)
        assert not res.consistent

    def test_rejects_rank_deficient_marginal(self):
        rhoA = DensityMatrix(np.diag([1.0, 0.0]))
        rhoB = DensityMatrix(np.eye(3) / 3.0)
        assert not consistency_check(rhoA, rhoB).consistent

    def test_rejects_missing_cluster(self):
        # dB >= dA + 2 forces a (dB-dA)-fold degenerate level in rho_B
        rhoA = DensityMatrix(np.diag([0.6, 0.4]))
        rhoB = DensityMatrix(np.diag([0.4, 0.3, 0.2, 0.1]))
        assert not consistency_check(rhoA, rhoB).consistent


class TestPtSpectrum:
    @pytest.mark.parametrize("dA,dB", DIM_PAIRS)
    def test_matches_brute_force(self, dA, dB):
        rng = rng_for(58, dA, dB)
        psi = bipartite_pure(dA, dB, rng)
        form = schmidt_pure(psi, dA, dB)
        for p in (0.9, 0.3, -0.04):
            dm = make_dps(psi, p).to_matrix()
            closed = np.sort(pt_spectrum_closed(p, form.b, dA, dB))
            # the closed form is basis-independent: use the Schmidt-diagonal
            # representative with the same coefficients
            diag = np.zeros(dA * dB, dtype=complex)
            for j in range(dA):
                diag[j * dB + j] = form.b[j]
            brute = np.sort(
                np.linalg.eigvalsh(partial_transpose(make_dps(diag, p).to_matrix(), dA, dB))
            )
            assert np.max(np.abs(closed - brute)) < 1e-10
            # local unitaries do not move the PT spectrum
            brute_orig = np.sort(np.linalg.eigvalsh(partial_transpose(dm, dA, dB)))
            assert np.max(np.abs(closed - brute_orig)) < 1e-10

    def test_counts_and_padding(self):
        closed = pt_spectrum_closed(0.5, [1.0, 0.0], 2, 3)
        assert closed.shape == (6,)
        assert np.sum(closed) == pytest.approx(1.0, abs=1e-12)


class TestNegativity:
    def test_ppt_case_is_exact_zero(self):
        rep = negativity(0.1, [1.0 / math.sqrt(2.0)] * 2, 2, 2)
        assert rep.negativity == 0.0
        assert rep.negative_count == 0
        assert not rep.entangled
        assert "sufficient but not necessary" in rep.caveat

    def test_npt_case_matches_trace_norm(self):
        p = 0.8
        b = [1.0 / math.sqrt(2.0)] * 2
        rep = negativity(p, b, 2, 2)
        spectrum = pt_spectrum_closed(p, b, 2, 2)
        expect = (np.sum(np.abs(spectrum)) - 1.0) / 1.0
        assert rep.negativity == pytest.approx(expect, abs=1e-12)
        assert rep.entangled
        assert rep.negative_count == 1
        assert rep.bound == 1

    def test_count_bound(self):
        b = [1.0 / math.sqrt(3.0)] * 3
        rep = negativity(0.9, b, 3, 3)
        assert rep.negative_count <= 3


class TestPairThreshold:
    def test_formula(self):
        b = [1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.0]
        assert pair_threshold(b, 3, 3) == pytest.approx(2.0 / 11.0, abs=1e-14)

    def test_product_state_never_negative(self):
        assert math.isinf(pair_threshold([1.0, 0.0], 2, 2))


class TestTwoQubitCanonical:
    def test_is_dps_with_matching_p(self):
        basis = generate_basis(4)
        state, _ = two_qubit_canonical(0.55, 0.8)
        assert dps_test(state, basis) == pytest.approx(0.55, abs=1e-10)

    def test_mu_matches_pt_eigenvalues(self):
        for p, omega in [(0.2, 0.3), (0.7, 1.5), (-0.3, 0.0), (1.0, math.pi / 4.0)]:
            state, mu = two_qubit_canonical(p, omega)
            brute = np.sort(np.linalg.eigvalsh(partial_transpose(state, 2, 2)))
            assert np.max(np.abs(np.sort(np.asarray(mu)) - brute)) < 1e-12

    def test_parameter_validation(self):
        from dpstates import DomainError

        with pytest.raises(PolarizationOutOfRangeError):
            two_qubit_canonical(-0.4, 0.5)
        with pytest.raises(DomainError):
            two_qubit_canonical(0.5, -0.1)


class TestIsotropic:
    def test_polarization_formula(self):
        for dA in (2, 3, 4):
            for F in (0.0, 0.3, 1.0):
                dps, separable = isotropic(dA, F)
                assert dps.p == pytest.approx((dA * dA * F - 1.0) / (dA * dA - 1.0), abs=1e-12)
                assert separable == (F <= 1.0 / dA + 1e-12)

    def test_purification_is_maximally_entangled(self):
        dps, _ = isotropic(3, 0.7)
        form = schmidt_pure(dps.pure, 3, 3)
        assert np.max(np.abs(form.b - 1.0 / math.sqrt(3.0))) < 1e-12

    def test_f_range(self):
        with pytest.raises(FOutOfRangeError):
            isotropic(2, 1.1)
        with pytest.raises(FOutOfRangeError):
            isotropic(2, -0.1)
