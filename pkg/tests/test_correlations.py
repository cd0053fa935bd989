import numpy as np
import pytest

from spinorbit import correlations as co
from spinorbit import qmath, states

from conftest import bell_projector
from oracles import (
    brute_force_classical_correlation,
    conditional_entropy_4x4,
    random_unitary,
    random_x_state,
)

FAST = co.OptimizerConfig(grid_theta=32, grid_phi=16)


def product_state_hv():
    rho = np.zeros((4, 4), dtype=complex)
    rho[1, 1] = 1.0
    return rho


class TestMutualInformation:
    def test_bell(self):
        assert co.mutual_information(bell_projector()) == pytest.approx(2.0, abs=1e-12)

    def test_product(self):
        assert co.mutual_information(product_state_hv()) == pytest.approx(0.0, abs=1e-12)

    def test_rank2_half(self):
        # eigenvalues {1/2, 1/2, 0, 0}; reductions diag(3/4, 1/4)
        expected = 2 * 0.8112781244591328 - 1.0
        assert co.mutual_information(states.rank2(0.5, 0.5)) == pytest.approx(expected, abs=1e-12)


class TestMeasuredConditionalEntropy:
    def test_maximally_mixed(self):
        angles = co.MeasurementAngles(0.7, 1.9)
        assert co.measured_conditional_entropy(np.eye(4) / 4, angles) == pytest.approx(1.0, abs=1e-12)

    def test_bell_computational_basis(self):
        angles = co.MeasurementAngles(0.0, 0.0)
        assert co.measured_conditional_entropy(bell_projector(), angles) == pytest.approx(0.0, abs=1e-12)

    def test_rank3_z_measurement(self):
        # hand expansion: both outcomes are balanced two-level mixtures
        angles = co.MeasurementAngles(0.0, 0.0)
        val = co.measured_conditional_entropy(states.rank3(0.5, 0.5), angles)
        assert val == pytest.approx(1.0, abs=1e-12)

    def test_matches_full_collapse_oracle(self, rng):
        for _ in range(25):
            rho = random_x_state(rng)
            theta = rng.uniform(0, np.pi)
            phi = rng.uniform(0, 2 * np.pi)
            got = co.measured_conditional_entropy(rho, co.MeasurementAngles(theta, phi))
            want = conditional_entropy_4x4(rho, theta, phi)
            assert got == pytest.approx(want, abs=1e-10)


class TestClassicalCorrelation:
    def test_bell(self):
        c, _, converged = co.classical_correlation(bell_projector())
        assert converged
        assert c == pytest.approx(1.0, abs=1e-9)

    def test_product(self):
        c, _, _ = co.classical_correlation(product_state_hv())
        assert c == pytest.approx(0.0, abs=1e-12)

    def test_refinement_never_regresses(self, rng):
        for _ in range(10):
            rho = random_x_state(rng)
            coarse = co.OptimizerConfig(grid_theta=16, grid_phi=8, refine=False)
            refined = co.OptimizerConfig(grid_theta=16, grid_phi=8, refine=True)
            c0, _, _ = co.classical_correlation(rho, coarse)
            c1, _, _ = co.classical_correlation(rho, refined)
            assert c1 >= c0 - 1e-12

    def test_against_brute_force(self, rng):
        for _ in range(5):
            rho = random_x_state(rng)
            c, _, _ = co.classical_correlation(rho)
            oracle = brute_force_classical_correlation(rho, n_theta=200, n_phi=100)
            assert abs(c - oracle) < 1e-3
            assert c >= oracle - 1e-9


class TestDiscord:
    def test_bell(self):
        q, _ = co.quantum_discord(bell_projector())
        assert q == pytest.approx(1.0, abs=1e-9)

    def test_product(self):
        q, _ = co.quantum_discord(product_state_hv())
        assert q == pytest.approx(0.0, abs=1e-9)

    def test_discord_without_entanglement(self):
        rho = states.rank3(0.5, 0.3)
        q, _ = co.quantum_discord(rho)
        assert q > 0.01
        assert co.concurrence(rho) == pytest.approx(0.0, abs=1e-9)

    def test_identity_with_report(self):
        rep = co.correlation_report(states.rank3(0.4, 0.6))
        assert rep.discord == pytest.approx(
            rep.mutual_information - rep.classical_correlation, abs=1e-12)
        assert rep.classical_correlation >= -1e-9
        assert rep.mutual_information >= -1e-9


class TestConcurrence:
    def test_bell(self):
        assert co.concurrence(bell_projector()) == pytest.approx(1.0, abs=1e-10)

    def test_partial_bell(self):
        for p in (0.1, 0.3, 0.5, 0.9):
            k = states.partial_bell(p)
            rho = np.outer(k, k.conj())
            assert co.concurrence(rho) == pytest.approx(2 * np.sqrt(p * (1 - p)), abs=1e-10)

    def test_rank2_linear_in_epsilon(self):
        for eps in np.linspace(0, 1, 11):
            assert co.concurrence(states.rank2(0.5, eps)) == pytest.approx(eps, abs=1e-9)

    def test_matches_x_closed_form(self, rng):
        for _ in range(30):
            rho = random_x_state(rng)
            assert co.concurrence(rho) == pytest.approx(co.xstate_concurrence(rho), abs=1e-9)


class TestXStateConcurrence:
    def test_separable_point(self):
        assert co.xstate_concurrence(states.rank3(0.5, 0.4)) == pytest.approx(0.0, abs=1e-12)

    def test_entangled_point(self):
        # 2 (0.4 - 0.1) with the half/half product background
        assert co.xstate_concurrence(states.rank3(0.5, 0.8)) == pytest.approx(0.6, abs=1e-12)

    def test_pure_corner(self):
        assert co.xstate_concurrence(np.diag([1.0, 0, 0, 0]).astype(complex)) == 0.0

    def test_rejects_non_x(self):
        rho = np.eye(4, dtype=complex) / 4
        rho[0, 1] = rho[1, 0] = 0.05
        with pytest.raises(ValueError):
            co.xstate_concurrence(rho)


class TestProperties:
    def test_monotone_in_epsilon(self):
        last = {"C": -1.0, "Cprime": -1.0, "Q": -1.0}
        for eps in np.arange(0.0, 1.0 + 1e-9, 0.05):
            rep = co.correlation_report(states.rank2(0.5, float(eps)))
            vals = {"C": rep.classical_correlation, "Cprime": rep.concurrence, "Q": rep.discord}
            for key, v in vals.items():
                assert v >= last[key] - 1e-6, f"{key} decreased at eps={eps}"
            last = vals

    def test_c_bounded_by_mutual_information(self, rng):
        for _ in range(10):
            rho = random_x_state(rng)
            rep = co.correlation_report(rho, FAST)
            assert -1e-9 <= rep.classical_correlation <= rep.mutual_information + 1e-9
            assert rep.discord >= -1e-9

    def test_local_unitary_invariance(self, rng):
        rho = states.rank3(0.3, 0.45)
        base = co.correlation_report(rho)
        for _ in range(3):
            u = np.kron(random_unitary(rng), random_unitary(rng))
            rotated = u @ rho @ u.conj().T
            rep = co.correlation_report(rotated)
            assert abs(rep.mutual_information - base.mutual_information) < 1e-6
            assert abs(rep.concurrence - base.concurrence) < 1e-6
            assert abs(rep.discord - base.discord) < 1e-6
