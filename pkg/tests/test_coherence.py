import math

import numpy as np
import pytest

from damplab import coherence
from damplab.channels import ChannelSpec, apply_n, two_qubit_kraus
from damplab.coherence import (
    analytic_coherence_ad,
    asymptotic_coherence_ad,
    evolve_report,
    is_maximally_coherent,
    l1_coherence,
)
from damplab.errors import ParamOutOfRangeError
from damplab.kernels import trajectory4
from damplab.qmat import tensor
from damplab.states import m1, m2, m3, max_coherent_qubit, random_density

PLUS4 = np.full((4, 4), 0.25, dtype=complex)  # |+><+| (x) |+><+|


class TestL1Coherence:
    def test_incoherent_state(self):
        assert l1_coherence(np.eye(4) / 4.0) == 0.0

    def test_saturates_bound(self):
        assert l1_coherence(PLUS4) == pytest.approx(3.0, abs=1e-15)

    def test_orthogonal_blocks_mixture(self):
        assert l1_coherence(m2(0.5)) == pytest.approx(1.0, abs=1e-15)

    def test_hermitian_doubling_identity(self):
        rho = np.array(random_density(20))
        twice = 2.0 * sum(abs(rho[i, j]) for i in range(4) for j in range(i + 1, 4))
        assert l1_coherence(rho) == pytest.approx(twice, abs=1e-14)

    def test_batched_input(self):
        stack = np.stack([np.eye(4) / 4.0, PLUS4])
        assert np.allclose(l1_coherence(stack), [0.0, 3.0])

    def test_two_by_two(self):
        assert l1_coherence(max_coherent_qubit(0.3)) == pytest.approx(1.0, abs=1e-15)

    def test_bound_on_random_states(self):
        for seed in range(50):
            c = l1_coherence(random_density(600 + seed))
            assert 0.0 <= c <= 3.0


class TestAnalyticCoherence:
    def test_n0_collapses_to_l1(self):
        rho = random_density(21)
        for side in ("left", "right", "both"):
            assert analytic_coherence_ad(rho, 0.6, side, 0) == pytest.approx(
                l1_coherence(rho), abs=1e-14
            )

    def test_m2_two_steps(self):
        # |p0 - p1*(1-q^n)| + p1*q^n with q^n = 0.25
        value = analytic_coherence_ad(m2(0.5), 0.5, "left", 2)
        assert value == pytest.approx(0.25, abs=1e-12)
        oracle = l1_coherence(apply_n(m2(0.5), ChannelSpec("ad", 0.5, "left", 2)))
        assert value == pytest.approx(oracle, abs=1e-12)

    def test_m3_two_steps(self):
        # sqrt(p0^2 + p1^2*(1-q^n)^2) + p1*q^n
        value = analytic_coherence_ad(m3(0.5), 0.5, "left", 2)
        assert value == pytest.approx(0.75, abs=1e-12)
        oracle = l1_coherence(apply_n(m3(0.5), ChannelSpec("ad", 0.5, "left", 2)))
        assert value == pytest.approx(oracle, abs=1e-12)

    def test_agreement_with_iterated_channel(self):
        n_grid = np.arange(21)
        worst = 0.0
        for seed in range(40):
            rho = np.ascontiguousarray(random_density(seed))
            for gamma in (0.1, 0.5, 0.9):
                for side in ("left", "right", "both"):
                    traj = trajectory4(rho, two_qubit_kraus("ad", gamma, side), 20)
                    diff = l1_coherence(traj) - analytic_coherence_ad(rho, gamma, side, n_grid)
                    worst = max(worst, float(np.abs(diff).max()))
        assert worst <= 1e-12

    def test_never_exceeds_input_coherence(self):
        for seed in range(30):
            rho = random_density(700 + seed)
            c_in = l1_coherence(rho)
            for gamma in (0.0, 0.4, 1.0):
                for side in ("left", "right", "both"):
                    c = analytic_coherence_ad(rho, gamma, side, np.arange(1, 16))
                    assert np.all(c <= c_in + 1e-12)

    def test_param_range(self):
        with pytest.raises(ParamOutOfRangeError):
            analytic_coherence_ad(random_density(1), -0.2, "left", 1)


class TestAsymptotics:
    def test_incoherent_limit_is_zero(self):
        rho = np.diag([0.4, 0.3, 0.2, 0.1]).astype(complex)
        for side in ("left", "right", "both"):
            assert asymptotic_coherence_ad(rho, 0.5, side) == 0.0

    def test_population_difference_survives(self):
        assert asymptotic_coherence_ad(m2(0.75), 0.5, "left") == pytest.approx(0.5, abs=1e-15)

    def test_circular_part_limit(self):
        assert asymptotic_coherence_ad(m3(0.6), 0.5, "left") == pytest.approx(
            math.sqrt(0.52), abs=1e-12
        )

    def test_gamma_zero_returns_input_coherence(self):
        rho = random_density(22)
        assert asymptotic_coherence_ad(rho, 0.0, "left") == l1_coherence(rho)

    def test_both_sides_lose_everything(self):
        assert asymptotic_coherence_ad(m1(0.5), 0.7, "both") == 0.0

    def test_large_n_convergence(self):
        rho = random_density(23)
        for side in ("left", "right", "both"):
            far = analytic_coherence_ad(rho, 0.5, side, 500)
            assert far == pytest.approx(asymptotic_coherence_ad(rho, 0.5, side), abs=1e-12)


class TestMaximallyCoherent:
    def test_single_qubit_phase_family(self):
        assert is_maximally_coherent(max_coherent_qubit(1.2))

    def test_maximally_mixed_is_not(self):
        assert not is_maximally_coherent(np.eye(4) / 4.0)

    def test_plus_plus_product(self):
        assert is_maximally_coherent(PLUS4)

    def test_uneven_modulus_fails(self):
        m = PLUS4.copy()
        m[0, 1] = 0.20
        m[1, 0] = 0.20
        assert not is_maximally_coherent(m)


class TestEvolveReport:
    def test_fields_and_trajectory(self):
        report = evolve_report(m2(0.5), ChannelSpec("ad", 0.5, "left", 2))
        assert report.c_in == pytest.approx(1.0)
        assert [n for n, _ in report.trajectory] == [0, 1, 2]
        assert report.trajectory[-1][1] == pytest.approx(0.25, abs=1e-12)
        assert report.c_analytic == pytest.approx(0.25, abs=1e-12)
        assert report.c_limit == pytest.approx(0.0, abs=1e-15)
        assert report.frozen is False
        assert report.reason == "argument_mismatch"

    def test_dict_shape(self):
        doc = evolve_report(m1(0.3), ChannelSpec("ad", 0.5, "left", 3)).to_dict()
        assert set(doc) == {"c_in", "trajectory", "c_analytic", "c_limit", "frozen", "reason"}
        assert doc["frozen"] is True
        assert doc["trajectory"][0] == [0, pytest.approx(1.0)]

    def test_phase_damping_has_no_closed_form_fields(self):
        report = evolve_report(m2(0.5), ChannelSpec("pd", 0.5, "left", 4))
        assert report.c_analytic is None
        assert report.c_limit is None
        assert report.frozen is True
        cs = [c for _, c in report.trajectory]
        assert max(cs) - min(cs) <= 1e-12
