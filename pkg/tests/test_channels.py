import math

import numpy as np
import pytest

from damplab import channels, qmat
from damplab.channels import ChannelSpec, apply_n, closed_form_ad, gamma_from_time, kraus_ops
from damplab.coherence import l1_coherence
from damplab.errors import ParamOutOfRangeError
from damplab.kernels import trajectory4
from damplab.states import bell_phi_plus, m1, m2, random_density


class TestKrausOps:
    def test_no_damping(self):
        e0, e1 = kraus_ops("ad", 0.0)
        assert np.array_equal(e0, np.eye(2))
        assert not np.any(e1)

    def test_full_damping(self):
        e0, e1 = kraus_ops("ad", 1.0)
        assert np.array_equal(e0, np.diag([1.0, 0.0]))
        assert np.array_equal(e1, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_phase_damping_sqrt_entries(self):
        k0, k1 = kraus_ops("pd", 0.36)
        assert np.allclose(k0, np.diag([1.0, 0.8]), atol=1e-15)
        assert np.allclose(k1, np.diag([0.0, 0.6]), atol=1e-15)

    @pytest.mark.parametrize("bad", [-0.1, 1.1, float("nan")])
    def test_param_range(self, bad):
        with pytest.raises(ParamOutOfRangeError):
            kraus_ops("ad", bad)

    def test_unknown_kind(self):
        with pytest.raises(ParamOutOfRangeError):
            kraus_ops("dephase", 0.5)


class TestChannelSpec:
    def test_dict_roundtrip(self):
        spec = ChannelSpec(kind="pd", param=0.25, side="both", n=7)
        assert ChannelSpec.from_dict(spec.to_dict()) == spec
        assert spec.to_dict() == {"kind": "pd", "param": 0.25, "side": "both", "n": 7}

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(kind="xx", param=0.5, side="left", n=1),
            dict(kind="ad", param=1.5, side="left", n=1),
            dict(kind="ad", param=0.5, side="top", n=1),
            dict(kind="ad", param=0.5, side="left", n=-2),
        ],
    )
    def test_rejects_bad_fields(self, kwargs):
        with pytest.raises(ParamOutOfRangeError):
            ChannelSpec(**kwargs)


class TestApplyN:
    def test_zero_steps_identity_even_at_full_damping(self):
        rho = random_density(11)
        out = apply_n(rho, ChannelSpec("ad", 1.0, "left", 0))
        assert np.array_equal(out, rho)

    def test_m1_coherence_survives(self):
        out = apply_n(m1(0.3), ChannelSpec("ad", 0.7, "left", 5))
        assert l1_coherence(out) == pytest.approx(1.0, abs=1e-12)

    def test_bell_one_step(self):
        out = apply_n(bell_phi_plus(), ChannelSpec("ad", 0.36, "left", 1))
        assert abs(out[0, 3]) == pytest.approx(0.4, abs=1e-12)
        assert l1_coherence(out) == pytest.approx(0.8, abs=1e-12)


class TestClosedForm:
    def test_n0_is_identity(self):
        rho = random_density(12)
        for side in channels.SIDES:
            assert np.abs(closed_form_ad(rho, 0.9, side, 0) - rho).max() <= 1e-15

    def test_bell_full_damping(self):
        out = closed_form_ad(bell_phi_plus(), 1.0, "left", 1)
        assert np.allclose(out, np.diag([0.5, 0.5, 0.0, 0.0]), atol=1e-15)

    def test_m2_both_sides_two_steps(self):
        out = closed_form_ad(m2(0.5), 0.5, "both", 2)
        assert l1_coherence(out) == pytest.approx(0.125, abs=1e-12)
        # cross-check against the iterated channel
        it = apply_n(m2(0.5), ChannelSpec("ad", 0.5, "both", 2))
        assert np.abs(out - it).max() <= 1e-12

    def test_vectorized_over_n(self):
        rho = random_density(13)
        stacked = closed_form_ad(rho, 0.3, "right", np.arange(6))
        assert stacked.shape == (6, 4, 4)
        for n in range(6):
            single = closed_form_ad(rho, 0.3, "right", n)
            assert np.array_equal(stacked[n], single)

    def test_randomized_oracle_equivalence(self):
        # the full-size grid runs in the acceptance suite; this is the
        # fast development-loop version
        worst = 0.0
        n_grid = np.arange(21)
        for seed in range(60):
            rho = np.ascontiguousarray(random_density(seed))
            for gamma in (0.1, 0.25, 0.5, 0.75, 0.9):
                for side in channels.SIDES:
                    ops = channels.two_qubit_kraus("ad", gamma, side)
                    it = trajectory4(rho, ops, 20)
                    cf = closed_form_ad(rho, gamma, side, n_grid)
                    worst = max(worst, float(np.abs(it - cf).max()))
        assert worst <= 1e-12

    def test_param_range(self):
        with pytest.raises(ParamOutOfRangeError):
            closed_form_ad(random_density(1), 1.2, "left", 3)
        with pytest.raises(ParamOutOfRangeError):
            closed_form_ad(random_density(1), 0.5, "left", -1)


def test_operator_identities_on_gamma_grid():
    for k in range(11):
        gamma = k / 10.0
        e0, e1 = kraus_ops("ad", gamma)
        assert not np.any(e1 @ e1)  # exactly zero
        assert np.abs(e0 @ e1 - e1).max() <= 1e-15
        assert np.abs(e1 @ e0 - math.sqrt(1.0 - gamma) * e1).max() <= 1e-15


def test_left_right_commutation():
    worst = 0.0
    for seed in range(20):
        rho = random_density(300 + seed)
        gamma = (0.2, 0.5, 0.8)[seed % 3]
        n = 1 + seed % 6
        lr = apply_n(apply_n(rho, ChannelSpec("ad", gamma, "left", n)),
                     ChannelSpec("ad", gamma, "right", n))
        rl = apply_n(apply_n(rho, ChannelSpec("ad", gamma, "right", n)),
                     ChannelSpec("ad", gamma, "left", n))
        worst = max(worst, float(np.abs(lr - rl).max()))
    assert worst <= 1e-13


def test_both_side_step_equals_left_then_right():
    rho = random_density(14)
    both = apply_n(rho, ChannelSpec("ad", 0.4, "both", 3))
    seq = apply_n(apply_n(rho, ChannelSpec("ad", 0.4, "left", 3)),
                  ChannelSpec("ad", 0.4, "right", 3))
    assert np.abs(both - seq).max() <= 1e-13


def test_semigroup_composition():
    worst = 0.0
    for seed in range(20):
        rho = random_density(400 + seed)
        kind = ("ad", "pd")[seed % 2]
        side = channels.SIDES[seed % 3]
        split = apply_n(apply_n(rho, ChannelSpec(kind, 0.35, side, 4)),
                        ChannelSpec(kind, 0.35, side, 3))
        joined = apply_n(rho, ChannelSpec(kind, 0.35, side, 7))
        worst = max(worst, float(np.abs(split - joined).max()))
    assert worst <= 1e-13


def test_phase_damping_left_touches_only_cross_block():
    for seed in range(10):
        rho = np.array(random_density(500 + seed))
        lam, n = 0.4, 6
        out = apply_n(rho, ChannelSpec("pd", lam, "left", n))
        scale = (1.0 - lam) ** (0.5 * n)
        expected = rho.copy()
        expected[:2, 2:] *= scale
        expected[2:, :2] *= scale
        assert np.abs(out - expected).max() <= 1e-12


class TestGammaFromTime:
    def test_zero_time(self):
        assert gamma_from_time("spontaneous_emission", 3.7, 0.0) == 0.0

    def test_quarter_period_oscillator(self):
        chi = 0.8
        assert gamma_from_time("oscillator_coupling", chi, math.pi / (2 * chi)) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_half_life(self):
        rate = 2.2
        t = math.log(2.0) / (2.0 * rate)
        assert gamma_from_time("spontaneous_emission", rate, t) == pytest.approx(0.5, abs=1e-15)

    def test_stays_in_range(self):
        for rate in (0.0, 0.5, 10.0):
            for t in (0.0, 0.3, 2.0, 100.0):
                for model in ("spontaneous_emission", "oscillator_coupling"):
                    assert 0.0 <= gamma_from_time(model, rate, t) <= 1.0

    def test_rejects_bad_input(self):
        with pytest.raises(ParamOutOfRangeError):
            gamma_from_time("spontaneous_emission", -1.0, 1.0)
        with pytest.raises(ParamOutOfRangeError):
            gamma_from_time("lindblad", 1.0, 1.0)
