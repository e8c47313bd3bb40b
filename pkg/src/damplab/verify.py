"""Randomized invariant battery behind `damplab verify`.

Every check is deterministic for a given base seed and reports the worst
residual it saw; a run passes when every check passes. The oracle-class
checks (closed form vs iterated channel, analytic coherence vs measured
coherence, frozen-coherence soundness) compare two independent code paths,
which is the whole point; don't "simplify" one side into the other.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import channels, coherence, qmat, states, structure
from .errors import ValidationError
from .kernels import trajectory4
from .tolerances import TOL_STRUCT, oracle_tol

GAMMA_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)
FROZEN_GAMMAS = (0.2, 0.5, 0.8)
N_MAX = 20

__all__ = ["CheckResult", "run_all", "format_report", "random_frozen_state", "random_mic_state"]


@dataclass
class CheckResult:
    name: str
    ok: bool
    worst: float
    tol: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"  ({self.detail})" if self.detail else ""
        return f"{status}  {self.name:<34} worst={self.worst:.3e}  tol={self.tol:.1e}{extra}"


# --- random-state builders ---------------------------------------------------


def _random_qubit(rng) -> np.ndarray:
    g = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    m = g @ g.conj().T
    return m / np.trace(m).real


def _align_offdiag(rho2: np.ndarray, phi: float) -> np.ndarray:
    """Phase-rotate a qubit state so its off-diagonal points along e^{i*phi}."""
    z = rho2[0, 1]
    if abs(z) < 1e-12:
        return rho2
    alpha = math.atan2(z.imag, z.real) - phi
    d = np.diag([1.0, np.exp(1j * alpha)])
    return d @ rho2 @ d.conj().T


def random_frozen_state(rng, side: str, kind: str = "ad") -> np.ndarray:
    """A random state that the frozen predicate accepts for (kind, side).

    left/right: block family with random qubit parts; for amplitude damping
    the two block off-diagonals are phase-aligned. both: a random diagonal
    (incoherent) state.
    """
    if side == "both":
        p = rng.random(4)
        return qmat.validate_density(np.diag(p / p.sum()).astype(np.complex128))
    p0 = float(rng.uniform(0.05, 0.95))
    r0 = _random_qubit(rng)
    r1 = _random_qubit(rng)
    if kind == "ad":
        phi = float(rng.uniform(-math.pi, math.pi))
        r0 = _align_offdiag(r0, phi)
        r1 = _align_offdiag(r1, phi)
    build = states.incoherent_coherent if side == "left" else states.coherent_incoherent
    return build(p0, r0, r1)


def random_mic_state(rng):
    """A random maximally incoherent-coherent state; returns (rho, p0, theta0, theta1)."""
    p0 = float(rng.uniform(0.0, 1.0))
    theta0 = float(rng.uniform(-math.pi, math.pi))
    theta1 = float(rng.uniform(-math.pi, math.pi))
    rho = states.incoherent_coherent(
        p0, states.max_coherent_qubit(theta0), states.max_coherent_qubit(theta1)
    )
    return rho, p0, theta0, theta1


def _iterate(rho, kind, param, side, n):
    ops = channels.two_qubit_kraus(kind, param, side)
    return trajectory4(np.ascontiguousarray(rho), ops, n)


# --- individual checks --------------------------------------------------------


def check_tensor_mixed_product(seeds, base_seed, tol=1e-12):
    rng = np.random.default_rng(base_seed + 11)
    worst = 0.0
    for _ in range(min(seeds, 200)):
        a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
        lhs = qmat.tensor(a, b) @ qmat.tensor(c, d)
        rhs = qmat.tensor(a @ c, b @ d)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return CheckResult("tensor_mixed_product", worst <= tol, worst, tol)


def check_tensor_bilinearity(seeds, base_seed, tol=1e-12):
    rng = np.random.default_rng(base_seed + 12)
    worst = 0.0
    for _ in range(min(seeds, 200)):
        a, b, c = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(3))
        alpha = complex(rng.standard_normal(), rng.standard_normal())
        lhs = qmat.tensor(alpha * a + c, b)
        rhs = alpha * qmat.tensor(a, b) + qmat.tensor(c, b)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
        lhs = qmat.tensor(b, alpha * a + c)
        rhs = alpha * qmat.tensor(b, a) + qmat.tensor(b, c)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return CheckResult("tensor_bilinearity", worst <= tol, worst, tol)


def check_kraus_preservation(seeds, base_seed, tol=1e-12):
    rng = np.random.default_rng(base_seed + 13)
    worst = 0.0
    for k in range(min(seeds, 200)):
        rho = states.random_density(base_seed + 1000 + k)
        kind = "ad" if k % 2 == 0 else "pd"
        side = channels.SIDES[k % 3]
        out = qmat.apply_kraus(rho, channels.two_qubit_kraus(kind, float(rng.random()), side))
        worst = max(worst, qmat.trace_residual(out), qmat.hermiticity_residual(out))
    return CheckResult("kraus_trace_hermiticity", worst <= tol, worst, tol)


def check_ginibre_validation(seeds, base_seed, tol=0.0):
    bad = 0
    count = min(seeds, 200)
    for k in range(count):
        rho = np.array(states.random_density(base_seed + 2000 + k))  # accepted or raises
        bumped = rho.copy()
        bumped[0, 1] += 10.0 * TOL_STRUCT  # asymmetric: [1, 0] untouched
        try:
            qmat.validate_density(bumped)
            bad += 1
        except ValidationError:
            pass
    return CheckResult(
        "ginibre_validation", bad == 0, float(bad), tol, detail=f"{count} accepted / perturbed rejected"
    )


def check_operator_identities(tol=1e-15):
    worst = 0.0
    exact_ok = True
    for k in range(11):
        gamma = k / 10.0
        e0, e1 = channels.kraus_ops("ad", gamma)
        exact_ok &= not np.any(e1 @ e1)  # E1^2 is exactly the zero matrix
        worst = max(worst, float(np.abs(e0 @ e1 - e1).max()))
        worst = max(worst, float(np.abs(e1 @ e0 - math.sqrt(1.0 - gamma) * e1).max()))
    return CheckResult("operator_identities", exact_ok and worst <= tol, worst, tol)


def check_oracle_equivalence(seeds, base_seed, tol):
    worst = 0.0
    n_grid = np.arange(N_MAX + 1)
    for k in range(seeds):
        rho = states.random_density(base_seed + k)
        for gamma in GAMMA_GRID:
            for side in channels.SIDES:
                it = _iterate(rho, "ad", gamma, side, N_MAX)
                cf = channels.closed_form_ad(rho, gamma, side, n_grid)
                worst = max(worst, float(np.abs(it - cf).max()))
    return CheckResult("oracle_equivalence_ad", worst <= tol, worst, tol)


def check_closed_form_drift(base_seed, tol):
    # long-horizon agreement: 200 steps, the regime asymptotic tests live in
    worst = 0.0
    for k in range(5):
        rho = states.random_density(base_seed + 3000 + k)
        for gamma in (0.1, 0.5):
            for side in channels.SIDES:
                it = _iterate(rho, "ad", gamma, side, 200)[-1]
                cf = channels.closed_form_ad(rho, gamma, side, 200)
                worst = max(worst, float(np.abs(it - cf).max()))
    return CheckResult("closed_form_drift_n200", worst <= tol, worst, tol)


def check_commutation(seeds, base_seed, tol=1e-13):
    worst = 0.0
    for k in range(min(seeds, 100)):
        rho = states.random_density(base_seed + 4000 + k)
        gamma = GAMMA_GRID[k % len(GAMMA_GRID)]
        n = 1 + k % 10
        lr = channels.apply_n(
            channels.apply_n(rho, channels.ChannelSpec("ad", gamma, "left", n)),
            channels.ChannelSpec("ad", gamma, "right", n),
        )
        rl = channels.apply_n(
            channels.apply_n(rho, channels.ChannelSpec("ad", gamma, "right", n)),
            channels.ChannelSpec("ad", gamma, "left", n),
        )
        worst = max(worst, float(np.abs(lr - rl).max()))
    return CheckResult("left_right_commutation", worst <= tol, worst, tol)


def check_semigroup(seeds, base_seed, tol=1e-13):
    worst = 0.0
    for k in range(min(seeds, 100)):
        rho = states.random_density(base_seed + 5000 + k)
        kind = "ad" if k % 2 == 0 else "pd"
        side = channels.SIDES[k % 3]
        param = GAMMA_GRID[k % len(GAMMA_GRID)]
        a, b = 1 + k % 7, 1 + (k // 3) % 8
        two_leg = channels.apply_n(
            channels.apply_n(rho, channels.ChannelSpec(kind, param, side, a)),
            channels.ChannelSpec(kind, param, side, b),
        )
        one_leg = channels.apply_n(rho, channels.ChannelSpec(kind, param, side, a + b))
        worst = max(worst, float(np.abs(two_leg - one_leg).max()))
    return CheckResult("semigroup_composition", worst <= tol, worst, tol)


def check_pd_left_structure(seeds, base_seed, tol):
    # left phase damping: both diagonal blocks untouched, cross block scaled
    # by (1-lambda)^(n/2)
    worst = 0.0
    for k in range(min(seeds, 100)):
        rho = np.array(states.random_density(base_seed + 6000 + k))
        lam = (0.2, 0.5, 0.8)[k % 3]
        n = 1 + k % 12
        out = channels.apply_n(rho, channels.ChannelSpec("pd", lam, "left", n))
        expected = rho.copy()
        expected[:2, 2:] *= (1.0 - lam) ** (0.5 * n)
        expected[2:, :2] *= (1.0 - lam) ** (0.5 * n)
        worst = max(worst, float(np.abs(out - expected).max()))
    return CheckResult("pd_left_structure", worst <= tol, worst, tol)


def check_coherence_bound(seeds, base_seed, tol=1e-12):
    worst = 0.0
    for k in range(min(seeds, 500)):
        c = coherence.l1_coherence(states.random_density(base_seed + 7000 + k))
        worst = max(worst, -c, c - 3.0)
    worst = max(worst, 0.0)
    return CheckResult("coherence_bound_d4", worst <= tol, worst, tol)


def check_monotone_decay(seeds, base_seed, tol):
    # analytic coherence never rises with n and never exceeds the input value
    worst = 0.0
    n_grid = np.arange(N_MAX + 1)
    for k in range(min(seeds, 200)):
        rho = states.random_density(base_seed + 8000 + k)
        c_in = coherence.l1_coherence(rho)
        for gamma in (0.0, 0.3, 0.7, 1.0):
            for side in channels.SIDES:
                c = coherence.analytic_coherence_ad(rho, gamma, side, n_grid)
                worst = max(worst, float(np.max(c - c_in)), float(np.max(np.diff(c))))
    worst = max(worst, 0.0)
    return CheckResult("coherence_monotone_decay", worst <= tol, worst, tol)


def check_analytic_agreement(seeds, base_seed, tol):
    worst = 0.0
    n_grid = np.arange(N_MAX + 1)
    for k in range(seeds):
        rho = states.random_density(base_seed + k)
        for gamma in GAMMA_GRID:
            for side in channels.SIDES:
                it = coherence.l1_coherence(_iterate(rho, "ad", gamma, side, N_MAX))
                ana = coherence.analytic_coherence_ad(rho, gamma, side, n_grid)
                worst = max(worst, float(np.abs(it - ana).max()))
    return CheckResult("analytic_agreement_ad", worst <= tol, worst, tol)


def check_factorization(seeds, base_seed, tol):
    # maximally incoherent-coherent states: the two-sided coherence is the
    # product of the one-sided ones, and the right factor depends only on
    # the channel
    rng = np.random.default_rng(base_seed + 17)
    worst = 0.0
    for _ in range(min(seeds, 100)):
        rho, _, _, _ = random_mic_state(rng)
        for gamma in FROZEN_GAMMAS:
            c_l = coherence.l1_coherence(_iterate(rho, "ad", gamma, "left", 10)[1:])
            c_r = coherence.l1_coherence(_iterate(rho, "ad", gamma, "right", 10)[1:])
            c_b = coherence.l1_coherence(_iterate(rho, "ad", gamma, "both", 10)[1:])
            n_grid = np.arange(1, 11)
            worst = max(worst, float(np.abs(c_b - c_l * c_r).max()))
            worst = max(worst, float(np.abs(c_r - (1.0 - gamma) ** (0.5 * n_grid)).max()))
    return CheckResult("factorization_mic", worst <= tol, worst, tol)


def check_right_factor_decrease():
    # (1-gamma)^(n/2) falls strictly as gamma rises, for every fixed n >= 1
    gammas = np.linspace(0.0, 1.0, 21)
    worst = -math.inf
    for n in (1, 2, 5, 20):
        f = (1.0 - gammas) ** (0.5 * n)
        worst = max(worst, float(np.diff(f).max()))
    return CheckResult("right_factor_strict_decrease", worst < 0.0, worst, 0.0,
                       detail="max adjacent increase, must be < 0")


def _frozen_soundness(kind, seeds, base_seed, tol, n_check=15):
    rng = np.random.default_rng(base_seed + 19)
    worst = 0.0
    for _ in range(min(seeds, 200)):
        for side in channels.SIDES:
            rho = random_frozen_state(rng, side, kind)
            verdict = structure.frozen_predicate(rho, kind, side)
            if not verdict.frozen:
                return CheckResult(f"frozen_soundness_{kind}", False, math.inf, tol,
                                   detail="builder output rejected by predicate")
            c_in = coherence.l1_coherence(rho)
            for param in FROZEN_GAMMAS:
                c = coherence.l1_coherence(_iterate(rho, kind, param, side, n_check))
                worst = max(worst, float(np.abs(c - c_in).max()))
    return CheckResult(f"frozen_soundness_{kind}", worst <= tol, worst, tol)


def check_frozen_soundness_ad(seeds, base_seed, tol):
    return _frozen_soundness("ad", seeds, base_seed, tol)


def check_frozen_soundness_pd(seeds, base_seed, tol):
    return _frozen_soundness("pd", seeds, base_seed, tol)


def check_frozen_completeness(seeds, base_seed, tol, n_check=15, gamma=0.5):
    # contrapositive: predicate says no -> the coherence really drops
    min_drop = math.inf
    tested = 0
    k = 0
    while tested < min(seeds, 200):
        rho = states.random_density(base_seed + 9000 + k)
        k += 1
        if coherence.l1_coherence(rho) < 0.05:
            continue
        c_in = coherence.l1_coherence(rho)
        for kind in channels.KINDS:
            for side in channels.SIDES:
                if structure.frozen_predicate(rho, kind, side).frozen:
                    continue
                c_end = coherence.l1_coherence(_iterate(rho, kind, gamma, side, n_check)[-1])
                min_drop = min(min_drop, c_in - c_end)
        tested += 1
    ok = min_drop > tol
    return CheckResult("frozen_completeness", ok, min_drop, tol,
                       detail="min coherence drop, must exceed tol")


def check_class_hierarchy(seeds, base_seed):
    rng = np.random.default_rng(base_seed + 23)
    bad = 0
    for _ in range(min(seeds, 100)):
        rho = random_frozen_state(rng, "both")  # random incoherent state
        if structure.classify(rho) is not structure.StateClass.INCOHERENT:
            bad += 1
            continue
        for kind in channels.KINDS:
            for side in channels.SIDES:
                if not structure.frozen_predicate(rho, kind, side).frozen:
                    bad += 1
    return CheckResult("class_hierarchy", bad == 0, float(bad), 0.0)


def check_pd_ad_contrast(tol):
    # the same state can freeze under phase damping and decay under
    # amplitude damping: the canonical orthogonal-blocks mixture does
    rho = states.m2(0.5)
    pd = structure.frozen_predicate(rho, "pd", "left")
    ad = structure.frozen_predicate(rho, "ad", "left")
    c_in = coherence.l1_coherence(rho)
    c_pd = coherence.l1_coherence(_iterate(rho, "pd", 0.5, "left", 15))
    c_ad = coherence.l1_coherence(_iterate(rho, "ad", 0.5, "left", 15)[-1])
    ok = (
        pd.frozen
        and not ad.frozen
        and ad.reason == structure.FrozenReason.ARGUMENT_MISMATCH.value
        and float(np.abs(c_pd - c_in).max()) <= tol
        and c_in - c_ad > 1e-6
    )
    worst = float(np.abs(c_pd - c_in).max())
    return CheckResult("pd_ad_contrast", ok, worst, tol)


def run_all(seeds: int = 200, base_seed: int = 0, tol_oracle: float | None = None):
    """Run the whole battery; returns the list of CheckResult."""
    tol = oracle_tol() if tol_oracle is None else tol_oracle
    return [
        check_tensor_mixed_product(seeds, base_seed),
        check_tensor_bilinearity(seeds, base_seed),
        check_kraus_preservation(seeds, base_seed),
        check_ginibre_validation(seeds, base_seed),
        check_operator_identities(),
        check_oracle_equivalence(seeds, base_seed, tol),
        check_closed_form_drift(base_seed, tol),
        check_commutation(seeds, base_seed),
        check_semigroup(seeds, base_seed),
        check_pd_left_structure(seeds, base_seed, tol),
        check_coherence_bound(seeds, base_seed),
        check_monotone_decay(seeds, base_seed, tol),
        check_analytic_agreement(seeds, base_seed, tol),
        check_factorization(seeds, base_seed, tol),
        check_right_factor_decrease(),
        check_frozen_soundness_ad(seeds, base_seed, tol),
        check_frozen_soundness_pd(seeds, base_seed, tol),
        check_frozen_completeness(seeds, base_seed, tol),
        check_class_hierarchy(seeds, base_seed),
        check_pd_ad_contrast(tol),
    ]


def format_report(results) -> str:
    lines = [r.line() for r in results]
    n_fail = sum(not r.ok for r in results)
    lines.append(f"{len(results) - n_fail}/{len(results)} checks passed")
    return "\n".join(lines)
