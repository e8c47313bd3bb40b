"""l1-norm coherence and its closed-form evolution under amplitude damping.

The l1 coherence of a state is the sum of the moduli of all off-diagonal
entries in the fixed computational basis; for a d-dimensional state it lies
in [0, d-1], and a state is maximally coherent exactly when every diagonal
entry and every off-diagonal modulus equals 1/d.

analytic_coherence_ad evaluates the coherence after n amplitude-damping
repetitions directly from the input entries, without ever building the
evolved matrix. That makes it a genuinely independent second route next to
l1_coherence(apply_n(...)); the agreement checks in verify/acceptance lean
on this independence, so keep it free of channel code.
"""

from dataclasses import dataclass, field

import numpy as np

from . import channels, qmat, structure
from .errors import ParamOutOfRangeError
from .tolerances import TOL_STRUCT

__all__ = [
    "l1_coherence",
    "analytic_coherence_ad",
    "asymptotic_coherence_ad",
    "is_maximally_coherent",
    "CoherenceReport",
    "evolve_report",
]


def l1_coherence(m):
    """Sum of |m_ij| over i != j. Accepts any square size, and (..., d, d) stacks.

    For Hermitian input this equals 2 * sum_{i<j} |m_ij|.
    """
    m = np.asarray(m, dtype=np.complex128)
    mods = np.abs(m)
    off = mods.sum(axis=(-2, -1)) - np.abs(np.diagonal(m, axis1=-2, axis2=-1)).sum(axis=-1)
    return float(off) if off.ndim == 0 else off


def analytic_coherence_ad(rho, gamma: float, side: str, n):
    """Coherence after n amplitude-damping steps, from the input entries alone.

    With q = 1-gamma, b = 1-q^n, s = q^(n/2):

      left:  2*( |a12 + a34*b| + s*(|a13|+|a14|+|a23|+|a24| + |a34|*s) )
      right: 2*( |a13 + a24*b| + s*(|a12|+|a14|+|a23|+|a34| + |a24|*s) )
      both:  2*( |a12 + a34*b| + |a13 + a24*b|
                 + (|a14|+|a23|)*s + (|a24|+|a34|)*q^n ) * s

    (a_ij refers to entry (i, j) in 1-based row/column numbering.)
    n may be an int or an array of ints, giving an array of coherences.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ParamOutOfRangeError(f"gamma must lie in [0, 1], got {gamma}")
    a = np.asarray(rho, dtype=np.complex128)
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise ParamOutOfRangeError("n must be nonnegative")
    qn, s, b = channels._decay_powers(1.0 - gamma, n_arr)

    if side == "left":
        c = 2.0 * (
            np.abs(a[0, 1] + a[2, 3] * b)
            + s * (abs(a[0, 2]) + abs(a[0, 3]) + abs(a[1, 2]) + abs(a[1, 3]) + abs(a[2, 3]) * s)
        )
    elif side == "right":
        c = 2.0 * (
            np.abs(a[0, 2] + a[1, 3] * b)
            + s * (abs(a[0, 1]) + abs(a[0, 3]) + abs(a[1, 2]) + abs(a[2, 3]) + abs(a[1, 3]) * s)
        )
    elif side == "both":
        c = (
            2.0
            * (
                np.abs(a[0, 1] + a[2, 3] * b)
                + np.abs(a[0, 2] + a[1, 3] * b)
                + (abs(a[0, 3]) + abs(a[1, 2])) * s
                + (abs(a[1, 3]) + abs(a[2, 3])) * qn
            )
            * s
        )
    else:
        raise ParamOutOfRangeError(f"side must be one of {channels.SIDES}, got {side!r}")
    return float(c) if np.ndim(c) == 0 else c


def asymptotic_coherence_ad(rho, gamma: float, side: str) -> float:
    """The n -> infinity coherence limit under repeated amplitude damping.

    Every decaying factor vanishes for gamma in (0, 1], leaving
      left:  2*|a12 + a34|      right: 2*|a13 + a24|      both: 0
    so one-sided damping cannot kill the coherence when the surviving
    combination is nonzero. gamma = 0 is the identity channel: the limit is
    the input coherence itself.
    """
    gamma = float(gamma)
    if not 0.0 <= gamma <= 1.0:
        raise ParamOutOfRangeError(f"gamma must lie in [0, 1], got {gamma}")
    a = np.asarray(rho, dtype=np.complex128)
    if gamma == 0.0:
        return l1_coherence(a)
    if side == "left":
        return 2.0 * abs(a[0, 1] + a[2, 3])
    if side == "right":
        return 2.0 * abs(a[0, 2] + a[1, 3])
    if side == "both":
        return 0.0
    raise ParamOutOfRangeError(f"side must be one of {channels.SIDES}, got {side!r}")


def is_maximally_coherent(m, tol: float = TOL_STRUCT) -> bool:
    """True iff every diagonal entry and every off-diagonal modulus is 1/d within tol."""
    m = np.asarray(m, dtype=np.complex128)
    d = m.shape[0]
    target = 1.0 / d
    for i in range(d):
        if abs(m[i, i] - target) > tol:
            return False
        for j in range(d):
            if i != j and abs(abs(m[i, j]) - target) > tol:
                return False
    return True


@dataclass
class CoherenceReport:
    """Everything cmd-level evolution reports about one (state, channel) run.

    trajectory holds (n, coherence) for n = 0..N from the iterated channel;
    c_analytic / c_limit come from the closed-form route and stay None for
    phase damping, which has no closed form here.
    """

    c_in: float
    trajectory: list = field(default_factory=list)
    c_analytic: float | None = None
    c_limit: float | None = None
    frozen: bool = False
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "c_in": self.c_in,
            "trajectory": [[n, c] for n, c in self.trajectory],
            "c_analytic": self.c_analytic,
            "c_limit": self.c_limit,
            "frozen": self.frozen,
            "reason": self.reason,
        }


def evolve_report(rho, spec: channels.ChannelSpec, tol: float = TOL_STRUCT) -> CoherenceReport:
    """Evolve step by step and assemble the full coherence report."""
    state = qmat.validate_density(rho, tol)
    traj = [(0, l1_coherence(state))]
    if spec.n > 0:
        ops = qmat.ensure_trace_preserving(
            channels.two_qubit_kraus(spec.kind, spec.param, spec.side), tol
        )
        for k in range(1, spec.n + 1):
            state = qmat.apply_kraus(state, ops, check_ops=False, tol=tol)
            traj.append((k, l1_coherence(state)))

    verdict = structure.frozen_predicate(rho, spec.kind, spec.side, param=spec.param)
    c_analytic = c_limit = None
    if spec.kind == "ad":
        c_analytic = analytic_coherence_ad(rho, spec.param, spec.side, spec.n)
        c_limit = asymptotic_coherence_ad(rho, spec.param, spec.side)
    return CoherenceReport(
        c_in=traj[0][1],
        trajectory=traj,
        c_analytic=c_analytic,
        c_limit=c_limit,
        frozen=verdict.frozen,
        reason=verdict.reason,
    )
