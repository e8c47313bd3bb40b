"""Damping channels on two-qubit states.

Two channel kinds, addressed by short ids:

  "ad" -- amplitude damping, parameter gamma in [0, 1]:
             E0 = [[1, 0], [0, sqrt(1-gamma)]]
             E1 = [[0, sqrt(gamma)], [0, 0]]
  "pd" -- phase damping, parameter lambda in [0, 1]:
             K0 = [[1, 0], [0, sqrt(1-lambda)]]
             K1 = [[0, 0], [0, sqrt(lambda)]]

A channel acts on the first subsystem ("left"), the second ("right"), or
both. One "both" step is a left step followed by a right step; the two
commute, so the order is a convention, and the combined step equals the
single Kraus set {E_i (x) E_j}.

For amplitude damping there is also a closed-form expression for the state
after n repetitions, implemented in closed_form_ad as an independent code
path; verify/acceptance suites compare it against the iterated channel. No
such fast path exists here for phase damping; it is served by apply_n only.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import qmat
from .errors import ParamOutOfRangeError
from .tolerances import TOL_STRUCT

KINDS = ("ad", "pd")
SIDES = ("left", "right", "both")

__all__ = [
    "KINDS",
    "SIDES",
    "ChannelSpec",
    "kraus_ops",
    "two_qubit_kraus",
    "apply_n",
    "closed_form_ad",
    "gamma_from_time",
]


def _check_param(param: float) -> float:
    param = float(param)
    if not 0.0 <= param <= 1.0:
        raise ParamOutOfRangeError(f"channel parameter must lie in [0, 1], got {param}")
    return param


@dataclass(frozen=True)
class ChannelSpec:
    """A channel configuration: kind, damping parameter, side, repetition count."""

    kind: str
    param: float
    side: str
    n: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParamOutOfRangeError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.side not in SIDES:
            raise ParamOutOfRangeError(f"side must be one of {SIDES}, got {self.side!r}")
        _check_param(self.param)
        if int(self.n) != self.n or self.n < 0:
            raise ParamOutOfRangeError(f"n must be a nonnegative integer, got {self.n}")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, doc: dict) -> "ChannelSpec":
        return cls(kind=doc["kind"], param=doc["param"], side=doc["side"], n=doc["n"])


def _decay_powers(q: float, n):
    """(q^n, q^(n/2), 1-q^n) for scalar or array n.

    Computed per element with scalar pow so the result is bit-identical
    whether n arrives as an int or inside an array (numpy's vectorized pow
    can differ from the scalar one by an ulp).
    """
    n_arr = np.asarray(n)
    flat = n_arr.astype(np.float64).ravel()
    qn = np.array([q ** x for x in flat]).reshape(n_arr.shape)
    s = np.array([q ** (0.5 * x) for x in flat]).reshape(n_arr.shape)
    return qn, s, 1.0 - qn


def kraus_ops(kind: str, param: float):
    """The 2x2 Kraus pair for a single-qubit damping channel.

    Returns (E0, E1) for "ad" and (K0, K1) for "pd"; see module docstring
    for the matrices.
    """
    param = _check_param(param)
    keep = math.sqrt(1.0 - param)
    lose = math.sqrt(param)
    if kind == "ad":
        k0 = np.array([[1.0, 0.0], [0.0, keep]], dtype=np.complex128)
        k1 = np.array([[0.0, lose], [0.0, 0.0]], dtype=np.complex128)
    elif kind == "pd":
        k0 = np.array([[1.0, 0.0], [0.0, keep]], dtype=np.complex128)
        k1 = np.array([[0.0, 0.0], [0.0, lose]], dtype=np.complex128)
    else:
        raise ParamOutOfRangeError(f"kind must be one of {KINDS}, got {kind!r}")
    return k0, k1


def two_qubit_kraus(kind: str, param: float, side: str) -> np.ndarray:
    """The 4x4 Kraus set for one step of the channel on the given side(s).

    left  -> {K_i (x) I}, right -> {I (x) K_i},
    both  -> {K_i (x) K_j} (left step composed with right step).
    """
    k0, k1 = kraus_ops(kind, param)
    eye = np.eye(2, dtype=np.complex128)
    if side == "left":
        ops = [qmat.tensor(k0, eye), qmat.tensor(k1, eye)]
    elif side == "right":
        ops = [qmat.tensor(eye, k0), qmat.tensor(eye, k1)]
    elif side == "both":
        ops = [qmat.tensor(a, b) for a in (k0, k1) for b in (k0, k1)]
    else:
        raise ParamOutOfRangeError(f"side must be one of {SIDES}, got {side!r}")
    return np.ascontiguousarray(ops)


def apply_n(rho, spec: ChannelSpec, tol: float = TOL_STRUCT) -> np.ndarray:
    """Apply the channel spec.n times by iterating single Kraus steps.

    Each step output is revalidated; n = 0 returns the (validated) input
    unchanged whatever the parameter.
    """
    out = qmat.validate_density(rho, tol)
    if spec.n == 0:
        return out
    ops = qmat.ensure_trace_preserving(two_qubit_kraus(spec.kind, spec.param, spec.side), tol)
    for _ in range(spec.n):
        out = qmat.apply_kraus(out, ops, check_ops=False, tol=tol)
    return out


def closed_form_ad(rho, gamma: float, side: str, n) -> np.ndarray:
    """State after n amplitude-damping repetitions, built entry by entry.

    Independent of apply_n: no matrix products, just the per-entry decay
    factors. With q = 1-gamma, entries pick up factors q^n, q^(n/2) and
    mixing terms a_ij + a_kl (1 - q^n), depending on which rows/columns the
    damped subsystem(s) touch. Powers are computed as q**x on the positive
    base (never by repeated multiplication) so that large-n values stay
    within oracle tolerance of the iterated path.

    n may be a nonnegative int or an array of them; an array yields a
    stacked (..., 4, 4) result.
    """
    gamma = _check_param(gamma)
    a = np.asarray(rho, dtype=np.complex128)
    if a.shape != (4, 4):
        raise ParamOutOfRangeError(f"expected a 4x4 state, got shape {a.shape}")
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise ParamOutOfRangeError("n must be nonnegative")
    q = 1.0 - gamma
    qn, s, b = _decay_powers(q, n_arr)

    out = np.empty(n_arr.shape + (4, 4), dtype=np.complex128)
    if side == "left":
        out[..., 0, 0] = a[0, 0] + a[2, 2] * b
        out[..., 0, 1] = a[0, 1] + a[2, 3] * b
        out[..., 1, 0] = a[1, 0] + a[3, 2] * b
        out[..., 1, 1] = a[1, 1] + a[3, 3] * b
        for i in range(2):
            for j in range(2, 4):
                out[..., i, j] = a[i, j] * s
                out[..., j, i] = a[j, i] * s
        for i in range(2, 4):
            for j in range(2, 4):
                out[..., i, j] = a[i, j] * qn
    elif side == "right":
        out[..., 0, 0] = a[0, 0] + a[1, 1] * b
        out[..., 0, 2] = a[0, 2] + a[1, 3] * b
        out[..., 2, 0] = a[2, 0] + a[3, 1] * b
        out[..., 2, 2] = a[2, 2] + a[3, 3] * b
        for i in (0, 2):
            for j in (1, 3):
                out[..., i, j] = a[i, j] * s
                out[..., j, i] = a[j, i] * s
        for i in (1, 3):
            for j in (1, 3):
                out[..., i, j] = a[i, j] * qn
    elif side == "both":
        # main term: both-subsystem decay factors on every entry
        out[..., 0, 0] = a[0, 0] + a[2, 2] * b
        out[..., 0, 1] = (a[0, 1] + a[2, 3] * b) * s
        out[..., 0, 2] = a[0, 2] * s
        out[..., 0, 3] = a[0, 3] * qn
        out[..., 1, 0] = (a[1, 0] + a[3, 2] * b) * s
        out[..., 1, 1] = (a[1, 1] + a[3, 3] * b) * qn
        out[..., 1, 2] = a[1, 2] * qn
        out[..., 1, 3] = a[1, 3] * qn * s
        out[..., 2, 0] = a[2, 0] * s
        out[..., 2, 1] = a[2, 1] * qn
        out[..., 2, 2] = a[2, 2] * qn
        out[..., 2, 3] = a[2, 3] * qn * s
        out[..., 3, 0] = a[3, 0] * qn
        out[..., 3, 1] = a[3, 1] * qn * s
        out[..., 3, 2] = a[3, 2] * qn * s
        out[..., 3, 3] = a[3, 3] * qn * qn
        # population that cascaded through |01>/<01| and |11>/<11|
        out[..., 0, 0] += (a[1, 1] + a[3, 3] * b) * b
        out[..., 0, 2] += a[1, 3] * s * b
        out[..., 2, 0] += a[3, 1] * s * b
        out[..., 2, 2] += a[3, 3] * qn * b
    else:
        raise ParamOutOfRangeError(f"side must be one of {SIDES}, got {side!r}")
    return out


def gamma_from_time(model: str, rate: float, t: float) -> float:
    """Damping strength gamma(t) for the two physical parametrizations.

    "spontaneous_emission": gamma = 1 - exp(-2*rate*t)   (rate = Gamma)
    "oscillator_coupling":  gamma = 1 - cos(rate*t)**2   (rate = chi)

    Both map valid inputs into [0, 1]; repeated channel passes are a longer
    dwell time only in the first model.
    """
    rate = float(rate)
    t = float(t)
    if rate < 0 or t < 0:
        raise ParamOutOfRangeError("rate and t must be nonnegative")
    if model == "spontaneous_emission":
        return 1.0 - math.exp(-2.0 * rate * t)
    if model == "oscillator_coupling":
        return 1.0 - math.cos(rate * t) ** 2
    raise ParamOutOfRangeError(
        f"model must be 'spontaneous_emission' or 'oscillator_coupling', got {model!r}"
    )
