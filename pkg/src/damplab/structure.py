"""Coherence structure of two-qubit states and frozen-coherence decisions.

A state is incoherent-coherent when it is block diagonal in the first
subsystem (entries a13, a14, a23, a24 vanish), coherent-incoherent in the
mirror case (a12, a14, a23, a34 vanish), and incoherent when everything off
the diagonal vanishes. Classification picks the most specific class.

frozen_predicate encodes the exact structural conditions under which
repeated damping leaves the coherence constant; no sampling over n or the
damping parameter is involved. The conditions:

  amplitude damping, left:  incoherent-coherent AND a12, a34 share an argument
  amplitude damping, right: coherent-incoherent AND a13, a24 share an argument
  phase damping,     left:  incoherent-coherent (no argument condition)
  phase damping,     right: coherent-incoherent
  both sides, either kind:  incoherent (the frozen coherence is then zero)

"Frozen" here means constant for every repetition count at every damping
parameter in (0, 1). The degenerate parameter values are excluded on
purpose: 0 is the identity channel and, for amplitude damping, 1 collapses
in a single step and is merely constant afterwards.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ParamOutOfRangeError
from .tolerances import TOL_STRUCT

__all__ = [
    "StateClass",
    "FrozenReason",
    "FrozenVerdict",
    "classify",
    "same_argument",
    "frozen_predicate",
]


class StateClass(str, Enum):
    INCOHERENT = "incoherent"
    INCOHERENT_COHERENT = "incoherent_coherent"
    COHERENT_INCOHERENT = "coherent_incoherent"
    GENERAL_COHERENT = "general_coherent"


class FrozenReason(str, Enum):
    """Stable reason codes for FrozenVerdict (JSON-safe strings)."""

    FROZEN = "frozen"
    INCOHERENT_INPUT = "incoherent_input"
    SUBSYSTEM_COHERENT = "subsystem_coherent"
    ARGUMENT_MISMATCH = "argument_mismatch"


@dataclass(frozen=True)
class FrozenVerdict:
    frozen: bool
    reason: str
    kind: str
    side: str
    param: float | None = None

    def to_dict(self) -> dict:
        return {
            "frozen": self.frozen,
            "reason": self.reason,
            "channel_config": {"kind": self.kind, "param": self.param, "side": self.side},
        }


# entries that must vanish for each block condition, 0-based (i, j) with i < j
_UPPER_RIGHT_BLOCK = ((0, 2), (0, 3), (1, 2), (1, 3))  # a13, a14, a23, a24
_MIRROR_BLOCK = ((0, 1), (0, 3), (1, 2), (2, 3))  # a12, a14, a23, a34


def classify(rho, tol: float = TOL_STRUCT) -> StateClass:
    """Most specific coherence class of a two-qubit state."""
    a = np.asarray(rho, dtype=np.complex128)
    first_incoherent = all(abs(a[i, j]) <= tol for i, j in _UPPER_RIGHT_BLOCK)
    second_incoherent = all(abs(a[i, j]) <= tol for i, j in _MIRROR_BLOCK)
    if first_incoherent and second_incoherent:
        return StateClass.INCOHERENT
    if first_incoherent:
        return StateClass.INCOHERENT_COHERENT
    if second_incoherent:
        return StateClass.COHERENT_INCOHERENT
    return StateClass.GENERAL_COHERENT


def same_argument(z1, z2, tol: float = TOL_STRUCT) -> bool:
    """True when the two complex numbers point in the same direction.

    Vacuously true when either modulus is <= tol (a vanishing term never
    breaks |z1 + k*z2| = |z1| + k*|z2|). Otherwise the angle between them
    must be <= tol radians, tested without ever taking an arctangent:
    |Im(conj(z1)*z2)| <= tol*|z1|*|z2| with Re(conj(z1)*z2) >= 0.
    """
    z1 = complex(z1)
    z2 = complex(z2)
    m1 = abs(z1)
    m2 = abs(z2)
    if m1 <= tol or m2 <= tol:
        return True
    cross = z1.conjugate() * z2
    return abs(cross.imag) <= tol * m1 * m2 and cross.real >= 0.0


def frozen_predicate(rho, kind: str, side: str, param: float | None = None,
                     tol: float = TOL_STRUCT) -> FrozenVerdict:
    """Decide structurally whether repeated damping freezes the coherence.

    The verdict is parameter-independent (see module docstring); param is
    carried along only so the emitted channel_config is complete.
    """
    if kind not in ("ad", "pd"):
        raise ParamOutOfRangeError(f"kind must be 'ad' or 'pd', got {kind!r}")
    if side not in ("left", "right", "both"):
        raise ParamOutOfRangeError(f"side must be 'left', 'right' or 'both', got {side!r}")
    a = np.asarray(rho, dtype=np.complex128)
    cls = classify(a, tol)

    def verdict(frozen, reason):
        return FrozenVerdict(frozen=frozen, reason=reason.value, kind=kind, side=side, param=param)

    if cls is StateClass.INCOHERENT:
        return verdict(True, FrozenReason.INCOHERENT_INPUT)
    if side == "both":
        return verdict(False, FrozenReason.SUBSYSTEM_COHERENT)

    if side == "left":
        block_ok = cls is StateClass.INCOHERENT_COHERENT
        pair = (a[0, 1], a[2, 3])
    else:
        block_ok = cls is StateClass.COHERENT_INCOHERENT
        pair = (a[0, 2], a[1, 3])
    if not block_ok:
        return verdict(False, FrozenReason.SUBSYSTEM_COHERENT)
    if kind == "ad" and not same_argument(pair[0], pair[1], tol):
        return verdict(False, FrozenReason.ARGUMENT_MISMATCH)
    return verdict(True, FrozenReason.FROZEN)
