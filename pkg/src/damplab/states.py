"""Constructors for two-qubit states: named families, JSON ingestion, random states.

The block families mix a diagonal first (or second) qubit with arbitrary
qubit states on the other side:

    incoherent_coherent(p0, r0, r1) = p0 |0><0| (x) r0  +  (1-p0) |1><1| (x) r1
    coherent_incoherent(p0, r0, r1) = p0 r0 (x) |0><0|  +  (1-p0) r1 (x) |1><1|

Three members with maximally coherent parts get short names (m1, m2, m3);
their coherence is 1 for every p0, and they behave very differently under
repeated left amplitude damping: m1 freezes, m2 and m3 decay toward
|p0 - p1| and sqrt(p0^2 + p1^2) respectively.
"""

import math

import numpy as np

from . import qmat
from .errors import ParamOutOfRangeError, UnknownStateError, ValidationError
from .tolerances import TOL_STRUCT

__all__ = [
    "max_coherent_qubit",
    "incoherent_coherent",
    "coherent_incoherent",
    "m1",
    "m2",
    "m3",
    "bell_phi_plus",
    "from_json",
    "random_density",
    "resolve",
    "STATE_IDS",
]

_KET0 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=np.complex128)
_KET1 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=np.complex128)


def max_coherent_qubit(theta: float) -> np.ndarray:
    """Projector onto (|0> + e^{i*theta} |1>)/sqrt(2).

    theta = 0 gives |+><+|, theta = pi gives |-><-|, theta = pi/2 the
    circular state (|0> + i|1>)/sqrt(2). Maximally coherent for every theta.
    """
    ph = complex(math.cos(theta), math.sin(theta))
    return 0.5 * np.array([[1.0, ph.conjugate()], [ph, 1.0]], dtype=np.complex128)


def _check_qubit_density(m, tol: float = TOL_STRUCT, name: str = "qubit state") -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (2, 2):
        raise ValidationError(f"{name} must be 2x2, got shape {m.shape}")
    herm = float(np.abs(m - m.conj().T).max())
    if herm > tol:
        raise ValidationError(f"{name} is not Hermitian (residual {herm:.3e})", residual=herm)
    tr = abs(complex(m[0, 0] + m[1, 1]) - 1.0)
    if tr > tol:
        raise ValidationError(f"{name} trace differs from 1 by {tr:.3e}", residual=tr)
    # closed-form eigenvalues of a 2x2 Hermitian matrix
    mean = 0.5 * (m[0, 0].real + m[1, 1].real)
    radius = math.hypot(0.5 * (m[0, 0].real - m[1, 1].real), abs(m[0, 1]))
    if mean - radius < -tol:
        raise ValidationError(
            f"{name} has negative eigenvalue {mean - radius:.3e}", residual=mean - radius
        )
    return m


def _check_p0(p0: float) -> float:
    p0 = float(p0)
    if not 0.0 <= p0 <= 1.0:
        raise ParamOutOfRangeError(f"p0 must lie in [0, 1], got {p0}")
    return p0


def incoherent_coherent(p0: float, rho0, rho1) -> np.ndarray:
    """Mixture p0 |0><0| (x) rho0 + (1-p0) |1><1| (x) rho1, validated."""
    p0 = _check_p0(p0)
    rho0 = _check_qubit_density(rho0, name="rho0")
    rho1 = _check_qubit_density(rho1, name="rho1")
    out = p0 * qmat.tensor(_KET0, rho0) + (1.0 - p0) * qmat.tensor(_KET1, rho1)
    return qmat.validate_density(out)


def coherent_incoherent(p0: float, rho0, rho1) -> np.ndarray:
    """Mirror family: p0 rho0 (x) |0><0| + (1-p0) rho1 (x) |1><1|, validated."""
    p0 = _check_p0(p0)
    rho0 = _check_qubit_density(rho0, name="rho0")
    rho1 = _check_qubit_density(rho1, name="rho1")
    out = p0 * qmat.tensor(rho0, _KET0) + (1.0 - p0) * qmat.tensor(rho1, _KET1)
    return qmat.validate_density(out)


# The three named members are written with exact entries rather than through
# max_coherent_qubit so that e.g. a34 of m2 is exactly -(1-p0)/2, not off by
# the rounding of exp(i*pi).

_PLUS = 0.5 * np.array([[1, 1], [1, 1]], dtype=np.complex128)
_MINUS = 0.5 * np.array([[1, -1], [-1, 1]], dtype=np.complex128)
_CIRC = 0.5 * np.array([[1, -1j], [1j, 1]], dtype=np.complex128)


def m1(p0: float) -> np.ndarray:
    """(p0 |0><0| + p1 |1><1|) (x) |+><+|, both coherent parts identical."""
    return incoherent_coherent(p0, _PLUS, _PLUS)


def m2(p0: float) -> np.ndarray:
    """p0 |0><0| (x) |+><+| + p1 |1><1| (x) |-><-|, orthogonal coherent parts.

    Entries: a12 = p0/2 and a34 = -(1-p0)/2, so the two block coherences
    point in opposite directions.
    """
    return incoherent_coherent(p0, _PLUS, _MINUS)


def m3(p0: float) -> np.ndarray:
    """p0 |0><0| (x) |+><+| + p1 |1><1| (x) |r><r| with |r> = (|0> + i|1>)/sqrt(2).

    Entries: a12 = p0/2 and a34 = -i(1-p0)/2, non-orthogonal coherent parts.
    """
    return incoherent_coherent(p0, _PLUS, _CIRC)


def bell_phi_plus() -> np.ndarray:
    """The Bell state (|00> + |11>)/sqrt(2) as a density matrix."""
    psi = np.array([1.0, 0.0, 0.0, 1.0], dtype=np.complex128) / math.sqrt(2.0)
    return qmat.validate_density(np.outer(psi, psi.conj()))


def from_json(text) -> np.ndarray:
    """Parse the JSON matrix format and validate the result as a state."""
    return qmat.validate_density(qmat.matrix_from_json(text))


def random_density(seed: int) -> np.ndarray:
    """Random full-rank density matrix G G^dag / tr(G G^dag), deterministic per seed.

    G is a 4x4 matrix of standard complex Gaussians drawn from
    numpy.random.default_rng(seed) (PCG64), real part first.
    """
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    m = g @ g.conj().T
    return qmat.validate_density(m / np.trace(m).real)


STATE_IDS = ("m1", "m2", "m3", "bell", "incoco", "coinco")


def resolve(state_id: str, p0: float = 0.5, theta0: float = 0.0, theta1: float = 0.0):
    """Resolve a CLI state id to a validated density matrix.

    Known ids: m1, m2, m3, bell, incoco, coinco, file:<path>. The incoco /
    coinco ids build the block family from two maximally coherent parts at
    phases theta0 and theta1; file:<path> loads the JSON matrix format.
    """
    if state_id == "m1":
        return m1(p0)
    if state_id == "m2":
        return m2(p0)
    if state_id == "m3":
        return m3(p0)
    if state_id == "bell":
        return bell_phi_plus()
    if state_id == "incoco":
        return incoherent_coherent(p0, max_coherent_qubit(theta0), max_coherent_qubit(theta1))
    if state_id == "coinco":
        return coherent_incoherent(p0, max_coherent_qubit(theta0), max_coherent_qubit(theta1))
    if state_id.startswith("file:"):
        path = state_id[len("file:"):]
        with open(path, "rb") as fh:
            return from_json(fh.read())
    raise UnknownStateError(
        f"unknown state id {state_id!r}; expected one of {', '.join(STATE_IDS)} or file:<path>"
    )
