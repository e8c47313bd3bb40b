"""Fixed-size complex linear algebra for two-qubit density matrices.

Basis ordering contract, used everywhere in this package: the four basis
vectors are |00>, |01>, |10>, |11> in that order, with the FIRST tensor
factor belonging to the first subsystem. Entry (i, j) of a density matrix
is <basis_i| rho |basis_j>.

Everything here is a pure function on immutable values. Validated density
matrices are returned as read-only complex128 ndarrays, so they can be
shared freely between threads.
"""

import json

import numpy as np

from . import kernels
from .errors import (
    MatrixFormatError,
    NonTracePreservingError,
    NotHermitianError,
    NotPositiveError,
    NotUnitTraceError,
    ValidationError,
)
from .tolerances import TOL_STRUCT

__all__ = [
    "tensor",
    "apply_kraus",
    "validate_density",
    "ensure_trace_preserving",
    "hermiticity_residual",
    "trace_residual",
    "matrix_from_json",
    "matrix_to_json",
]


def _as_complex(m, shape=None):
    arr = np.asarray(m, dtype=np.complex128)
    if shape is not None and arr.shape != shape:
        raise ValidationError(f"expected a {shape[0]}x{shape[1]} matrix, got shape {arr.shape}")
    return arr


def _readonly(arr):
    arr = np.ascontiguousarray(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def tensor(a, b) -> np.ndarray:
    """Kronecker product A (x) B, with A indexing the first subsystem."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def hermiticity_residual(m) -> float:
    """max entry of |M - M^dagger|."""
    m = np.asarray(m, dtype=np.complex128)
    return float(np.abs(m - m.conj().T).max())


def trace_residual(m) -> float:
    """|tr M - 1|."""
    return float(abs(np.trace(np.asarray(m, dtype=np.complex128)) - 1.0))


def validate_density(m, tol: float = TOL_STRUCT) -> np.ndarray:
    """Check the three density-matrix invariants and return the state read-only.

    Hermiticity and unit trace are checked entrywise; positivity via the
    smallest eigenvalue from the cyclic-Jacobi solver in the kernel backend.
    Each failure names the violated invariant and the measured residual.

    Raises:
        NotHermitianError, NotUnitTraceError, NotPositiveError, or a bare
        ValidationError for non-finite entries / wrong shape.
    """
    arr = _as_complex(m, shape=(4, 4))
    if not np.all(np.isfinite(arr.view(np.float64))):
        raise ValidationError("matrix contains non-finite entries")

    herm = hermiticity_residual(arr)
    if herm > tol:
        raise NotHermitianError(
            f"not Hermitian: max |a_ij - conj(a_ji)| = {herm:.3e} exceeds {tol:.1e}",
            residual=herm,
        )
    tr = trace_residual(arr)
    if tr > tol:
        raise NotUnitTraceError(
            f"trace is not 1: |sum a_ii - 1| = {tr:.3e} exceeds {tol:.1e}", residual=tr
        )
    min_eig = float(kernels.eigvalsh4(np.ascontiguousarray(arr))[0])
    if min_eig < -tol:
        raise NotPositiveError(
            f"not positive semidefinite: min eigenvalue = {min_eig:.3e} is below -{tol:.1e}",
            residual=min_eig,
        )
    return _readonly(arr)


def ensure_trace_preserving(ops, tol: float = TOL_STRUCT) -> np.ndarray:
    """Check sum_k K_k^dagger K_k = I within tol; return the stacked (k,4,4) array."""
    stacked = np.ascontiguousarray(ops, dtype=np.complex128)
    if stacked.ndim != 3 or stacked.shape[1:] != (4, 4):
        raise ValidationError(f"expected a stack of 4x4 operators, got shape {stacked.shape}")
    residual = float(kernels.completeness_residual(stacked))
    if residual > tol:
        raise NonTracePreservingError(
            f"Kraus set is not trace preserving: max |sum K^dag K - I| = {residual:.3e} "
            f"exceeds {tol:.1e}",
            residual=residual,
        )
    return stacked


def apply_kraus(rho, ops, check_ops: bool = True, tol: float = TOL_STRUCT) -> np.ndarray:
    """Apply one channel step sum_k K_k rho K_k^dagger and revalidate the output.

    Args:
        rho: 4x4 density matrix.
        ops: iterable of 4x4 Kraus operators (trace-preserving set).
        check_ops: skip the completeness pre-check when the caller already
            verified this exact set (e.g. inside an n-step loop).
    """
    rho = _as_complex(rho, shape=(4, 4))
    stacked = (
        ensure_trace_preserving(ops, tol)
        if check_ops
        else np.ascontiguousarray(ops, dtype=np.complex128)
    )
    out = kernels.apply_kraus4(np.ascontiguousarray(rho), stacked)
    return validate_density(out, tol)


# --- JSON wire format -------------------------------------------------------
#
# {"matrix": [[[re, im], x4] x4]}, row-major, basis order as in the module
# docstring. This is both the ingestion and the emission format.


def matrix_from_json(text) -> np.ndarray:
    """Parse the JSON matrix format into an (unvalidated) 4x4 complex array."""
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "matrix" not in doc:
        raise MatrixFormatError('missing "matrix" field (expected 4x4x2 nested lists)')
    rows = doc["matrix"]
    bad_shape = MatrixFormatError(
        'field "matrix" must be 4 rows of 4 [re, im] pairs (a 4x4x2 layout)'
    )
    if not isinstance(rows, list) or len(rows) != 4:
        raise bad_shape
    out = np.empty((4, 4), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise bad_shape
        for j, pair in enumerate(row):
            if not isinstance(pair, list) or len(pair) != 2:
                raise bad_shape
            re, im = pair
            if not isinstance(re, (int, float)) or not isinstance(im, (int, float)):
                raise MatrixFormatError(
                    f"entry ({i},{j}) must hold two numbers, got {pair!r}"
                )
            out[i, j] = complex(re, im)
    return out


def matrix_to_json(m) -> str:
    """Serialize a 4x4 complex matrix into the JSON matrix format."""
    arr = _as_complex(m, shape=(4, 4))
    rows = [[[float(v.real), float(v.imag)] for v in row] for row in arr]
    return json.dumps({"matrix": rows})
