"""Pure-python fallback for the compiled kernels in ``damplab._kernels``.

Same API, same numerics, no build step. Selected automatically when the
extension is missing (see damplab.kernels); an order of magnitude slower
on the evolution loops, which is what benchmarks/bench_kernels.py measures.
"""

import numpy as np

BACKEND_NAME = "python"


def apply_kraus4(rho, ops):
    """One operator-sum step on a 4x4 matrix: sum_k K_k rho K_k^dagger."""
    rho = np.asarray(rho, dtype=np.complex128)
    ops = np.asarray(ops, dtype=np.complex128)
    return np.einsum("kia,ab,kjb->ij", ops, rho, ops.conj())


def trajectory4(rho, ops, n):
    """All intermediate states of n repeated steps: array (n+1, 4, 4), entry 0 = rho."""
    ops = np.asarray(ops, dtype=np.complex128)
    ops_ct = ops.conj().transpose(0, 2, 1)
    out = np.empty((n + 1, 4, 4), dtype=np.complex128)
    out[0] = rho
    cur = np.asarray(rho, dtype=np.complex128)
    for step in range(n):
        cur = np.einsum("kab,bc->kac", ops, cur)
        cur = np.einsum("kab,kbc->ac", cur, ops_ct)
        out[step + 1] = cur
    return out


def eigvalsh4(h):
    """Ascending eigenvalues of the Hermitian part of a 4x4 matrix.

    Cyclic Jacobi rotations with a fixed pair order, matching the compiled
    kernel rotation for rotation.
    """
    h = np.asarray(h, dtype=np.complex128)
    # plain python complex in nested lists: much faster than ndarray
    # scalar indexing for a loop this small
    a = [[0.5 * (h[i, j] + h[j, i].conjugate()) for j in range(4)] for i in range(4)]

    scale = max(abs(a[i][j]) for i in range(4) for j in range(4))
    if scale == 0.0:
        return np.zeros(4)
    thresh = 5e-16 * scale

    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    for _ in range(64):
        if max(abs(a[p][q]) for p, q in pairs) <= thresh:
            break
        for p, q in pairs:
            mag = abs(a[p][q])
            if mag <= 1e-300:
                continue
            phase = a[p][q] / mag
            tau = (a[q][q].real - a[p][p].real) / (2.0 * mag)
            if tau >= 0:
                t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
            else:
                t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            pc = phase.conjugate()
            for k in range(4):
                tp = a[k][p] * c - a[k][q] * s * pc
                a[k][q] = a[k][p] * s * phase + a[k][q] * c
                a[k][p] = tp
            for k in range(4):
                tp = a[p][k] * c - a[q][k] * s * phase
                a[q][k] = a[p][k] * s * pc + a[q][k] * c
                a[p][k] = tp

    return np.sort(np.array([a[i][i].real for i in range(4)]))


def completeness_residual(ops):
    """max entry of |sum_k K_k^dagger K_k - I| for a set of 4x4 operators."""
    ops = np.asarray(ops, dtype=np.complex128)
    acc = np.einsum("kai,kaj->ij", ops.conj(), ops)
    return float(np.abs(acc - np.eye(acc.shape[0])).max())
