"""Dense linear algebra over a table-backed finite field.

Matrices are ``numpy`` int64 arrays holding encoded field elements.
"""

from __future__ import annotations

import numpy as np

from eaqmds.gfield import Field


def as_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A


def rref(F: Field, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    A = as_matrix(M).copy()
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            A[[r, piv]] = A[[piv, r]]
        A[r] = F.mul_arr(A[r], F.inv(int(A[r, c])))
        factors = A[:, c].copy()
        factors[r] = 0
        if factors.any():
            A = F.add_arr(A, F.mul_arr(F.neg_arr(factors)[:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def row_space_basis(F: Field, M) -> np.ndarray:
    R, piv = rref(F, M)
    return R[: len(piv)]


def null_space(F: Field, M) -> np.ndarray:
    """Rows form a basis of {x : M x = 0}."""
    A = as_matrix(M)
    R, piv = rref(F, A)
    n = A.shape[1]
    free = [j for j in range(n) if j not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        out[row, f] = 1
        for i, p in enumerate(piv):
            out[row, p] = F.neg(int(R[i, f]))
    return out


def matmul(F: Field, A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for j in range(A.shape[1]):
        out = F.add_arr(out, F.mul_arr(A[:, j][:, None], B[j][None, :]))
    return out


def conjugate_transpose(F: Field, A, q: int) -> np.ndarray:
    """Transpose with every entry raised to the q-th power."""
    return F.pow_arr(as_matrix(A), q).T.copy()


def random_invertible(F: Field, size: int, rng: np.random.Generator) -> np.ndarray:
    while True:
        A = rng.integers(0, F.order, size=(size, size))
        if rank(F, A) == size:
            return A
