"""Field-generic dense linear algebra kernel.

Two arithmetic backends coexist: exact rational (numpy object arrays of
``fractions.Fraction``) for combinatorial rank/spark decisions, and double
precision floating point for SVD and spectral work.  Rational matrices are
recognised by their object dtype; every entry must then be a Fraction or int.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import FieldMismatch, NonConvergence

DEFAULT_TOL = 1e-10

FIELD_RATIONAL = "rational"
FIELD_REAL = "real"
FIELD_COMPLEX = "complex"


def field_of(a):
    """Return the field tag of a matrix: rational, real, or complex."""
    a = np.asarray(a)
    if a.dtype == object:
        return FIELD_RATIONAL
    if np.iscomplexobj(a):
        return FIELD_COMPLEX
    return FIELD_REAL


def is_rational(a):
    return np.asarray(a).dtype == object


def as_rational(entries):
    """Build an exact rational matrix (object array of Fractions)."""
    arr = np.asarray(entries, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = Fraction(arr[idx])
    return out


def to_float(a):
    """Floating view of a matrix; exact rationals are converted lossily."""
    a = np.asarray(a)
    if a.dtype == object:
        return np.array([[float(x) for x in row] for row in a], dtype=float)
    return a


@dataclass(frozen=True)
class SVDFactors:
    """Full SVD A = U diag(sigma) V* with U n-by-n and V m-by-m unitary."""

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray

    def reconstruct(self):
        n, m = self.u.shape[0], self.v.shape[0]
        s = np.zeros((n, m), dtype=self.u.dtype)
        k = len(self.sigma)
        s[:k, :k] = np.diag(self.sigma)
        return self.u @ s @ self.v.conj().T


def svd(a, tol_recon=DEFAULT_TOL, tol_unitary=DEFAULT_TOL):
    """Full SVD of a real or complex matrix; rational input is converted.

    Raises NonConvergence if the LAPACK kernel fails, and asserts the
    reconstruction and unitarity residuals before returning.
    """
    a = to_float(np.asarray(a)) if is_rational(a) else np.asarray(a)
    if a.size == 0:
        raise ValueError("svd of an empty matrix")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - rare
        raise NonConvergence(f"SVD did not converge: {exc}") from exc
    factors = SVDFactors(u=u, sigma=s, v=vh.conj().T)
    norm_a = np.linalg.norm(a)
    if norm_a > 0:
        resid = np.linalg.norm(factors.reconstruct() - a) / norm_a
        if resid > tol_recon:
            raise NonConvergence(f"SVD reconstruction residual {resid:.3e}")
    n, m = a.shape
    if np.linalg.norm(u @ u.conj().T - np.eye(n)) > tol_unitary * max(1.0, n):
        raise NonConvergence("left factor not unitary")
    if np.linalg.norm(vh @ vh.conj().T - np.eye(m)) > tol_unitary * max(1.0, m):
        raise NonConvergence("right factor not unitary")
    return factors


def singular_values(a):
    a = to_float(a)
    return np.linalg.svd(a, compute_uv=False)


def _row_echelon_exact(a, b=None):
    """Fraction-free forward elimination; returns (echelon, rhs, pivot_cols).

    Operates on copies.  ``b`` may be a vector or matrix of Fractions.
    """
    m = [list(row) for row in a]
    rhs = None if b is None else [list(row) for row in b]
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    pivots = []
    piv_r = 0
    for c in range(n_cols):
        pr = None
        for r in range(piv_r, n_rows):
            if m[r][c] != 0:
                pr = r
                break
        if pr is None:
            continue
        if pr != piv_r:
            m[piv_r], m[pr] = m[pr], m[piv_r]
            if rhs is not None:
                rhs[piv_r], rhs[pr] = rhs[pr], rhs[piv_r]
        pv = m[piv_r][c]
        for r in range(piv_r + 1, n_rows):
            f = m[r][c]
            if f == 0:
                continue
            ratio = Fraction(f, 1) / pv
            for cc in range(c, n_cols):
                m[r][cc] -= m[piv_r][cc] * ratio
            if rhs is not None:
                for cc in range(len(rhs[r])):
                    rhs[r][cc] -= rhs[piv_r][cc] * ratio
        pivots.append(c)
        piv_r += 1
        if piv_r == n_rows:
            break
    return m, rhs, pivots


def rank_exact(a):
    """Rank over the rationals by exact Gaussian elimination."""
    a = np.asarray(a, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    _, _, pivots = _row_echelon_exact(a.tolist())
    return len(pivots)


def rank_tol(a, tol=None):
    """Tolerance-based rank; exact on rational matrices (tol ignored).

    Auto threshold: max(rows, cols) * machine_eps * sigma_max.
    """
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.size == 0:
        return 0
    if is_rational(a):
        return rank_exact(a)
    s = np.linalg.svd(a, compute_uv=False)
    if tol is None:
        tol = max(a.shape) * np.finfo(float).eps * (s[0] if len(s) else 0.0)
    return int(np.sum(s > tol))


def nullspace_exact(a):
    """Exact rational nullspace basis; columns span ker(a)."""
    a = np.asarray(a, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    n_rows, n_cols = a.shape
    m, _, pivots = _row_echelon_exact(a.tolist())
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        # back substitution over the pivot rows
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum(m[r][c] * v[c] for c in range(pc + 1, n_cols))
            v[pc] = -s / m[r][pc]
        basis.append(v)
    out = np.empty((n_cols, len(basis)), dtype=object)
    for j, v in enumerate(basis):
        for i in range(n_cols):
            out[i, j] = v[i]
    return out


def nullspace_basis(a, tol=None):
    """Basis of ker(a) as matrix columns; exact on rational inputs."""
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if is_rational(a):
        return nullspace_exact(a)
    n_rows, n_cols = a.shape
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    if tol is None:
        tol = max(a.shape) * np.finfo(float).eps * (s[0] if len(s) else 0.0)
    rank = int(np.sum(s > tol))
    return vh[rank:].conj().T


def solve_exact(a, b):
    """Exact solution of a x = b over the rationals, or None if inconsistent.

    ``b`` may be a vector or a matrix (solved column-wise).  Free variables
    are set to zero.
    """
    a = np.asarray(a, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if field_of(a) != FIELD_RATIONAL or any(
        not isinstance(x, (Fraction, int)) for x in a.flat
    ):
        raise FieldMismatch("solve_exact requires rational entries")
    b = np.asarray(b, dtype=object)
    vector_rhs = b.ndim == 1
    if vector_rhs:
        b = b.reshape(-1, 1)
    n_rows, n_cols = a.shape
    if b.shape[0] != n_rows:
        raise ValueError("rhs length mismatch")
    rhs = [[Fraction(x) for x in row] for row in b]
    m, rhs, pivots = _row_echelon_exact(a.tolist(), rhs)
    # consistency: zero rows of the echelon form must have zero rhs
    for r in range(len(pivots), n_rows):
        if any(x != 0 for x in rhs[r]):
            return None
    k = b.shape[1]
    x = [[Fraction(0)] * k for _ in range(n_cols)]
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        for j in range(k):
            s = sum(m[r][c] * x[c][j] for c in range(pc + 1, n_cols))
            x[pc][j] = (rhs[r][j] - s) / m[r][pc]
    out = np.empty((n_cols, k), dtype=object)
    for i in range(n_cols):
        for j in range(k):
            out[i, j] = x[i][j]
    return out[:, 0] if vector_rhs else out


def inverse_exact(a):
    """Exact inverse of a square rational matrix, or None if singular."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    if a.shape[0] != a.shape[1]:
        raise ValueError("inverse of a non-square matrix")
    eye = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            eye[i, j] = Fraction(1 if i == j else 0)
    if rank_exact(a) < n:
        return None
    return solve_exact(a, eye)


def frobenius(a):
    """Frobenius norm, valid for all three fields."""
    a = np.asarray(a)
    if is_rational(a):
        return float(sum(Fraction(x) ** 2 for x in a.flat)) ** 0.5
    return float(np.linalg.norm(a))
