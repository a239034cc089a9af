"""Frame abstraction: bounds, frame operator, canonical dual, duality checks,
and the two parametrizations of the set of all duals.

A frame is a full-rank n-by-m matrix whose columns are the frame vectors.
Exact-arithmetic duals are produced through perturbation and exact solves;
the SVD parametrization is floating-point only (U, V are irrational in
general).  Row indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import numerics
from .errors import IndexOutOfRange, RankDeficient, ShapeMismatch
from .numerics import (
    DEFAULT_TOL,
    SVDFactors,
    field_of,
    frobenius,
    inverse_exact,
    is_rational,
    rank_tol,
    solve_exact,
    to_float,
)


@dataclass(frozen=True)
class FrameBounds:
    lower: float  # sigma_n^2
    upper: float  # sigma_1^2


class Frame:
    """A full-rank n-by-m matrix over R, C, or Q (exact).

    Construction rejects rank-deficient input: every statement downstream
    assumes the frame property.
    """

    def __init__(self, entries, tol=None):
        a = np.array(entries, copy=True)
        if a.ndim != 2 or a.size == 0:
            raise ShapeMismatch("frame must be a non-empty 2-d matrix")
        n, m = a.shape
        if m < n:
            raise RankDeficient(f"need at least n={n} columns, got {m}")
        if rank_tol(a, tol) < n:
            raise RankDeficient("matrix does not have full row rank")
        self.matrix = a
        self.matrix.setflags(write=False)
        self.n = n
        self.m = m

    @classmethod
    def exact(cls, entries):
        """Frame over Q: entries are converted to Fractions."""
        return cls(numerics.as_rational(entries))

    @property
    def redundancy(self):
        """Dimension gap r = m - n of the dual affine space per row."""
        return self.m - self.n

    @property
    def field(self):
        return field_of(self.matrix)

    @property
    def is_exact(self):
        return is_rational(self.matrix)

    def as_float(self):
        return to_float(self.matrix)

    def column(self, i):
        return self.matrix[:, i]

    def row(self, j):
        return self.matrix[j, :]

    def __repr__(self):
        return f"Frame(n={self.n}, m={self.m}, field={self.field})"

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool(
            np.all(self.matrix == other.matrix)
        )

    def __hash__(self):
        return hash((self.n, self.m))


def row_delete(frame, j):
    """Submatrix with row j removed (the (n-1)-by-m projection)."""
    mat = frame.matrix if isinstance(frame, Frame) else np.asarray(frame)
    n = mat.shape[0]
    if not 0 <= j < n:
        raise IndexOutOfRange(f"row index {j} outside [0, {n})")
    return np.delete(mat, j, axis=0)


def frame_operator(frame):
    """S = Phi Phi*, Hermitian positive definite; exact on rational frames."""
    mat = frame.matrix if isinstance(frame, Frame) else np.asarray(frame)
    return mat @ np.conjugate(mat).T


def frame_bounds(frame):
    """Extreme squared singular values (A, B) of the frame."""
    s = numerics.singular_values(frame.matrix)
    return FrameBounds(lower=float(s[-1]) ** 2, upper=float(s[0]) ** 2)


def canonical_dual(frame):
    """Moore-Penrose dual S^{-1} Phi; exact when the frame is rational."""
    if frame.is_exact:
        s = frame_operator(frame)
        psi = solve_exact(s, frame.matrix)
        return Frame(psi)
    s = frame_operator(frame)
    return Frame(np.linalg.solve(s, frame.as_float()))


def duality_residual(phi, psi):
    """Frobenius norm of Psi Phi* - I; exact zero test on rational pairs."""
    pm = phi.matrix if isinstance(phi, Frame) else np.asarray(phi)
    qm = psi.matrix if isinstance(psi, Frame) else np.asarray(psi)
    if pm.shape != qm.shape:
        raise ShapeMismatch(f"shape mismatch {pm.shape} vs {qm.shape}")
    n = pm.shape[0]
    if is_rational(pm) and is_rational(qm):
        g = qm @ np.conjugate(pm).T
        for i in range(n):
            for j in range(n):
                g[i, j] = g[i, j] - (1 if i == j else 0)
        return frobenius(g)
    g = to_float(qm) @ np.conjugate(to_float(pm)).T
    return float(np.linalg.norm(g - np.eye(n)))


def is_dual(phi, psi, tol=DEFAULT_TOL):
    """True iff ||Psi Phi* - I||_F <= tol; returns (bool, residual)."""
    resid = duality_residual(phi, psi)
    return resid <= tol, resid


def dual_from_perturbation(phi, psi, e):
    """Psi + E (I - Phi* Psi): always a dual of Phi when Psi is one."""
    pm = phi.matrix if isinstance(phi, Frame) else np.asarray(phi)
    qm = psi.matrix if isinstance(psi, Frame) else np.asarray(psi)
    e = np.asarray(e)
    if pm.shape != qm.shape or e.shape != pm.shape:
        raise ShapeMismatch("phi, psi, and E must share the n-by-m shape")
    m = pm.shape[1]
    cross = np.conjugate(pm).T @ qm
    if is_rational(cross):
        proj = -cross
        for i in range(m):
            proj[i, i] = proj[i, i] + 1
    else:
        proj = np.eye(m) - cross
    return Frame(qm + e @ proj)


@dataclass
class DualParametrization:
    """SVD factors of Phi plus the free n-by-(m-n) block of the dual set.

    realize() with a zero block gives the canonical dual; any block gives a
    dual.  Floating point only.
    """

    svd: SVDFactors
    s_block: np.ndarray = field(default=None)

    def __post_init__(self):
        n = self.svd.u.shape[0]
        m = self.svd.v.shape[0]
        r = m - n
        if self.s_block is None:
            dtype = complex if np.iscomplexobj(self.svd.u) else float
            self.s_block = np.zeros((n, r), dtype=dtype)
        self.s_block = np.asarray(self.s_block)
        if self.s_block.shape != (n, r):
            raise ShapeMismatch(f"s block must be {n}-by-{r}")

    @classmethod
    def of(cls, frame, s_block=None):
        return cls(svd=numerics.svd(frame.as_float() if isinstance(frame, Frame) else frame),
                   s_block=s_block)

    def m_psi(self):
        n = self.svd.u.shape[0]
        m = self.svd.v.shape[0]
        dtype = complex if np.iscomplexobj(self.s_block) or np.iscomplexobj(self.svd.u) else float
        block = np.zeros((n, m), dtype=dtype)
        block[:, :n] = np.diag(1.0 / self.svd.sigma)
        block[:, n:] = self.s_block
        return block

    def realize(self):
        """U [diag(1/sigma) | s] V*, a dual frame of the original frame."""
        return Frame(self.svd.u @ self.m_psi() @ self.svd.v.conj().T)


def realize_dual(parametrization):
    return parametrization.realize()


def dual_set_dimension(frame):
    """Affine dimension n(m-n) of the set of all duals."""
    return frame.n * (frame.m - frame.n)
