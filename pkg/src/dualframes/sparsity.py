"""Spark machinery and the exact sparsest-dual solver with certificates.

Spark decisions are discrete, so the exact rational backend is used whenever
the frame carries rational entries; the floating path uses tolerance-based
rank and marks its results tolerance-dependent.  All subset scans run in
lexicographic order and increasing cardinality, which makes every reported
support and every enumerated dual deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .errors import AmbiguousSupport, SizeLimit, SingularSubset, Truncated
from .frames import Frame, is_dual, row_delete
from .numerics import (
    inverse_exact,
    is_rational,
    nullspace_basis,
    rank_tol,
    to_float,
)

DEFAULT_BUDGET = 20_000_000


@dataclass(frozen=True)
class SparkReport:
    """Spark value plus a minimal dependent column set (None if full spark)."""

    spark: int
    witness: tuple | None
    tolerance_dependent: bool = False


@dataclass
class RowCertificate:
    """Witness for one dual row: support, dependency coefficients, scale."""

    row: int
    spark_j: int
    support: tuple
    coeffs: list
    scale: object  # the nonzero a with psi^j = conj(lambda/a) on the support


@dataclass
class SparsityCertificate:
    rows: list[RowCertificate] = dc_field(default_factory=list)
    tolerance_dependent: bool = False

    @property
    def total_sparsity(self):
        return sum(r.spark_j for r in self.rows)


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self, k=1):
        self.used += k
        if self.used > self.limit:
            raise SizeLimit(
                f"subset search budget {self.limit} exceeded", budget=self.limit
            )


def _rank(a, tol=None):
    return rank_tol(a, tol)


def spark(a, budget=DEFAULT_BUDGET, tol=None):
    """Smallest number of linearly dependent columns; m+1 if none exist."""
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    n, m = a.shape
    exact = is_rational(a)
    bud = _Budget(budget)
    r = _rank(a, tol)
    if r == m:
        # all columns independent; n+1 convention for invertible square
        return SparkReport(spark=m + 1, witness=None,
                           tolerance_dependent=not exact)
    for s in range(1, r + 2):
        for cols in itertools.combinations(range(m), s):
            bud.spend()
            if _rank(a[:, cols], tol) < s:
                return SparkReport(spark=s, witness=cols,
                                   tolerance_dependent=not exact)
    raise AssertionError("unreachable: rank-deficient matrix has a dependent set")


def _row_support_candidates(frame, j, budget, tol):
    """All minimal supports S for row j with Phi^{(j)}_S dependent and
    Phi_S independent, together with the dependency vector and scale.

    Returns (spark_j, list of (support, lambda, a)).
    """
    phi = frame.matrix
    sub = row_delete(frame, j)
    m = frame.m
    for s in range(1, frame.n + 1):
        found = []
        for cols in itertools.combinations(range(m), s):
            budget.spend()
            block = sub[:, cols]
            if _rank(block, tol) >= s:
                continue
            if _rank(phi[:, cols], tol) < s:
                continue
            nb = nullspace_basis(block, tol)
            if nb.shape[1] != 1:
                # cannot happen at minimal size when Phi_S is independent,
                # kept as a guard for the floating path
                raise AmbiguousSupport(
                    f"row {j}: support {cols} has dependency dimension "
                    f"{nb.shape[1]}"
                )
            lam = nb[:, 0]
            a = sum(lam[k] * phi[j, cols[k]] for k in range(s))
            found.append((cols, list(lam), a))
        if found:
            return s, found
    raise AssertionError("no admissible support found; input is not a frame")


def generalized_spark(frame, j, budget=DEFAULT_BUDGET, tol=None):
    """spark_j: smallest dependent set of Phi^{(j)} whose columns stay
    independent in Phi."""
    s, _ = _row_support_candidates(frame, j, _Budget(budget), tol)
    return s


def _row_vector(frame, cols, lam, a):
    """Dual row with (psi^j)_k = conj(lambda_k / a) on the support."""
    exact = frame.is_exact
    row = (
        np.array([Fraction(0)] * frame.m, dtype=object)
        if exact
        else np.zeros(frame.m, dtype=frame.matrix.dtype)
    )
    for k, c in enumerate(cols):
        val = lam[k] / a
        row[c] = val.conjugate() if np.iscomplexobj(frame.matrix) else val
    return row


def sparsest_dual(frame, budget=DEFAULT_BUDGET, tol=None):
    """One sparsest dual with a row-by-row certificate.

    Tie-breaking: the lexicographically smallest minimal support per row.
    """
    bud = _Budget(budget)
    cert = SparsityCertificate(tolerance_dependent=not frame.is_exact)
    rows = []
    for j in range(frame.n):
        s, cands = _row_support_candidates(frame, j, bud, tol)
        cols, lam, a = cands[0]
        rows.append(_row_vector(frame, cols, lam, a))
        cert.rows.append(
            RowCertificate(row=j, spark_j=s, support=cols, coeffs=lam, scale=a)
        )
    psi = Frame(np.vstack([r.reshape(1, -1) for r in rows]))
    return psi, cert


def enumerate_sparsest_duals(frame, limit=None, budget=DEFAULT_BUDGET, tol=None):
    """All sparsest duals: Cartesian product of the per-row minimal-support
    solutions, deduplicated and sorted by flattened entry order."""
    bud = _Budget(budget)
    per_row = []
    for j in range(frame.n):
        _, cands = _row_support_candidates(frame, j, bud, tol)
        per_row.append([_row_vector(frame, c, lam, a) for c, lam, a in cands])
    seen = set()
    duals = []
    for combo in itertools.product(*per_row):
        mat = np.vstack([r.reshape(1, -1) for r in combo])
        key = tuple(mat.flat) if frame.is_exact else tuple(
            np.round(to_float(mat), 12).flat
        )
        if key in seen:
            continue
        seen.add(key)
        duals.append(mat)
    duals.sort(key=lambda m: tuple(m.flat) if frame.is_exact else tuple(to_float(m).flat))
    out = [Frame(m) for m in duals]
    if limit is not None and len(out) > limit:
        raise Truncated(limit, out[:limit])
    return out


def sparsity_bounds(frame, budget=DEFAULT_BUDGET, tol=None):
    """(lower, exact, upper) = (sum spark(Phi^{(j)}), sum spark_j, n^2)."""
    lower = sum(
        spark(row_delete(frame, j), budget=budget, tol=tol).spark
        for j in range(frame.n)
    )
    exact = sum(
        generalized_spark(frame, j, budget=budget, tol=tol)
        for j in range(frame.n)
    )
    return lower, exact, frame.n ** 2


def biorthogonal_dual(frame, cols=None, tol=None):
    """Dual supported on n columns: inverse-adjoint of Phi_J on J, zero off J.

    ``cols=None`` selects the lexicographically first independent n-subset.
    """
    n, m = frame.n, frame.m
    if cols is None:
        chosen = []
        for c in range(m):
            trial = chosen + [c]
            if rank_tol(frame.matrix[:, trial], tol) == len(trial):
                chosen.append(c)
            if len(chosen) == n:
                break
        cols = chosen
    cols = list(cols)
    if len(cols) != n:
        raise SingularSubset(f"need exactly n={n} columns, got {len(cols)}")
    block = frame.matrix[:, cols]
    if frame.is_exact:
        inv = inverse_exact(block)
        if inv is None:
            raise SingularSubset(f"columns {cols} are not independent")
        psi_block = np.conjugate(inv).T
        psi = np.array([[Fraction(0)] * m for _ in range(n)], dtype=object)
    else:
        if rank_tol(block, tol) < n:
            raise SingularSubset(f"columns {cols} are not independent")
        inv = np.linalg.inv(to_float(block))
        psi_block = inv.conj().T
        psi = np.zeros((n, m), dtype=psi_block.dtype)
    for k, c in enumerate(cols):
        psi[:, c] = psi_block[:, k]
    return Frame(psi)


def is_general_position(a, budget=DEFAULT_BUDGET, tol=None):
    """True iff every maximal square submatrix has full rank."""
    a = np.asarray(a)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    n, m = a.shape
    if n > m:
        raise ValueError("general position is defined for rows <= cols")
    bud = _Budget(budget)
    for cols in itertools.combinations(range(m), n):
        bud.spend()
        if _rank(a[:, cols], tol) < n:
            return False
    return True


def in_P(frame, budget=DEFAULT_BUDGET, tol=None):
    """True iff spark(Phi^{(j)}) = n for all j, i.e. every row-deleted
    submatrix is in general position; implies sparsest-dual sparsity n^2."""
    for j in range(frame.n):
        if not is_general_position(row_delete(frame, j), budget=budget, tol=tol):
            return False
    return True


def nnz(mat, tol=0.0):
    """Number of nonzero entries; exact test on rational matrices."""
    m = mat.matrix if isinstance(mat, Frame) else np.asarray(mat)
    if is_rational(m):
        return int(sum(1 for x in m.flat if x != 0))
    return int(np.sum(np.abs(m) > tol))
