"""Frame generators and reproducible experiments.

Randomness comes from numpy's seedable 64-bit Philox-backed default
generator; every trial t of a run seeded with s draws from an independent
stream seeded with the pair (s, t), so reports are bit-reproducible and
trials can run in any order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import sparsity
from .errors import BadShape, DuplicateNode, ScheduleExhausted, ZeroWindow
from .frames import Frame
from .numerics import svd
from .spectral import dual_eigs_2x3


def vandermonde_frame(xs, ys, check_general_position=True):
    """Generalized Vandermonde frame: entry (i, j) = xs_j ** ys_i.

    All m column nodes xs and n row exponents ys must be distinct positives;
    every row-deleted submatrix is then in general position.
    """
    xs = [float(x) for x in xs]
    ys = [float(y) for y in ys]
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise DuplicateNode("nodes and exponents must be pairwise distinct")
    if any(x <= 0 for x in xs) or any(y <= 0 for y in ys):
        raise DuplicateNode("nodes and exponents must be positive")
    mat = np.array([[x ** y for x in xs] for y in ys])
    frame = Frame(mat)
    if check_general_position and len(ys) <= 5 and len(xs) <= 10:
        assert sparsity.in_P(frame), "Vandermonde frame unexpectedly degenerate"
    return frame


def partial_dft_frame(n, m):
    """First n rows of the unitary m-point DFT: a tight frame for C^n.

    Chebotarev's guarantee (every minor nonzero) needs m prime; a warning is
    emitted otherwise.
    """
    if m < n:
        raise BadShape(f"need m >= n, got n={n}, m={m}")
    if m > 2 and any(m % p == 0 for p in range(2, int(math.isqrt(m)) + 1)):
        warnings.warn(
            f"m={m} is not prime: minors of the partial DFT may vanish",
            stacklevel=2,
        )
    k = np.arange(n).reshape(-1, 1)
    j = np.arange(m).reshape(1, -1)
    mat = np.exp(2j * np.pi * k * j / m) / math.sqrt(m)
    return Frame(mat)


def gabor_frame(window):
    """All n^2 time-frequency shifts of a window vector in C^n."""
    w = np.asarray(window, dtype=complex).ravel()
    n = len(w)
    if not np.any(w):
        raise ZeroWindow("window must be nonzero")
    cols = []
    for k in range(n):  # translation
        shifted = np.roll(w, k)
        for l in range(n):  # modulation
            cols.append(shifted * np.exp(2j * np.pi * l * np.arange(n) / n))
    return Frame(np.column_stack(cols))


def _trial_rng(seed, index):
    return np.random.default_rng([seed, index])


def sample_gaussian_frame(n, m, rng):
    """Full-rank Gaussian sample; complex draws use independent normals on
    the real and imaginary parts."""
    while True:
        mat = rng.standard_normal((n, m))
        if np.linalg.matrix_rank(mat) == n:
            return Frame(mat)


@dataclass
class TrialReport:
    n: int
    m: int
    trials: int
    seed: int
    dist: str
    count_in_P: int = 0
    count_sparsity_n2: int = 0
    failures: list = field(default_factory=list)
    boundary: list = field(default_factory=list)
    tolerance_dependent: bool = True


def genericity_trial(n, m, trials, seed, dist="gaussian", budget=None):
    """Empirical genericity of the n^2 sparsest-dual level.

    Per trial: sample a frame, test membership in P (all row-deleted
    submatrices in general position) and whether the exact sparsity sum
    reaches n^2.  Verdicts on the floating path are tolerance-dependent;
    any failed trial is re-checked at 10x tighter and looser rank
    thresholds and flagged as a boundary case if the verdicts differ.
    """
    if dist != "gaussian":
        raise ValueError(f"unknown distribution {dist!r}")
    kwargs = {} if budget is None else {"budget": budget}
    report = TrialReport(n=n, m=m, trials=trials, seed=seed, dist=dist)
    for t in range(trials):
        frame = sample_gaussian_frame(n, m, _trial_rng(seed, t))
        in_p = sparsity.in_P(frame, **kwargs)
        total = sum(
            sparsity.generalized_spark(frame, j, **kwargs)
            for j in range(n)
        )
        if in_p:
            report.count_in_P += 1
        if total == n * n:
            report.count_sparsity_n2 += 1
        else:
            report.failures.append(frame.matrix.tolist())
            base = np.linalg.svd(frame.matrix, compute_uv=False)[0]
            auto = max(n, m) * np.finfo(float).eps * base
            verdicts = {
                sum(
                    sparsity.generalized_spark(frame, j, tol=auto * f, **kwargs)
                    for j in range(n)
                )
                for f in (0.1, 10.0)
            }
            if len(verdicts | {total}) > 1:
                report.boundary.append(t)
    return report


def default_generic_frame(n, m):
    """A generalized Vandermonde frame used as the generic nudge target."""
    xs = [1.0 + i for i in range(m)]
    ys = [0.5 + 0.6 * i for i in range(n)]
    return vandermonde_frame(xs, ys, check_general_position=False)


def nudge_to_generic(frame0, frame1=None, t_schedule=None, budget=None):
    """Smallest scheduled t with (1-t) Phi_0 + t Phi_1 in P.

    Returns (t, frame).  t = 0 when the input is already generic.  The
    default target Phi_1 is a generalized Vandermonde frame, the default
    schedule is 10^-k for k = 12..1 scanned from the smallest step up.
    """
    kwargs = {} if budget is None else {"budget": budget}
    if sparsity.in_P(frame0, **kwargs):
        return 0.0, frame0
    if frame1 is None:
        frame1 = default_generic_frame(frame0.n, frame0.m)
    if frame1.matrix.shape != frame0.matrix.shape:
        raise BadShape("nudge target must match the frame shape")
    if t_schedule is None:
        t_schedule = [10.0 ** -k for k in range(12, 0, -1)]
    last = None
    for t in sorted(t_schedule, key=abs):
        last = t
        mat = t * frame1.as_float() + (1 - t) * frame0.as_float()
        if np.linalg.matrix_rank(mat) < frame0.n:
            continue
        cand = Frame(mat)
        if sparsity.in_P(cand, **kwargs):
            return t, cand
    raise ScheduleExhausted("no scheduled step landed in P", last_t=last)


def surface_2x3(frame, s_range=(-3.0, 3.0), step=0.05):
    """Eigenvalue surface of all duals of a 2x3 frame over an (s1, s2) grid.

    Returns an array of rows (s1, s2, lambda1, lambda2) in grid order.
    """
    if frame.n != 2 or frame.m != 3:
        raise BadShape("surface is defined for 2x3 frames only")
    sigma = svd(frame.as_float()).sigma
    lo, hi = s_range
    count = int(round((hi - lo) / step)) + 1
    grid = lo + step * np.arange(count)
    rows = []
    for s1 in grid:
        for s2 in grid:
            l1, l2 = dual_eigs_2x3(sigma[0], sigma[1], s1, s2)
            rows.append((s1, s2, l1, l2))
    return np.array(rows)
