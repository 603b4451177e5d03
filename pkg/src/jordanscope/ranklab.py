"""Rank computation, kernel bases, and minor enumeration.

Floating ranks use the SVD threshold rule
``sigma > rel_tol * sigma_max * max(rows, cols)``; exact ranks use
fraction-free (Bareiss) elimination with full pivoting over Gaussian
rationals. Minors of polynomial matrices are fraction-free as well.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .algebra.multipoly import MultiPoly
from .algebra.scalars import GR_ONE, GR_ZERO, GaussianRational

DEFAULT_REL_TOL = 1e-8

#: roundoff floor multiplier: products of k factors carry relative error
#: of order (a few) * eps * prod of factor norms
ROUNDOFF_MARGIN = 1e3

#: minor enumeration refuses matrices larger than this (C(9, r)**2 blow-up)
MINOR_DIMENSION_CAP = 9


class MinorSizeError(ValueError):
    pass


@dataclass
class RankResult:
    rank: int
    tolerance_used: float
    singular_values: Optional[tuple] = None


def _as_complex_array(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.size == 0:
        raise ValueError("need a nonempty 2-d matrix")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def numerical_rank(m, rel_tol: float = DEFAULT_REL_TOL,
                   scale: float = 0.0) -> RankResult:
    """Rank of a complex matrix by singular-value thresholding.

    A singular value counts toward the rank iff it exceeds
    ``rel_tol * sigma_max * max(rows, cols)``. The zero matrix has
    rank 0 (and threshold 0).

    ``scale`` matters when the matrix is a product (e.g. a matrix
    power) whose honest value is zero: pass the product of the factor
    norms, and the threshold is floored at the roundoff level of that
    computation (``~1e3 * eps * scale``), so that pure rounding residue
    is never mistaken for rank.
    """
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    a = _as_complex_array(m)
    sigma = np.linalg.svd(a, compute_uv=False)
    smax = float(sigma[0]) if sigma.size else 0.0
    per_sigma = max(rel_tol * smax,
                    ROUNDOFF_MARGIN * np.finfo(float).eps * scale)
    threshold = per_sigma * max(a.shape)
    rank = int(np.sum(sigma > threshold))
    return RankResult(rank=rank, tolerance_used=threshold,
                      singular_values=tuple(float(s) for s in sigma))


def kernel_basis(m, rel_tol: float = DEFAULT_REL_TOL,
                 scale: float = 0.0) -> np.ndarray:
    """Orthonormal basis of the numerical kernel, as matrix columns.

    Returns a (cols, cols - rank) array; the columns are the right
    singular vectors whose singular values fall below the rank
    threshold of :func:`numerical_rank` (same ``scale`` semantics).
    """
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    a = _as_complex_array(m)
    _, sigma, vh = np.linalg.svd(a, full_matrices=True)
    smax = float(sigma[0]) if sigma.size else 0.0
    per_sigma = max(rel_tol * smax,
                    ROUNDOFF_MARGIN * np.finfo(float).eps * scale)
    threshold = per_sigma * max(a.shape)
    rank = int(np.sum(sigma > threshold))
    return vh[rank:].conj().T


def _coerce_exact(m):
    rows = []
    for row in m:
        out = []
        for x in row:
            if isinstance(x, GaussianRational):
                out.append(x)
            elif isinstance(x, (int, Fraction)):
                out.append(GaussianRational(x))
            else:
                raise TypeError(f"exact rank needs exact entries, got {type(x)}")
        rows.append(out)
    return rows


def exact_rank(m) -> int:
    """True rank over QQ(i) by Bareiss elimination with full pivoting."""
    work = _coerce_exact(m)
    if not work or not work[0]:
        return 0
    nrows, ncols = len(work), len(work[0])
    prev = GR_ONE
    rank = 0
    r = 0
    while r < min(nrows, ncols):
        # full pivot: any nonzero entry of the remaining submatrix
        pivot = None
        for i in range(r, nrows):
            for j in range(r, ncols):
                if not work[i][j].is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != r:
            work[r], work[pi] = work[pi], work[r]
        if pj != r:
            for row in work:
                row[r], row[pj] = row[pj], row[r]
        p = work[r][r]
        for i in range(r + 1, nrows):
            for j in range(r + 1, ncols):
                work[i][j] = (p * work[i][j] - work[i][r] * work[r][j]) / prev
            work[i][r] = GR_ZERO
        prev = p
        rank += 1
        r += 1
    return rank


# ---------------------------------------------------------------------------
# Determinants and minors of MultiPoly matrices


def det_multipoly(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Fraction-free (Bareiss) determinant over the polynomial ring."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    nvars = rows[0][0].nvars
    if n == 1:
        return rows[0][0]
    work = [list(r) for r in rows]
    sign = 1
    prev = MultiPoly.one(nvars)
    for r in range(n - 1):
        pivot = None
        for i in range(r, n):
            for j in range(r, n):
                if not work[i][j].is_zero():
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            return MultiPoly.zero(nvars)
        pi, pj = pivot
        if pi != r:
            work[r], work[pi] = work[pi], work[r]
            sign = -sign
        if pj != r:
            for row in work:
                row[r], row[pj] = row[pj], row[r]
            sign = -sign
        p = work[r][r]
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = p * work[i][j] - work[i][r] * work[r][j]
                work[i][j] = num.exact_div(prev)
        prev = p
    det = work[n - 1][n - 1]
    return det if sign > 0 else -det


def minors(m: Sequence[Sequence[MultiPoly]], order: int):
    """All order-r minors that are not identically zero.

    Ordered by (row-index tuple, column-index tuple), both lexicographic,
    so the output is deterministic regardless of evaluation schedule.
    Size-capped: matrices beyond 9x9 (or r > 9) are refused.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if order > min(nrows, ncols):
        raise ValueError("minor order exceeds matrix dimensions")
    if order < 1:
        raise ValueError("minor order must be >= 1")
    if max(nrows, ncols) > MINOR_DIMENSION_CAP or order > MINOR_DIMENSION_CAP:
        raise MinorSizeError(
            f"minor enumeration capped at dimension {MINOR_DIMENSION_CAP}"
        )
    out = []
    for ri in itertools.combinations(range(nrows), order):
        for ci in itertools.combinations(range(ncols), order):
            sub = [[m[i][j] for j in ci] for i in ri]
            d = det_multipoly(sub)
            if not d.is_zero():
                out.append(d)
    return out


# ---------------------------------------------------------------------------
# Generic rank of a polynomial matrix by exact random evaluation


GENERIC_RANK_NOTE = (
    "generic rank estimated as the max exact rank at {count} random rational "
    "points (coordinates with numerator/denominator up to {bound}); by a "
    "Schwartz-Zippel count the probability of underestimating is vanishingly "
    "small for the polynomial degrees involved, but it is not a proof"
)


def random_rational_point(rng: random.Random, nvars: int, bound: int = 10**4):
    pt = []
    for _ in range(nvars):
        re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        pt.append(GaussianRational(re, im))
    return pt


def generic_rank(m: Sequence[Sequence[MultiPoly]], seed: int = 0,
                 points: int = 3, bound: int = 10**4):
    """Max exact rank over a few random rational points, plus a note.

    Exact evaluation keeps the rank decision exact at each sample; only
    the claim of genericity is probabilistic.
    """
    if not m or not m[0]:
        return 0, GENERIC_RANK_NOTE.format(count=points, bound=bound)
    nvars = m[0][0].nvars
    rng = random.Random(seed)
    best = 0
    for _ in range(points):
        pt = random_rational_point(rng, nvars, bound)
        value = [[entry.eval_exact(pt) for entry in row] for row in m]
        best = max(best, exact_rank(value))
    return best, GENERIC_RANK_NOTE.format(count=points, bound=bound)
