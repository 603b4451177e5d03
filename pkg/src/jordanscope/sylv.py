"""The splitting matrix of a monic polynomial.

For monic p of degree n, the linear map (s, q) |-> p*s - p'*q from
polynomials of degree <= n-2 (s) and <= n-1 (q) into polynomials of
degree <= 2n-2 has rank n + m - 1, where m is the number of distinct
zeros of p. Its representation matrix therefore counts distinct zeros
by rank alone, and its maximal minors cut out the set of parameter
points where zeros collide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .algebra.multipoly import MultiPoly, one_like, zero_like
from .algebra.scalars import GaussianRational
from .algebra.unipoly import UniPoly, derivative
from .ranklab import (
    DEFAULT_REL_TOL,
    exact_rank,
    generic_rank,
    minors,
    numerical_rank,
)


@dataclass
class SplitMatrix:
    """Representation matrix of (s, q) |-> p*s - p'*q.

    Rows are indexed by the monomial basis 1, lam, ..., lam**(2n-2) of
    the codomain. The first n-1 columns hold the coefficients of
    p*lam**j (j = 0..n-2); the remaining n columns hold the
    coefficients of -p'*lam**t (t = 0..n-1). Entries outside those
    bands are zero.
    """

    n: int
    entries: list  # (2n-1) x (2n-1), scalars of the polynomial's ring

    @property
    def size(self) -> int:
        return 2 * self.n - 1

    def as_numpy(self) -> np.ndarray:
        return np.array(
            [[complex(x) for x in row] for row in self.entries], dtype=complex
        )


def _require_monic(p: UniPoly, float_tol: float = 1e-12) -> UniPoly:
    if p.is_zero() or p.degree < 1:
        raise ValueError("need a monic polynomial of degree >= 1")
    lead = p.leading
    if isinstance(lead, (GaussianRational, MultiPoly)):
        if lead != one_like(lead):
            raise ValueError("polynomial is not monic")
        return p
    if abs(lead - 1.0) > float_tol * (1 + abs(lead)):
        raise ValueError("polynomial is not monic")
    return p


def build_split_matrix(p: UniPoly) -> SplitMatrix:
    """Assemble the (2n-1) x (2n-1) splitting matrix of a monic p.

    Works for complex, exact, and MultiPoly coefficients alike; the
    rank of the result does not depend on this column convention, being
    the rank of the underlying linear map.
    """
    p = _require_monic(p)
    n = p.degree
    size = 2 * n - 1
    zero = zero_like(p.coeffs[0])
    dp = derivative(p)
    entries = [[zero for _ in range(size)] for _ in range(size)]
    # block 1: columns j = 0..n-2 hold p * lam**j
    for j in range(n - 1):
        for k in range(n + 1):
            entries[k + j][j] = p.coeffs[k]
    # block 2: columns n-1+t for t = 0..n-1 hold -p' * lam**t
    for t in range(n):
        for k in range(n):  # deg p' = n-1
            c = dp.coeff(k)
            entries[k + t][n - 1 + t] = -c
    return SplitMatrix(n=n, entries=entries)


def distinct_zero_count(p: UniPoly, rel_tol: float = DEFAULT_REL_TOL) -> int:
    """Number of distinct zeros of monic p, from the split-matrix rank.

    rank = n + m - 1, so m = rank - n + 1. Exact coefficients go
    through Bareiss elimination; floating ones through the SVD rank.
    """
    sm = build_split_matrix(p)
    sample = p.coeffs[0]
    if isinstance(sample, GaussianRational):
        rank = exact_rank(sm.entries)
    elif isinstance(sample, MultiPoly):
        raise TypeError("evaluate the family at a point first")
    else:
        rank = numerical_rank(sm.as_numpy(), rel_tol).rank
    m = rank - sm.n + 1
    if not 1 <= m <= sm.n:
        raise ArithmeticError(f"rank {rank} outside the admissible band")
    return m


@dataclass
class SplitSetResult:
    """Defining polynomials of the set of splitting points."""

    functions: List[MultiPoly]
    r_max: int
    n: int
    generic_rank_note: str
    #: True when r_max equals the full size 2n-1 (the generic polynomial
    #: has the maximal number of distinct zeros)
    full_rank_generic: bool = True


def split_defining_functions(
    family: UniPoly, seed: int = 0
) -> SplitSetResult:
    """Symbolic defining functions h_1..h_l of the splitting set.

    ``family`` is a monic polynomial whose coefficients are MultiPolys
    in the parameters. The h's are the order-r_max minors of the
    symbolic splitting matrix that are not identically zero, where
    r_max is the generic rank; their common zero set is exactly the set
    of parameter points where the distinct-zero count drops below its
    generic value.
    """
    if not all(isinstance(c, MultiPoly) for c in family.coeffs):
        raise TypeError("family coefficients must be MultiPoly")
    _require_monic(family)
    sm = build_split_matrix(family)
    r_max, note = generic_rank(sm.entries, seed=seed)
    if r_max == 0:
        raise ArithmeticError("splitting matrix cannot be identically zero")
    hs = minors(sm.entries, r_max)
    return SplitSetResult(
        functions=hs,
        r_max=r_max,
        n=sm.n,
        generic_rank_note=note,
        full_rank_generic=(r_max == sm.size),
    )


@dataclass
class BoundReport:
    label: str
    checked: int
    violations: list
    max_ratio: float
    applicable: bool = True
    note: str = ""

    @property
    def passed(self) -> bool:
        return not self.violations


def coefficient_bound_constant(n: int) -> float:
    return float((2 * n) ** (4 * n))


def check_coeff_bound(
    h: MultiPoly,
    family: UniPoly,
    sample_points: Sequence[Sequence[complex]],
    label: str = "split-set minor",
) -> BoundReport:
    """Check |h| <= (2n)^(4n) * max(1, max_mu |P_mu|)^(2n) at samples.

    The coefficient maximum is floored at 1: the splitting matrix also
    contains constant entries coming from the monic leading
    coefficient, so the per-entry estimate that produces this bound is
    by max(1, |P_0|, ..., |P_(n-1)|). A violation indicates a bug in
    the minor construction, and is reported with its witness point.
    """
    n = family.degree
    const = coefficient_bound_constant(n)
    violations = []
    max_ratio = 0.0
    for pt in sample_points:
        coeffs = [c.eval_complex(pt) for c in family.coeffs[:-1]]
        base = max(1.0, max(abs(c) for c in coeffs)) if coeffs else 1.0
        bound = const * base ** (2 * n)
        value = abs(h.eval_complex(pt))
        ratio = value / bound
        max_ratio = max(max_ratio, ratio)
        if value > bound * (1 + 1e-12):
            violations.append({"point": list(pt), "value": value, "bound": bound})
    return BoundReport(
        label=label,
        checked=len(sample_points),
        violations=violations,
        max_ratio=max_ratio,
    )
