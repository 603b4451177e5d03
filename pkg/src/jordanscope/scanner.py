"""Parameter-space classification and the symbolic defining-function
pipeline for the set of non-Jordan-stable points.

The pointwise classifier samples probe rings; the symbolic pipeline
produces polynomials whose common zero set cuts out exactly the bad
points, by combining the splitting-set minors of the characteristic
polynomial with the rank minors of the powers of the (denominator-
cleared) square-free evaluation of the family.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import __version__
from .algebra.matrices import mat_mul, poly_at_matrix
from .algebra.multipoly import MultiPoly, mp_content, mp_gcd
from .algebra.scalars import GR_ONE
from .algebra.unipoly import UniPoly, derivative, pseudo_divmod, subresultant_gcd
from .family import MatrixFamily
from .jordan import CensusInconsistencyError, JordanCensus, jordan_census
from .ranklab import DEFAULT_REL_TOL, generic_rank, minors, numerical_rank
from .sylv import BoundReport, SplitSetResult, distinct_zero_count, split_defining_functions
from .tracker import ProbeDisagreementError, extended_theta_factors, probe_ring

MAX_GRID_POINTS = 10**6
MAX_PRODUCT_FUNCTIONS = 10**4


class PointKind(enum.Enum):
    SPLIT = "Split"
    JUMP = "Jump"
    STABLE_CANDIDATE = "StableCandidate"


@dataclass
class PointClass:
    point: tuple
    kind: PointKind
    rank_theta: Tuple[int, ...]
    census: Optional[JordanCensus] = None
    note: str = ""


def _distinct_count_floating(family: MatrixFamily, point, rel_tol: float) -> int:
    return distinct_zero_count(family.char_poly_at(point), rel_tol)


def _theta_ranks_from_factors(a: np.ndarray, factors, rel_tol: float):
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    theta = eye.copy()
    scale = 1.0
    for lam, power in factors:
        factor = lam * eye - a
        theta = theta @ np.linalg.matrix_power(factor, int(power))
        scale *= float(np.linalg.norm(factor, 2)) ** int(power)
    ranks = []
    power_mat = eye.copy()
    for k in range(1, n):
        power_mat = power_mat @ theta
        ranks.append(numerical_rank(power_mat, rel_tol, scale=scale**k).rank)
    return tuple(ranks)


def classify_point(
    family: MatrixFamily,
    point,
    probe_radius: float = 1e-2,
    rel_tol: float = DEFAULT_REL_TOL,
) -> PointClass:
    """Split / Jump / StableCandidate at one parameter point, by probing.

    Splitting is detected through the rank of the splitting matrix of
    the characteristic polynomial (more distinct roots at a probe than
    at the point). Jumps are detected through rank Theta^k rising at a
    probe. Stability can only be refuted by sampling, never certified.
    """
    point = tuple(complex(c) for c in point)
    n = family.n
    probes = []
    for radius in (probe_radius, probe_radius / 2):
        probes.extend(probe_ring(point, radius, 8))

    m_here = _distinct_count_floating(family, point, rel_tol)
    is_split = any(
        _distinct_count_floating(family, probe, rel_tol) > m_here
        for probe in probes
    )

    note = ""
    if is_split:
        try:
            factors = extended_theta_factors(
                family, point, rel_tol, probe_radius
            )
        except ProbeDisagreementError as err:
            note = f"extended product unavailable: {err}"
            a = family.at(point)
            from .tracker import distinct_eigenvalues

            factors = [(lam, 1) for lam, _ in distinct_eigenvalues(a, rel_tol)]
        rank_theta = _theta_ranks_from_factors(family.at(point), factors, rel_tol)
        return PointClass(point, PointKind.SPLIT, rank_theta, None, note)

    from .tracker import distinct_eigenvalues

    a_here = family.at(point)
    factors_here = [(lam, 1) for lam, _ in distinct_eigenvalues(a_here, rel_tol)]
    rank_theta = _theta_ranks_from_factors(a_here, factors_here, rel_tol)

    is_jump = False
    for probe in probes:
        a_probe = family.at(probe)
        factors = [(lam, 1) for lam, _ in distinct_eigenvalues(a_probe, rel_tol)]
        probe_ranks = _theta_ranks_from_factors(a_probe, factors, rel_tol)
        if any(pr > br for pr, br in zip(probe_ranks, rank_theta)):
            is_jump = True
            break
    if is_jump:
        census = _try_census(a_here, rel_tol)
        return PointClass(point, PointKind.JUMP, rank_theta, census, note)
    census = _try_census(a_here, rel_tol)
    if census is None:
        note = "census inconsistent at tolerance"
    return PointClass(point, PointKind.STABLE_CANDIDATE, rank_theta, census, note)


def _try_census(a: np.ndarray, rel_tol: float) -> Optional[JordanCensus]:
    try:
        return jordan_census(a, rel_tol=rel_tol)
    except CensusInconsistencyError:
        return None


# ---------------------------------------------------------------------------
# grid scanning


@dataclass
class ScanReport:
    family_label: Optional[str]
    params: List[str]
    box: List[Tuple[float, float]]
    resolution: List[int]
    rel_tol: float
    probe_radius: float
    seed: int
    tool_version: str
    points: List[PointClass]
    summary: Dict[str, int]
    rank_theta_maxima: Tuple[int, ...]

    @property
    def non_stable_points(self):
        return [p for p in self.points if p.kind is not PointKind.STABLE_CANDIDATE]


def grid_nodes(box, resolution):
    axes = []
    for (lo, hi), res in zip(box, resolution):
        if res < 2:
            raise ValueError("resolution must be >= 2 per axis")
        axes.append([lo + (hi - lo) * k / (res - 1) for k in range(res)])
    total = math.prod(len(a) for a in axes)
    if total > MAX_GRID_POINTS:
        raise ValueError(f"grid size {total} exceeds cap {MAX_GRID_POINTS}")
    idx = [0] * len(axes)
    out = []
    while True:
        out.append(tuple(axes[d][idx[d]] for d in range(len(axes))))
        d = len(axes) - 1
        while d >= 0:
            idx[d] += 1
            if idx[d] < len(axes[d]):
                break
            idx[d] = 0
            d -= 1
        if d < 0:
            return out


def scan_grid(
    family: MatrixFamily,
    box: Sequence[Tuple[float, float]],
    resolution,
    rel_tol: float = DEFAULT_REL_TOL,
    probe_radius: Optional[float] = None,
    seed: int = 0,
    _classify=None,
) -> ScanReport:
    """Classify every node of a rectangular grid in parameter space.

    ``box`` gives one real interval per parameter (the grid lives on
    the real slice; probes still explore complex directions). Output is
    deterministic given tolerances and seed.
    """
    if len(box) != family.nparams:
        raise ValueError("need one interval per parameter")
    if isinstance(resolution, int):
        resolution = [resolution] * len(box)
    nodes = grid_nodes(box, resolution)
    if probe_radius is None:
        spacing = min(
            (hi - lo) / (res - 1) for (lo, hi), res in zip(box, resolution)
        )
        probe_radius = spacing / 4.0
    classify = _classify or (
        lambda node: classify_point(family, node, probe_radius, rel_tol)
    )
    points = [classify(node) for node in nodes]
    summary = {kind.value: 0 for kind in PointKind}
    for p in points:
        summary[p.kind.value] += 1
    maxima = tuple(
        max(p.rank_theta[k] for p in points) for k in range(family.n - 1)
    )
    return ScanReport(
        family_label=family.label,
        params=list(family.params),
        box=[(float(lo), float(hi)) for lo, hi in box],
        resolution=list(resolution),
        rel_tol=rel_tol,
        probe_radius=probe_radius,
        seed=seed,
        tool_version=__version__,
        points=points,
        summary=summary,
        rank_theta_maxima=maxima,
    )


# ---------------------------------------------------------------------------
# symbolic square-free evaluation of the family


class GcdDegenerationError(RuntimeError):
    pass


@dataclass
class SquareFreeResult:
    """Denominator-cleared square-free evaluation of the family.

    ``theta_num`` holds the MultiPoly entries of D * Theta, where Theta
    is the product of (lam_j - A) over the distinct eigenvalue branches
    and D clears the rational-function denominators picked up by the
    gcd over the parameter field. Wherever D != 0 and no eigenvalues
    collide, theta_num evaluates to D(point) * Theta(point).
    """

    theta_num: List[List[MultiPoly]]
    denominator: MultiPoly
    distinct_degree: int  # generic number of distinct eigenvalues
    q0_num: UniPoly  # numerator coefficients of the square-free part

    @property
    def denominator_is_one(self) -> bool:
        return self.denominator.is_constant() and self.denominator.constant_value().is_one()


def square_free_part_family(family: MatrixFamily) -> SquareFreeResult:
    """Symbolic D*Theta for a polynomial family.

    The square-free part q0 = P / gcd(P, P') of the characteristic
    polynomial is computed over the rational-function field via a
    subresultant remainder sequence; pseudo-division and a content gcd
    produce the minimal polynomial denominator D with q0 = Q / D, and
    D * Theta = (-1)^m Q(A).
    """
    p = family.char_poly_family()
    nv = len(family.params)
    one = MultiPoly.one(nv)
    dp = derivative(p)
    g = subresultant_gcd(p, dp)
    if g.is_zero():
        raise GcdDegenerationError("vanishing remainder sequence")
    if g.degree >= 1:
        cont = mp_content(g.coeffs_nonzero())
        g = UniPoly([c.exact_div(cont) for c in g.coeffs])
        lead = g.leading
        d = p.degree - g.degree
        q_tilde, remainder = pseudo_divmod(p, g)
        if not remainder.is_zero():
            raise GcdDegenerationError(
                "gcd of the remainder sequence does not divide the "
                "characteristic polynomial (non-generic content)"
            )
        d_raw = lead**d if d else one
    else:
        # gcd is a nonzero scalar: the family is generically square-free
        q_tilde, d_raw = p, one
    common = mp_gcd(mp_content(q_tilde.coeffs_nonzero()), d_raw)
    if not common.is_constant():
        q_tilde = UniPoly([c.exact_div(common) for c in q_tilde.coeffs])
        d_raw = d_raw.exact_div(common)
    if d_raw.is_constant():
        c = d_raw.constant_value()
        q_tilde = UniPoly([q.scale(GR_ONE / c) for q in q_tilde.coeffs])
        denominator = one
    else:
        _, lead_c = d_raw.leading
        denominator = d_raw.scale(GR_ONE / lead_c)
        q_tilde = UniPoly([q.scale(GR_ONE / lead_c) for q in q_tilde.coeffs])
    if q_tilde.leading != denominator:
        raise GcdDegenerationError(
            "cleared square-free part is not monic over the denominator"
        )
    m = q_tilde.degree
    theta_num = poly_at_matrix(q_tilde.coeffs, family.entries)
    if m % 2 == 1:
        theta_num = [[-x for x in row] for row in theta_num]
    return SquareFreeResult(
        theta_num=theta_num,
        denominator=denominator,
        distinct_degree=m,
        q0_num=q_tilde,
    )


# ---------------------------------------------------------------------------
# defining functions of the non-stable set


@dataclass
class JstResult:
    """Defining polynomials of the set of non-Jordan-stable points."""

    functions: Optional[List[MultiPoly]]
    split_functions: List[MultiPoly]
    rank_minor_functions: Dict[int, List[MultiPoly]]
    rank_values: Dict[int, int]
    k0: int
    denominator: MultiPoly
    split_result: SplitSetResult
    squarefree: SquareFreeResult
    capped: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def denominator_is_one(self) -> bool:
        return self.squarefree.denominator_is_one

    @property
    def whole_space_stable(self) -> bool:
        """True when some product h is a nonzero constant (every factor
        pool contains one), which makes the common zero set empty. A
        sufficient certificate, not a decision procedure."""
        pools = [self.split_functions] + [
            self.rank_minor_functions[k] for k in sorted(self.rank_minor_functions)
        ]
        return all(
            any(f.is_constant() and not f.constant_value().is_zero() for f in pool)
            for pool in pools
        )


def jst_defining_functions(family: MatrixFamily, seed: int = 0) -> JstResult:
    """Polynomials whose common zero set is the non-Jordan-stable set.

    Splitting-set functions g_j come from the splitting matrix of the
    characteristic polynomial; for each power k up to the last with
    positive generic rank, the f's are the nonvanishing minors of order
    r_k of (D*Theta)^k; the h's are all products g * f^(1) * ... * f^(k0).
    When D is not 1 the f-minors can acquire extra zeros along {D = 0},
    which is flagged rather than silently asserted away.
    """
    notes: List[str] = []
    split_res = split_defining_functions(family.char_poly_family(), seed=seed)
    sf = square_free_part_family(family)
    if not sf.denominator_is_one:
        notes.append(
            "cleared denominator D != 1: minors of (D*Theta)^k may vanish "
            "on {D = 0} without a rank jump; zero-set equality is sampled, "
            "not asserted"
        )
    n = family.n
    rank_values: Dict[int, int] = {}
    minor_functions: Dict[int, List[MultiPoly]] = {}
    power = sf.theta_num
    k0 = 0
    for k in range(1, n):
        if k > 1:
            power = mat_mul(power, sf.theta_num)
        r_k, note = generic_rank(power, seed=seed)
        rank_values[k] = r_k
        if k == 1:
            notes.append(note)
        if r_k == 0:
            break
        minor_functions[k] = minors(power, r_k)
        k0 = k
    gs = split_res.functions
    total = len(gs)
    for k in sorted(minor_functions):
        total *= len(minor_functions[k])
    capped = total > MAX_PRODUCT_FUNCTIONS
    functions: Optional[List[MultiPoly]] = None
    if not capped:
        functions = []
        combos = [gs]
        for k in sorted(minor_functions):
            combos.append(minor_functions[k])
        idx = [0] * len(combos)
        while True:
            h = combos[0][idx[0]]
            for d in range(1, len(combos)):
                h = h * combos[d][idx[d]]
            functions.append(h)
            d = len(combos) - 1
            while d >= 0:
                idx[d] += 1
                if idx[d] < len(combos[d]):
                    break
                idx[d] = 0
                d -= 1
            if d < 0:
                break
    else:
        notes.append(
            f"product count {total} exceeds cap {MAX_PRODUCT_FUNCTIONS}; "
            "factor lists emitted instead"
        )
    return JstResult(
        functions=functions,
        split_functions=gs,
        rank_minor_functions=minor_functions,
        rank_values=rank_values,
        k0=k0,
        denominator=sf.denominator,
        split_result=split_res,
        squarefree=sf,
        capped=capped,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# norm bounds on the defining functions


def split_matrix_bound_constant(n: int) -> float:
    return float((2 * n) ** (6 * n * n))


def jst_bound_constant(n: int) -> float:
    return float((2 * n) ** (2 * n**4))


def check_split_bound(
    family: MatrixFamily,
    g: MultiPoly,
    sample_points: Sequence,
    label: str = "splitting-set function",
) -> BoundReport:
    """|g| <= (2n)^(6n^2) * max(1, |A|)^(2n^2) at the samples.

    The norm is floored at 1 for the same reason the coefficient max is
    in the underlying coefficient bound (constant entries from the
    monic leading coefficient).
    """
    n = family.n
    const = split_matrix_bound_constant(n)
    expo = 2 * n * n
    violations = []
    max_ratio = 0.0
    for pt in sample_points:
        base = max(1.0, family.operator_norm_at(pt))
        bound = const * base**expo
        value = abs(g.eval_complex(pt))
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


def check_jst_bound(
    family: MatrixFamily,
    jst: JstResult,
    sample_points: Sequence,
) -> BoundReport:
    """|h| <= (2n)^(2n^4) * max(1, |A|)^(2n^4) at the samples.

    Only applicable to the denominator-free case D = 1; with D != 1 the
    cleared functions differ from sums of products of matrix elements
    and the report is marked not applicable.
    """
    n = family.n
    if not jst.denominator_is_one:
        return BoundReport(
            label="non-stable-set function",
            checked=0,
            violations=[],
            max_ratio=0.0,
            applicable=False,
            note="NOT APPLICABLE: cleared denominator D != 1",
        )
    if jst.functions is None:
        return BoundReport(
            label="non-stable-set function",
            checked=0,
            violations=[],
            max_ratio=0.0,
            applicable=False,
            note="NOT APPLICABLE: product list capped; factors emitted instead",
        )
    const = jst_bound_constant(n)
    expo = 2 * n**4
    violations = []
    max_ratio = 0.0
    count = 0
    for pt in sample_points:
        base = max(1.0, family.operator_norm_at(pt))
        bound = const * base**expo
        for h in jst.functions:
            value = abs(h.eval_complex(pt))
            ratio = value / bound
            max_ratio = max(max_ratio, ratio)
            count += 1
            if value > bound * (1 + 1e-12):
                violations.append(
                    {"point": list(pt), "value": value, "bound": bound}
                )
    return BoundReport(
        label="non-stable-set function",
        checked=count,
        violations=violations,
        max_ratio=max_ratio,
    )
