"""Jordan block census from ranks of powers, stability testing, and the
local holomorphic similarity transform.

The census needs no eigenvector computation at all: the number of
blocks of size k at an eigenvalue lam is the second difference
rank (lam-Phi)^(k-1) + rank (lam-Phi)^(k+1) - 2 rank (lam-Phi)^k.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra.matrices import (
    coerce_matrix,
    identity,
    mat_mul,
    poly_at_matrix,
    shifted,
)
from .algebra.multipoly import one_like, zero_like
from .algebra.scalars import GaussianRational
from .algebra.unipoly import gcd_squarefree_oracle
from .algebra.matrices import char_poly
from .family import MatrixFamily
from .ranklab import DEFAULT_REL_TOL, exact_rank, kernel_basis, numerical_rank
from .tracker import (
    contour_root,
    distinct_eigenvalues,
    isolate,
    probe_ring,
)


class CensusInconsistencyError(RuntimeError):
    """Census invariants failed; usually a tolerance problem."""

    def __init__(self, message, profile=None):
        super().__init__(message)
        self.profile = profile


def _is_exact(matrix) -> bool:
    return not isinstance(matrix, np.ndarray)


def _opnorm(matrix) -> float:
    if _is_exact(matrix):
        a = np.array([[complex(x) for x in row] for row in matrix])
        return float(np.linalg.norm(a, 2))
    return float(np.linalg.norm(matrix, 2))


# ---------------------------------------------------------------------------
# the nilpotent product over distinct eigenvalues


def theta_product(phi, eigenvalues):
    """Product of (lam_j - Phi) over the distinct eigenvalues.

    The factors commute, so the order does not matter. Exact matrices
    (lists of GaussianRational rows) stay exact; numpy input stays
    floating. Repeated eigenvalues are rejected.
    """
    eigenvalues = list(eigenvalues)
    for i, a in enumerate(eigenvalues):
        for b in eigenvalues[i + 1 :]:
            if a == b:
                raise ValueError("eigenvalue list must be distinct")
    if isinstance(phi, np.ndarray):
        n = phi.shape[0]
        theta = np.eye(n, dtype=complex)
        for lam in eigenvalues:
            theta = theta @ (complex(lam) * np.eye(n) - phi)
        return theta
    rows = coerce_matrix(phi)
    sample = rows[0][0]
    theta = identity(len(rows), one_like(sample), zero_like(sample))
    for lam in eigenvalues:
        theta = mat_mul(theta, shifted(lam, rows))
    return theta


def theta_from_squarefree(phi):
    """Exact cross-check route: (-1)^m q0(Phi) with q0 the square-free
    part of the characteristic polynomial."""
    rows = coerce_matrix(phi)
    p = char_poly(rows)
    m, q0 = gcd_squarefree_oracle(p)
    value = poly_at_matrix(q0.coeffs, rows)
    if m % 2 == 1:
        value = [[-x for x in row] for row in value]
    return value


# ---------------------------------------------------------------------------
# rank profiles and the census


@dataclass
class RankProfile:
    """ranks[k] = rank (lam - Phi)^k for k = 0..n+1, ranks[0] = n."""

    eigenvalue: object
    ranks: Tuple[int, ...]

    def is_convex(self) -> bool:
        r = self.ranks
        return all(r[k - 1] + r[k + 1] >= 2 * r[k] for k in range(1, len(r) - 1))


def rank_profile(phi, lam, rel_tol: float = DEFAULT_REL_TOL) -> RankProfile:
    """Ranks of the powers (lam - Phi)^k, k = 0..n+1.

    Once two consecutive ranks agree the kernel chain has stabilized
    and all later ranks equal them exactly, so computation stops there
    and the tail is filled in; this also keeps deep powers of badly
    scaled matrices from polluting the profile with roundoff. A lam
    that is not an eigenvalue gives the constant profile n, a valid
    degenerate case rather than an error.
    """
    if isinstance(phi, np.ndarray):
        n = phi.shape[0]
        base = complex(lam) * np.eye(n) - phi
        base_norm = float(np.linalg.norm(base, 2))
        ranks = [n]
        power = np.eye(n, dtype=complex)
        for k in range(1, n + 2):
            if len(ranks) >= 2 and ranks[-1] == ranks[-2]:
                ranks.append(ranks[-1])
                continue
            power = power @ base
            ranks.append(
                numerical_rank(power, rel_tol, scale=base_norm**k).rank
            )
        return RankProfile(lam, tuple(ranks))
    rows = coerce_matrix(phi)
    n = len(rows)
    base = shifted(lam, rows)
    ranks = [n]
    sample = rows[0][0]
    power = identity(n, one_like(sample), zero_like(sample))
    for _ in range(n + 1):
        if len(ranks) >= 2 and ranks[-1] == ranks[-2]:
            ranks.append(ranks[-1])
            continue
        power = mat_mul(power, base)
        ranks.append(exact_rank(power))
    return RankProfile(lam, tuple(ranks))


@dataclass
class JordanCensus:
    """Block counts per distinct eigenvalue plus the aggregate."""

    eigenvalues: tuple
    multiplicities: Tuple[int, ...]
    blocks: Tuple[Dict[int, int], ...]
    profiles: Tuple[RankProfile, ...]

    @property
    def n(self) -> int:
        return sum(self.multiplicities)

    @property
    def aggregate(self) -> Dict[int, int]:
        agg: Dict[int, int] = {}
        for b in self.blocks:
            for size, count in b.items():
                agg[size] = agg.get(size, 0) + count
        return dict(sorted(agg.items()))

    def block_multiset(self):
        """Sorted list of (eigenvalue, size) with repetition, the full
        Jordan structure up to eigenvalue ordering."""
        out = []
        for lam, b in zip(self.eigenvalues, self.blocks):
            for size, count in sorted(b.items()):
                out.extend([(lam, size)] * count)
        return out


def _sort_key(lam):
    if isinstance(lam, GaussianRational):
        return (lam.re, lam.im)
    z = complex(lam)
    return (z.real, z.imag)


def jordan_census(
    phi,
    eigenvalues: Optional[Sequence] = None,
    rel_tol: float = DEFAULT_REL_TOL,
) -> JordanCensus:
    """Jordan block census of a single matrix from rank second differences.

    ``eigenvalues`` is a complete list of (value, algebraic
    multiplicity) pairs; pass None on the floating path to obtain it
    from the eigensolver with clustering. Census invariants are
    verified and an inconsistency (negative count, multiplicity
    mismatch) raises with the offending rank profile attached.
    """
    if eigenvalues is None:
        if not isinstance(phi, np.ndarray):
            raise ValueError("exact path requires the eigenvalue list")
        eigenvalues = distinct_eigenvalues(phi, rel_tol)
    pairs = sorted(eigenvalues, key=lambda p: _sort_key(p[0]))
    n = phi.shape[0] if isinstance(phi, np.ndarray) else len(phi)
    for i, (a, _) in enumerate(pairs):
        for b, _ in pairs[i + 1 :]:
            if a == b:
                raise ValueError("eigenvalues must be distinct")
    if sum(m for _, m in pairs) != n:
        raise ValueError("multiplicities must sum to the matrix size")

    blocks = []
    profiles = []
    for lam, mult in pairs:
        prof = rank_profile(phi, lam, rel_tol)
        r = prof.ranks
        theta = {}
        for k in range(1, n + 1):
            count = r[k - 1] + r[k + 1] - 2 * r[k]
            if count < 0:
                raise CensusInconsistencyError(
                    f"negative block count at eigenvalue {lam}", prof
                )
            if count:
                theta[k] = count
        weighted = sum(k * c for k, c in theta.items())
        if weighted != mult:
            raise CensusInconsistencyError(
                f"block sizes at eigenvalue {lam} sum to {weighted}, "
                f"expected multiplicity {mult}",
                prof,
            )
        blocks.append(theta)
        profiles.append(prof)
    return JordanCensus(
        eigenvalues=tuple(lam for lam, _ in pairs),
        multiplicities=tuple(m for _, m in pairs),
        blocks=tuple(blocks),
        profiles=tuple(profiles),
    )


# ---------------------------------------------------------------------------
# rank identity suite


@dataclass
class IdentityCheck:
    name: str
    detail: str
    ok: bool
    lhs: object = None
    rhs: object = None


@dataclass
class IdentityReport:
    checks: List[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]


def verify_rank_identities(
    phi,
    census: JordanCensus,
    rel_tol: float = DEFAULT_REL_TOL,
    nilpotency_scale: float = 1e-8,
) -> IdentityReport:
    """Check the rank identities tying the census together.

    For 1 <= k <= n-1:
      * rank Theta^k = n - n*m + sum_j rank (lam_j - Phi)^k
      * rank Theta^k = n - sum_(l<=k) l*theta_l - k * sum_(l>k) theta_l
    plus the power stabilization rank (lam_j - Phi)^k = n - n_j for
    k >= n_j, and nilpotency Theta^n = 0 (exact zero on the exact path;
    norm below nilpotency_scale * (1 + |Phi|)^(n m) on the floating path).
    """
    n = census.n
    m = len(census.eigenvalues)
    checks: List[IdentityCheck] = []

    theta = theta_product(phi, census.eigenvalues)
    if isinstance(theta, np.ndarray):
        # roundoff reference: the product of the factor norms
        theta_scale = 1.0
        for lam in census.eigenvalues:
            theta_scale *= float(
                np.linalg.norm(complex(lam) * np.eye(n) - phi, 2)
            )
    theta_ranks = {}
    power = theta
    for k in range(1, n + 1):
        if k > 1:
            power = (
                power @ theta
                if isinstance(theta, np.ndarray)
                else mat_mul(power, theta)
            )
        if k <= n - 1:
            if isinstance(theta, np.ndarray):
                theta_ranks[k] = numerical_rank(
                    power, rel_tol, scale=theta_scale**k
                ).rank
            else:
                theta_ranks[k] = exact_rank(power)

    # stabilization of the individual rank profiles
    for lam, nj, prof in zip(
        census.eigenvalues, census.multiplicities, census.profiles
    ):
        for k in range(nj, n + 2):
            ok = prof.ranks[k] == n - nj
            checks.append(
                IdentityCheck(
                    "rank-power-stabilization",
                    f"eigenvalue {lam}, k={k}",
                    ok,
                    prof.ranks[k],
                    n - nj,
                )
            )

    # nilpotency of the product at exponent n
    if isinstance(theta, np.ndarray):
        norm = float(np.linalg.norm(power, 2))
        bound = nilpotency_scale * (1.0 + _opnorm(phi)) ** (n * m)
        checks.append(
            IdentityCheck("theta-nilpotent", f"|Theta^{n}| = {norm:.3e}",
                          norm <= bound, norm, bound)
        )
    else:
        all_zero = all(
            (x.is_zero() if hasattr(x, "is_zero") else x == 0)
            for row in power
            for x in row
        )
        checks.append(
            IdentityCheck("theta-nilpotent", f"Theta^{n} = 0 exactly", all_zero)
        )

    # the two rank formulas for Theta^k
    agg = census.aggregate
    for k in range(1, n):
        lhs = theta_ranks[k]
        rhs_sum = n - n * m + sum(
            prof.ranks[k] for prof in census.profiles
        )
        checks.append(
            IdentityCheck("theta-rank-sum", f"k={k}", lhs == rhs_sum, lhs, rhs_sum)
        )
        rhs_census = (
            n
            - sum(l * agg.get(l, 0) for l in range(1, k + 1))
            - k * sum(agg.get(l, 0) for l in range(k + 1, n + 1))
        )
        checks.append(
            IdentityCheck(
                "theta-rank-census", f"k={k}", lhs == rhs_census, lhs, rhs_census
            )
        )
    return IdentityReport(checks)


# ---------------------------------------------------------------------------
# numerical Jordan basis (chains from kernels of powers)


class IllConditionedBasisError(RuntimeError):
    def __init__(self, message, condition):
        super().__init__(f"{message} (condition number {condition:.3e})")
        self.condition = condition


@dataclass
class BasisResult:
    transform: np.ndarray
    jordan_form: np.ndarray
    residual: float
    condition: float


def _jordan_block(lam: complex, size: int) -> np.ndarray:
    j = lam * np.eye(size, dtype=complex)
    for i in range(size - 1):
        j[i, i + 1] = 1.0
    return j


def jordan_form_from_census(census: JordanCensus, eigenvalues=None) -> np.ndarray:
    """Block-diagonal reference form: eigenvalues in (re, im) order,
    block sizes descending within each eigenvalue."""
    lams = list(eigenvalues) if eigenvalues is not None else [
        complex(l) for l in census.eigenvalues
    ]
    blocks = []
    for lam, sizes in zip(lams, census.blocks):
        for size in sorted(sizes, reverse=True):
            for _ in range(sizes[size]):
                blocks.append(_jordan_block(complex(lam), size))
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=complex)
    pos = 0
    for b in blocks:
        k = b.shape[0]
        out[pos : pos + k, pos : pos + k] = b
        pos += k
    return out


def jordan_basis(
    phi: np.ndarray,
    census: Optional[JordanCensus] = None,
    rel_tol: float = DEFAULT_REL_TOL,
    residual_scale: float = 1e-8,
) -> BasisResult:
    """Invertible T with T^(-1) Phi T in Jordan normal form (floating).

    Chains are built down the kernel staircase of (Phi - lam)^k; new
    chain tops are chosen orthogonal to the lower kernel and to the
    already-inherited vectors (minimal-norm tie-breaking). Block order:
    eigenvalues by (re, im), sizes descending.
    """
    phi = np.asarray(phi, dtype=complex)
    n = phi.shape[0]
    if census is None:
        census = jordan_census(phi, rel_tol=rel_tol)
    columns = []
    for lam, sizes in zip(census.eigenvalues, census.blocks):
        lam = complex(lam)
        nilp = phi - lam * np.eye(n)
        nilp_norm = float(np.linalg.norm(nilp, 2))
        max_size = max(sizes)
        kernels = {0: np.zeros((n, 0), dtype=complex)}
        power = np.eye(n, dtype=complex)
        for k in range(1, max_size + 1):
            power = power @ nilp
            kernels[k] = kernel_basis(power, rel_tol, scale=nilp_norm**k)
        chains_here: List[List[np.ndarray]] = []  # chains as [top, N top, ...]
        carried: List[np.ndarray] = []  # height-(k+1) vectors mapped down
        for k in range(max_size, 0, -1):
            inherited = [nilp @ v for v in carried]
            needed = sizes.get(k, 0)
            new_tops = []
            if needed:
                avoid = [kernels[k - 1]] + [
                    v.reshape(-1, 1) for v in inherited
                ]
                avoid_mat = np.hstack(avoid) if avoid else np.zeros((n, 0))
                kk = kernels[k]
                if avoid_mat.shape[1]:
                    q, _ = np.linalg.qr(avoid_mat)
                    proj = kk - q @ (q.conj().T @ kk)
                else:
                    proj = kk
                u, s, vh = np.linalg.svd(proj, full_matrices=False)
                if needed > np.sum(s > 1e-10):
                    raise IllConditionedBasisError(
                        "cannot separate new chain tops from the lower kernel",
                        np.inf,
                    )
                new_tops = [kk @ vh[i].conj() for i in range(needed)]
            for top in new_tops:
                chain = [top]
                for _ in range(k - 1):
                    chain.append(nilp @ chain[-1])
                chains_here.append(chain)
            carried = inherited + new_tops
        # assemble columns: sizes descending, each chain bottom-up
        chains_here.sort(key=len, reverse=True)
        for chain in chains_here:
            columns.extend(reversed(chain))
    t = np.column_stack(columns)
    condition = float(np.linalg.cond(t))
    if not np.isfinite(condition) or condition > 1e13:
        raise IllConditionedBasisError("chain basis is numerically singular",
                                       condition)
    j_ref = jordan_form_from_census(census)
    residual = float(
        np.linalg.norm(np.linalg.solve(t, phi @ t) - j_ref, 2)
    )
    norm = float(np.linalg.norm(phi, 2))
    if residual > residual_scale * (1.0 + norm) * max(1.0, condition):
        raise IllConditionedBasisError(
            f"residual {residual:.3e} too large for the chain basis", condition
        )
    return BasisResult(t, j_ref, residual, condition)


# ---------------------------------------------------------------------------
# stability sampling


class StabilityClass(enum.Enum):
    NOT_STABLE_SPLIT = "NotStable_Split"
    NOT_STABLE_JUMP = "NotStable_Jump"
    STABLE_CANDIDATE = "Stable_Candidate"


def theta_power_ranks(a: np.ndarray, eigenvalues, rel_tol: float):
    """rank Theta^k for k = 1..n-1, with roundoff thresholded against
    the product of the factor norms."""
    n = a.shape[0]
    theta = theta_product(a, list(eigenvalues))
    scale = 1.0
    for lam in eigenvalues:
        scale *= float(np.linalg.norm(complex(lam) * np.eye(n) - a, 2))
    out = []
    power = np.eye(n, dtype=complex)
    for k in range(1, n):
        power = power @ theta
        out.append(numerical_rank(power, rel_tol, scale=scale**k).rank)
    return out


def _theta_ranks_at(family: MatrixFamily, point, rel_tol: float):
    a = family.at(point)
    clusters = distinct_eigenvalues(a, rel_tol)
    return theta_power_ranks(a, [lam for lam, _ in clusters], rel_tol)


def is_jordan_stable_sample(
    family: MatrixFamily,
    xi,
    probe_radius: float = 1e-2,
    probe_count: int = 8,
    rel_tol: float = DEFAULT_REL_TOL,
) -> StabilityClass:
    """Classify a point by probing a ring around it.

    Split detection uses the isolation disks of A(xi): a probe whose
    distinct eigenvalues crowd two into one disk certifies splitting.
    Jump detection compares rank Theta^k at the probes against the
    point. Sampling can refute stability but never certify it, hence
    ``Stable_Candidate``.
    """
    a = family.at(xi)
    clusters = distinct_eigenvalues(a, rel_tol)
    state = isolate(family.char_poly_at(xi), clusters, point=tuple(xi))
    probes = []
    for radius in (probe_radius, probe_radius / 2):
        probes.extend(probe_ring(xi, radius, probe_count))
    for probe in probes:
        counts = [0] * len(state.centers)
        for lam, _ in distinct_eigenvalues(family.at(probe), rel_tol):
            dists = [abs(lam - c) for c in state.centers]
            j = dists.index(min(dists))
            if dists[j] < state.radius:
                counts[j] += 1
        if any(c > 1 for c in counts):
            return StabilityClass.NOT_STABLE_SPLIT
    base = _theta_ranks_at(family, xi, rel_tol)
    for probe in probes:
        if any(
            pr > br for pr, br in zip(_theta_ranks_at(family, probe, rel_tol), base)
        ):
            return StabilityClass.NOT_STABLE_JUMP
    return StabilityClass.STABLE_CANDIDATE


# ---------------------------------------------------------------------------
# local holomorphic similarity transform via the intertwining map


@dataclass
class TransformSample:
    point: tuple
    residual: float
    kernel_dim: int
    condition: float


@dataclass
class TransformReport:
    base_point: tuple
    samples: List[TransformSample]
    max_residual: float
    kernel_dim: int

    @property
    def passed(self) -> bool:
        return bool(self.samples)


class KernelDimensionError(RuntimeError):
    pass


def disk_samples(xi, radius: float, count: int, seed: int = 0):
    """Deterministic sample points in the polydisk around xi."""
    rng = np.random.default_rng(seed)
    xi = tuple(complex(c) for c in xi)
    out = []
    for _ in range(count):
        direction = rng.normal(size=len(xi)) + 1j * rng.normal(size=len(xi))
        direction /= np.linalg.norm(direction)
        r = radius * np.sqrt(rng.uniform())
        out.append(tuple(c + r * d for c, d in zip(xi, direction)))
    return out


def _wasow_matrix(a: np.ndarray, j: np.ndarray) -> np.ndarray:
    """Matrix of Phi |-> Phi A - J Phi on column-major-flattened Phi."""
    n = a.shape[0]
    eye = np.eye(n, dtype=complex)
    return np.kron(a.T, eye) - np.kron(eye, j)


def local_jordan_transform(
    family: MatrixFamily,
    xi,
    disk_radius: float,
    sample_points: Optional[Sequence] = None,
    sample_count: int = 50,
    rel_tol: float = DEFAULT_REL_TOL,
    residual_scale: float = 1e-6,
    seed: int = 0,
) -> TransformReport:
    """Sampled holomorphic similarity to a rigid Jordan form on a disk.

    At the (Jordan stable) base point xi the census fixes nilpotent
    parts N_j once and for all; on the disk only the eigenvalue scalars
    move, following the contour-integral branches. At each sample the
    intertwiner S with S A = J S is recovered by orthogonal projection
    of S(xi) onto the kernel of the intertwining map, and
    T = S^(-1) conjugates A into J up to the reported residual.
    """
    xi = tuple(complex(c) for c in xi)
    a_xi = family.at(xi)
    n = family.n
    clusters = distinct_eigenvalues(a_xi, rel_tol)
    census = jordan_census(a_xi, clusters, rel_tol)
    state = isolate(family.char_poly_at(xi), clusters, point=xi)

    # frozen nilpotent parts per distinct eigenvalue, sizes descending
    nilpotents = []
    for sizes, mult in zip(census.blocks, census.multiplicities):
        nj = np.zeros((mult, mult), dtype=complex)
        pos = 0
        for size in sorted(sizes, reverse=True):
            for _ in range(sizes[size]):
                block = _jordan_block(0.0, size)
                nj[pos : pos + size, pos : pos + size] = block
                pos += size
        nilpotents.append(nj)

    basis = jordan_basis(a_xi, census, rel_tol)
    s_xi = np.linalg.inv(basis.transform)

    if sample_points is None:
        sample_points = disk_samples(xi, disk_radius, sample_count, seed)

    def jordan_at(point):
        j = np.zeros((n, n), dtype=complex)
        pos = 0
        p_here = family.char_poly_at(point)
        for center, mult, nj in zip(
            census.eigenvalues, census.multiplicities, nilpotents
        ):
            lam = contour_root(p_here, complex(center), state.radius, mult)
            j[pos : pos + mult, pos : pos + mult] = (
                lam * np.eye(mult, dtype=complex) + nj
            )
            pos += mult
        return j

    samples = []
    kernel_dim = None
    max_residual = 0.0
    for point in sample_points:
        a_here = family.at(point)
        j_here = jordan_at(point)
        w = _wasow_matrix(a_here, j_here)
        kernel = kernel_basis(w, rel_tol)
        if kernel_dim is None:
            kernel_dim = kernel.shape[1]
        elif kernel.shape[1] != kernel_dim:
            raise KernelDimensionError(
                f"kernel dimension changed from {kernel_dim} to "
                f"{kernel.shape[1]} at {point}; the base point may not be "
                "Jordan stable or the disk is too large"
            )
        vec = s_xi.flatten(order="F")
        projected = kernel @ (kernel.conj().T @ vec)
        s_here = projected.reshape((n, n), order="F")
        cond = float(np.linalg.cond(s_here))
        if not np.isfinite(cond) or cond > 1e12:
            raise IllConditionedBasisError(
                f"projected intertwiner is singular at {point}", cond
            )
        conj = s_here @ a_here @ np.linalg.inv(s_here)
        residual = float(np.linalg.norm(conj - j_here, 2))
        limit = residual_scale * (1.0 + float(np.linalg.norm(a_here, 2)))
        if residual > limit:
            raise IllConditionedBasisError(
                f"similarity residual {residual:.3e} exceeds {limit:.3e} "
                f"at {point}",
                cond,
            )
        max_residual = max(max_residual, residual)
        samples.append(TransformSample(point, residual, kernel.shape[1], cond))
    return TransformReport(
        base_point=xi,
        samples=samples,
        max_residual=max_residual,
        kernel_dim=kernel_dim or 0,
    )
