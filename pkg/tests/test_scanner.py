import random
from fractions import Fraction

import numpy as np
import pytest

from jordanscope.algebra import GaussianRational, MultiPoly, UniPoly
from jordanscope.family import MatrixFamily
from jordanscope.jordan import theta_product
from jordanscope.scanner import (
    PointKind,
    check_jst_bound,
    check_split_bound,
    classify_point,
    grid_nodes,
    jst_defining_functions,
    scan_grid,
    square_free_part_family,
)
from jordanscope.tracker import distinct_eigenvalues

GR = GaussianRational


def gr(a, b=0):
    return GR(Fraction(a), Fraction(b))


def nilpotent_family():
    return MatrixFamily.from_entries(
        [["z*w", "-z^2"], ["w^2", "-z*w"]], ["z", "w"], label="rank-one nilpotent"
    )


def shear_family():
    return MatrixFamily.from_entries([["z", "1"], ["0", "-z"]], ["z"])


def double_eig_family():
    return MatrixFamily.from_entries(
        [["z", "0", "0"], ["0", "z", "0"], ["0", "0", "1"]], ["z"]
    )


# ---------------------------------------------------------------------------
# classify_point


def test_classify_nilpotent_family_origin_is_jump():
    pc = classify_point(nilpotent_family(), [0.0, 0.0], probe_radius=0.025)
    assert pc.kind is PointKind.JUMP
    assert pc.rank_theta == (0,)
    assert pc.census is not None
    assert pc.census.aggregate == {1: 2}


def test_classify_nilpotent_family_generic_point_stable():
    pc = classify_point(nilpotent_family(), [0.3, -0.7], probe_radius=0.025)
    assert pc.kind is PointKind.STABLE_CANDIDATE
    assert pc.census.aggregate == {2: 1}
    assert pc.rank_theta == (1,)


def test_classify_shear_family_origin_is_split():
    pc = classify_point(shear_family(), [0.0], probe_radius=0.025)
    assert pc.kind is PointKind.SPLIT
    assert pc.census is None
    assert len(pc.rank_theta) == 1


# ---------------------------------------------------------------------------
# scan_grid


def test_grid_nodes_deterministic_order():
    nodes = grid_nodes([(-1.0, 1.0), (0.0, 1.0)], [3, 2])
    assert nodes[0] == (-1.0, 0.0)
    assert nodes[1] == (-1.0, 1.0)
    assert nodes[-1] == (1.0, 1.0)
    assert len(nodes) == 6


def test_scan_nilpotent_family_only_origin_flagged():
    report = scan_grid(nilpotent_family(), [(-1, 1), (-1, 1)], 21)
    flagged = report.non_stable_points
    assert len(flagged) == 1
    assert flagged[0].point == (0.0, 0.0)
    assert flagged[0].kind is PointKind.JUMP
    assert report.summary["Jump"] == 1
    assert report.summary["StableCandidate"] == 440
    # census structure: one 2-block everywhere else, two 1-blocks at 0
    for p in report.points:
        if p.point == (0.0, 0.0):
            assert p.census.aggregate == {1: 2}
        else:
            assert p.census.aggregate == {2: 1}


def test_scan_constant_family_all_stable():
    f = MatrixFamily.from_entries([["1", "1"], ["0", "2"]], ["z"])
    report = scan_grid(f, [(-1, 1)], 11)
    assert report.summary["StableCandidate"] == 11
    assert report.non_stable_points == []


def test_scan_shear_family_flags_origin_as_split():
    report = scan_grid(shear_family(), [(-1, 1)], 21)
    flagged = report.non_stable_points
    assert len(flagged) == 1
    assert flagged[0].point == (0.0,)
    assert flagged[0].kind is PointKind.SPLIT


def test_scan_size_cap():
    with pytest.raises(ValueError):
        scan_grid(shear_family(), [(-1, 1)], 10**6 + 1)


# ---------------------------------------------------------------------------
# square_free_part_family


def test_squarefree_nilpotent_family():
    sf = square_free_part_family(nilpotent_family())
    assert sf.denominator_is_one
    assert sf.distinct_degree == 1
    # Theta = -A
    f = nilpotent_family()
    for i in range(2):
        for j in range(2):
            assert sf.theta_num[i][j] == -f.entries[i][j]


def test_squarefree_shear_family_is_cayley_hamilton_zero():
    sf = square_free_part_family(shear_family())
    assert sf.denominator_is_one
    assert sf.distinct_degree == 2
    assert all(e.is_zero() for row in sf.theta_num for e in row)


def test_squarefree_double_eigenvalue_family():
    sf = square_free_part_family(double_eig_family())
    assert sf.denominator_is_one
    assert sf.distinct_degree == 2
    # A diagonalizable with exactly the eigenvalues {z, 1}: Theta = 0
    assert all(e.is_zero() for row in sf.theta_num for e in row)


def test_squarefree_jordan_cell_family():
    # blockdiag(J2(z), 1): q0 = (lam - z)(lam - 1), Theta nonzero
    f = MatrixFamily.from_entries(
        [["z", "1", "0"], ["0", "z", "0"], ["0", "0", "1"]], ["z"]
    )
    sf = square_free_part_family(f)
    assert sf.denominator_is_one
    assert sf.distinct_degree == 2
    z = MultiPoly.variable(1, 0)
    one = MultiPoly.one(1)
    # Theta = (z - A)(1 - A): single nonzero entry (z - 1) at (0, 1)
    assert sf.theta_num[0][1] == z - one
    zero_positions = [(i, j) for i in range(3) for j in range(3) if (i, j) != (0, 1)]
    for i, j in zero_positions:
        assert sf.theta_num[i][j].is_zero()


def test_squarefree_evaluation_identity_at_rational_points():
    # (D*Theta)(pt) == D(pt) * theta_product(A(pt)) at random points
    rng = random.Random(71)
    for fam in (nilpotent_family(), double_eig_family()):
        sf = square_free_part_family(fam)
        for _ in range(25):
            pt = [
                complex(Fraction(rng.randint(-9, 9), rng.randint(1, 7)))
                for _ in range(fam.nparams)
            ]
            sym = np.array(
                [[complex(e.eval_complex(pt)) for e in row] for row in sf.theta_num]
            )
            a = fam.at(pt)
            clusters = distinct_eigenvalues(a)
            direct = theta_product(a, [lam for lam, _ in clusters])
            d_val = complex(sf.denominator.eval_complex(pt))
            if len(clusters) != sf.distinct_degree:
                continue  # point accidentally on the splitting set
            assert np.linalg.norm(sym - d_val * direct) <= 1e-6 * (
                1 + np.linalg.norm(direct)
            )


# ---------------------------------------------------------------------------
# jst_defining_functions


def test_jst_nilpotent_family_zero_set_is_origin():
    res = jst_defining_functions(nilpotent_family())
    assert res.denominator_is_one
    assert res.k0 == 1
    assert res.rank_values[1] == 1
    assert not res.whole_space_stable
    # common zero set of the h's is exactly {(0,0)}: check exact evaluation
    rng = random.Random(31)
    pts = [(gr(0), gr(0))] + [
        (gr(rng.randint(-5, 5), rng.randint(-2, 2)), gr(rng.randint(-5, 5)))
        for _ in range(40)
    ]
    for pt in pts:
        all_zero = all(h.eval_exact(list(pt)).is_zero() for h in res.functions)
        origin = all(x.is_zero() for x in pt)
        assert all_zero == origin


def test_jst_constant_family_reports_empty():
    f = MatrixFamily.from_entries([["1", "1"], ["0", "2"]], ["z"])
    res = jst_defining_functions(f)
    assert res.whole_space_stable


def test_jst_double_eigenvalue_family_reduces_to_split_set():
    res = jst_defining_functions(double_eig_family())
    # Theta vanishes identically: rank r_1 = 0, no f-minors
    assert res.k0 == 0
    assert res.rank_values[1] == 0
    assert res.functions == res.split_functions
    # zero set is {z = 1} where the two eigenvalue branches merge
    for h in res.functions:
        assert h.eval_exact([gr(1)]).is_zero()
    assert not all(h.eval_exact([gr(2)]).is_zero() for h in res.functions)


def test_jst_zero_set_matches_grid_classification():
    # grid/symbolic agreement on the nilpotent family
    res = jst_defining_functions(nilpotent_family())
    report = scan_grid(nilpotent_family(), [(-1, 1), (-1, 1)], 9)
    for pc in report.points:
        pt = [gr(Fraction(x.real).limit_denominator(10**6)) for x in pc.point]
        all_zero = all(h.eval_exact(pt).is_zero() for h in res.functions)
        assert all_zero == (pc.kind is not PointKind.STABLE_CANDIDATE)


# ---------------------------------------------------------------------------
# bounds


def test_split_bound_shear_family():
    res = jst_defining_functions(shear_family())
    rng = random.Random(5)
    pts = [
        [complex(rng.uniform(-1, 1), rng.uniform(-1, 1))] for _ in range(2000)
    ]
    for g in res.split_functions:
        rep = check_split_bound(shear_family(), g, pts)
        assert rep.passed


def test_jst_bound_nilpotent_family():
    res = jst_defining_functions(nilpotent_family())
    rng = random.Random(6)
    pts = [
        [
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
            complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
        ]
        for _ in range(2000)
    ]
    rep = check_jst_bound(nilpotent_family(), res, pts)
    assert rep.applicable
    assert rep.passed
    assert rep.max_ratio <= 1.0


def test_jst_bound_marked_not_applicable_when_capped():
    res = jst_defining_functions(nilpotent_family())
    object.__setattr__(res, "functions", None)
    object.__setattr__(res, "capped", True)
    rep = check_jst_bound(nilpotent_family(), res, [[0.1, 0.1]])
    assert not rep.applicable


def test_zero_matrix_family_vacuous():
    f = MatrixFamily.from_entries([["0", "0"], ["0", "0"]], ["z"])
    res = jst_defining_functions(f)
    # constant zero family: Theta == 0 everywhere, split set empty
    assert res.k0 == 0
    assert res.whole_space_stable
