"""A holomorphically varying similarity to Jordan form near a stable point.

Around a Jordan stable point the block structure is rigid: only the
eigenvalue scalars move. The transform T(z) with T(z)^-1 A(z) T(z) in
Jordan form is recovered pointwise by projecting the base intertwiner
onto the kernel of S |-> S A(z) - J(z) S; the kernel dimension staying
constant over the disk is exactly the stability being exploited.
"""

from jordanscope.family import MatrixFamily
from jordanscope.jordan import local_jordan_transform

cases = [
    (
        "diagonalizable disk around z = 1",
        MatrixFamily.from_entries([["z", "1"], ["0", "-z"]], ["z"]),
        [1.0],
        0.2,
    ),
    (
        "rigid nilpotent 2-block around (1, 1)",
        MatrixFamily.from_entries([["z*w", "-z^2"], ["w^2", "-z*w"]], ["z", "w"]),
        [1.0, 1.0],
        0.2,
    ),
]

for label, family, center, radius in cases:
    report = local_jordan_transform(
        family, center, disk_radius=radius, sample_count=25
    )
    print(f"=== {label} ===")
    print(f"  intertwiner kernel dimension on the disk: {report.kernel_dim}")
    print(f"  samples checked: {len(report.samples)}")
    print(f"  worst similarity residual |T^-1 A T - J|: "
          f"{report.max_residual:.2e}")
    worst_cond = max(s.condition for s in report.samples)
    print(f"  worst condition of the intertwiner: {worst_cond:.1f}\n")
