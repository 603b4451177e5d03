"""Continuing eigenvalue branches along a parameter path.

Each distinct eigenvalue sits alone in a disk; a step of the parameter
is accepted only once the characteristic polynomial's change is
dominated on all disk boundaries (so root counts inside cannot change),
and then every branch is re-read from a residue integral over its
circle. Where branches collide no step can be accepted and the
collision is reported as a bracketed split event instead.
"""

import cmath

from jordanscope.family import MatrixFamily
from jordanscope.tracker import splitting_amounts, track_path

print("=== smooth continuation: eigenvalues +-sqrt(z), path 1 -> 4 ===\n")
sqrt_family = MatrixFamily.from_entries([["0", "1"], ["z", "0"]], ["z"])
result = track_path(sqrt_family, [[1.0], [4.0]], steps=100)
print(f"{len(result.samples)} accepted samples, {len(result.events)} events")
worst = 0.0
for s in result.samples[:: len(result.samples) // 8]:
    z = s.point[0]
    closed = sorted((cmath.sqrt(z), -cmath.sqrt(z)), key=lambda v: v.real)
    got = sorted(s.branches, key=lambda v: v.real)
    err = max(abs(a - b) for a, b in zip(closed, got))
    worst = max(worst, err)
    print(
        f"  z = {z.real:5.2f}   branches {got[0].real:+.6f} {got[1].real:+.6f}"
        f"   error vs closed form {err:.1e}"
    )
print(f"worst sampled error: {worst:.2e}")

print("\n=== collision: eigenvalues +-z, path 1 -> -1 through 0 ===\n")
shear_family = MatrixFamily.from_entries([["z", "1"], ["0", "-z"]], ["z"])
result = track_path(shear_family, [[1.0], [-1.0]], steps=100)
for event in result.events:
    za = event.point_bracket[0][0]
    zb = event.point_bracket[1][0]
    print(f"split event bracketed between z = {za:.3e} and z = {zb:.3e}")

print("\n=== how many branches emerge from the collision? ===\n")
amounts = splitting_amounts(shear_family, [0.0], probe_radius=1e-2)
for mu, kappa in zip(amounts.eigenvalues, amounts.amounts):
    print(f"eigenvalue {mu:.2f} of A(0) splits into {kappa} nearby branches")
