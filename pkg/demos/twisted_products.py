"""Bounds for twisted sphere products over projective planes and spheres.

The quotient of M x S^{p_1} x ... x S^{p_r} by the diagonal involution picks
up a degree-one truncated class and square-zero classes in degrees p_2..p_r;
the bound rules combine the base and fibre certificates.
"""

from smallcover import BottMatrix, bott_manifold, dold_bounds, sphere_manifold

print("over the projective plane (n = 2):")
M = bott_manifold((2,), BottMatrix.make((2,)))
for rep in dold_bounds(M, [2]):
    iv = rep.interval
    print(f"  {rep.invariant}: [{iv.lo}, {iv.hi}]")

print("over the 4-dimensional projective space with two sphere factors:")
M = bott_manifold((4,), BottMatrix.make((4,)))
for rep in dold_bounds(M, [2, 3]):
    iv = rep.interval
    print(f"  {rep.invariant}: [{iv.lo}, {iv.hi}]")

print("over the 3-sphere with its antipodal involution:")
for rep in dold_bounds(sphere_manifold(3), [2]):
    iv = rep.interval
    print(f"  {rep.invariant}: [{iv.lo}, {iv.hi}]")
