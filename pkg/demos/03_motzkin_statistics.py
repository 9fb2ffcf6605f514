"""
Motzkin paths by ascents, plateaus, peaks and valleys
=====================================================

Heights 0..m form a network with U, F, D arcs.  Each statistic is a
small set of patterns; the (0, 0) entry of the cluster-method inverse
is the generating function.  Every row is checked against enumeration.
"""
from gjcluster import paths as P

N = 9
for name in ("asc", "peak", "plt1", "plt", "pv"):
    F = P.gf_statistic(name, None, N)
    assert F == P.oracle_distribution(name, N)
    print(f"-- {name}")
    for n in range(N + 1):
        print(f"{n:>3}  {F.coeff(n)}")

# restrictions by height
print("ascents ending at even heights:", P.gf_asc_height_restricted(P.EVEN, 10).integers())
print("ascents ending at odd heights: ", P.gf_asc_height_restricted(P.ODD, 10).integers())
print("ascents starting on the floor: ", P.gf_asc_start_restricted({0}, 10).integers())
print("odd peaks, even valleys:       ", P.gf_pv_height_restricted(P.ODD, P.EVEN0, 8).integers())
