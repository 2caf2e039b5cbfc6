"""The pro-representing tower R_n with its mixed Hodge structure, the
cotangent exact sequence and the weight-zero orbit ring.

Run:  python3 demos/04_deformation_ring.py
"""

from hodgedef.deformation import (cotangent_sequence, mhs_on_ring,
                                  orbit_weight_zero)
from hodgedef.diagrams import cone_mhd
from hodgedef.hodge import hodge_numbers
from hodgedef.repvar import formal_model

for name, kind, param in (("torus Z^2", "torus", 1), ("free F_2", "free", 2)):
    diagram = formal_model(kind, param, lie_name="gl1")
    cd = cone_mhd(diagram, arity_bound=5)
    tower = mhs_on_ring(cd, 3, 3)
    print("== %s (x) gl1" % name)
    print("Hilbert function of R_n:", tower.hilbert)
    cot = tower.mhs_levels[0]
    print("cotangent space m/m^2: dim", cot.dim,
          "weights", cot.weights_with_dims(),
          "hodge", hodge_numbers(cot))
    seq = cotangent_sequence(cd)
    print("cotangent sequence exact:", seq["exact"], " strict:", seq["strict"])
    print("  0 -> g/eps(H^0 L) [dim %d] -> H^1(C) [dim %d] -> H^1(L) [dim %d] -> 0"
          % (seq["g_quotient"].dim, seq["h1_cone"].dim, seq["h1_l"].dim))
    orb = orbit_weight_zero(cd, 3, 3)
    print("orbit ring Hilbert:", orb["orbit_hilbert"],
          "(D -> E quasi-isomorphism: %s)" % orb["d_to_e_qis"])
    gr0 = [m.weights_with_dims().get(0, 0) for m in tower.mhs_levels]
    print("Gr^W_0 of m_{R_n} levelwise:", gr0)
    print()

print("The torus cotangent is pure of weight 1 (types (1,0) + (0,1)); the")
print("wedge-of-circles cotangent is pure of weight 2, type (1,1): the ring")
print("acquires the quasi-homogeneous grading of the non-compact theory.")
