"""The Goldman-Millson cross-check: the pro-representing tower of the
L-infinity pipeline against the representation variety computed directly
from the group presentation.

Run:  python3 demos/05_goldman_millson.py          (about two minutes: the
gl_2 case runs the multigraded block decomposition of the bar complex)
"""

import time

from hodgedef.artin import artin_truncated_polynomial
from hodgedef.deformation import count_local_homs, prorep
from hodgedef.diagrams import cone_mhd
from hodgedef.repvar import (GroupPresentation, MatrixRep, def_counts,
                             formal_model, ohat_truncate)

cases = [
    ("Z -> GL_1", GroupPresentation.Z(), 1, ("free", 1)),
    ("F_2 -> GL_1", GroupPresentation.free(2), 1, ("free", 2)),
    ("Z^2 -> GL_1", GroupPresentation.Z2(), 1, ("torus", 1)),
    ("Z^2 -> GL_2", GroupPresentation.Z2(), 2, ("torus", 1)),
]

for name, pres, n, (kind, param) in cases:
    t0 = time.time()
    rep = MatrixRep.trivial(pres, "GL", n)
    ring = ohat_truncate(pres, rep, 4)
    diagram = formal_model(kind, param, lie_name="gl%d" % n)
    cd = cone_mhd(diagram, arity_bound=5)
    tower = prorep(cd.base_cone(), 4, 4)
    agree = tower.hilbert == ring.hilbert
    print("%-12s pipeline %s  oracle %s  match=%s  (%.1fs)"
          % (name, tower.hilbert, ring.hilbert, agree, time.time() - t0))
    A = artin_truncated_polynomial(2)
    oracle = def_counts(pres, rep, A, 101)["lifts"]
    homs = count_local_homs(tower, A, 101)
    print("             lifts over k[t]/t^2 at p = 101: oracle %d, pipeline %d"
          % (oracle, homs))

print()
print("For Z^2 -> GL_2 this is the commuting variety of gl_2: tangent space")
print("of dimension 8 cut by three independent quadrics, Hilbert 1, 8, 33,")
print("98, 238 - reproduced on both sides of the correspondence.")
