"""From an augmented diagram to the mapping-cone L-infinity algebra and its
bar construction, with the weight bookkeeping along the way.

Run:  python3 demos/03_cone_and_bar.py
"""

from hodgedef.diagrams import bar_mhd, bar_page_identities, cone_mhd
from hodgedef.hodge import mhc_cohomology, validate_mhc
from hodgedef.linfinity import validate_linf
from hodgedef.repvar import formal_model

# the compact template: H(torus) (x) gl1 with H^n pure of weight n
diagram = formal_model("torus", 1, lie_name="gl1")
print("augmented diagram validates:", diagram.validate())

cd = cone_mhd(diagram, arity_bound=4)
cone = cd.base_cone()
print("cone dimensions:", {n: cone.space.dim(n) for n in cone.space.degrees()})
print("bracket arities:", cone.arities())
print("Q^2 = 0 on C_4:", validate_linf(cone, 4).ok)

h1 = mhc_cohomology(cd.complex_diagram(), 1)
print("H^1(cone): dim", h1.dim, "weights", h1.weights_with_dims())

print()
for s in (1, 2, 3):
    bd = bar_mhd(cd, s, check_pages=False)
    ok = validate_mhc(bd.mhd()).ok
    pages = bar_page_identities(bd, component=0)
    print("C_%d: mixed Hodge complex %s; E_0/E_1 match the wedge-power "
          "decomposition: %s" % (s, ok, pages["ok"]))

h0 = mhc_cohomology(bar_mhd(cd, 3, check_pages=False).mhd(), 0)
print()
print("H^0(C_3): dim", h0.dim, "with weights", h0.weights_with_dims())
print("its dual is the maximal ideal of R_3, truncation of the formal local")
print("ring of the representation variety Hom(Z^2, GL_1) at the trivial point.")
