"""Mixed Hodge structures: validation, a non-split example and its
Deligne splitting.

Run:  python3 demos/02_hodge_structures.py
"""

from hodgedef.scalars import QQ, QQ_I
from hodgedef.hodge import (deligne_splitting, hodge_numbers, validate_mhs,
                            MixedHodgeStructure)
from hodgedef.linalg import Subspace

i = QQ_I.i()

# A 2-dimensional non-split extension of a weight-2 Tate-like structure by
# a weight-0 one: W_0 = <e1>, W_2 = everything, F^1 = <e2 + i e1>.
m = MixedHodgeStructure(
    2,
    {-1: Subspace.zero(QQ, 2), 0: Subspace(QQ, 2, [[1, 0]]),
     2: Subspace.full(QQ, 2)},
    {0: Subspace.full(QQ_I, 2),
     1: Subspace(QQ_I, 2, [[i, QQ_I.one()]]),
     2: Subspace.zero(QQ_I, 2)})

print("validate:", validate_mhs(m).ok)
print("weights:", m.weights_with_dims())
print("hodge numbers h^{p,q}:", hodge_numbers(m))

pieces = deligne_splitting(m)
print()
print("Deligne splitting (the bigrading I^{p,q} refining W and F):")
for (p, q), sub in sorted(pieces.items()):
    print("  I^{%d,%d} spanned by %s" % (p, q, sub.rows))

# the splitting is a genuine direct sum projecting onto the graded pieces
total = sum(s.dim for s in pieces.values())
print("sum of piece dimensions:", total, "== dim", m.dim)

# an invalid structure: 1-dimensional weight-1 piece cannot carry a Hodge
# structure (the conjugation would have to swap K^{1,0} and K^{0,1})
bad = MixedHodgeStructure(
    1,
    {0: Subspace.zero(QQ, 1), 1: Subspace.full(QQ, 1)},
    {0: Subspace.full(QQ_I, 1), 1: Subspace.zero(QQ_I, 1)})
v = validate_mhs(bad)
print()
print("parity obstruction example rejected:", not v.ok, "-", v.detail)
