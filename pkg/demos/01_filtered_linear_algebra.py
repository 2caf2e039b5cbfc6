"""Exact filtered linear algebra: complexes, cohomology with induced
filtrations, graded pieces and spectral-sequence pages.

Run:  python3 demos/01_filtered_linear_algebra.py
"""

from hodgedef.scalars import QQ
from hodgedef.graded import (FilteredComplex, Filtration, GradedMap,
                             GradedSpace, cohomology, graded_piece,
                             spectral_pages)
from hodgedef.linalg import Subspace

# A three-term complex  k --(1,0)--> k^2 --(0,1)--> k  with a two-step
# weight filtration putting the first basis vector of each degree in W_0.
space = GradedSpace(QQ, {0: 1, 1: 2, 2: 1}, {0: ("a",), 1: ("x", "y"), 2: ("b",)})
d = GradedMap(space, space, 1, {0: [[1], [0]], 1: [[0, 1]]})
w = Filtration(space, +1, {
    0: {0: Subspace.full(QQ, 1),
        1: Subspace(QQ, 2, [[1, 0]]),
        2: Subspace.zero(QQ, 1)},
    1: {0: Subspace.full(QQ, 1),
        1: Subspace.full(QQ, 2),
        2: Subspace.full(QQ, 1)},
})
K = FilteredComplex(space, d, {"W": w})

print("complex dimensions:", {n: space.dim(n) for n in space.degrees()})
for n in (0, 1, 2):
    h = cohomology(K, n)
    print("H^%d has dimension %d" % (n, h.dim))

print()
print("graded pieces of W:")
for k in (0, 1):
    g, _ = graded_piece(K, "W", k)
    print("  Gr^W_%d dims:" % k, {n: g.space.dim(n) for n in g.space.degrees()})

print()
print("spectral pages of (K, W)   [entry (k, q) sits in degree q - k]:")
pages = spectral_pages(K, "W")
print("  E_0:", dict(sorted(pages.e0.items())))
print("  E_1:", dict(sorted(pages.e1.items())))

# The sum of E_1 entries over a column bounds the cohomology it converges to.
for n in (0, 1, 2):
    tot = sum(v for (k, q), v in pages.e1.items() if q - k == n)
    print("  sum of E_1 in total degree %d: %d  (dim H^%d = %d)"
          % (n, tot, n, cohomology(K, n).dim))
