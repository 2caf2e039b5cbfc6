"""Exact-arithmetic deformation theory: filtered complexes, mixed Hodge
structures, L-infinity mapping cones, bar constructions and the
pro-representing local ring, cross-checked against representation
varieties of finitely presented groups.
"""

from .scalars import QQ, QQ_I, GF, Gauss, bernoulli

__all__ = ["QQ", "QQ_I", "GF", "Gauss", "bernoulli"]

__version__ = "0.1.0"
