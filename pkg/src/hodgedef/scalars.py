"""Exact scalar tower: rationals, a quadratic extension with conjugation,
and prime fields for point counting.

All arithmetic is exact; constructing any scalar from a float raises.
The extension field k0(i) plays the role of the complex numbers: the
Galois involution a+bi -> a-bi is the stand-in for complex conjugation.
"""

from fractions import Fraction


def _frac(x):
    """Coerce int / Fraction / 'a/b' string to Fraction, rejecting floats."""
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating point is banned; got %r" % (x,))
    raise TypeError("cannot coerce %r to an exact rational" % (x,))


class Gauss:
    """Element a + b*i of the quadratic extension, a and b exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Gauss scalars are immutable")

    def _coerce(self, other):
        if isinstance(other, Gauss):
            return other
        if isinstance(other, (int, Fraction)):
            return Gauss(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Gauss(self.re * o.re - self.im * o.im,
                     self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero in k0(i)")
        return self * Gauss(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Gauss(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return Gauss(self.re, -self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        return "(%s + %s*i)" % (self.re, self.im)


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("value", "p")

    def __init__(self, value, p):
        object.__setattr__(self, "value", value % p)
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Fp scalars are immutable")

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError("mixed characteristics %d and %d" % (self.p, other.p))
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Fp(other, self.p)
        if isinstance(other, Fraction):
            return Fp(other.numerator, self.p) / Fp(other.denominator, self.p)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Fp(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return Fp(self.value * pow(o.value, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.value == o.value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return "%d" % self.value


class RationalField:
    """The exact rational base field k0."""

    characteristic = 0
    name = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def of(self, x):
        if isinstance(x, Gauss):
            if x.im != 0:
                raise ValueError("%r is not rational" % (x,))
            return x.re
        return _frac(x)

    def conj(self, x):
        return x

    def __repr__(self):
        return "QQ"


class GaussianField:
    """The quadratic extension k0(i), standing in for the complex numbers."""

    characteristic = 0
    name = "Q(i)"

    def zero(self):
        return Gauss(0)

    def one(self):
        return Gauss(1)

    def i(self):
        return Gauss(0, 1)

    def of(self, x):
        if isinstance(x, Gauss):
            return x
        if isinstance(x, (list, tuple)) and len(x) == 2:
            return Gauss(_frac(x[0]), _frac(x[1]))
        return Gauss(_frac(x))

    def conj(self, x):
        return self.of(x).conjugate()

    def __repr__(self):
        return "QQ_I"


class PrimeField:
    """F_p; refuses primes too small for the denominator bound in play."""

    name = "F_p"

    def __init__(self, p):
        from math import isqrt
        if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
            raise ValueError("%d is not prime" % p)
        self.p = p
        self.characteristic = p

    def zero(self):
        return Fp(0, self.p)

    def one(self):
        return Fp(1, self.p)

    def of(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError("wrong characteristic")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(
                    "denominator %d not invertible mod %d" % (x.denominator, self.p))
            return Fp(x.numerator, self.p) / Fp(x.denominator, self.p)
        if isinstance(x, int) and not isinstance(x, bool):
            return Fp(x, self.p)
        if isinstance(x, str):
            return self.of(Fraction(x))
        raise TypeError("cannot coerce %r into F_%d" % (x, self.p))

    def conj(self, x):
        return x

    def require_exceeds(self, bound):
        """Characteristic-p guard: every 1/r! and BCH denominator must invert."""
        if self.p <= bound:
            raise ValueError(
                "characteristic %d too small for truncation bound %d" % (self.p, bound))

    def elements(self):
        return [Fp(v, self.p) for v in range(self.p)]

    def __repr__(self):
        return "GF(%d)" % self.p


QQ = RationalField()
QQ_I = GaussianField()


def GF(p):
    return PrimeField(p)


_BERNOULLI = [Fraction(1)]


def bernoulli(n):
    """Bernoulli number B_n with the convention B_1 = -1/2."""
    from math import comb
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        # sum_{j=0}^{m} C(m+1, j) B_j = 0
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * _BERNOULLI[j]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def factorial(n):
    r = 1
    for k in range(2, n + 1):
        r *= k
    return Fraction(r)
