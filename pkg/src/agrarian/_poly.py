"""Multivariate polynomials over the rationals, backed by FLINT.

A small wrapper around ``flint.fmpq_mpoly`` exposing just what the field
code needs.  Terms are ordered graded-lexicographically (FLINT's ``deglex``).
"""

from fractions import Fraction

import flint


def _fmpq(c):
    if isinstance(c, flint.fmpq):
        return c
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


def _frac(q):
    return Fraction(int(q.p), int(q.q))


class PolyRing:
    def __init__(self, names):
        self.names = tuple(names)
        self.ctx = flint.fmpq_mpoly_ctx.get(self.names, "deglex")
        self.zero = Poly(self, self.ctx.from_dict({}))
        self.one = Poly(self, self.ctx.constant(1))
        self.gens = tuple(Poly(self, g) for g in self.ctx.gens())

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.names == self.names

    def __hash__(self):
        return hash(("PolyRing", self.names))

    def ground_new(self, c):
        return Poly(self, self.ctx.constant(_fmpq(c)))

    def from_dict(self, data):
        return Poly(self, self.ctx.from_dict({tuple(e): _fmpq(c) for e, c in data.items() if c}))


class Poly:
    __slots__ = ("ring", "p", "_hash")

    def __init__(self, ring, p):
        self.ring = ring
        self.p = p
        self._hash = None

    def _wrap(self, p):
        return Poly(self.ring, p)

    def _other(self, other):
        if isinstance(other, Poly):
            return other.p
        return _fmpq(other)

    def __add__(self, other):
        return self._wrap(self.p + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.p - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.p)

    def __neg__(self):
        return self._wrap(-self.p)

    def __mul__(self, other):
        return self._wrap(self.p * self._other(other))

    __rmul__ = __mul__

    def __pow__(self, k):
        return self._wrap(self.p**k)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p
        if isinstance(other, (int, Fraction)):
            return self.p == _fmpq(other)
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms()))
        return self._hash

    def __bool__(self):
        return not self.p.is_zero()

    def __len__(self):
        return len(self.p)

    @property
    def LC(self):
        return _frac(self.p.leading_coefficient()) if self else Fraction(0)

    @property
    def is_ground(self):
        return self.p.is_constant()

    def quo_ground(self, c):
        return self._wrap(self.p / _fmpq(c))

    def exquo(self, other):
        return self._wrap(self.p / other.p)

    def gcd(self, other):
        return self._wrap(self.p.gcd(other.p))

    def lcm(self, other):
        g = self.p.gcd(other.p)
        return self._wrap((self.p / g) * other.p)

    def cofactors(self, other):
        g = self.p.gcd(other.p)
        if g.is_zero():
            return self._wrap(g), self, other
        return self._wrap(g), self._wrap(self.p / g), self._wrap(other.p / g)

    def monic(self):
        return self._wrap(self.p / self.p.leading_coefficient())

    def scale_vars(self, scales):
        """Substitute ``x_i -> scales[i] * x_i``."""
        gens = self.ring.ctx.gens()
        return self._wrap(self.p.compose(*[_fmpq(c) * g for c, g in zip(scales, gens)]))

    def terms(self):
        return [(tuple(map(int, e)), _frac(c)) for e, c in zip(self.p.monoms(), self.p.coeffs())]

    def keys(self):
        return [tuple(map(int, e)) for e in self.p.monoms()]

    def __repr__(self):
        return f"Poly({self.p})"
