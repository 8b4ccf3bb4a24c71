"""Univariate twisted Laurent polynomials ``F[t, t^-1; sigma]`` and their Ore field.

Multiplication follows ``(a t^i)(b t^j) = a sigma^i(b) t^(i+j)``.  Fractions
are right fractions ``p q^-1``; the Ore condition ``p s = q r`` is solved
with an extended Euclidean algorithm based on left division, while
normalisation cancels greatest common right divisors found by right
division.  Equality of fractions is decided semantically by cross
multiplication (:func:`ore_equal`).
"""

from fractions import Fraction

from . import grammar
from .errors import DivisionByZero, FieldMismatch, ZeroDenominator
from .fields import FieldAutomorphism, RationalFunction, RationalFunctionField, coefficient_parts

__all__ = [
    "SkewLaurentRing",
    "SkewLaurentPolynomial",
    "OreField",
    "OreFraction",
    "skew_multiply",
    "skew_right_divide",
    "skew_left_divide",
    "ore_pair",
    "ore_equal",
    "gcrd",
]


class SkewLaurentRing:
    """``F[t, t^-1; sigma]`` for a commutative field ``F``."""

    def __init__(self, base, sigma=None, var="t"):
        self.base = base
        self.sigma = sigma if sigma is not None else FieldAutomorphism.identity(base)
        if self.sigma.field != base:
            raise FieldMismatch("automorphism lives on a different field")
        self.var = var
        self.is_commutative = self.sigma.is_identity()
        self.zero = SkewLaurentPolynomial(self, {})
        self.one = SkewLaurentPolynomial(self, {0: base.one})
        self.t = SkewLaurentPolynomial(self, {1: base.one})

    def __eq__(self, other):
        return (
            isinstance(other, SkewLaurentRing)
            and other.base == self.base
            and other.sigma == self.sigma
            and other.var == self.var
        )

    def __hash__(self):
        return hash((self.base, self.sigma, self.var))

    def __repr__(self):
        return f"{self.base!r}[{self.var}^+-1; {self.sigma!r}]"

    def act(self, k, c):
        """``sigma^k(c)``."""
        if k == 0 or self.is_commutative:
            return c
        return self.sigma.power(k).apply(c)

    def __call__(self, x):
        if isinstance(x, SkewLaurentPolynomial):
            if x.ring != self:
                raise FieldMismatch("polynomial from another ring")
            return x
        return self.constant(self.base(x))

    def constant(self, c):
        return self.monomial(c, 0)

    def monomial(self, c, k):
        c = self.base(c)
        return SkewLaurentPolynomial(self, {k: c} if c else {})

    def from_coeffs(self, coeffs):
        return SkewLaurentPolynomial(self, {k: self.base(c) for k, c in coeffs.items() if c})


class SkewLaurentPolynomial:
    """Finitely supported map degree -> nonzero coefficient."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {k: c for k, c in coeffs.items() if c}

    def _coerce(self, other):
        if isinstance(other, SkewLaurentPolynomial):
            if other.ring != self.ring:
                raise FieldMismatch("skew polynomials from different rings")
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.ring.constant(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return SkewLaurentPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return SkewLaurentPolynomial(self.ring, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return skew_multiply(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return skew_multiply(other, self)

    def __pow__(self, k):
        if k < 0:
            if not self.is_monomial():
                raise DivisionByZero("only monomials are units")
            return self.monomial_inverse() ** (-k)
        result = self.ring.one
        for _ in range(k):
            result = result * self
        return result

    # degrees and coefficients

    def degree(self):
        return max(self.coeffs) if self.coeffs else None

    def low(self):
        return min(self.coeffs) if self.coeffs else None

    def span(self):
        return self.degree() - self.low() if self.coeffs else -1

    def lc(self):
        return self.coeffs[self.degree()]

    def tc(self):
        return self.coeffs[self.low()]

    def support(self):
        return set(self.coeffs)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def is_constant(self):
        return not self.coeffs or set(self.coeffs) == {0}

    def monomial_inverse(self):
        """``(c t^k)^-1 = sigma^-k(c^-1) t^-k``."""
        ((k, c),) = self.coeffs.items()
        return SkewLaurentPolynomial(self.ring, {-k: self.ring.act(-k, self.ring.base.inv(c))})

    def shift(self, k):
        """Right multiplication by ``t^k`` (no twisting)."""
        return SkewLaurentPolynomial(self.ring, {i + k: c for i, c in self.coeffs.items()})

    def lshift(self, k):
        """Left multiplication by ``t^k``."""
        act = self.ring.act
        return SkewLaurentPolynomial(self.ring, {i + k: act(k, c) for i, c in self.coeffs.items()})

    def rscale(self, c):
        """``self * c`` for a base-field scalar ``c``."""
        act = self.ring.act
        return SkewLaurentPolynomial(self.ring, {i: a * act(i, c) for i, a in self.coeffs.items()})

    def lscale(self, c):
        """``c * self``."""
        return SkewLaurentPolynomial(self.ring, {i: c * a for i, a in self.coeffs.items()})

    def size(self):
        return sum(self.ring.base.size(c) for c in self.coeffs.values())

    def format(self):
        base = self.ring.base
        var = self.ring.var
        terms = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            negative, body = coefficient_parts(base, c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append((negative, body))
            elif body == "1":
                terms.append((negative, mono))
            else:
                terms.append((negative, f"{body}*{mono}"))
        return grammar.join_terms(terms)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SkewLaurentPolynomial({self.format()!r})"


def skew_multiply(p, q):
    """Product under ``(a t^i)(b t^j) = a sigma^i(b) t^(i+j)``."""
    if p.ring != q.ring:
        raise FieldMismatch("skew polynomials from different rings")
    ring = p.ring
    out = {}
    if not p.coeffs or not q.coeffs:
        return ring.zero
    act = ring.act
    for i, a in p.coeffs.items():
        for j, b in q.coeffs.items():
            term = a * act(i, b)
            k = i + j
            out[k] = out[k] + term if k in out else term
    return SkewLaurentPolynomial(ring, out)


def _poly_right_divide(a, b):
    """``a = q b + r`` for polynomials with ``deg r < deg b``."""
    ring = a.ring
    act = ring.act
    inv = ring.base.inv
    n = b.degree()
    bn_inv = inv(b.lc())
    quotient = {}
    r = a
    while r and r.degree() >= n:
        m = r.degree() - n
        # (c t^m)(b_n t^n) = c sigma^m(b_n) t^(m+n)
        c = r.lc() * act(m, bn_inv)
        quotient[m] = c
        r = r - SkewLaurentPolynomial(ring, {m: c}) * b
    return SkewLaurentPolynomial(ring, quotient), r


def _poly_left_divide(a, b):
    """``a = b q + r`` for polynomials with ``deg r < deg b``."""
    ring = a.ring
    act = ring.act
    n = b.degree()
    bn_inv = ring.base.inv(b.lc())
    quotient = {}
    r = a
    while r and r.degree() >= n:
        m = r.degree() - n
        # (b_n t^n)(c t^m) = b_n sigma^n(c) t^(n+m)
        c = act(-n, bn_inv * r.lc())
        quotient[m] = c
        r = r - b * SkewLaurentPolynomial(ring, {m: c})
    return SkewLaurentPolynomial(ring, quotient), r


def skew_right_divide(a, b):
    """Return ``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``.

    Laurent inputs are first right-multiplied by a common power of ``t`` so
    both become polynomials; the remainder is shifted back afterwards.
    """
    if not b:
        raise ZeroDenominator("division by zero skew polynomial")
    if a.ring != b.ring:
        raise FieldMismatch("skew polynomials from different rings")
    if not a:
        return a.ring.zero, a.ring.zero
    m = min(a.low(), b.low())
    q, r = _poly_right_divide(a.shift(-m), b.shift(-m))
    return q, r.shift(m)


def skew_left_divide(a, b):
    """Return ``(q, r)`` with ``a = b*q + r`` and ``deg r < deg b``."""
    if not b:
        raise ZeroDenominator("division by zero skew polynomial")
    if a.ring != b.ring:
        raise FieldMismatch("skew polynomials from different rings")
    if not a:
        return a.ring.zero, a.ring.zero
    m = min(a.low(), b.low())
    q, r = _poly_left_divide(a.lshift(-m), b.lshift(-m))
    return q, r.lshift(m)


def _left_primitive(p):
    """``c * p`` for a base scalar ``c`` making the coefficients small.

    Over a rational function field the coefficients become coprime
    polynomials; left scalars do not change the left ideal ``R p``.
    """
    base = p.ring.base
    if not isinstance(base, RationalFunctionField):
        return p.lscale(base.inv(p.lc()))
    coeffs = p.coeffs
    L = None
    for c in coeffs.values():
        L = c.den if L is None else L.lcm(c.den)
    polys = {k: c.num * L.exquo(c.den) for k, c in coeffs.items()}
    G = None
    for c in polys.values():
        G = c if G is None else G.gcd(c)
        if G == 1:
            break
    if G != 1:
        polys = {k: c.exquo(G) for k, c in polys.items()}
    lead = polys[max(polys)].LC
    return SkewLaurentPolynomial(p.ring, {k: base.from_polys(c.quo_ground(lead)) for k, c in polys.items()})


def gcrd(a, b):
    """Greatest common right divisor, normalised to low degree 0 and monic."""
    a = _left_primitive(a.lshift(-a.low()))
    b = _left_primitive(b.lshift(-b.low()))
    while b:
        _, r = _poly_right_divide(a, b)
        a, b = b, (_left_primitive(r.lshift(-r.low())) if r else r)
    # left scalar multiples keep right divisibility
    return a.lscale(a.ring.base.inv(a.lc()))


def _exact_right_quotient(a, g):
    """``a' `` with ``a = a' g``; ``g`` must be a right divisor of ``a``."""
    low = a.low()
    q, r = _poly_right_divide(a.lshift(-low), g)
    if r:
        raise ArithmeticError("not a right divisor")
    return q.lshift(low)


def ore_pair(p, q):
    """Solve the Ore condition: return ``(r, s)`` with ``s != 0`` and ``p s = q r``."""
    if not q:
        raise ZeroDenominator("Ore condition needs a nonzero q")
    ring = p.ring
    if q.ring != ring:
        raise FieldMismatch("skew polynomials from different rings")
    if not p:
        return ring.zero, ring.one
    if q.is_monomial():
        return q.monomial_inverse() * p, ring.one
    if p.is_monomial():
        # p (p^-1 q) = q * 1
        return ring.one, p.monomial_inverse() * q
    if ring.is_commutative:
        return p, q
    # strip right monomial factors (units), then extended left Euclid
    lp, lq = p.low(), q.low()
    p0, q0 = p.shift(-lp), q.shift(-lq)
    r_prev, r_cur = p0, q0
    u_prev, u_cur = ring.one, ring.zero
    v_prev, v_cur = ring.zero, ring.one
    while r_cur:
        quo, rem = _poly_left_divide(r_prev, r_cur)
        u_next, v_next = u_prev - u_cur * quo, v_prev - v_cur * quo
        if rem:
            # right scalars keep the right ideal; a monic remainder stays small
            c = ring.act(-rem.degree(), ring.base.inv(rem.lc()))
            rem, u_next, v_next = rem.rscale(c), u_next.rscale(c), v_next.rscale(c)
        r_prev, r_cur = r_cur, rem
        u_prev, u_cur = u_cur, u_next
        v_prev, v_cur = v_cur, v_next
    s0, r0 = u_cur, -v_cur
    # p0 s0 = q0 r0 with p0 = p t^-lp, q0 = q t^-lq
    s = ring.monomial(ring.base.one, -lp) * s0
    r = ring.monomial(ring.base.one, -lq) * r0
    return r, s


class OreField:
    """Right fractions ``p q^-1`` over a :class:`SkewLaurentRing`."""

    def __init__(self, ring):
        self.ring = ring
        self.base = ring.base
        self.is_commutative = ring.is_commutative
        self.names = (ring.var,)
        self.zero = OreFraction(self, ring.zero, ring.one, normalise=False)
        self.one = OreFraction(self, ring.one, ring.one, normalise=False)

    def __eq__(self, other):
        return isinstance(other, OreField) and other.ring == self.ring

    def __hash__(self):
        return hash(("Ore", self.ring))

    def __repr__(self):
        return f"Ore({self.ring!r})"

    def __call__(self, x):
        if isinstance(x, OreFraction):
            if x.field != self:
                raise FieldMismatch("fraction from another Ore field")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, SkewLaurentPolynomial):
            return OreFraction(self, self.ring(x), self.ring.one, normalise=False)
        return OreFraction(self, self.ring(x), self.ring.one, normalise=False)

    def contains(self, x):
        return isinstance(x, OreFraction) and x.field == self

    def from_int(self, n):
        return self(n)

    def fraction(self, num, den):
        return OreFraction(self, self.ring(num), self.ring(den))

    @property
    def gens(self):
        base_gens = tuple(self(g) for g in self.base.gens)
        return base_gens + (self(self.ring.t),)

    @property
    def t(self):
        return self(self.ring.t)

    def inv(self, x):
        return self(x).inverse()

    def size(self, x):
        return x.num.size() + x.den.size()

    def format(self, x):
        return self(x).format()

    def parse(self, text):
        names = {name: self(g) for name, g in zip(self.base.names, self.base.gens)}
        names[self.ring.var] = self.t
        return grammar.evaluate(text, names, self.from_int, self.one, self.inv)


class OreFraction:
    """Element ``num * den^-1`` of an :class:`OreField`."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den, normalise=True):
        if not den:
            raise ZeroDenominator("zero denominator")
        self.field = field
        if normalise:
            num, den = _normalise(field.ring, num, den)
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, OreFraction):
            if other.field != self.field:
                raise FieldMismatch("fractions from different Ore fields")
            return other
        if isinstance(other, (int, Fraction, RationalFunction, SkewLaurentPolynomial)):
            return self.field(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return OreFraction(self.field, self.num + other.num, self.den)
        r, s = ore_pair(self.den, other.den)
        # den1 s = den2 r is a common right multiple
        return OreFraction(self.field, self.num * s + other.num * r, self.den * s)

    def __radd__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + self

    def __neg__(self):
        return OreFraction(self.field, -self.num, self.den, normalise=False)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return self.field.zero
        # p1 q1^-1 p2 q2^-1 with q1^-1 p2 = r s^-1 where p2 s = q1 r
        r, s = ore_pair(other.num, self.den)
        return OreFraction(self.field, self.num * r, other.den * s)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return OreFraction(self.field, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ore_equal(self, other)

    __hash__ = None

    def is_polynomial(self):
        return self.den == self.field.ring.one

    def format(self):
        if self.is_polynomial():
            return self.num.format()
        return f"({self.num.format()})/({self.den.format()})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"OreFraction({self.format()!r})"


def _normalise(ring, num, den):
    if not num:
        return ring.zero, ring.one
    if den.is_monomial():
        return num * den.monomial_inverse(), ring.one
    g = gcrd(num, den)
    if g.degree() > 0:
        num = _exact_right_quotient(num, g)
        den = _exact_right_quotient(den, g)
        if den.is_monomial():
            return num * den.monomial_inverse(), ring.one
    # right unit u = t^-low * c making den a monic polynomial with low 0
    low = den.low()
    num, den = num.shift(-low), den.shift(-low)
    c = ring.act(-den.degree(), ring.base.inv(den.lc()))
    return num.rscale(c), den.rscale(c)


def ore_equal(x, y):
    """Decide ``p1 q1^-1 == p2 q2^-1`` via ``q1 s = q2 r`` and ``p1 s == p2 r``."""
    if x.field != y.field:
        raise FieldMismatch("fractions from different Ore fields")
    if x.num == y.num and x.den == y.den:
        return True
    if not x.num or not y.num:
        return not x.num and not y.num
    r, s = ore_pair(x.den, y.den)
    return x.num * s == y.num * r
