"""Commutative coefficient fields: the rationals and rational function fields.

Two realisations live here:

* :data:`QQ`, whose elements are plain :class:`fractions.Fraction` values;
* :class:`RationalFunctionField`, multivariate rational functions over the
  rationals kept gcd-reduced with a monic (graded-lex) denominator.

Skew (twisted) fraction fields are in :mod:`agrarian.skew`.
"""

from fractions import Fraction
from functools import reduce

from . import grammar
from ._poly import PolyRing
from .errors import DivisionByZero, FieldMismatch

__all__ = [
    "QQ",
    "RationalField",
    "RationalFunctionField",
    "RationalFunction",
    "FieldAutomorphism",
    "field_of",
    "field_arith",
    "to_fraction",
]


def to_fraction(q):
    """Convert an integer, Fraction or other exact rational to Fraction."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, int):
        return Fraction(q)
    return Fraction(int(q.numerator), int(q.denominator))


class RationalField:
    """The field of rational numbers; elements are ``Fraction`` instances."""

    names = ()
    ngens = 0
    is_commutative = True
    zero = Fraction(0)
    one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __call__(self, x):
        if isinstance(x, str):
            return self.parse(x)
        try:
            return to_fraction(x)
        except (AttributeError, TypeError):
            raise FieldMismatch(f"cannot coerce {x!r} into QQ") from None

    def contains(self, x):
        return isinstance(x, (Fraction, int)) and not isinstance(x, bool)

    def from_int(self, n):
        return Fraction(n)

    @property
    def gens(self):
        return ()

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / Fraction(x)

    def size(self, x):
        return 1

    def format(self, x):
        return grammar.format_rational(Fraction(x))

    def parse(self, text):
        return grammar.evaluate(text, {}, Fraction, self.one, self.inv)

    def eval_mod(self, x, p):
        x = Fraction(x)
        if x.denominator % p == 0:
            return None
        return x.numerator * pow(x.denominator, -1, p) % p


QQ = RationalField()


class RationalFunctionField:
    """``QQ(x1, ..., xk)`` with a fixed graded-lexicographic monomial order."""

    is_commutative = True

    def __init__(self, names):
        if isinstance(names, str):
            names = tuple(n for n in names.replace(",", " ").split() if n)
        self.names = tuple(names)
        if not self.names:
            raise ValueError("a rational function field needs at least one variable")
        self.ngens = len(self.names)
        self.ring = PolyRing(self.names)
        self.zero = RationalFunction(self, self.ring.zero, self.ring.one)
        self.one = RationalFunction(self, self.ring.one, self.ring.one)
        self._gens = tuple(RationalFunction(self, g, self.ring.one) for g in self.ring.gens)

    def __repr__(self):
        return f"QQ({', '.join(self.names)})"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and other.names == self.names

    def __hash__(self):
        return hash(("QQ(...)", self.names))

    @property
    def gens(self):
        return self._gens

    def gen(self, i):
        return self._gens[i]

    def contains(self, x):
        return isinstance(x, RationalFunction) and x.field == self

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            if x.field != self:
                raise FieldMismatch(f"{x!r} does not lie in {self!r}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, (int, Fraction)) or hasattr(x, "numerator"):
            q = to_fraction(x)
            return RationalFunction(self, self.ring.ground_new(q), self.ring.one)
        if hasattr(x, "ring") and x.ring == self.ring:
            return RationalFunction(self, x, self.ring.one)
        raise FieldMismatch(f"cannot coerce {x!r} into {self!r}")

    def from_int(self, n):
        return self(n)

    def from_polys(self, num, den=None):
        """Build ``num/den`` from ring elements, reducing to canonical form."""
        if den is None:
            den = self.ring.one
        return RationalFunction._reduced(self, num, den)

    def from_terms(self, terms):
        """Polynomial from a mapping exponent tuple -> rational coefficient."""
        data = {}
        for exps, c in terms.items():
            c = to_fraction(c)
            if c:
                data[tuple(exps)] = c
        return RationalFunction(self, self.ring.from_dict(data) if data else self.ring.zero, self.ring.one)

    def monomial(self, exponents, coeff=1):
        """``coeff * x^exponents``; negative exponents go to the denominator."""
        pos = tuple(max(e, 0) for e in exponents)
        neg = tuple(max(-e, 0) for e in exponents)
        c = to_fraction(coeff)
        num = self.ring.from_dict({pos: c}) if c else self.ring.zero
        den = self.ring.from_dict({neg: 1})
        return RationalFunction(self, num, den)

    def inv(self, x):
        return self(x).inverse()

    def size(self, x):
        return len(x.num) + len(x.den)

    def format(self, x):
        return self(x).format()

    def parse(self, text):
        names = dict(zip(self.names, self._gens))
        return grammar.evaluate(text, names, self.from_int, self.one, self.inv)

    def eval_mod(self, x, p, point):
        return x.eval_mod(point, p)


def _format_poly(poly, names):
    terms = []
    for exps, c in poly.terms():
        q = to_fraction(c)
        mono = grammar.format_monomial(names, exps)
        mag = abs(q)
        if not mono:
            body = grammar.format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{grammar.format_rational(mag)}*{mono}"
        terms.append((q < 0, body))
    return grammar.join_terms(terms)


class RationalFunction:
    """Element ``num/den`` of a :class:`RationalFunctionField`.

    Invariants: ``gcd(num, den) = 1`` and the graded-lex leading coefficient of
    ``den`` is 1, which makes the pair a canonical form.
    """

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _reduced(cls, field, num, den):
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return field.zero
        if den.is_ground:
            c = den.LC
            return cls(field, num.quo_ground(c), field.ring.one)
        g, num, den = num.cofactors(den)
        c = den.LC
        if c != 1:
            num = num.quo_ground(c)
            den = den.quo_ground(c)
        return cls(field, num, den)

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            if self.den == 1:
                s = self.num + other.num
                return RationalFunction(self.field, s, self.den) if s else self.field.zero
            return RationalFunction._reduced(self.field, self.num + other.num, self.den)
        if self.den == 1:
            return RationalFunction(self.field, self.num * other.den + other.num, other.den)
        if other.den == 1:
            return RationalFunction(self.field, self.num + other.num * self.den, self.den)
        return RationalFunction._reduced(
            self.field, self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

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
        a, b, c, d = self.num, self.den, other.num, other.den
        if b == 1 and d == 1:
            return RationalFunction(self.field, a * c, b)
        # cross-cancel so the product needs no further gcd
        if d != 1:
            _, a, d = a.cofactors(d)
        if b != 1:
            _, c, b = c.cofactors(b)
        num, den = a * c, b * d
        lc = den.LC
        if lc != 1:
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        return RationalFunction(self.field, num, den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero")
        lc = self.num.LC
        return RationalFunction(self.field, self.den.quo_ground(lc), self.num.quo_ground(lc))

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
        return RationalFunction(self.field, self.num ** k, self.den ** k)

    # comparison

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return other.field == self.field and self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den == 1 and self.num == Fraction(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.names, self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # inspection

    def is_polynomial(self):
        return self.den == 1

    def is_monomial(self):
        """True for ``c * x^a`` with ``c != 0`` and ``a`` possibly negative."""
        return len(self.num) == 1 and len(self.den) == 1

    def numerator_terms(self):
        return {tuple(e): to_fraction(c) for e, c in self.num.terms()}

    def denominator_terms(self):
        return {tuple(e): to_fraction(c) for e, c in self.den.terms()}

    def evaluate(self, point):
        """Value at a rational point; raises DivisionByZero on a pole."""
        point = [to_fraction(x) for x in point]
        num = _eval_poly(self.num, point)
        den = _eval_poly(self.den, point)
        if den == 0:
            raise DivisionByZero("pole at evaluation point")
        return num / den

    def eval_mod(self, point, p):
        """Value modulo the prime ``p`` at an integer point, or None on a pole."""
        den = _eval_poly_mod(self.den, point, p)
        if den is None or den == 0:
            return None
        num = _eval_poly_mod(self.num, point, p)
        if num is None:
            return None
        return num * pow(den, -1, p) % p

    def format(self):
        names = self.field.names
        if self.den == 1:
            return _format_poly(self.num, names)
        return f"({_format_poly(self.num, names)})/({_format_poly(self.den, names)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()!r})"


def _eval_poly(poly, point):
    total = Fraction(0)
    for exps, c in poly.terms():
        term = to_fraction(c)
        for x, e in zip(point, exps):
            if e:
                term *= x ** e
        total += term
    return total


def _eval_poly_mod(poly, point, p):
    total = 0
    for exps, c in poly.terms():
        d = int(c.denominator) % p
        if d == 0:
            return None
        term = int(c.numerator) * pow(d, -1, p)
        for x, e in zip(point, exps):
            if e:
                term = term * pow(x, e, p)
        total = (total + term) % p
    return total


class FieldAutomorphism:
    """Automorphism of a commutative field given by generator images.

    The inverse images are stored explicitly and bijectivity is checked at
    construction by composing in both directions on the generators.
    """

    def __init__(self, field, images=None, inverse_images=None, _check=True):
        self.field = field
        gens = tuple(field.gens)
        if images is None:
            images = gens
        images = tuple(field(x) for x in images)
        if len(images) != len(gens):
            raise ValueError("one image per field generator is required")
        if inverse_images is None:
            if images != gens:
                raise ValueError("inverse generator images are required for a non-identity map")
            inverse_images = gens
        inverse_images = tuple(field(x) for x in inverse_images)
        self.images = images
        self.inverse_images = inverse_images
        self._scales = _scale_factors(field, images)
        self._inv_scales = _scale_factors(field, inverse_images)
        self._powers = {}
        self._cache = {}
        if _check:
            for g, img in zip(gens, inverse_images):
                if self.apply(img) != g:
                    raise ValueError(f"automorphism check failed: sigma(sigma^-1({g})) != {g}")
            inv = self.inverse()
            for g, img in zip(gens, images):
                if inv.apply(img) != g:
                    raise ValueError(f"automorphism check failed: sigma^-1(sigma({g})) != {g}")

    @classmethod
    def identity(cls, field):
        return cls(field)

    @classmethod
    def scaling(cls, field, factors):
        """``x_i -> c_i * x_i`` for nonzero rationals ``c_i``."""
        factors = [to_fraction(c) for c in factors]
        gens = field.gens
        images = [g * c for g, c in zip(gens, factors)]
        inverse = [g * (1 / c) for g, c in zip(gens, factors)]
        return cls(field, images, inverse)

    def __eq__(self, other):
        return (
            isinstance(other, FieldAutomorphism)
            and other.field == self.field
            and other.images == self.images
        )

    def __hash__(self):
        return hash((self.field, self.images))

    def __repr__(self):
        body = ", ".join(f"{n} -> {img}" for n, img in zip(self.field.names, self.images))
        return f"FieldAutomorphism({body or 'id'})"

    def is_identity(self):
        return self.images == tuple(self.field.gens)

    def is_scaling(self):
        """True when every generator is sent to a rational multiple of itself."""
        return self._scales is not None

    def inverse(self):
        return FieldAutomorphism(self.field, self.inverse_images, self.images, _check=False)

    def compose(self, other):
        """``self o other``: apply ``other`` first."""
        images = tuple(self.apply(img) for img in other.images)
        inverse = tuple(other.inverse().apply(img) for img in self.inverse_images)
        return FieldAutomorphism(self.field, images, inverse, _check=False)

    def power(self, k):
        if k == 0:
            return FieldAutomorphism(self.field)
        if k == 1:
            return self
        if k == -1:
            return self.inverse()
        if k not in self._powers:
            base = self if k > 0 else self.inverse()
            result = base
            for _ in range(abs(k) - 1):
                result = base.compose(result)
            self._powers[k] = result
        return self._powers[k]

    def __call__(self, x):
        return self.apply(x)

    def apply(self, x):
        if isinstance(self.field, RationalField) or self.is_identity():
            return x
        x = self.field(x)
        if x.den == 1 and x.num.is_ground:
            return x
        cached = self._cache.get(x)
        if cached is not None:
            return cached
        if self._scales is not None:
            num = _scale_poly(x.num, self._scales)
            den = _scale_poly(x.den, self._scales)
            lc = den.LC
            result = RationalFunction(self.field, num.quo_ground(lc), den.quo_ground(lc))
        else:
            result = _substitute(x.num, self.images, self.field) / _substitute(x.den, self.images, self.field)
        if len(self._cache) > 4096:
            self._cache.clear()
        self._cache[x] = result
        return result


def _scale_factors(field, images):
    if isinstance(field, RationalField):
        return ()
    factors = []
    for i, img in enumerate(images):
        if img.den != 1 or len(img.num) != 1:
            return None
        (exps, c), = img.num.terms()
        unit = tuple(1 if j == i else 0 for j in range(field.ngens))
        if tuple(exps) != unit:
            return None
        factors.append(c)
    return tuple(factors)


def _scale_poly(poly, scales):
    return poly.scale_vars(scales)


def _substitute(poly, images, field):
    powers = {}
    total = field.zero
    for exps, c in poly.terms():
        term = field(to_fraction(c))
        for i, e in enumerate(exps):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                term = term * powers[key]
        total = total + term
    return total


def field_of(x):
    """The field descriptor an element belongs to."""
    if isinstance(x, (Fraction, int)) and not isinstance(x, bool):
        return QQ
    field = getattr(x, "field", None)
    if field is None:
        raise FieldMismatch(f"{x!r} is not a field element")
    return field


def field_arith(a, b=None, op="add"):
    """Dispatch a single field operation; ``b`` is ignored for unary ops."""
    field = field_of(a)
    if b is not None and op not in ("inv", "neg") and field_of(b) != field:
        raise FieldMismatch(f"{field!r} vs {field_of(b)!r}")
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return field.inv(a)
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


def product(items, one):
    return reduce(lambda x, y: x * y, items, one)


def coefficient_parts(field, c):
    """Split a coefficient into ``(negative, body)`` for printing before a monomial.

    Compound coefficients are parenthesised so the output parses back with
    the coefficient on the left.
    """
    if isinstance(c, (Fraction, int)):
        c = Fraction(c)
        return c < 0, grammar.format_rational(abs(c))
    text = field.format(c)
    if isinstance(c, RationalFunction) and c.den == 1 and len(c.num) == 1:
        negative = text.startswith("-")
        return negative, text[1:] if negative else text
    if isinstance(c, RationalFunction) and c.den != 1:
        # already "(num)/(den)", which binds correctly before "*"
        return False, text
    return False, f"({text})"
