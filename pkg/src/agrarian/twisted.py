"""Twisted group rings ``DH`` over a free abelian lattice ``H = Z^n``.

An element is a finite sum ``sum_h a_h * h``.  Multiplication is governed by
two structure functions: an action ``c: H -> Aut(D)`` and a unit-valued
cocycle ``tau``::

    h * a = c(h)(a) * h,        g * h = tau(g, h) * (g + h)

The action is given by one automorphism per basis vector.  The cocycle is
either trivial, a table on basis pairs extended biadditively, or any
callable (section changes produce the latter).
"""

import itertools
import random
from fractions import Fraction

from . import grammar
from .errors import (
    FieldMismatch,
    MissingUnit,
    RelatorNotRespected,
    TwistMismatch,
    UnknownGenerator,
    UnsupportedField,
    ZeroElement,
)
from .fields import (
    QQ,
    FieldAutomorphism,
    RationalFunctionField,
    coefficient_parts,
    field_of,
)

__all__ = [
    "LatticeGroup",
    "TwistDescriptor",
    "TwistedElement",
    "StructureCheck",
    "AgrarianMap",
    "tw_multiply",
    "check_structure_functions",
    "change_section",
    "section_change_twist",
    "support_of",
    "push_forward_word",
    "push_forward_sum",
    "check_relators",
]


class LatticeGroup:
    """``Z^n``; points are tuples of ints."""

    def __init__(self, rank):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        self.rank = rank

    @property
    def names(self):
        if self.rank == 1:
            return ("t",)
        return tuple(f"t{i + 1}" for i in range(self.rank))

    def __eq__(self, other):
        return isinstance(other, LatticeGroup) and other.rank == self.rank

    def __hash__(self):
        return hash(("Z^", self.rank))

    def __repr__(self):
        return f"LatticeGroup({self.rank})"

    def zero(self):
        return (0,) * self.rank

    def basis(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def point(self, coords):
        p = tuple(int(c) for c in coords)
        if len(p) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(p)}")
        return p

    @staticmethod
    def add(g, h):
        return tuple(a + b for a, b in zip(g, h))

    @staticmethod
    def neg(g):
        return tuple(-a for a in g)

    @staticmethod
    def sub(g, h):
        return tuple(a - b for a, b in zip(g, h))


def _power(c, k, field):
    if k >= 0:
        return c**k
    return field.inv(c) ** (-k)


class TwistDescriptor:
    """Structure functions for ``DH``.

    ``automorphisms`` holds one automorphism of ``field`` per basis vector;
    ``cocycle`` is ``None`` (trivial), an ``n x n`` table of units extended
    biadditively, or a callable ``(g, h) -> unit``.
    """

    def __init__(self, field, lattice, automorphisms=None, cocycle=None):
        if isinstance(lattice, int):
            lattice = LatticeGroup(lattice)
        self.field = field
        self.lattice = lattice
        n = lattice.rank
        if automorphisms is None:
            automorphisms = [FieldAutomorphism.identity(field)] * n
        automorphisms = list(automorphisms)
        if len(automorphisms) != n:
            raise ValueError("need one automorphism per basis vector")
        for a in automorphisms:
            if a.field != field:
                raise FieldMismatch("automorphism on a different field")
        self.automorphisms = tuple(automorphisms)
        self.table = None
        self._cocycle_fn = None
        if cocycle is None:
            pass
        elif callable(cocycle):
            self._cocycle_fn = cocycle
        else:
            table = tuple(tuple(field(x) for x in row) for row in cocycle)
            if len(table) != n or any(len(row) != n for row in table):
                raise ValueError("cocycle table must be n x n")
            if any(not x for row in table for x in row):
                raise ValueError("cocycle table entries must be units")
            if any(x != field.one for row in table for x in row):
                self.table = table
        self.trivial_action = all(a.is_identity() for a in self.automorphisms)
        self.trivial_cocycle = self.table is None and self._cocycle_fn is None
        self._action_cache = {}

    @classmethod
    def trivial(cls, field, rank):
        return cls(field, LatticeGroup(rank) if isinstance(rank, int) else rank)

    @classmethod
    def bilinear(cls, field, table, automorphisms=None):
        return cls(field, LatticeGroup(len(table)), automorphisms, table)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, TwistDescriptor)
            and other.field == self.field
            and other.lattice == self.lattice
            and other.automorphisms == self.automorphisms
            and other.table == self.table
            and other._cocycle_fn is self._cocycle_fn
        )

    def __hash__(self):
        return hash((self.field, self.lattice, self.automorphisms, self.table))

    def __repr__(self):
        return f"TwistDescriptor({self.field!r}, rank={self.lattice.rank})"

    def action(self, h):
        """The automorphism ``c(h) = sigma_1^h1 o ... o sigma_n^hn``."""
        h = tuple(h)
        auto = self._action_cache.get(h)
        if auto is None:
            auto = FieldAutomorphism.identity(self.field)
            for sigma, k in zip(self.automorphisms, h):
                if k:
                    auto = auto.compose(sigma.power(k))
            self._action_cache[h] = auto
        return auto

    def act(self, h, c):
        if self.trivial_action or not any(h):
            return c
        return self.action(h).apply(c)

    def cocycle(self, g, h):
        if self.trivial_cocycle:
            return self.field.one
        if self._cocycle_fn is not None:
            return self.field(self._cocycle_fn(tuple(g), tuple(h)))
        value = self.field.one
        for i, gi in enumerate(g):
            if not gi:
                continue
            for j, hj in enumerate(h):
                if hj and self.table[i][j] != self.field.one:
                    value = value * _power(self.table[i][j], gi * hj, self.field)
        return value

    def word_coefficient(self, h):
        """``k`` with ``t1^h1 * ... * tn^hn = k * h`` in ``DH``."""
        h = tuple(h)
        cache = self.__dict__.setdefault("_word_cache", {})
        if h not in cache:
            prod = self.one
            for i, k in enumerate(h):
                if k:
                    prod = prod * self.monomial(self.lattice.basis(i)) ** k
            cache[h] = prod.terms[h]
        return cache[h]

    # element constructors

    def element(self, terms):
        return TwistedElement(self, {tuple(h): self.field(c) for h, c in terms.items()})

    def monomial(self, h, coeff=None):
        c = self.field.one if coeff is None else self.field(coeff)
        return TwistedElement(self, {tuple(h): c})

    def constant(self, c):
        return self.monomial(self.lattice.zero(), c)

    @property
    def zero(self):
        return TwistedElement(self, {})

    @property
    def one(self):
        return self.constant(self.field.one)

    def parse(self, text):
        names = {}
        for name, g in zip(self.field.names, self.field.gens):
            names[name] = self.constant(g)
        for i, name in enumerate(self.lattice.names):
            names[name] = self.monomial(self.lattice.basis(i))
        return grammar.evaluate(
            text, names, lambda n: self.constant(n), self.one, lambda x: x.inverse()
        )

    def from_json(self, data):
        terms = {}
        for entry in data:
            h = self.lattice.point(entry["exponents"])
            terms[h] = self.field.parse(entry["coeff"])
        return TwistedElement(self, terms)


class TwistedElement:
    """Finitely supported ``H -> D`` with no zero coefficients stored."""

    __slots__ = ("twist", "terms")

    def __init__(self, twist, terms):
        self.twist = twist
        self.terms = {h: c for h, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, TwistedElement):
            if other.twist != self.twist:
                raise TwistMismatch("elements of different twisted rings")
            return other
        if isinstance(other, (int, Fraction)) or field_of_safe(other) == self.twist.field:
            return self.twist.constant(other)
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for h, c in other.terms.items():
            out[h] = out[h] + c if h in out else c
        return TwistedElement(self.twist, out)

    __radd__ = __add__

    def __neg__(self):
        return TwistedElement(self.twist, {h: -c for h, c in self.terms.items()})

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
        return tw_multiply(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return tw_multiply(other, self)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.twist.one
        for _ in range(k):
            result = result * self
        return result

    def is_monomial(self):
        return len(self.terms) == 1

    def inverse(self):
        """Inverse of a unit monomial ``a * h``."""
        if not self.is_monomial():
            raise ZeroElement("only nonzero monomials are invertible in DH")
        ((h, a),) = self.terms.items()
        tw = self.twist
        field = tw.field
        mh = LatticeGroup.neg(h)
        # (a h)(b (-h)) = a c(h)(b) tau(h,-h) * 0 = 1
        target = field.inv(a * tw.cocycle(h, mh))
        b = tw.act(mh, target)
        return TwistedElement(tw, {mh: b})

    def support(self):
        return set(self.terms)

    def format(self):
        """Text that :meth:`TwistDescriptor.parse` reads back to ``self``.

        ``t1^a*t2^b`` parses as a product of generator powers, which differs
        from the basis element ``h = (a, b)`` by a cocycle unit; the printed
        coefficient absorbs that unit.
        """
        tw = self.twist
        names = tw.lattice.names
        field = tw.field
        parts = []
        for h in sorted(self.terms, reverse=True):
            c = self.terms[h]
            if not tw.trivial_cocycle:
                c = c * field.inv(tw.word_coefficient(h))
            negative, body = coefficient_parts(field, c)
            mono = grammar.format_monomial(names, h)
            if not mono:
                parts.append((negative, body))
            elif body == "1":
                parts.append((negative, mono))
            else:
                parts.append((negative, f"{body}*{mono}"))
        return grammar.join_terms(parts)

    def to_json(self):
        field = self.twist.field
        return [
            {"exponents": list(h), "coeff": field.format(self.terms[h])}
            for h in sorted(self.terms)
        ]

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"TwistedElement({self.format()!r})"


def field_of_safe(x):
    try:
        return field_of(x)
    except FieldMismatch:
        return None


def tw_multiply(p, q):
    """Product in ``DH``: ``(a g)(b h) = a c(g)(b) tau(g, h) (g + h)``."""
    if p.twist != q.twist:
        raise TwistMismatch("elements of different twisted rings")
    tw = p.twist
    out = {}
    simple = tw.trivial_cocycle
    for g, a in p.terms.items():
        for h, b in q.terms.items():
            c = a * tw.act(g, b)
            if not simple:
                c = c * tw.cocycle(g, h)
            k = tuple(x + y for x, y in zip(g, h))
            out[k] = out[k] + c if k in out else c
    return TwistedElement(tw, out)


def support_of(p):
    return set(p.terms)


class StructureCheck:
    """Outcome of :func:`check_structure_functions`; falsy with a witness on failure."""

    def __init__(self, ok, witness=None, identity=None):
        self.ok = ok
        self.witness = witness
        self.identity = identity

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "StructureCheck(ok)"
        return f"StructureCheck(failed {self.identity} at {self.witness})"


def _same_automorphism(a, b):
    return all(a.apply(g) == b.apply(g) for g in a.field.gens)


def check_structure_functions(twist, samples=100, rng=None, radius=2):
    """Verify both structure-function identities.

    The action must be a homomorphism (``D`` is commutative, so conjugation by
    cocycle values is trivial) and the cocycle must satisfy
    ``tau(g,g') tau(g+g',g'') = c(g)(tau(g',g'')) tau(g,g'+g'')``.  Checked on
    all triples of points ``k e_i`` with ``|k| <= radius`` and on ``samples``
    random triples.
    """
    rng = rng or random.Random(0)
    lat = twist.lattice
    n = lat.rank
    axis = {lat.zero()}
    for i in range(n):
        for k in range(1, radius + 1):
            axis.add(tuple(k if j == i else 0 for j in range(n)))
            axis.add(tuple(-k if j == i else 0 for j in range(n)))
    axis = sorted(axis)
    triples = list(itertools.product(axis, repeat=3))
    for _ in range(samples):
        triples.append(
            tuple(tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(3))
        )
    add = LatticeGroup.add
    if not twist.trivial_action:
        for g, h, _ in triples:
            lhs = twist.action(g).compose(twist.action(h))
            if not _same_automorphism(lhs, twist.action(add(g, h))):
                return StructureCheck(False, (g, h), "action")
    if twist.trivial_cocycle:
        return StructureCheck(True)
    tau = twist.cocycle
    for g, h, k in triples:
        lhs = tau(g, h) * tau(add(g, h), k)
        rhs = twist.act(g, tau(h, k)) * tau(g, add(h, k))
        if lhs != rhs:
            return StructureCheck(False, (g, h, k), "cocycle")
    return StructureCheck(True)


def _unit_lookup(units, h):
    if callable(units):
        value = units(h)
    else:
        if h not in units:
            raise MissingUnit(f"no unit given for lattice point {h}")
        value = units[h]
    return value


def section_change_twist(twist, units):
    """The twist of ``DH`` written in the section ``h' = units(h)^-1 * h``.

    ``units`` must be a callable defined on all of ``H``.  The new cocycle is
    ``tau(g,h) v(g+h) / (v(g) c(g)(v(h)))``; the action is unchanged because
    ``D`` is commutative.
    """
    if not callable(units):
        raise TypeError("retwisting needs a unit function on the whole lattice")
    field = twist.field
    add = LatticeGroup.add

    def cocycle(g, h):
        num = twist.cocycle(g, h) * field(units(add(g, h)))
        den = field(units(g)) * twist.act(g, field(units(h)))
        return num * field.inv(den)

    return TwistDescriptor(field, twist.lattice, twist.automorphisms, cocycle)


def change_section(p, units, target=None):
    """Rescale each coefficient ``a_h`` to ``a_h * units(h)``.

    With ``target = section_change_twist(p.twist, units)`` this is the ring
    isomorphism between the two presentations of ``DH``; without a target the
    result stays in ``p``'s ring (plain coefficient rescaling).
    """
    field = p.twist.field
    out = {}
    for h, c in p.terms.items():
        u = field(_unit_lookup(units, h))
        if not u:
            raise ZeroElement(f"unit at {h} is zero")
        out[h] = c * u
    return TwistedElement(target if target is not None else p.twist, out)


# agrarian maps


class AgrarianMap:
    """A ring map ``ZG -> DH -> Ore(DH)`` given by generator images in ``DH``.

    ``kind`` is one of ``augmentation``, ``abelianisation`` or ``twisted``.
    Every generator image must be a unit monomial ``a * h``.
    """

    def __init__(self, presentation, twist, images, kind="twisted", check=True):
        self.presentation = presentation
        self.twist = twist
        self.kind = kind
        self.images = {}
        for name in presentation.generators:
            if name not in images:
                raise UnknownGenerator(f"no image for generator {name!r}")
            img = images[name]
            if not isinstance(img, TwistedElement):
                img = twist.parse(img) if isinstance(img, str) else twist.constant(img)
            if img.twist != twist:
                raise TwistMismatch("generator image in a different ring")
            if not img.is_monomial():
                raise ZeroElement(f"image of {name!r} is not a unit monomial")
            self.images[name] = img
        self._inverses = {name: img.inverse() for name, img in self.images.items()}
        self.field = _target_field(twist)
        if check:
            check_relators(self)

    @classmethod
    def augmentation(cls, presentation):
        twist = TwistDescriptor(QQ, LatticeGroup(0))
        return cls(presentation, twist, {g: twist.one for g in presentation.generators}, "augmentation")

    @classmethod
    def abelianisation(cls, presentation):
        from .presentations import abelianize

        lattice, gen_images = abelianize(presentation)
        twist = TwistDescriptor(QQ, lattice)
        images = {g: twist.monomial(gen_images[g]) for g in presentation.generators}
        amap = cls(presentation, twist, images, "abelianisation", check=False)
        check_relators(amap)
        return amap

    @classmethod
    def twisted_univariate(cls, presentation, base, sigma, images):
        """Images like ``{"x": "t", "y": "u"}`` in ``base[t^+-1; sigma]``."""
        twist = TwistDescriptor(base, LatticeGroup(1), [sigma])
        parsed = {g: twist.parse(v) if isinstance(v, str) else v for g, v in images.items()}
        return cls(presentation, twist, parsed, "twisted")

    @property
    def lattice(self):
        return self.twist.lattice

    def generator_image(self, name):
        try:
            return self.images[name]
        except KeyError:
            raise UnknownGenerator(name) from None

    def lattice_image(self, name):
        ((h, _),) = self.generator_image(name).terms.items()
        return h

    def to_field(self, p):
        """Embed an element of ``DH`` into the target skew field."""
        tw = self.twist
        field = self.field
        if tw.lattice.rank == 0:
            return p.terms.get((), tw.field.zero)
        if isinstance(field, RationalFunctionField):
            if not p.terms:
                return field.zero
            return sum((field.monomial(h, c) for h, c in p.terms.items()), field.zero)
        ring = field.ring
        return field(ring.from_coeffs({h[0]: c for h, c in p.terms.items()}))

    def describe(self):
        return {
            "kind": self.kind,
            "lattice": self.lattice.rank,
            "images": {g: self.images[g].format() for g in self.presentation.generators},
        }


def _target_field(twist):
    from .skew import OreField, SkewLaurentRing

    n = twist.lattice.rank
    if n == 0:
        return twist.field
    if twist.field == QQ and twist.trivial_action and twist.trivial_cocycle:
        return RationalFunctionField(twist.lattice.names)
    if n == 1 and twist.trivial_cocycle:
        return OreField(SkewLaurentRing(twist.field, twist.automorphisms[0], twist.lattice.names[0]))
    raise UnsupportedField("only commutative or univariate twisted targets are implemented")


def _letters(word):
    return word.letters if hasattr(word, "letters") else word


def push_forward_word(w, alpha):
    """Image of a free word in ``DH`` (multiplicative in the letters)."""
    names = alpha.presentation.generators
    result = alpha.twist.one
    for index, exponent in _letters(w):
        if not 0 <= index < len(names):
            raise UnknownGenerator(f"generator index {index} out of range")
        name = names[index]
        factor = alpha.images[name] if exponent > 0 else alpha._inverses[name]
        for _ in range(abs(exponent)):
            result = result * factor
    return result


def push_forward_sum(s, alpha):
    """Image of a formal sum ``{word: integer}`` in ``DH``."""
    terms = s.terms if hasattr(s, "terms") else s
    result = alpha.twist.zero
    for word, coeff in terms.items():
        result = result + push_forward_word(word, alpha) * alpha.twist.field(coeff)
    return result


def check_relators(alpha):
    """Raise :class:`RelatorNotRespected` unless every relator maps to 1."""
    one = alpha.twist.one
    for i, rel in enumerate(alpha.presentation.relators):
        if push_forward_word(rel, alpha) != one:
            raise RelatorNotRespected(f"relator {i + 1} does not map to 1")
    return True
