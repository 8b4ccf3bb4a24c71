"""Agrarian Betti numbers, chain contractions and torsion.

Torsion is ``det^c`` of ``c + gamma: C_odd -> C_even`` with rows indexed by the
odd-degree bases and columns by the even-degree bases, both in ascending
degree.  Elements of the abelianised unit group are never compared directly;
:func:`same_class` uses a battery of homomorphisms that kill commutators.
"""

from fractions import Fraction

from .errors import (
    BasisIncompatible,
    NotAcyclic,
    NotAChainMap,
    UnbasedComplex,
    UnsupportedField,
)
from .fields import QQ, RationalFunction, RationalFunctionField, field_of
from .linalg import Matrix, dieudonne_det_canonical, rank, solve_left
from .presentations import GroupRing
from .skew import OreField, OreFraction
from .twisted import LatticeGroup

__all__ = [
    "BettiReport",
    "ChainContraction",
    "TorsionValue",
    "betti_numbers",
    "chain_contraction",
    "torsion",
    "torsion_normal_form",
    "normal_form",
    "same_class",
    "detector_images",
    "sequence_additivity_check",
    "lattice_of",
]

INDETERMINACIES = ("exact", "sign", "signAndTranslation")


class BettiReport:
    def __init__(self, per_degree, ranks):
        self.per_degree = dict(per_degree)
        self.ranks = dict(ranks)
        self.acyclic = all(b == 0 for b in self.per_degree.values())
        self.euler_characteristic = sum((-1) ** n * r for n, r in self.ranks.items())

    def nonzero(self):
        return {n: b for n, b in self.per_degree.items() if b}

    def to_json(self):
        return {
            "perDegree": {str(n): b for n, b in sorted(self.per_degree.items())},
            "acyclic": self.acyclic,
            "eulerCharacteristic": self.euler_characteristic,
        }

    def __repr__(self):
        return f"BettiReport({self.per_degree}, acyclic={self.acyclic})"


def _require_field(C):
    if isinstance(C.field, GroupRing):
        raise UnsupportedField("specialise the complex to a field first")


def betti_numbers(C, token=None):
    """``b_n = rank C_n - rank d_n - rank d_{n+1}`` over the coefficient field."""
    _require_field(C)
    C.check()
    drank = {}
    for n in range(C.lo + 1, C.hi + 1):
        drank[n] = rank(C.d(n), token)
    per = {}
    for n in C.degrees:
        b = C.rank(n) - drank.get(n, 0) - drank.get(n + 1, 0)
        assert 0 <= b <= C.rank(n)
        per[n] = b
    return BettiReport(per, C.ranks)


class ChainContraction:
    """Maps ``gamma_n: C_n -> C_{n+1}`` with ``d_n gamma_{n-1} + gamma_n d_{n+1} = 1``."""

    def __init__(self, complex_, maps):
        self.complex = complex_
        self.maps = dict(maps)

    def gamma(self, n):
        C = self.complex
        M = self.maps.get(n)
        if M is None:
            return Matrix.zeros(C.field, C.rank(n), C.rank(n + 1))
        return M

    def verify(self):
        C = self.complex
        for n in C.degrees:
            r = C.rank(n)
            if not r:
                continue
            total = Matrix.zeros(C.field, r, r)
            if C.rank(n - 1):
                total = total + C.d(n) * self.gamma(n - 1)
            if C.rank(n + 1):
                total = total + self.gamma(n) * C.d(n + 1)
            if not total == Matrix.identity(C.field, r):
                return False
        return True


def _random_scalar(field, rng):
    c = rng.choice([-3, -2, -1, 1, 2, 3])
    x = field.from_int(c)
    gens = list(field.gens)
    if gens and rng.random() < 0.5:
        x = x * rng.choice(gens)
    return x


def chain_contraction(C, rng=None, token=None):
    """A chain contraction built bottom-up; ``rng`` randomises the free choices."""
    _require_field(C)
    report = betti_numbers(C, token)
    if not report.acyclic:
        raise NotAcyclic(f"nonzero Betti numbers {report.nonzero()}", report)
    field = C.field
    maps = {}
    for n in C.degrees:
        r = C.rank(n)
        if n == C.hi or r == 0 or C.rank(n + 1) == 0:
            continue
        lower = C.d(n) * maps[n - 1] if (n - 1 in maps and C.rank(n - 1)) else None
        target = Matrix.identity(field, r)
        if lower is not None:
            target = target - lower
        D = C.d(n + 1)
        free = None
        if rng is not None:
            k = C.rank(n + 1) - rank(D, token)
            if k:
                free = Matrix(
                    field,
                    [[_random_scalar(field, rng) for _ in range(k)] for _ in range(r)],
                    r,
                    k,
                )
        X = solve_left(D, target, token, free=free)
        if X is None:
            raise NotAcyclic(f"no contraction in degree {n}", report)
        maps[n] = X
    gamma = ChainContraction(C, maps)
    assert gamma.verify(), "chain contraction identity failed"
    return gamma


class TorsionValue:
    """A nonzero torsion representative with its declared indeterminacy."""

    def __init__(self, representative, indeterminacy="sign", lattice=None):
        if indeterminacy not in INDETERMINACIES:
            raise ValueError(f"unknown indeterminacy {indeterminacy!r}")
        self.representative = representative
        self.indeterminacy = indeterminacy
        self.lattice = lattice if lattice is not None else lattice_of(field_of(representative))

    @property
    def field(self):
        return field_of(self.representative)

    def to_json(self):
        return {
            "representative": self.field.format(self.representative),
            "indeterminacy": self.indeterminacy,
            "lattice": self.lattice.rank,
        }

    def same_as(self, other):
        level = max(
            INDETERMINACIES.index(self.indeterminacy), INDETERMINACIES.index(other.indeterminacy)
        )
        return same_class(self.representative, other.representative, INDETERMINACIES[level])

    def __repr__(self):
        return f"TorsionValue({self.field.format(self.representative)!r}, {self.indeterminacy})"


def lattice_of(field):
    if field == QQ:
        return LatticeGroup(0)
    if isinstance(field, RationalFunctionField):
        return LatticeGroup(len(field.names))
    if isinstance(field, OreField):
        return LatticeGroup(1)
    raise UnsupportedField(f"no lattice attached to {field!r}")


def torsion_matrix(C, gamma):
    """The square matrix of ``c + gamma`` from odd to even degrees."""
    field = C.field
    odd = [n for n in C.degrees if n % 2 and C.rank(n)]
    even = [n for n in C.degrees if n % 2 == 0 and C.rank(n)]
    col_sizes = [C.rank(n) for n in even]
    grid = []
    for n in odd:
        row = []
        for m in even:
            if m == n - 1:
                row.append(C.d(n))
            elif m == n + 1:
                row.append(gamma.gamma(n))
            else:
                row.append(None)
        grid.append(row)
    return Matrix.blocks(field, grid, [C.rank(n) for n in odd], col_sizes)


def torsion(C, contraction=None, rng=None, token=None):
    """Torsion of a based acyclic complex, well defined up to sign."""
    _require_field(C)
    if not getattr(C, "based", True):
        raise UnbasedComplex("torsion needs preferred bases")
    gamma = contraction or chain_contraction(C, rng, token)
    odd = sum(C.rank(n) for n in C.degrees if n % 2)
    even = sum(C.rank(n) for n in C.degrees if n % 2 == 0)
    if odd != even:
        raise NotAcyclic("odd and even ranks differ")
    if odd == 0:
        rep = C.field.one
    else:
        rep = dieudonne_det_canonical(torsion_matrix(C, gamma), token)
    return TorsionValue(rep, "sign", lattice_of(C.field))


# normal forms and detectors


def _strip_monomial(poly):
    """Divide out the largest monomial factor."""
    exps = list(poly.keys())
    low = tuple(min(col) for col in zip(*exps))
    if not any(low):
        return poly
    shifted = {tuple(a - b for a, b in zip(m, low)): c for m, c in poly.terms()}
    return poly.ring.from_dict(shifted)


def _rf_normal_form(x):
    field = x.field
    num, den = x.num, x.den
    num = _strip_monomial(num)
    den = _strip_monomial(den)
    if num.LC < 0:
        num = -num
    den = den.monic()
    return field.from_polys(num, den)


def _ore_normal_form(x):
    field = x.field
    num = x.num.shift(-x.num.low())
    den = x.den.shift(-x.den.low())
    y = OreFraction(field, num, den)
    lc = y.num.lc()
    negative = lc < 0 if isinstance(lc, (int, Fraction)) else lc.num.LC < 0
    return -y if negative else y


def normal_form(x):
    """Representative modulo sign and unit monomials (translations)."""
    if not x:
        raise ValueError("normal form of zero")
    field = field_of(x)
    if field == QQ:
        return abs(Fraction(x))
    if isinstance(x, RationalFunction):
        return _rf_normal_form(x)
    if isinstance(x, OreFraction):
        return _ore_normal_form(x)
    raise UnsupportedField(f"no normal form over {field!r}")


def torsion_normal_form(v):
    rep = normal_form(v.representative)
    return TorsionValue(rep, "signAndTranslation", v.lattice)


def _val_deg(c):
    """Per-variable valuation and degree of a nonzero base coefficient."""
    if isinstance(c, (int, Fraction)):
        return ()
    out = []
    nvars = len(c.field.names)
    for i in range(nvars):
        nexp = [m[i] for m in c.num.keys()]
        dexp = [m[i] for m in c.den.keys()]
        out.append(min(nexp) - min(dexp))
        out.append(max(nexp) - max(dexp))
    return tuple(out)


def detector_images(x, modulo_translation=False):
    """Images of a nonzero twisted fraction under the homomorphism battery.

    Newton-polytope endpoints (the polytope homomorphism) and, when the twist
    scales the base variables, valuations and degrees of the leading and
    trailing coefficients; all of these kill commutators.
    """
    num, den = x.num, x.den
    if modulo_translation:
        images = [num.span() - den.span()]
    else:
        images = [num.low() - den.low(), num.degree() - den.degree()]
    if x.field.ring.sigma.is_scaling():
        for part in (lambda p: p.lc(), lambda p: p.tc()):
            a, b = _val_deg(part(num)), _val_deg(part(den))
            images.extend(p - q for p, q in zip(a, b))
    return tuple(images)


def same_class(x, y, indeterminacy="exact"):
    """Equality in the abelianised units, as far as the battery can tell."""
    if not x or not y:
        return not x and not y
    field = field_of(x)
    if field_of(y) != field:
        return False
    if isinstance(field, OreField) and not field.is_commutative:
        trans = indeterminacy == "signAndTranslation"
        return detector_images(x, trans) == detector_images(y, trans)
    if indeterminacy == "exact":
        return x == y
    if indeterminacy == "sign":
        return x == y or x == -y
    return normal_form(x) == normal_form(y)


def sequence_additivity_check(sub, middle, quotient, inclusion, projection, rng=None):
    """Check ``tau(middle) = tau(sub) tau(quotient)`` for a short exact sequence.

    The middle basis must be compatible: stacking the inclusion matrix over a
    lift of the quotient basis gives a change of basis of trivial class.
    """
    field = middle.field
    for n in middle.degrees:
        i_n = inclusion.f(n)
        p_n = projection.f(n)
        r, a, b = middle.rank(n), sub.rank(n), quotient.rank(n)
        if a + b != r:
            raise NotAChainMap(f"ranks do not add up in degree {n}")
        if r == 0:
            continue
        if a and b and not (i_n * p_n).is_zero():
            raise NotAChainMap(f"sequence not exact in degree {n}")
        if b:
            lift = solve_left(p_n, Matrix.identity(field, b))
            if lift is None:
                raise NotAChainMap(f"projection not surjective in degree {n}")
        else:
            lift = Matrix.zeros(field, 0, r)
        stacked = Matrix(field, list(i_n.entries) + list(lift.entries), r, r)
        change = dieudonne_det_canonical(stacked)
        if not change or not same_class(change, field.one, "sign"):
            raise BasisIncompatible(f"middle basis not compatible in degree {n}")
    t_mid = torsion(middle, rng=rng)
    t_sub = torsion(sub, rng=rng)
    t_quo = torsion(quotient, rng=rng)
    return same_class(t_mid.representative, t_sub.representative * t_quo.representative, "sign")
