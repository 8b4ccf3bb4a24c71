"""Bounded based chain complexes and chain maps.

``d(n)`` is the matrix of ``C_n -> C_{n-1}`` acting on row vectors, so it has
shape ``rank(n) x rank(n-1)`` and ``d(n+1) * d(n) = 0``.
"""

from .errors import ComplexNotChain, NotAChainMap
from .linalg import Matrix
from .presentations import GroupRing, GroupRingSum, FreeWord, fox_derivative
from .twisted import push_forward_sum

__all__ = [
    "ChainComplex",
    "ChainMap",
    "presentation_complex",
    "specialize",
    "mapping_cone",
    "suspension",
    "direct_sum",
    "elementary_complex",
    "complex_to_json",
]


class ChainComplex:
    """Complex concentrated in degrees ``lo..hi`` over ``field`` (or a group ring)."""

    def __init__(self, field, ranks, differentials=None, labels=None, check=True):
        if isinstance(ranks, dict):
            degrees = sorted(ranks)
            if degrees and degrees != list(range(degrees[0], degrees[-1] + 1)):
                raise ValueError("degrees must be contiguous")
        else:
            ranks = dict(enumerate(ranks))
            degrees = sorted(ranks)
        self.field = field
        self.ranks = {n: int(ranks[n]) for n in degrees}
        self.lo = degrees[0] if degrees else 0
        self.hi = degrees[-1] if degrees else -1
        self._d = {}
        for n, M in (differentials or {}).items():
            if n - 1 < self.lo or n > self.hi:
                if not M.is_zero():
                    raise ValueError(f"differential in degree {n} outside the complex")
                continue
            if M.shape != (self.rank(n), self.rank(n - 1)):
                raise ValueError(f"d({n}) has shape {M.shape}, expected {(self.rank(n), self.rank(n - 1))}")
            self._d[n] = M
        self.labels = {}
        for n in degrees:
            given = (labels or {}).get(n)
            self.labels[n] = list(given) if given else [f"e{n}_{i}" for i in range(self.ranks[n])]
        if check:
            self.check()

    @property
    def degrees(self):
        return list(range(self.lo, self.hi + 1))

    def rank(self, n):
        return self.ranks.get(n, 0)

    def d(self, n):
        M = self._d.get(n)
        if M is None:
            return Matrix.zeros(self.field, self.rank(n), self.rank(n - 1))
        return M

    @property
    def differentials(self):
        return {n: self.d(n) for n in range(self.lo + 1, self.hi + 1)}

    def check(self):
        """Raise :class:`ComplexNotChain` unless ``d(n+1) d(n) = 0`` everywhere."""
        for n in range(self.lo + 1, self.hi):
            if self.rank(n + 1) and self.rank(n - 1):
                if not (self.d(n + 1) * self.d(n)).is_zero():
                    raise ComplexNotChain(f"d({n + 1}) d({n}) != 0")
        return True

    def euler_characteristic(self):
        return sum((-1) ** n * r for n, r in self.ranks.items())

    def is_zero(self):
        return all(r == 0 for r in self.ranks.values())

    def __repr__(self):
        return f"ChainComplex({self.field!r}, ranks={self.ranks})"


class ChainMap:
    """Degreewise matrices ``f(n): source_n -> target_n`` commuting with ``d``."""

    def __init__(self, source, target, maps, check=True):
        self.source = source
        self.target = target
        self.maps = {}
        field = source.field
        for n in sorted(set(source.degrees) | set(target.degrees)):
            M = maps.get(n)
            if M is None:
                M = Matrix.zeros(field, source.rank(n), target.rank(n))
            if M.shape != (source.rank(n), target.rank(n)):
                raise NotAChainMap(f"f({n}) has the wrong shape")
            self.maps[n] = M
        if check:
            self.check()

    def f(self, n):
        M = self.maps.get(n)
        if M is None:
            return Matrix.zeros(self.source.field, self.source.rank(n), self.target.rank(n))
        return M

    def check(self):
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for n in range(lo + 1, hi + 1):
            lhs = self.source.d(n) * self.f(n - 1)
            rhs = self.f(n) * self.target.d(n)
            if not lhs == rhs:
                raise NotAChainMap(f"map does not commute with d in degree {n}")
        return True

    @classmethod
    def identity(cls, C):
        return cls(C, C, {n: Matrix.identity(C.field, C.rank(n)) for n in C.degrees})

    @classmethod
    def scalar(cls, C, D, c):
        """Multiplication by a central scalar ``c`` (source and target of equal shape)."""
        return cls(C, D, {n: Matrix.identity(C.field, C.rank(n)).scale_right(c) for n in C.degrees})


def presentation_complex(P):
    """Cellular complex of the presentation 2-complex over ``ZF``.

    ``d(1)`` is the column ``(s - 1)``; ``d(2)`` has one row per relator and
    one column per generator with Fox derivatives as entries.
    """
    ring = GroupRing(P)
    n = len(P.generators)
    one = ring.one
    d1 = Matrix(ring, [[GroupRingSum.word(FreeWord.generator(i)) - one] for i in range(n)], n, 1)
    d2 = Matrix(
        ring,
        [[fox_derivative(r, s) for s in range(n)] for r in P.relators],
        len(P.relators),
        n,
    )
    labels = {0: ["*"], 1: list(P.generators), 2: [f"r{k + 1}" for k in range(len(P.relators))]}
    return ChainComplex(ring, {0: 1, 1: n, 2: len(P.relators)}, {1: d1, 2: d2}, labels, check=False)


def specialize(C, alpha):
    """Push every entry through the agrarian map ``alpha``; verifies ``d d = 0``."""
    field = alpha.field

    def push(s):
        return alpha.to_field(push_forward_sum(s, alpha))

    diffs = {n: M.map(push, field) for n, M in C.differentials.items()}
    return ChainComplex(field, C.ranks, diffs, C.labels, check=True)


def suspension(C):
    """Shift degrees up by one and negate the differentials."""
    ranks = {n + 1: r for n, r in C.ranks.items()}
    diffs = {n + 1: -M for n, M in C.differentials.items()}
    labels = {n + 1: l for n, l in C.labels.items()}
    return ChainComplex(C.field, ranks, diffs, labels, check=False)


def _span(*complexes):
    lo = min(C.lo for C in complexes if C.ranks)
    hi = max(C.hi for C in complexes if C.ranks)
    return lo, hi


def direct_sum(C, D):
    """Degreewise block-diagonal sum."""
    if C.field != D.field:
        raise ValueError("direct sum of complexes over different rings")
    if not C.ranks:
        return D
    if not D.ranks:
        return C
    lo, hi = _span(C, D)
    ranks = {n: C.rank(n) + D.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        diffs[n] = Matrix.blocks(
            C.field,
            [[C.d(n), None], [None, D.d(n)]],
            [C.rank(n), D.rank(n)],
            [C.rank(n - 1), D.rank(n - 1)],
        )
    labels = {
        n: (C.labels.get(n, []) + D.labels.get(n, [])) for n in range(lo, hi + 1)
    }
    return ChainComplex(C.field, ranks, diffs, labels, check=False)


def mapping_cone(f):
    """``cone_n = C_{n-1} + D_n`` with differential ``[[-dC, f], [0, dD]]``."""
    C, D = f.source, f.target
    field = C.field
    lo = min(C.lo + 1, D.lo)
    hi = max(C.hi + 1, D.hi)
    ranks = {n: C.rank(n - 1) + D.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        diffs[n] = Matrix.blocks(
            field,
            [[-C.d(n - 1), f.f(n - 1)], [None, D.d(n)]],
            [C.rank(n - 1), D.rank(n)],
            [C.rank(n - 2), D.rank(n - 1)],
        )
    labels = {
        n: [f"s{x}" for x in C.labels.get(n - 1, [])] + D.labels.get(n, [])
        for n in range(lo, hi + 1)
    }
    return ChainComplex(field, ranks, diffs, labels, check=True)


def cone_sequence(f):
    """The maps ``D -> cone(f) -> suspension(C)`` as two :class:`ChainMap` objects."""
    C, D = f.source, f.target
    cone = mapping_cone(f)
    sigma = suspension(C)
    field = C.field
    inc, proj = {}, {}
    for n in cone.degrees:
        a, b = C.rank(n - 1), D.rank(n)
        inc[n] = Matrix.blocks(field, [[None, Matrix.identity(field, b)]], [b], [a, b])
        proj[n] = Matrix.blocks(field, [[Matrix.identity(field, a)], [None]], [a, b], [a])
    D_ext = _extend(D, cone.lo, cone.hi)
    S_ext = _extend(sigma, cone.lo, cone.hi)
    return cone, ChainMap(D_ext, cone, inc), ChainMap(cone, S_ext, proj), D_ext, S_ext


def _extend(C, lo, hi):
    """The same complex with zero modules padded out to ``lo..hi``."""
    ranks = {n: C.rank(n) for n in range(lo, hi + 1)}
    diffs = {n: C.d(n) for n in range(max(lo + 1, C.lo + 1), min(hi, C.hi) + 1)}
    labels = {n: C.labels.get(n, []) for n in range(lo, hi + 1)}
    return ChainComplex(C.field, ranks, diffs, labels, check=False)


def elementary_complex(field, degree, unit):
    """``field --unit--> field`` in degrees ``degree`` and ``degree - 1``."""
    M = Matrix(field, [[unit]], 1, 1)
    return ChainComplex(field, {degree - 1: 1, degree: 1}, {degree: M}, check=False)


def complex_to_json(C):
    field = C.field
    if isinstance(field, GroupRing):
        names = field.presentation.generators

        def entry(x):
            return x.to_json(names)

    else:

        def entry(x):
            return field.format(x)

    return {
        "degrees": C.degrees,
        "ranks": [C.rank(n) for n in C.degrees],
        "matrices": {
            str(n): [[entry(x) for x in row] for row in M.entries]
            for n, M in C.differentials.items()
        },
        "basisLabels": [C.labels[n] for n in C.degrees],
    }
