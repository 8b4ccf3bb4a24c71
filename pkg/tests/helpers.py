"""Random generators shared by the test modules."""

import json
from importlib import resources

from agrarian.complexes import ChainComplex, ChainMap
from agrarian.fields import QQ, FieldAutomorphism, RationalFunctionField
from agrarian.linalg import Matrix
from agrarian.skew import OreField, SkewLaurentRing
from agrarian.presentations import parse_presentation

# acceptance timings, filled in by the tests and printed in the summary
TIMINGS = {}

T2 = RationalFunctionField(("t1", "t2"))
U = RationalFunctionField("u")
TWISTED = OreField(SkewLaurentRing(U, FieldAutomorphism.scaling(U, [2])))


def corpus_dir():
    return resources.files("agrarian") / "data" / "corpus"


def schema(name):
    path = resources.files("agrarian") / "data" / "schemas" / name
    return json.loads(path.read_text())


def manifest():
    return json.loads((corpus_dir() / "manifest.json").read_text())


def corpus_text(name):
    return (corpus_dir() / f"{name}.pres").read_text()


def corpus_presentation(name):
    return parse_presentation(corpus_text(name))


# field elements


def rand_poly(rng, field=T2, terms=3, degree=2):
    """Small polynomial with integer coefficients (possibly zero)."""
    out = field.zero
    for _ in range(rng.randint(0, terms)):
        exps = [rng.randint(0, degree) for _ in field.names]
        out = out + field.monomial(exps, rng.randint(-3, 3))
    return out


def rand_nonzero_poly(rng, field=T2, terms=3, degree=2):
    while True:
        p = rand_poly(rng, field, terms, degree)
        if p:
            return p


def rand_unit_monomial(rng, field=T2):
    """``+-`` a Laurent monomial: a trivial unit for the polytope class."""
    exps = [rng.randint(-1, 1) for _ in field.names]
    return field.monomial(exps, rng.choice([-1, 1]))


def rand_element(rng, field):
    if field == QQ:
        return QQ(rng.randint(-4, 4))
    if field == TWISTED:
        return rand_twisted(rng)
    return rand_poly(rng, field, terms=2, degree=1)


def rand_nonzero(rng, field):
    while True:
        x = rand_element(rng, field)
        if x:
            return x


def _twisted_monomial(rng):
    R = TWISTED.ring
    (u,) = U.gens
    coeff = U(rng.choice([-2, -1, 1, 2])) * u ** rng.randint(0, 1)
    return R.monomial(coeff, rng.randint(-1, 1))


def rand_twisted(rng):
    """Sparse entries over the twisted fraction field.

    Mostly zeros and monomials with a few binomials and quotients: dense
    entries make canonical determinants blow up in size.
    """
    x = rng.random()
    if x < 0.45:
        return TWISTED.zero
    if x < 0.86:
        return TWISTED(_twisted_monomial(rng))
    if x < 0.98:
        return TWISTED(_twisted_monomial(rng) + _twisted_monomial(rng))
    d = _twisted_monomial(rng) + _twisted_monomial(rng)
    return TWISTED.fraction(_twisted_monomial(rng), d) if d else TWISTED(_twisted_monomial(rng))


def rand_matrix(rng, field, n, m=None, entry=None):
    entry = entry or (lambda: rand_element(rng, field))
    m = n if m is None else m
    return Matrix(field, [[entry() for _ in range(m)] for _ in range(n)], n, m)


# complexes


def rand_basis_change(rng, field, n, steps=None):
    """An invertible matrix together with its inverse, built from row operations."""
    A = [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    B = [row[:] for row in A]
    if n < 2:
        return Matrix(field, A, n, n), Matrix(field, B, n, n)
    for _ in range(steps if steps is not None else n + 1):
        i, j = rng.sample(range(n), 2)
        c = rand_element(rng, field)
        # E = I + c e_ij: A <- E A, B <- B E^-1
        A[i] = [a + c * b for a, b in zip(A[i], A[j])]
        for row in B:
            row[j] = row[j] - row[i] * c
    return Matrix(field, A, n, n), Matrix(field, B, n, n)


def rand_complex(rng, field, length=None, acyclic=True, max_pairs=2, max_free=1):
    """A random based complex in degrees ``0..length``.

    Built as a sum of elementary pieces ``F --u--> F`` and (unless acyclic)
    free summands with zero differential, then conjugated by random basis
    changes.  Returns ``(complex, betti)`` with the Betti numbers known by
    construction.
    """
    length = rng.randint(1, 3) if length is None else length
    degrees = list(range(0, length + 1))
    pieces = {n: [] for n in degrees}  # per degree: list of (kind, index)
    pairs = []
    for n in degrees[1:]:
        for _ in range(rng.randint(0, max_pairs)):
            k = len(pairs)
            pairs.append((n, rand_nonzero(rng, field)))
            pieces[n].append(("top", k))
            pieces[n - 1].append(("bottom", k))
    betti = {n: 0 for n in degrees}
    if not acyclic:
        for n in degrees:
            b = rng.randint(0, max_free)
            betti[n] = b
            pieces[n].extend(("free", None) for _ in range(b))
    for n in degrees:
        rng.shuffle(pieces[n])
    ranks = {n: len(pieces[n]) for n in degrees}
    changes = {n: rand_basis_change(rng, field, ranks[n]) for n in degrees}
    diffs = {}
    for n in degrees[1:]:
        rows = []
        for kind, k in pieces[n]:
            row = [field.zero] * ranks[n - 1]
            if kind == "top":
                row[pieces[n - 1].index(("bottom", k))] = pairs[k][1]
            rows.append(row)
        d = Matrix(field, rows, ranks[n], ranks[n - 1])
        A, _ = changes[n]
        _, Binv = changes[n - 1]
        diffs[n] = A * d * Binv
    return ChainComplex(field, ranks, diffs), betti


def null_homotopic_map(rng, C, D):
    """``f = d h + h d`` for a random degree-raising ``h``, hence a chain map."""
    field = C.field
    lo, hi = min(C.lo, D.lo), max(C.hi, D.hi)
    h = {n: rand_matrix(rng, field, C.rank(n), D.rank(n + 1)) for n in range(lo - 1, hi + 1)}
    maps = {}
    for n in range(lo, hi + 1):
        f = Matrix.zeros(field, C.rank(n), D.rank(n))
        if C.rank(n - 1):
            f = f + C.d(n) * h[n - 1]
        if D.rank(n + 1):
            f = f + h[n] * D.d(n + 1)
        maps[n] = f
    return ChainMap(C, D, maps)


def elementary_expansion(C, k, unit, y):
    """Add a pair ``F --unit--> F`` in degrees ``k, k-1`` glued along the row ``y``.

    ``d'(k) = [[d(k), 0], [y d(k), unit]]`` keeps ``d' d' = 0`` and changes the
    torsion by the unit only.
    """
    field = C.field
    lo, hi = min(C.lo, k - 1), max(C.hi, k)
    ranks = {n: C.rank(n) + (1 if n in (k, k - 1) else 0) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        d = C.d(n)
        r, c = C.rank(n), C.rank(n - 1)
        if n == k:
            bottom = y * d if r and c else Matrix.zeros(field, 1, c)
            diffs[n] = Matrix.blocks(
                field, [[d, None], [bottom, Matrix(field, [[unit]], 1, 1)]], [r, 1], [c, 1]
            )
        elif n == k + 1:
            diffs[n] = Matrix.blocks(field, [[d, None]], [r], [c, 1])
        elif n == k - 1:
            diffs[n] = Matrix.blocks(field, [[d], [None]], [r, 1], [c])
        else:
            diffs[n] = d
    return ChainComplex(field, ranks, diffs)
