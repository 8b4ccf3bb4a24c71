"""Integral polytopes, Minkowski arithmetic and the polytope group.

Hulls are exact: rank 1 and 2 use direct algorithms, higher ranks filter
extreme points with an exact (``Fraction``) linear-programming test.  Faces,
dual cones and markings are restricted to rank <= 3.
"""

import itertools
import math
import os
import tempfile
from fractions import Fraction

from .errors import (
    EmptyInput,
    LatticeMismatch,
    NotAVertex,
    RankTooLargeForFaces,
    ZeroCharacter,
    ZeroElement,
)
from .twisted import LatticeGroup

__all__ = [
    "IntegralPolytope",
    "PolytopeDifference",
    "MarkedPolytope",
    "Dual",
    "convex_hull",
    "minkowski_sum",
    "difference_equal",
    "phi_face",
    "vertex_dual_cone",
    "vertex_duals",
    "marked_membership",
    "newton_polytope",
    "polytope_hom",
    "reduce_difference",
    "minkowski_difference",
    "in_hull",
    "polytope_svg",
    "write_svg",
]

MAX_FACE_RANK = 3


def _rank_of(lattice):
    return lattice.rank if isinstance(lattice, LatticeGroup) else int(lattice)


class IntegralPolytope:
    """Convex hull of lattice points; ``vertices`` are the sorted extreme points."""

    __slots__ = ("rank", "vertices")

    def __init__(self, rank, vertices, _trusted=False):
        self.rank = _rank_of(rank)
        if _trusted:
            self.vertices = tuple(vertices)
        else:
            self.vertices = convex_hull(vertices, self.rank).vertices
        if not self.vertices:
            raise EmptyInput("a polytope needs at least one point")

    @classmethod
    def point(cls, p):
        p = tuple(p)
        return cls(len(p), [p], _trusted=True)

    @classmethod
    def origin(cls, rank):
        return cls.point((0,) * _rank_of(rank))

    @property
    def lattice(self):
        return LatticeGroup(self.rank)

    def __eq__(self, other):
        return (
            isinstance(other, IntegralPolytope)
            and other.rank == self.rank
            and other.vertices == self.vertices
        )

    def __hash__(self):
        return hash((self.rank, self.vertices))

    def __add__(self, other):
        return minkowski_sum(self, other)

    def translate(self, v):
        v = tuple(v)
        return IntegralPolytope(
            self.rank, sorted(tuple(a + b for a, b in zip(p, v)) for p in self.vertices), True
        )

    def negate(self):
        return IntegralPolytope(self.rank, sorted(tuple(-a for a in p) for p in self.vertices), True)

    def min_vertex(self):
        return self.vertices[0]

    def normalised(self):
        """Translate so the lexicographically smallest vertex is the origin."""
        return self.translate(tuple(-a for a in self.min_vertex()))

    def is_point(self):
        return len(self.vertices) == 1

    def dimension(self):
        base = self.vertices[0]
        rows = [[Fraction(a - b) for a, b in zip(p, base)] for p in self.vertices[1:]]
        return _rational_rank(rows)

    def to_json(self):
        return {"lattice": self.rank, "vertices": [list(v) for v in self.vertices]}

    @classmethod
    def from_json(cls, data):
        verts = [tuple(int(x) for x in v) for v in data["vertices"]]
        return cls(int(data["lattice"]), verts)

    def __repr__(self):
        return f"IntegralPolytope({self.rank}, {list(self.vertices)})"


def _rational_rank(rows):
    rows = [list(r) for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][j]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][j]:
                f = rows[i][j] / rows[r][j]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


# hulls


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return sorted(set(lower[:-1] + upper[:-1]))


def in_hull(p, points):
    """Exact test whether ``p`` lies in the convex hull of ``points``."""
    points = list(points)
    if not points:
        return False
    if tuple(p) in set(map(tuple, points)):
        return True
    d = len(p)
    for k in range(d):
        if p[k] < min(q[k] for q in points) or p[k] > max(q[k] for q in points):
            return False
    # phase-one simplex: sum_j l_j q_j = p, sum_j l_j = 1, l >= 0
    rows = [[q[k] for q in points] + [p[k]] for k in range(d)]
    rows.append([1] * len(points) + [1])
    return _feasible(rows, len(points))


def _primitive(row):
    g = 0
    for a in row:
        if a:
            g = math.gcd(g, a)
            if g == 1:
                return row
    return [a // g for a in row] if g > 1 else row


def _feasible(rows, nvars):
    """Feasibility of ``A x = b, x >= 0`` for an integer system.

    Phase-one simplex on an integer tableau: rows are only ever scaled by
    positive integers and divided by their content, so no fractions appear.
    """
    m = len(rows)
    T = []
    for i, row in enumerate(rows):
        row = [int(a) for a in row]
        if row[-1] < 0:
            row = [-a for a in row]
        T.append(row[:nvars] + [int(i == k) for k in range(m)] + [row[-1]])
    ncols = nvars + m
    basis = [nvars + i for i in range(m)]
    # objective row: sum of constraint rows, artificial columns cleared
    obj = [sum(row[j] for row in T) for j in range(ncols + 1)]
    for j in range(nvars, ncols):
        obj[j] = 0
    steps = 0
    while True:
        steps += 1
        candidates = [j for j in range(ncols) if obj[j] > 0 and j not in basis]
        if not candidates:
            break
        if steps < 50:
            enter = max(candidates, key=lambda j: obj[j])
        else:
            enter = candidates[0]  # Bland's rule cannot cycle
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                if best is None:
                    best = i
                    continue
                # compare T[i][-1] / a with T[best][-1] / T[best][enter]
                lhs = T[i][-1] * T[best][enter]
                rhs = T[best][-1] * a
                if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                    best = i
        if best is None:
            break
        pivot_row = T[best]
        piv = pivot_row[enter]
        for k in range(m):
            f = T[k][enter]
            if k != best and f:
                T[k] = _primitive([piv * a - f * b for a, b in zip(T[k], pivot_row)])
        f = obj[enter]
        obj = _primitive([piv * a - f * b for a, b in zip(obj, pivot_row)])
        basis[best] = enter
    return obj[-1] == 0


def convex_hull(points, rank=None):
    """Extreme points of the hull of a nonempty set of lattice points."""
    pts = sorted(set(tuple(int(a) for a in p) for p in points))
    if not pts:
        raise EmptyInput("convex hull of an empty set")
    n = len(pts[0]) if rank is None else _rank_of(rank)
    if any(len(p) != n for p in pts):
        raise LatticeMismatch("points of different ranks")
    if n == 0 or len(pts) == 1:
        verts = pts[:1]
    elif n == 1:
        verts = sorted({pts[0], pts[-1]})
    elif n == 2:
        verts = _hull_2d(pts)
    else:
        verts = _hull_nd(pts, n)
    return IntegralPolytope(n, verts, _trusted=True)


def _probe_directions(n):
    box = range(-2, 3) if n <= 3 else range(-1, 2)
    return [d for d in itertools.product(box, repeat=n) if any(d)]


def _hull_nd(pts, n):
    """Extreme points in rank >= 3.

    Unique minimisers of probe directions are certainly vertices; every other
    point is first tested against those (a small LP) and only falls back to
    the full set when it lies outside their hull.
    """
    sure = set()
    for d in _probe_directions(n):
        values = [sum(a * b for a, b in zip(d, p)) for p in pts]
        m = min(values)
        hits = [p for p, v in zip(pts, values) if v == m]
        if len(hits) == 1:
            sure.add(hits[0])
    known = sorted(sure)
    verts = []
    for i, p in enumerate(pts):
        if p in sure:
            verts.append(p)
        elif known and in_hull(p, known):
            continue
        elif not in_hull(p, pts[:i] + pts[i + 1 :]):
            verts.append(p)
    return verts


def minkowski_sum(P, Q):
    if P.rank != Q.rank:
        raise LatticeMismatch(f"ranks {P.rank} and {Q.rank}")
    if P.is_point():
        return Q.translate(P.vertices[0])
    if Q.is_point():
        return P.translate(Q.vertices[0])
    sums = [tuple(a + b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices]
    return convex_hull(sums, P.rank)


def contains(P, x):
    return in_hull(tuple(x), P.vertices)


# polytope group


class PolytopeDifference:
    """Formal difference ``plus - minus`` in the polytope group."""

    __slots__ = ("plus", "minus")

    def __init__(self, plus, minus=None):
        if minus is None:
            minus = IntegralPolytope.origin(plus.rank)
        if plus.rank != minus.rank:
            raise LatticeMismatch("components of different ranks")
        self.plus = plus
        self.minus = minus

    @property
    def rank(self):
        return self.plus.rank

    @classmethod
    def zero(cls, rank):
        o = IntegralPolytope.origin(rank)
        return cls(o, o)

    def __add__(self, other):
        return PolytopeDifference(self.plus + other.plus, self.minus + other.minus)

    def __neg__(self):
        return PolytopeDifference(self.minus, self.plus)

    def __sub__(self, other):
        return self + (-other)

    def equals(self, other, modulo_translation=False):
        return difference_equal(self, other, modulo_translation)

    __hash__ = None

    def __eq__(self, other):
        return isinstance(other, PolytopeDifference) and difference_equal(self, other)

    def to_json(self, modulo_translation=False):
        plus, minus = self.plus, self.minus
        if modulo_translation:
            plus, minus = plus.normalised(), minus.normalised()
        return {"plus": plus.to_json(), "minus": minus.to_json()}

    @classmethod
    def from_json(cls, data):
        return cls(IntegralPolytope.from_json(data["plus"]), IntegralPolytope.from_json(data["minus"]))

    def __repr__(self):
        return f"PolytopeDifference({list(self.plus.vertices)} - {list(self.minus.vertices)})"


def difference_equal(x, y, modulo_translation=False):
    """``x == y`` in the polytope group (or its quotient by translations)."""
    if x.rank != y.rank:
        raise LatticeMismatch("differences of different ranks")
    a = x.plus + y.minus
    b = y.plus + x.minus
    if modulo_translation:
        return a.normalised() == b.normalised()
    return a == b


def minkowski_difference(P, Q):
    """``R`` with ``R + Q = P`` if one exists, else ``None``."""
    if P.rank != Q.rank:
        raise LatticeMismatch("ranks differ")
    if Q.is_point():
        return P.translate(tuple(-a for a in Q.vertices[0]))
    if P.rank == 1:
        lo = P.vertices[0][0] - Q.vertices[0][0]
        hi = P.vertices[-1][0] - Q.vertices[-1][0]
        if hi < lo:
            return None
        return convex_hull([(lo,), (hi,)], 1)
    candidates = {tuple(a - b for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    good = [
        c
        for c in candidates
        if all(in_hull(tuple(a + b for a, b in zip(c, q)), P.vertices) for q in Q.vertices)
    ]
    if not good:
        return None
    R = convex_hull(good, P.rank)
    return R if R + Q == P else None


def reduce_difference(x):
    """The polytope ``R`` with ``x = R`` in the polytope group, or ``None``."""
    return minkowski_difference(x.plus, x.minus)


# faces, duals, markings


def _as_character(phi, rank):
    phi = tuple(Fraction(a) for a in phi)
    if len(phi) != rank:
        raise LatticeMismatch(f"character has {len(phi)} coordinates, lattice rank {rank}")
    return phi


def _pair(phi, p):
    return sum(a * b for a, b in zip(phi, p))


def phi_face(P, phi):
    """Vertices of ``P`` on which ``phi`` attains its minimum."""
    phi = _as_character(phi, P.rank)
    values = [_pair(phi, v) for v in P.vertices]
    m = min(values)
    return IntegralPolytope(P.rank, [v for v, val in zip(P.vertices, values) if val == m], True)


class Dual:
    """A connected component of ``{phi != 0 : F_phi(P) = {v}}``.

    Described by strict inequalities ``phi . w > 0``.  For a point polytope
    in rank 1 the two components are ``phi > 0`` and ``phi < 0``.
    """

    def __init__(self, rank, vertex, normals):
        self.rank = rank
        self.vertex = vertex
        self.normals = tuple(normals)

    def contains(self, phi):
        phi = tuple(Fraction(a) for a in phi)
        if not any(phi):
            return False
        return all(_pair(phi, w) > 0 for w in self.normals)

    def to_json(self):
        return {"vertex": list(self.vertex), "inequalities": [list(w) for w in self.normals]}

    def __repr__(self):
        return f"Dual(vertex={self.vertex}, normals={list(self.normals)})"


def _check_face_rank(P):
    if P.rank > MAX_FACE_RANK:
        raise RankTooLargeForFaces(f"faces are implemented up to rank {MAX_FACE_RANK}")


def vertex_dual_cone(P, v):
    """Strict inequalities ``phi . (w - v) > 0`` over the other vertices ``w``."""
    _check_face_rank(P)
    v = tuple(v)
    if v not in P.vertices:
        raise NotAVertex(f"{v} is not a vertex")
    normals = [tuple(a - b for a, b in zip(w, v)) for w in P.vertices if w != v]
    return normals


def vertex_duals(P, v):
    """The duals (connected components) of the vertex ``v``."""
    normals = vertex_dual_cone(P, v)
    v = tuple(v)
    if normals:
        return [Dual(P.rank, v, normals)]
    if P.rank == 0:
        return []
    if P.rank == 1:
        return [Dual(1, v, [(1,)]), Dual(1, v, [(-1,)])]
    return [Dual(P.rank, v, [])]


class MarkedPolytope:
    """A polytope with some vertex duals marked.

    ``marked`` is a set of ``(vertex_index, dual_index)`` pairs.
    """

    def __init__(self, polytope, marked=()):
        self.polytope = polytope
        pairs = set()
        for m in marked:
            if isinstance(m, int):
                if not 0 <= m < len(polytope.vertices):
                    raise NotAVertex(f"vertex index {m} out of range")
                count = len(vertex_duals(polytope, polytope.vertices[m]))
                pairs.update((m, k) for k in range(count))
            else:
                i, k = m
                if not 0 <= i < len(polytope.vertices):
                    raise NotAVertex(f"vertex index {i} out of range")
                if not 0 <= k < len(vertex_duals(polytope, polytope.vertices[i])):
                    raise NotAVertex(f"vertex {i} has no dual {k}")
                pairs.add((i, k))
        self.marked = frozenset(pairs)

    def marked_vertices(self):
        return sorted({i for i, _ in self.marked})

    def to_json(self):
        out = []
        for i in sorted({i for i, _ in self.marked}):
            count = len(vertex_duals(self.polytope, self.polytope.vertices[i]))
            ks = sorted(k for j, k in self.marked if j == i)
            if len(ks) == count:
                out.append(i)
            else:
                out.extend([i, k] for k in ks)
        return {"polytope": self.polytope.to_json(), "marked": out}

    @classmethod
    def from_json(cls, data):
        P = IntegralPolytope.from_json(data["polytope"])
        marked = [m if isinstance(m, int) else tuple(m) for m in data.get("marked", [])]
        return cls(P, marked)


def marked_membership(M, phi):
    """True iff ``F_phi`` is a single vertex and ``phi`` lies in a marked dual."""
    P = M.polytope
    _check_face_rank(P)
    phi = _as_character(phi, P.rank)
    if not any(phi):
        raise ZeroCharacter("the zero character is excluded")
    face = phi_face(P, phi)
    if not face.is_point():
        return False
    v = face.vertices[0]
    i = P.vertices.index(v)
    for k, dual in enumerate(vertex_duals(P, v)):
        if dual.contains(phi):
            return (i, k) in M.marked
    return False


# Newton polytopes and the polytope homomorphism


def _support(x):
    """Lattice support and rank for the polynomial-like types we know."""
    from .fields import RationalFunction
    from .skew import SkewLaurentPolynomial
    from .twisted import TwistedElement

    if isinstance(x, TwistedElement):
        return x.twist.lattice.rank, list(x.terms)
    if isinstance(x, SkewLaurentPolynomial):
        return 1, [(k,) for k in x.coeffs]
    if isinstance(x, RationalFunction):
        if x.den != 1:
            raise TypeError("Newton polytope of a non-polynomial rational function")
        return len(x.field.names), [tuple(m) for m in x.num.keys()]
    raise TypeError(f"no Newton polytope for {type(x).__name__}")


def newton_polytope(p):
    """Convex hull of the support of a nonzero polynomial-like element."""
    if not p:
        raise ZeroElement("Newton polytope of zero")
    rank, supp = _support(p)
    return convex_hull(supp, rank)


def polytope_hom(x):
    """``p q^-1 -> P(p) - P(q)`` for nonzero field elements."""
    from .fields import RationalFunction
    from .skew import OreFraction

    if not x:
        raise ZeroElement("polytope of zero")
    if isinstance(x, OreFraction):
        return PolytopeDifference(newton_polytope(x.num), newton_polytope(x.den))
    if isinstance(x, RationalFunction):
        n = len(x.field.names)
        plus = convex_hull([tuple(m) for m in x.num.keys()], n)
        minus = convex_hull([tuple(m) for m in x.den.keys()], n)
        return PolytopeDifference(plus, minus)
    if isinstance(x, (int, Fraction)):
        return PolytopeDifference.zero(0)
    rank, supp = _support(x)
    return PolytopeDifference(convex_hull(supp, rank))


# pictures


def polytope_svg(P, marked=None, scale=40, grid=True):
    """SVG drawing of a rank <= 2 polytope (rank 1 is drawn on a line)."""
    if P.rank > 2:
        raise RankTooLargeForFaces("SVG output is available up to rank 2")
    pts = [tuple(v) + (0,) * (2 - P.rank) for v in P.vertices] or [(0, 0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1
    width = (x1 - x0) * scale
    height = (y1 - y0) * scale

    def sx(x):
        return (x - x0) * scale

    def sy(y):
        return (y1 - y) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    if grid:
        for x in range(x0, x1 + 1):
            for y in range(y0, y1 + 1):
                out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="1.5" fill="#bbb"/>')
    if len(pts) >= 3:
        cx = sum(p[0] for p in pts) / len(pts)
        cy = sum(p[1] for p in pts) / len(pts)
        ring = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
        path = " ".join(f"{sx(x)},{sy(y)}" for x, y in ring)
        out.append(f'<polygon points="{path}" fill="#cde" stroke="#246" stroke-width="2"/>')
    elif len(pts) == 2:
        (ax, ay), (bx, by) = pts
        out.append(
            f'<line x1="{sx(ax)}" y1="{sy(ay)}" x2="{sx(bx)}" y2="{sy(by)}" '
            'stroke="#246" stroke-width="3"/>'
        )
    marked = set(marked or ())
    for i, (x, y) in enumerate(pts):
        fill = "#c22" if i in marked else "#246"
        out.append(f'<circle cx="{sx(x)}" cy="{sy(y)}" r="5" fill="{fill}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(path, text):
    """Write atomically so an interrupted run leaves no partial file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".svg.tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
