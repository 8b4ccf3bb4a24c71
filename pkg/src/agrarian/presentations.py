"""Finite presentations, free words, group-ring sums and Fox calculus.

File grammar::

    # comment
    gens: x y
    rel: x x Y Y Y

Lower-case names are generators; the upper-cased name denotes the inverse.
"""

import re

from .errors import (
    DuplicateGenerator,
    EmptyGeneratorList,
    PresentationSyntaxError,
    UnknownGenerator,
)

__all__ = [
    "FreeWord",
    "Presentation",
    "GroupRing",
    "GroupRingSum",
    "parse_presentation",
    "format_presentation",
    "abelianize",
    "exponent_matrix",
    "smith_normal_form",
    "hermite_normal_form",
    "fox_derivative",
]

_NAME = re.compile(r"[a-z][a-z0-9_]*\Z")


class FreeWord:
    """Freely reduced word; ``letters`` is a tuple of ``(index, +-1)``."""

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for index, exp in letters:
            if exp not in (1, -1):
                raise ValueError("letter exponents must be +1 or -1")
            if out and out[-1][0] == index and out[-1][1] == -exp:
                out.pop()
            else:
                out.append((index, exp))
        self.letters = tuple(out)

    @classmethod
    def generator(cls, index, exponent=1):
        return cls(((index, 1 if exponent > 0 else -1),) * abs(exponent))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and other.letters == self.letters

    def __lt__(self, other):
        return (len(self), self.letters) < (len(other), other.letters)

    def __hash__(self):
        return hash(self.letters)

    def __mul__(self, other):
        return FreeWord(self.letters + other.letters)

    def inverse(self):
        return FreeWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def exponent_sums(self, count):
        sums = [0] * count
        for i, e in self.letters:
            sums[i] += e
        return sums

    def tokens(self, names):
        return [names[i] if e > 0 else names[i].upper() for i, e in self.letters]

    def format(self, names, sep=" "):
        return sep.join(self.tokens(names)) if self.letters else "1"

    def __repr__(self):
        return f"FreeWord({self.letters!r})"


class Presentation:
    """``<generators | relators>`` with named generators."""

    def __init__(self, generators, relators=()):
        generators = tuple(generators)
        if not generators:
            raise EmptyGeneratorList("a presentation needs at least one generator")
        seen = set()
        for name in generators:
            if not _NAME.match(name):
                raise PresentationSyntaxError(f"invalid generator name {name!r}")
            if name in seen:
                raise DuplicateGenerator(f"duplicate generator {name!r}")
            seen.add(name)
        self.generators = generators
        rels = []
        for r in relators:
            w = r if isinstance(r, FreeWord) else self.word(r)
            if not w:
                raise PresentationSyntaxError("relator reduces to the empty word")
            if any(not 0 <= i < len(generators) for i, _ in w.letters):
                raise UnknownGenerator("relator uses an unknown generator")
            rels.append(w)
        self.relators = tuple(rels)

    @property
    def deficiency(self):
        return len(self.generators) - len(self.relators)

    def index(self, name):
        try:
            return self.generators.index(name)
        except ValueError:
            raise UnknownGenerator(name) from None

    def word(self, text):
        """Parse ``"x y X"`` (or a token list) into a :class:`FreeWord`."""
        tokens = text.split() if isinstance(text, str) else list(text)
        letters = []
        for tok in tokens:
            if tok in self.generators:
                letters.append((self.generators.index(tok), 1))
            elif tok.lower() in self.generators and tok == tok.lower().upper():
                letters.append((self.generators.index(tok.lower()), -1))
            else:
                raise UnknownGenerator(tok)
        return FreeWord(letters)

    def format_word(self, w, sep=" "):
        return w.format(self.generators, sep)

    def __eq__(self, other):
        return (
            isinstance(other, Presentation)
            and other.generators == self.generators
            and other.relators == self.relators
        )

    def __hash__(self):
        return hash((self.generators, self.relators))

    def __repr__(self):
        rels = ", ".join(self.format_word(r, "") for r in self.relators)
        return f"<{', '.join(self.generators)} | {rels}>"


def parse_presentation(text):
    """Parse the presentation file grammar; errors carry line and column."""
    generators = None
    gens_line = None
    raw_relators = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        key, colon, rest = stripped.partition(":")
        key = key.strip()
        if not colon or key not in ("gens", "rel"):
            raise PresentationSyntaxError("expected 'gens:' or 'rel:'", lineno, indent + 1)
        body_col = indent + len(stripped) - len(rest) + 1
        tokens = [(m.group(), body_col + m.start()) for m in re.finditer(r"\S+", rest)]
        if key == "gens":
            if generators is not None:
                raise PresentationSyntaxError("second 'gens:' line", lineno, indent + 1)
            if not tokens:
                raise EmptyGeneratorList("empty generator list", lineno, body_col)
            names = []
            for tok, col in tokens:
                if not _NAME.match(tok):
                    raise PresentationSyntaxError(f"invalid generator name {tok!r}", lineno, col)
                if tok in names:
                    raise DuplicateGenerator(f"duplicate generator {tok!r}", lineno, col)
                names.append(tok)
            generators = tuple(names)
            gens_line = lineno
        else:
            if generators is None:
                raise PresentationSyntaxError("'rel:' before 'gens:'", lineno, indent + 1)
            if not tokens:
                raise PresentationSyntaxError("empty relator", lineno, body_col)
            raw_relators.append((lineno, tokens))
    if generators is None:
        raise EmptyGeneratorList("missing 'gens:' line", gens_line or 1, 1)
    relators = []
    for lineno, tokens in raw_relators:
        letters = []
        for tok, col in tokens:
            if tok in generators:
                letters.append((generators.index(tok), 1))
            elif tok.lower() in generators and tok == tok.upper():
                letters.append((generators.index(tok.lower()), -1))
            else:
                raise PresentationSyntaxError(f"unknown letter {tok!r}", lineno, col)
        word = FreeWord(letters)
        if not word:
            raise PresentationSyntaxError("relator reduces to the empty word", lineno, tokens[0][1])
        relators.append(word)
    return Presentation(generators, relators)


def format_presentation(P):
    lines = ["gens: " + " ".join(P.generators)]
    for r in P.relators:
        lines.append("rel: " + P.format_word(r))
    return "\n".join(lines) + "\n"


# abelianisation


def exponent_matrix(P):
    """Relator-by-generator matrix of exponent sums."""
    n = len(P.generators)
    return [r.exponent_sums(n) for r in P.relators]


def smith_normal_form(M, ncols=None):
    """Return ``(U, D, V)`` with ``U M V = D`` diagonal, ``U``, ``V`` unimodular.

    Diagonal entries are non-negative and each divides the next.
    """
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if M else 0)
    D = [list(row) for row in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(a, b):
        D[a], D[b] = D[b], D[a]
        U[a], U[b] = U[b], U[a]

    def swap_cols(a, b):
        for row in D:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_row(dst, src, k):
        D[dst] = [x - k * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x - k * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in D:
            row[dst] -= k * row[src]
        for row in V:
            row[dst] -= k * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, q)
                    if D[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, q)
                    if D[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]]
            if not bad:
                break
            i, _ = bad[0]
            add_row(t, i, -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def hermite_normal_form(B):
    """Row-style Hermite normal form of an integer matrix (rows kept)."""
    A = [list(row) for row in B]
    m = len(A)
    n = len(A[0]) if A else 0
    r = 0
    for j in range(n):
        if r >= m:
            break
        while True:
            rows = [i for i in range(r, m) if A[i][j]]
            if not rows:
                break
            p = min(rows, key=lambda i: abs(A[i][j]))
            A[r], A[p] = A[p], A[r]
            done = True
            for i in range(r + 1, m):
                if A[i][j]:
                    q = A[i][j] // A[r][j]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][j]:
                        done = False
            if done:
                break
        if r < m and A[r][j]:
            if A[r][j] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][j] // A[r][j]
                A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            r += 1
    return A


def abelianize(P):
    """Free part ``H`` of the abelianisation and the images of the generators.

    The images are the columns of the Smith transform spanning the kernel,
    then brought to Hermite normal form so the choice of basis of ``H`` is
    canonical.
    """
    from .twisted import LatticeGroup

    n = len(P.generators)
    M = exponent_matrix(P)
    _, D, V = smith_normal_form(M, n)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    k = n - r
    # generator j maps to row j of V restricted to the free columns
    cols = [[V[j][c] for j in range(n)] for c in range(r, n)]
    cols = hermite_normal_form(cols)
    images = {name: tuple(cols[c][j] for c in range(k)) for j, name in enumerate(P.generators)}
    return LatticeGroup(k), images


# group ring


class GroupRing:
    """Descriptor for ``ZF`` over a presentation's generators."""

    def __init__(self, presentation):
        self.presentation = presentation
        self.zero = GroupRingSum({})
        self.one = GroupRingSum({FreeWord(): 1})

    def __eq__(self, other):
        return isinstance(other, GroupRing) and other.presentation == self.presentation

    def __hash__(self):
        return hash(("ZF", self.presentation))

    def format(self, s):
        return s.format(self.presentation.generators)


class GroupRingSum:
    """Finite integer combination of free words."""

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = {w: c for w, c in terms.items() if c}

    @classmethod
    def word(cls, w, coeff=1):
        return cls({w: coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingSum({FreeWord(): other})
        return isinstance(other, GroupRingSum) and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _coerce(self, other):
        if isinstance(other, GroupRingSum):
            return other
        if isinstance(other, int):
            return GroupRingSum({FreeWord(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingSum(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingSum({w: -c for w, c in self.terms.items()})

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
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingSum(out)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self

    def format(self, names):
        parts = []
        for w in sorted(self.terms):
            c = self.terms[w]
            body = w.format(names, "*")
            if w and abs(c) != 1:
                body = f"{abs(c)}*{body}"
            elif not w:
                body = str(abs(c))
            parts.append((c < 0, body))
        from .grammar import join_terms

        return join_terms(parts)

    def to_json(self, names):
        return [
            {"word": w.format(names) if w else "", "coeff": self.terms[w]}
            for w in sorted(self.terms)
        ]


def fox_derivative(w, g, presentation=None):
    """Fox derivative of a word with respect to a generator index (or name)."""
    if isinstance(g, str):
        if presentation is None:
            raise UnknownGenerator(g)
        g = presentation.index(g)
    if presentation is not None and not 0 <= g < len(presentation.generators):
        raise UnknownGenerator(g)
    out = {}
    prefix = []
    for index, exp in w.letters:
        if index == g:
            if exp > 0:
                key = FreeWord(prefix)
                out[key] = out.get(key, 0) + 1
            else:
                key = FreeWord(prefix + [(index, -1)])
                out[key] = out.get(key, 0) - 1
        prefix.append((index, exp))
    return GroupRingSum(out)
