import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agrarian.errors import (
    DuplicateGenerator,
    EmptyGeneratorList,
    PresentationSyntaxError,
    UnknownGenerator,
)
from agrarian.presentations import (
    FreeWord,
    GroupRingSum,
    abelianize,
    exponent_matrix,
    format_presentation,
    fox_derivative,
    hermite_normal_form,
    parse_presentation,
    smith_normal_form,
)

from helpers import corpus_text, manifest

letters = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=8)


def test_corpus_round_trip():
    for entry in manifest()["entries"]:
        text = corpus_text(entry["name"])
        assert format_presentation(parse_presentation(text)) == text


def test_free_reduction_and_format():
    P = parse_presentation("gens: x y\nrel: x y Y x X X y\n")
    assert P.format_word(P.relators[0]) == "y"
    assert P.deficiency == 1
    P = parse_presentation("  gens: a b   # comment\n\nrel: a  B\n")
    assert format_presentation(P) == "gens: a b\nrel: a B\n"


@pytest.mark.parametrize(
    "text, line, column, exc",
    [
        ("gens: x y\nrel: x z\n", 2, 8, PresentationSyntaxError),
        ("rel: x\n", 1, 1, PresentationSyntaxError),
        ("gens: x x\n", 1, 9, DuplicateGenerator),
        ("gens:\n", 1, 6, EmptyGeneratorList),
        ("gens: x\nrel: x X\n", 2, 6, PresentationSyntaxError),
        ("gens: x\nfoo: x\n", 2, 1, PresentationSyntaxError),
        ("gens: x\ngens: y\n", 2, 1, PresentationSyntaxError),
        ("gens: 1x\n", 1, 7, PresentationSyntaxError),
    ],
)
def test_syntax_errors_carry_position(text, line, column, exc):
    with pytest.raises(exc) as info:
        parse_presentation(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unknown_generator():
    P = parse_presentation("gens: x y\n")
    with pytest.raises(UnknownGenerator):
        P.word("x q")
    with pytest.raises(UnknownGenerator):
        fox_derivative(P.word("x"), "q", P)


@settings(max_examples=80, deadline=None)
@given(letters, letters)
def test_word_group_laws(a, b):
    u, v = FreeWord(a), FreeWord(b)
    assert (u * v).inverse() == v.inverse() * u.inverse()
    assert u * u.inverse() == FreeWord()
    assert (u * v).exponent_sums(3) == [x + y for x, y in zip(u.exponent_sums(3), v.exponent_sums(3))]


@settings(max_examples=80, deadline=None)
@given(letters)
def test_fundamental_formula(a):
    # w - 1 = sum_j (dw/dx_j)(x_j - 1)
    w = FreeWord(a)
    total = GroupRingSum({})
    for j in range(3):
        x_minus_one = GroupRingSum.word(FreeWord.generator(j)) - 1
        total = total + fox_derivative(w, j) * x_minus_one
    assert total == GroupRingSum.word(w) - 1


@settings(max_examples=60, deadline=None)
@given(letters, letters, st.integers(0, 2))
def test_fox_product_rule(a, b, j):
    u, v = FreeWord(a), FreeWord(b)
    lhs = fox_derivative(u * v, j)
    rhs = fox_derivative(u, j) + GroupRingSum.word(u) * fox_derivative(v, j)
    assert lhs == rhs


def test_fox_trefoil_by_hand():
    P = parse_presentation("gens: x y\nrel: x x Y Y Y\n")
    r = P.relators[0]
    assert fox_derivative(r, "x", P) == GroupRingSum.word(FreeWord()) + GroupRingSum.word(P.word("x"))
    expected = -(
        GroupRingSum.word(P.word("x x Y"))
        + GroupRingSum.word(P.word("x x Y Y"))
        + GroupRingSum.word(P.word("x x Y Y Y"))
    )
    assert fox_derivative(r, "y", P) == expected


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=3))
def test_smith_normal_form(M):
    U, D, V = smith_normal_form(M, 3)
    assert _matmul(_matmul(U, M), V) == D
    diag = [D[i][i] for i in range(min(len(D), 3))]
    nonzero = [d for d in diag if d]
    assert all(d > 0 for d in nonzero)
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(3) if i != j)


def test_hermite_normal_form_is_canonical():
    B = [[2, 4, 6], [1, 1, 1]]
    H = hermite_normal_form(B)
    assert H == hermite_normal_form([[1, 1, 1], [3, 5, 7]])


@pytest.mark.parametrize(
    "name, rank, images",
    [
        ("z2", 2, None),
        ("trefoil", 1, {"x": (3,), "y": (2,)}),
        ("bs12", 1, {"x": (1,), "y": (0,)}),
        ("klein", 1, {"x": (1,), "y": (0,)}),
        ("f2z", 3, None),
    ],
)
def test_abelianisation(name, rank, images):
    P = parse_presentation(corpus_text(name))
    lattice, got = abelianize(P)
    assert lattice.rank == rank
    if images is not None:
        assert {k: tuple(abs(a) for a in v) for k, v in got.items()} == images
    # every relator maps to zero
    for row in exponent_matrix(P):
        for c in range(rank):
            assert sum(e * got[g][c] for e, g in zip(row, P.generators)) == 0
