import os
import random
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agrarian import _kernels
from agrarian._kernels import _pykernels
from agrarian.linalg import Matrix, classical_det, rank

from helpers import QQ

P = _kernels.PRIME

square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=n, max_size=n)
)
rect = st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=5)


def compiled():
    try:
        from agrarian._kernels import _ckernels
    except ImportError:
        pytest.skip("compiled kernels not built")
    return _ckernels


@settings(max_examples=100, deadline=None)
@given(square)
def test_det_matches_exact_determinant(rows):
    exact = classical_det(Matrix.from_rows(QQ, rows))
    assert _pykernels.det_mod_p(rows) == exact % P
    assert _kernels.det_mod_p(rows) == exact % P


@settings(max_examples=100, deadline=None)
@given(rect)
def test_rank_matches_exact_rank(rows):
    # entries are small, so no rank drop happens modulo a large prime
    assert _pykernels.rank_mod_p(rows) == rank(Matrix.from_rows(QQ, rows))
    assert _kernels.rank_mod_p(rows) == _pykernels.rank_mod_p(rows)


def test_backends_agree():
    ck = compiled()
    rng = random.Random(4)
    for _ in range(200):
        n = rng.randint(1, 8)
        rows = [[rng.randint(-10**12, 10**12) for _ in range(n)] for _ in range(rng.randint(1, 8))]
        assert ck.rank_mod_p(rows) == _pykernels.rank_mod_p(rows)
        sq = rows[: min(len(rows), n)]
        sq = [r[: len(sq)] for r in sq]
        assert ck.det_mod_p(sq) == _pykernels.det_mod_p(sq)
        k = rng.randint(0, 6)
        coeffs = [rng.randint(0, P - 1) for _ in range(k)]
        exps = [[rng.randint(0, 5) for _ in range(3)] for _ in range(k)]
        point = [rng.randint(1, P - 1) for _ in range(3)]
        assert ck.eval_terms_mod_p(coeffs, exps, point) == _pykernels.eval_terms_mod_p(coeffs, exps, point)


def test_eval_terms():
    # 3 x^2 y + 5 at (2, 7)
    assert _kernels.eval_terms_mod_p([3, 5], [[2, 1], [0, 0]], [2, 7]) == 89
    assert _kernels.eval_terms_mod_p([], [], [1]) == 0


def test_small_prime_argument():
    assert _kernels.det_mod_p([[2, 1], [1, 2]], 3) == 0
    assert _kernels.rank_mod_p([[2, 1], [1, 2]], 3) == 1


def test_pure_python_switch():
    env = dict(os.environ, AGRARIAN_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from agrarian import _kernels; print(_kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    )
    assert out.stdout.strip() == "python"
