import io
import random
from fractions import Fraction

import pytest

from exphodge.linalg import (SparseRationalMatrix, exact_rank, image_dim_over,
                             nullspace_basis, span_rank)


def test_rank_trivial_cases():
    assert exact_rank(SparseRationalMatrix(3, 3, {})) == 0
    eye = SparseRationalMatrix(4, 4, {(i, i): 1 for i in range(4)})
    assert exact_rank(eye) == 4


def test_rank_single_column():
    m = SparseRationalMatrix(3, 1, {(0, 0): -1, (2, 0): 1})
    assert exact_rank(m) == 1


def _random_matrix(rng, nrows, ncols, density=0.4):
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                entries[(i, j)] = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    return SparseRationalMatrix(nrows, ncols, entries)


def _rank_fraction_gauss(m: SparseRationalMatrix) -> int:
    """Independent oracle: plain Gaussian elimination with Fractions."""
    rows = [r[:] for r in m.to_dense()]
    rank = 0
    for c in range(m.ncols):
        piv = next((i for i in range(rank, m.nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][c]
        for i in range(m.nrows):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_rank_against_gauss_oracle():
    rng = random.Random(3)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 10), rng.randint(1, 10))
        assert exact_rank(m) == _rank_fraction_gauss(m)


def test_modular_rank_matches_exact():
    rng = random.Random(17)
    for k in range(25):
        m = _random_matrix(rng, rng.randint(1, 12), rng.randint(1, 12))
        assert exact_rank(m, method="modular", seed=k) == exact_rank(m)


def test_rank_rejects_unknown_method():
    with pytest.raises(ValueError):
        exact_rank(SparseRationalMatrix(1, 1, {(0, 0): 1}), method="float")


def test_nullspace_is_kernel():
    rng = random.Random(23)
    for _ in range(30):
        m = _random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        basis = nullspace_basis(m)
        assert len(basis) == m.ncols - exact_rank(m)
        rows = m.rows()
        for v in basis:
            for row in rows:
                assert sum(row.get(c, Fraction(0)) * x for c, x in v.items()) == 0
        if basis:
            assert span_rank(basis) == len(basis)


def test_nullspace_of_empty_matrix():
    m = SparseRationalMatrix(0, 5, {})
    assert len(nullspace_basis(m)) == 5


def test_matmul_and_zero():
    a = SparseRationalMatrix.from_dense([[1, 2], [3, 4]])
    b = SparseRationalMatrix.from_dense([[2, 0], [-1, 1]])
    assert (a @ b).to_dense() == [[0, 2], [2, 4]]
    z = SparseRationalMatrix(2, 2, {})
    assert (a @ z).is_zero()


def test_image_dim_over():
    base = [{0: Fraction(1)}]
    new = [{0: Fraction(2)}, {1: Fraction(1)}]
    assert image_dim_over(new, base) == 1
    assert image_dim_over([], base) == 0


def test_dump_load_roundtrip():
    m = SparseRationalMatrix(3, 4, {(0, 1): Fraction(3, 2), (2, 0): -2})
    buf = io.StringIO()
    m.dump(buf)
    buf.seek(0)
    again = SparseRationalMatrix.load(buf)
    assert again.nrows == 3 and again.ncols == 4
    assert again.entries == m.entries
    buf.seek(0)
    assert buf.readline().strip() == "3 4"


def test_modular_rank_threads_parity():
    rng = random.Random(41)
    for _ in range(10):
        m = _random_matrix(rng, 10, 10)
        assert exact_rank(m, method="modular", seed=1, threads=3) == exact_rank(m)
