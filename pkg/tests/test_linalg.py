import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sullivan import _elim_py, linalg
from sullivan.linalg import (
    Echelon,
    SparseRationalMatrix,
    annihilator,
    bareiss_rank,
    dot,
    image_and_kernel,
    rref,
    solve,
)

try:
    from sullivan import _elim
except ImportError:
    _elim = None

needs_compiled = pytest.mark.skipif(_elim is None, reason="compiled kernel not built")


def random_rows(rng, nrows, ncols, density=0.4, size=5):
    rows = []
    for _ in range(nrows):
        row = [(c, rng.randint(-size, size)) for c in range(ncols) if rng.random() < density]
        rows.append([(c, v) for c, v in row if v])
    return rows


def normalized(result):
    pivots, zero_rows = result
    return {c: list(r) for c, r in pivots.items()}, [list(r) for r in zero_rows]


@needs_compiled
def test_compiled_matches_python_kernel():
    rng = random.Random(11)
    for _ in range(300):
        n, m = rng.randint(1, 12), rng.randint(1, 12)
        rows = random_rows(rng, n, m + n)
        stop = m
        assert normalized(_elim.echelonize(rows, stop, False)) == \
            normalized(_elim_py.echelonize(rows, stop, False))
        pivots, _ = _elim_py.echelonize(rows, stop, False)
        probe = random_rows(rng, 1, m)[0]
        assert _elim.reduce_full(probe, pivots, stop) == _elim_py.reduce_full(probe, pivots, stop)


@needs_compiled
def test_overflow_falls_back_to_python():
    big = 2 ** 62
    rows = [[(0, big), (1, 3)], [(0, big - 1), (1, big - 7)], [(1, big), (2, 5)]]
    with pytest.raises(OverflowError):
        _elim.echelonize(rows, 3, False)
    previous = linalg.backend()
    linalg.set_backend("compiled")
    try:
        out = linalg.echelonize(rows, 3)
    finally:
        linalg.set_backend(previous)
    assert normalized(out) == normalized(_elim_py.echelonize(rows, 3))


def test_backend_switch():
    previous = linalg.backend()
    try:
        linalg.set_backend("python")
        assert linalg.backend() == "python"
        with pytest.raises(ValueError):
            linalg.set_backend("fortran")
    finally:
        linalg.set_backend(previous)


def test_image_and_kernel_dimensions():
    images = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}, {2: Fraction(1)}]
    image, kernel = image_and_kernel(images, 3)
    assert image.rank == 2
    assert len(kernel) == 1
    k = kernel[0]
    combo = {}
    for j, c in k.items():
        for i, v in images[j].items():
            combo[i] = combo.get(i, 0) + c * v
    assert not any(combo.values())


def test_solve_and_annihilator():
    images = [{0: Fraction(1), 1: Fraction(1)}, {1: Fraction(1), 2: Fraction(1)}]
    x = solve(images, {0: Fraction(1), 2: Fraction(-1)}, 3)
    assert x == {0: Fraction(1), 1: Fraction(-1)}
    target = {0: Fraction(1)}
    assert solve(images, target, 3) is None
    phi = annihilator(images, target, 3)
    assert dot(phi, target) != 0
    assert all(dot(phi, v) == 0 for v in images)


def test_echelon_reduce_is_canonical():
    ech = Echelon.from_vectors([{0: Fraction(1), 2: Fraction(1)}], 3)
    s1, r1 = ech.reduce({0: Fraction(1)})
    s2, r2 = ech.reduce({2: Fraction(-1)})
    assert {k: v / s1 for k, v in r1.items()} == {k: v / s2 for k, v in r2.items()}
    assert ech.contains({0: Fraction(3), 2: Fraction(3)})


def test_rref_rows_are_reduced():
    rows = rref([{0: Fraction(2), 1: Fraction(4)}, {0: Fraction(1), 2: Fraction(1)}], 3)
    assert rows[0][0] == 1 and 0 not in rows[1]
    assert rows[1][min(rows[1])] == 1


matrices = st.integers(1, 7).flatmap(lambda n: st.integers(1, 7).flatmap(
    lambda m: st.lists(st.lists(st.integers(-4, 4), min_size=m, max_size=m),
                       min_size=n, max_size=n)))


@settings(max_examples=300, deadline=None)
@given(matrices)
def test_sparse_rank_equals_dense_bareiss(rows):
    M = SparseRationalMatrix(len(rows), len(rows[0]),
                             {i: {j: v for j, v in enumerate(r) if v} for i, r in enumerate(rows)})
    assert M.rank() == bareiss_rank(rows)
    assert M.rank() + len(M.nullspace()) == M.ncols
    for v in M.nullspace():
        assert not M.apply(v)


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_rank_is_transpose_invariant(rows):
    cols = [list(c) for c in zip(*rows)]
    assert bareiss_rank(rows) == bareiss_rank(cols)
