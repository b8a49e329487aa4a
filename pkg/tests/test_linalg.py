import itertools
import random

import pytest

from lingrowth.exactfield import QQ, FieldDescriptor, FieldError
from lingrowth.linalg import (
    Matrix,
    ShapeError,
    Subspace,
    apply,
    intersection,
    kernel,
    orbit_profile,
    orbit_subvariety_set,
    rank,
    rref,
    subspace_intersection_dim,
    subspace_sum,
)
from lingrowth.presentation import family_fermat, family_lech

F3 = FieldDescriptor.prime_field(3)
F101 = FieldDescriptor.prime_field(101)


def span_set(fd, m, vectors):
    """Brute-force span over a small prime field: all linear combinations."""
    p = fd.p
    vecs = [[e.value for e in v] for v in vectors]
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(vecs)):
        out.add(tuple(sum(c * v[j] for c, v in zip(coeffs, vecs)) % p for j in range(m)))
    return out or {(0,) * m}


def dim_of(points, p):
    n, d = len(points), 0
    while p ** d < n:
        d += 1
    assert p ** d == n
    return d


def test_rref_examples():
    s, r = rref(Matrix.identity(QQ, 3))
    assert r == 3 and s == Subspace.full(QQ, 3)
    s, r = rref(Matrix.from_rows(QQ, [[1, 1, 1], [2, 2, 2]]))
    assert r == 1 and s.basis == Subspace.span(QQ, 3, [[1, 1, 1]]).basis
    s, r = rref(Matrix.from_rows(QQ, [[1, 1, 0], [1, 0, 1]]))
    assert r == 2
    assert [[str(e) for e in row] for row in s.basis] == [["1", "0", "1"], ["0", "1", "-1"]]


def test_sum_and_intersection_examples():
    A = Subspace.span(QQ, 3, [[1, 2, 3]])
    assert subspace_sum(A, Subspace.zero(QQ, 3)) == A
    e1, e2 = Subspace.span(QQ, 2, [[1, 0]]), Subspace.span(QQ, 2, [[0, 1]])
    assert subspace_sum(e1, e2).dim == 2
    assert intersection(e1, e2).dim == 0
    assert intersection(A, A).dim == 1
    R = Subspace.span(QQ, 3, [[1, -1, 0], [1, 0, 1]])
    ell = Subspace.span(QQ, 3, [[2, -1, 1]])
    assert subspace_sum(R, ell).dim == 2
    assert subspace_intersection_dim(R, ell, check=True) == 1


def test_apply_examples():
    L = Subspace.span(QQ, 3, [[1, 1, 1]])
    assert apply(Matrix.identity(QQ, 3), L) == L
    assert apply(Matrix.zero(QQ, 3, 3), L).dim == 0
    img = apply(Matrix.diag(QQ, [2, -1, 1]), L)
    assert [str(e) for e in img.basis[0]] == ["1", "-1/2", "1/2"]


def test_shape_and_field_errors():
    with pytest.raises(ShapeError):
        Subspace.span(QQ, 3, [[1, 2]])
    with pytest.raises(ShapeError):
        subspace_sum(Subspace.full(QQ, 2), Subspace.full(QQ, 3))
    with pytest.raises(FieldError):
        subspace_sum(Subspace.full(QQ, 2), Subspace.full(F3, 2))
    with pytest.raises(ShapeError):
        apply(Matrix.identity(QQ, 2), Subspace.full(QQ, 3))


def test_against_brute_force_over_f3():
    rng = random.Random(5)
    for _ in range(150):
        m = rng.randint(1, 4)
        gens = lambda: [[rng.randrange(3) for _ in range(m)] for _ in range(rng.randint(0, 3))]  # noqa: E731
        ga, gb = gens(), gens()
        A, B = Subspace.span(F3, m, ga), Subspace.span(F3, m, gb)
        SA, SB = span_set(F3, m, A.basis), span_set(F3, m, B.basis)
        assert A.dim == dim_of(SA, 3)
        assert subspace_sum(A, B).dim == dim_of(span_set(F3, m, A.basis + B.basis), 3)
        assert intersection(A, B).dim == dim_of(SA & SB, 3)
        assert subspace_intersection_dim(A, B) == dim_of(SA & SB, 3)
        for v in itertools.product(range(3), repeat=m):
            assert A.contains(list(v)) == (v in SA)


@pytest.mark.parametrize("fd", [QQ, F101], ids=str)
def test_modularity_and_rank_nullity_200(fd):
    rng = random.Random(8)
    for _ in range(200):
        m = rng.randint(1, 5)
        rnd = lambda k: [[fd.random_element(rng) for _ in range(m)] for _ in range(k)]  # noqa: E731
        A = Subspace.span(fd, m, rnd(rng.randint(0, m)))
        B = Subspace.span(fd, m, rnd(rng.randint(0, m)))
        assert subspace_sum(A, B).dim + intersection(A, B).dim == A.dim + B.dim
        M = Matrix.from_rows(fd, rnd(rng.randint(1, 5)))
        K = kernel(M)
        assert rank(M.rows) + K.dim == M.ncols
        assert all(all(e.is_zero() for e in M.apply(v)) for v in K.basis)


def test_matrix_basics():
    M = Matrix.from_rows(QQ, [[1, 2], [3, 4]])
    assert (M @ Matrix.identity(QQ, 2)) == M
    assert M.transpose().column(0) == M.rows[0]
    assert M.is_invertible() and not Matrix.from_rows(QQ, [[1, 2], [2, 4]]).is_invertible()
    assert Matrix.from_json(M.to_json()) == M
    S = Subspace.span(F101, 3, [[1, 2, 3]])
    assert Subspace.from_json(S.to_json()) == S


def test_orbit_profile_fermat_and_lech():
    prof = orbit_profile(family_fermat(2, -1), 30)
    assert [n for n, c in enumerate(prof.c) if c] == [1]
    assert set(prof.image_dims) == {1}
    # brute force: 2^n + (-1)^n == 1
    assert [n for n in range(31) if 2 ** n + (-1) ** n == 1] == [1]
    lech = orbit_profile(family_lech(7), 60)
    assert [n for n, c in enumerate(lech.c) if c] == [1, 7, 49]


def test_orbit_subvariety_set():
    d = family_fermat(2, -1)
    alpha = [d.L.basis[0]]
    assert orbit_subvariety_set(d.sigma, alpha, d.R, 2, 30) == {1}
    assert orbit_subvariety_set(d.sigma, alpha, d.R, 3, 30) == set(range(31))
    assert orbit_subvariety_set(d.sigma, alpha, d.R, 0, 30) == set()
