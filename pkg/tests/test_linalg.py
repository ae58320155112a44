import random
from fractions import Fraction

import pytest

from daha.errors import SingularMatrixError
from daha.linalg import (
    Matrix,
    Subspace,
    det,
    inverse,
    kernel,
    rank,
    rref,
    solve_right,
    solve_sylvester_homogeneous,
    span_closure,
)
from daha.modrep import make_E
from daha.scalar import RatFun

Q = RatFun.variable()


def rand_matrix(rng, n, height=9):
    return Matrix(
        [
            [Fraction(rng.randint(-height, height), rng.randint(1, 4)) for _ in range(n)]
            for _ in range(n)
        ]
    )


def test_rref_examples():
    ident = Matrix.identity(3)
    red, rk = rref(ident)
    assert red == ident and rk == 3

    red, rk = rref(Matrix([[1, 1], [1, 1]]))
    assert red == Matrix([[1, 1], [0, 0]]) and rk == 1

    red, rk = rref(Matrix.zeros(2, 2))
    assert red == Matrix.zeros(2, 2) and rk == 0


def test_kernel_examples():
    k = kernel(Matrix([[1, 1], [1, 1]]))
    assert k.dim == 1
    assert k.basis[0] == (1, -1)

    assert kernel(Matrix.identity(3)).dim == 0
    assert kernel(Matrix.zeros(2, 2)).dim == 2


def test_rank_nullity():
    rng = random.Random("ranknullity")
    for _ in range(15):
        m = rand_matrix(rng, rng.randint(1, 5))
        assert rank(m) + kernel(m).dim == m.cols


def test_det_and_inverse_examples(p_even_d1):
    assert det(Matrix.identity(4)) == 1
    assert det(Matrix([[1, Fraction(4, 3)], [0, 1]])) == 1
    swap = Matrix([[0, 1], [1, 0]])
    assert det(swap) == -1
    assert inverse(swap) == swap
    with pytest.raises(SingularMatrixError):
        inverse(Matrix([[1, 1], [1, 1]]))


def test_inverse_round_trip():
    rng = random.Random("inverse")
    done = 0
    while done < 10:
        m = rand_matrix(rng, rng.randint(1, 5))
        if not det(m):
            continue
        assert m * inverse(m) == Matrix.identity(m.rows)
        done += 1


def test_ratfun_matrix_inverse():
    m = Matrix([[Q, 1], [0, Q ** -1]])
    assert det(m) == 1
    assert m * inverse(m) == Matrix.identity(2, one=Q ** 0)


def test_solve_right():
    m = Matrix([[1, 2], [3, 4], [0, 0]])
    x = solve_right(m, [5, 11, 0])
    assert x == (1, 2)
    assert solve_right(m, [1, 0, 1]) is None  # inconsistent
    assert solve_right(Matrix([[1, 1]]), [1]) is None  # underdetermined


def test_sylvester_examples(p_even_d1):
    ident = Matrix.identity(2)
    assert solve_sylvester_homogeneous([(ident, ident)]).dim == 4

    diag = Matrix([[1, 0], [0, 2]])
    space = solve_sylvester_homogeneous([(diag, diag)])
    assert space.dim == 2
    assert space.basis == ((1, 0, 0, 0), (0, 0, 0, 1))

    # Schur: two isomorphic irreducible modules leave a line of
    # intertwiners, spanned by an invertible matrix
    a = make_E(p_even_d1)
    b = make_E(p_even_d1.with_k(k2=Fraction(1, 3)))
    space = solve_sylvester_homogeneous(
        [(a.t[i], b.t[i]) for i in range(4)]
    )
    assert space.dim == 1
    t = Matrix([[space.basis[0][0], space.basis[0][1]], [space.basis[0][2], space.basis[0][3]]])
    assert det(t)


def test_sylvester_solutions_resubstitute():
    rng = random.Random("sylvester")
    for _ in range(5):
        n = rng.randint(1, 3)
        pairs = [(rand_matrix(rng, n), rand_matrix(rng, n)) for _ in range(2)]
        space = solve_sylvester_homogeneous(pairs)
        for vec in space.basis:
            t = Matrix([[vec[r * n + c] for c in range(n)] for r in range(n)])
            for a, b in pairs:
                assert t * a == b * t


def test_span_closure_examples(p_even_d1):
    assert span_closure([Matrix.identity(3)]) == 1
    assert span_closure([Matrix([[1, 0], [0, 2]])]) == 2
    gens = make_E(p_even_d1).t
    assert span_closure(gens) == 4


def test_span_closure_permutation_invariant(p_even_d1):
    gens = list(make_E(p_even_d1).t)
    rng = random.Random("perm")
    base = span_closure(gens)
    for _ in range(4):
        rng.shuffle(gens)
        assert span_closure(gens) == base


def test_subspace_contains():
    s = Subspace.from_vectors(3, [[1, 0, 1], [0, 1, 1]])
    assert s.dim == 2
    assert s.contains([1, 1, 2])
    assert not s.contains([0, 0, 1])


def test_matrix_json_round_trip():
    m = Matrix([[Fraction(1, 2), Q], [0, 1]])
    again = Matrix.from_json(m.to_json())
    assert again == m
