import pytest

from gquadforms.algebra import (
    Algebra,
    InvolutionAlgebra,
    algebra_from_span,
    quotient_algebra,
)
from gquadforms.funcfield import RatFunc
from gquadforms.linalg import Mat

P = 3


def _m2_units():
    return [
        Mat.from_int_rows(P, [[1 if (r, c) == (i, j) else 0 for c in range(2)] for r in range(2)])
        for i in range(2)
        for j in range(2)
    ]


def test_from_matrices_structure_constants():
    alg = Algebra.from_matrices(P, _m2_units())
    assert alg.dim == 4
    # associativity on the whole basis through the mult table
    for i in range(4):
        for j in range(4):
            for l in range(4):
                a, b, c = (alg.basis_coords(x) for x in (i, j, l))
                assert alg.mult(alg.mult(a, b), c) == alg.mult(a, alg.mult(b, c))
    # unit behaves
    for i in range(4):
        b = alg.basis_coords(i)
        assert alg.mult(alg.unit, b) == b
        assert alg.mult(b, alg.unit) == b


def test_from_matrices_requires_closure():
    nonclosed = [Mat.identity(P, 2), Mat.from_int_rows(P, [[0, 1], [1, 0]]),
                 Mat.from_int_rows(P, [[1, 0], [0, 2]])]
    # the span of these three misses e_12 * diag products
    with pytest.raises(ValueError):
        Algebra.from_matrices(P, nonclosed)


def test_center_and_inverse():
    alg = Algebra.from_matrices(P, _m2_units())
    cen = alg.center()
    assert len(cen) == 1
    u = alg.coords_of(Mat.from_int_rows(P, [[1, 1], [0, 1]]))
    inv = alg.inverse(u)
    assert alg.mult(u, inv) == alg.unit


def test_quotient_algebra_upper_triangular():
    ut = [
        Mat.from_int_rows(P, [[1, 0], [0, 0]]),
        Mat.from_int_rows(P, [[0, 1], [0, 0]]),
        Mat.from_int_rows(P, [[0, 0], [0, 1]]),
    ]
    alg = Algebra.from_matrices(P, ut)
    rad = [alg.coords_of(ut[1])]
    quot = quotient_algebra(alg, rad)
    assert quot.algebra.dim == 2
    # quotient of upper triangular by the strict part is k x k
    cen = quot.algebra.center()
    assert len(cen) == 2
    # project . lift = identity on quotient coords
    for i in range(2):
        x = quot.algebra.basis_coords(i)
        assert quot.project(quot.lift(x)) == x


def test_algebra_from_span_unit_search():
    alg = Algebra.from_matrices(P, _m2_units())
    # the span of e11 alone is a subalgebra with its own unit e11
    e11 = alg.coords_of(Mat.from_int_rows(P, [[1, 0], [0, 0]]))
    sub, sp = algebra_from_span(alg, [e11])
    assert sub.dim == 1
    assert sub.mult(sub.unit, sub.unit) == sub.unit


def test_involution_validation():
    alg = Algebra.from_matrices(P, _m2_units())
    cols = [alg.coords_of(alg.matrix_of(alg.basis_coords(m)).T) for m in range(4)]
    good = Mat(P, [[cols[j][i] for j in range(4)] for i in range(4)])
    InvolutionAlgebra(alg, good)  # must not raise
    bad = Mat.identity(P, 4)  # identity map is multiplicative, not anti-
    with pytest.raises(ValueError):
        InvolutionAlgebra(alg, bad)
