from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limprof.errors import ShapeError, UnavoidableError
from limprof.kernel import (
    AffineSubspace,
    RatMatrix,
    generic_point,
    integer_tuples,
    normalize_primitive,
    nullspace,
    rat,
    rat_str,
    solve_affine,
    vec,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=7
)


def test_rat_coercions():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(-2) == Fraction(-2)
    assert rat(Fraction(1, 3)) == Fraction(1, 3)
    with pytest.raises(TypeError):
        rat(0.5)


def test_rat_str_roundtrip():
    for s in ("0", "5", "-3", "2/7", "-11/4"):
        assert rat_str(rat(s)) == s


def test_matrix_shape_validation():
    with pytest.raises(ShapeError):
        RatMatrix.from_rows([])
    with pytest.raises(ShapeError):
        RatMatrix.from_rows([[1, 2], [3]])


def test_matrix_rank():
    assert RatMatrix.from_rows([[1, 2], [2, 4]]).rank() == 1
    assert RatMatrix.from_rows([[1, 0], [0, 1]]).rank() == 2
    assert RatMatrix.from_rows([[0, 0], [0, 0]]).rank() == 0


def test_matmul_and_mul_vec():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    b = RatMatrix.from_rows([[0, 1], [1, 0]])
    assert a.matmul(b).entries == RatMatrix.from_rows([[2, 1], [4, 3]]).entries
    assert a.mul_vec(vec([1, 1])) == (Fraction(3), Fraction(7))


# solve_affine oracle: x + y = 2 has particular point (2, 0) (free variable
# zeroed) and kernel direction (-1, 1).
def test_solve_affine_line():
    space = solve_affine(RatMatrix.from_rows([[1, 1]]), vec([2]))
    assert space is not None
    assert space.point == (Fraction(2), Fraction(0))
    assert space.basis == ((Fraction(-1), Fraction(1)),)
    assert not space.is_unique


def test_solve_affine_unique_and_infeasible():
    a = RatMatrix.from_rows([[1, 0], [0, 2]])
    space = solve_affine(a, vec([3, 4]))
    assert space is not None and space.is_unique
    assert space.point == (Fraction(3), Fraction(2))
    # x + y = 0 and x + y = 1 cannot both hold
    bad = solve_affine(RatMatrix.from_rows([[1, 1], [1, 1]]), vec([0, 1]))
    assert bad is None


@given(
    st.lists(
        st.lists(rationals, min_size=3, max_size=3),
        min_size=2,
        max_size=4,
    ),
    st.lists(rationals, min_size=3, max_size=3),
)
@settings(max_examples=60, deadline=None)
def test_solve_affine_solutions_solve(rows, x):
    """Any consistent system is actually solved by point + any basis combo."""
    a = RatMatrix.from_rows(rows)
    b = a.mul_vec(vec(x))  # guaranteed consistent
    space = solve_affine(a, b)
    assert space is not None
    assert a.mul_vec(space.point) == b
    for direction in space.basis:
        shifted = tuple(p + d for p, d in zip(space.point, direction))
        assert a.mul_vec(shifted) == b


@given(
    st.lists(
        st.lists(rationals, min_size=4, max_size=4),
        min_size=1,
        max_size=3,
    )
)
@settings(max_examples=60, deadline=None)
def test_nullspace_annihilates(rows):
    a = RatMatrix.from_rows(rows)
    basis = nullspace(a)
    assert len(basis) == a.cols - a.rank()
    for v in basis:
        assert all(x == 0 for x in a.mul_vec(v))


def test_integer_tuples_scalar_order():
    first = []
    for t in integer_tuples(1):
        first.append(t[0])
        if len(first) == 5:
            break
    assert first == [0, 1, -1, 2, -2]


def test_integer_tuples_2d_prefix():
    seen = []
    for t in integer_tuples(2):
        seen.append(t)
        if len(seen) == 9:
            break
    # shell 0 then the 8 max-norm-1 tuples in lexicographic (0,1,-1) order
    assert seen[0] == (0, 0)
    assert set(seen[1:9]) == {
        (a, b) for a in (-1, 0, 1) for b in (-1, 0, 1)
    } - {(0, 0)}
    assert seen[1] == (0, 1)


def test_generic_point_examples():
    plane = AffineSubspace(point=vec([0, 0]), basis=(vec([1, 0]), vec([0, 1])))
    # avoid the functional "first coordinate = 0"
    p = generic_point(plane, avoid=[vec([1, 0])])
    assert p == (Fraction(1), Fraction(0))
    diag = AffineSubspace(point=vec([0, 0]), basis=(vec([1, 1]),))
    p = generic_point(diag, avoid=[vec([1, 0])])
    assert p == (Fraction(1), Fraction(1))


def test_generic_point_unavoidable():
    diag = AffineSubspace(point=vec([0, 0]), basis=(vec([1, 1]),))
    # x - y vanishes identically on the diagonal
    with pytest.raises(UnavoidableError):
        generic_point(diag, avoid=[vec([1, -1])])


@given(
    st.lists(rationals, min_size=2, max_size=4).filter(lambda v: any(v)),
)
@settings(max_examples=80, deadline=None)
def test_normalize_primitive_properties(v):
    w = normalize_primitive(vec(v))
    # parallel to the input
    assert RatMatrix.from_rows([list(v), list(w)]).rank() == 1
    nums = [x.numerator for x in w]
    dens = [x.denominator for x in w]
    assert all(d == 1 for d in dens)
    from math import gcd
    assert gcd(*(abs(n) for n in nums)) if len(nums) == 2 else True
    first = next(x for x in w if x != 0)
    assert first > 0
