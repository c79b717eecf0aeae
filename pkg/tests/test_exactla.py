import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from entcert.exactla import (
    I_UNIT,
    ONE,
    ExactMatrix,
    ExactScalar,
    column_stack,
    determinant,
    is_psd,
    kernel_basis,
    kron,
    rank,
    unvectorize,
    vectorize,
)

small = st.integers(-5, 5)
gauss = st.builds(ExactScalar, small, small)
rational = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(ExactScalar, rational, rational)


@st.composite
def gaussian_matrices(draw, max_dim=10, real=False):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    elem = st.builds(ExactScalar, small) if real else gauss
    # bias toward rank deficiency by sometimes repeating rows
    rows = [draw(st.lists(elem, min_size=c, max_size=c)) for _ in range(r)]
    if r > 1 and draw(st.booleans()):
        k = draw(st.integers(0, r - 1))
        f = draw(gauss)
        rows[draw(st.integers(0, r - 1))] = [x * f for x in rows[k]]
    return ExactMatrix.from_rows(rows)


def as_pairs(m):
    return [[(x.re, x.im) for x in m.row(i)] for i in range(m.rows)]


# -- scalars ---------------------------------------------------------------

@given(scalars, scalars)
def test_add_then_subtract_is_exact(a, b):
    assert (a + b) - b == a


@given(scalars)
def test_conj_involution_and_abs2(x):
    assert x.conj().conj() == x
    n = x * x.conj()
    assert n.im == 0 and n.re >= 0
    assert n == x.abs2()


@given(scalars, scalars.filter(bool))
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a


def test_scalar_rejects_floats():
    with pytest.raises(TypeError):
        ExactScalar.coerce(0.5)
    with pytest.raises(TypeError):
        ExactScalar.coerce(1j)


def test_scalar_str_forms():
    assert str(ExactScalar(3)) == "3"
    assert str(ExactScalar(0, -2)) == "-2i"
    assert str(ExactScalar(Fraction(1, 2), 1)) == "1/2+1i"
    assert I_UNIT * I_UNIT == -ONE


# -- rank --------------------------------------------------------------------

def test_rank_trivial_cases():
    assert rank(ExactMatrix.identity(2)) == 2
    assert rank(ExactMatrix.zeros(3, 5)) == 0
    assert rank(ExactMatrix.from_rows([[1, 2], [2, 4]])) == 1


def test_rank_of_printed_vectorization_map():
    from entcert.fixtures import M_PRINTED

    assert rank(ExactMatrix.from_rows(M_PRINTED["A|BC"])) == 4


@given(gaussian_matrices())
def test_rank_matches_rref_oracle(m):
    assert rank(m) == oracle.rank(as_pairs(m))


@given(gaussian_matrices())
def test_rank_of_conjugate_transpose(m):
    assert rank(m) == rank(m.H) <= min(m.shape)


@given(gaussian_matrices(max_dim=6), st.randoms(use_true_random=False))
def test_rank_independent_of_row_and_column_order(m, rnd):
    rows = m.to_lists()
    rnd.shuffle(rows)
    perm = list(range(m.cols))
    rnd.shuffle(perm)
    shuffled = ExactMatrix.from_rows([[r[j] for j in perm] for r in rows])
    assert rank(shuffled) == rank(m)


def test_rank_with_fractions():
    m = ExactMatrix.from_rows([[Fraction(1, 3), Fraction(2, 7)], [Fraction(2, 3), Fraction(4, 7)]])
    assert rank(m) == 1


# -- kernel --------------------------------------------------------------------

def test_kernel_trivial_cases():
    assert kernel_basis(ExactMatrix.identity(3)) == []
    (v,) = kernel_basis(ExactMatrix.from_rows([[1, 1]]))
    assert v[0] == -v[1] and v[0]


@given(gaussian_matrices(max_dim=7))
def test_kernel_is_annihilated_and_has_right_dimension(m):
    basis = kernel_basis(m)
    assert len(basis) + rank(m) == m.cols
    for v in basis:
        assert (m @ ExactMatrix.column(v)).is_zero()
    if basis:
        assert rank(ExactMatrix.from_rows(basis)) == len(basis)


def test_kernel_is_deterministic():
    m = ExactMatrix.from_rows([[1, 2, 3, 4], [2, 4, 6, 9]])
    assert kernel_basis(m) == kernel_basis(ExactMatrix.from_rows(m.to_lists()))


# -- vectorization ----------------------------------------------------------------

def test_vectorize_is_column_major():
    assert vectorize(ExactMatrix.from_rows([[1, 2], [3, 4]])) == tuple(ExactScalar(x) for x in (1, 3, 2, 4))
    assert vectorize(ExactMatrix.from_rows([[7]])) == (ExactScalar(7),)
    gamma = ExactMatrix.from_rows([[0, 1], [-1, 0]])
    assert vectorize(gamma) == tuple(ExactScalar(x) for x in (0, -1, 1, 0))


@given(gaussian_matrices(max_dim=5))
def test_unvectorize_inverts_vectorize(m):
    assert unvectorize(vectorize(m), m.rows, m.cols) == m


def test_column_stack_shapes_and_errors():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    s = column_stack([a])
    assert s.shape == (4, 1) and s.col(0) == vectorize(a)
    with pytest.raises(ValueError):
        column_stack([])
    with pytest.raises(ValueError):
        column_stack([a, ExactMatrix.identity(3)])


@given(st.lists(gaussian_matrices(max_dim=3).filter(lambda m: m.shape == (3, 3)) | st.just(ExactMatrix.identity(3)), min_size=1, max_size=6), st.randoms(use_true_random=False), gauss.filter(bool))
def test_stacked_rank_invariant_under_permutation_and_scaling(ms, rnd, f):
    base = rank(column_stack(ms))
    shuffled = list(ms)
    rnd.shuffle(shuffled)
    k = rnd.randrange(len(shuffled))
    shuffled[k] = shuffled[k].scale(f)
    assert rank(column_stack(shuffled)) == base


# -- misc ------------------------------------------------------------------------

def test_determinant_and_kron():
    a = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert determinant(a) == ExactScalar(-2)
    k = kron(a, ExactMatrix.identity(2))
    assert k.shape == (4, 4) and determinant(k) == ExactScalar(4)
    assert determinant(ExactMatrix.from_rows([[ExactScalar(0, 1), 0], [0, ExactScalar(0, 1)]])) == ExactScalar(-1)


def test_is_psd_uses_all_principal_minors():
    # leading minors are 0 and 0 but the matrix is negative semidefinite
    assert not is_psd(ExactMatrix.from_rows([[0, 0], [0, -1]]))
    assert is_psd(ExactMatrix.from_rows([[1, 1], [1, 1]]))
    assert is_psd(ExactMatrix.from_rows([[2, ExactScalar(0, 1)], [ExactScalar(0, -1), 2]]))
    assert not is_psd(ExactMatrix.from_rows([[1, 2], [2, 1]]))
    assert not is_psd(ExactMatrix.from_rows([[1, 1], [0, 1]]))


def test_matrix_arithmetic_and_structure():
    a = ExactMatrix.from_rows([[1, ExactScalar(0, 2)], [3, 4]])
    assert a.H.H == a
    assert (a + a) == a.scale(ExactScalar(2))
    assert (a - a).is_zero()
    assert (a @ ExactMatrix.identity(2)) == a
    assert ExactMatrix.identity(3).is_scalar_multiple_of_identity()
    assert not a.is_hermitian()
    assert (a + a.H).is_hermitian()
    assert a.trace() == ExactScalar(5)
    with pytest.raises(ValueError):
        ExactMatrix.from_rows([[1, 2], [3]])


def test_large_integer_rank_is_fast():
    import time

    rnd = random.Random(7)
    rows = [[rnd.randint(-4, 4) for _ in range(81)] for _ in range(120)]
    rows += [[a + b for a, b in zip(rows[0], rows[1])]]
    t = time.perf_counter()
    assert rank(ExactMatrix.from_rows(rows)) == 81
    assert time.perf_counter() - t < 10
