from __future__ import annotations

import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgeorbit.linalg import (
    DecreasingFiltration,
    Definiteness,
    InconclusiveWarning,
    IncreasingFiltration,
    Matrix,
    PolarizationForm,
    Subspace,
    bracket,
    definiteness,
    exp_nilpotent,
    expm_float,
    float_flags_agree,
    hermitian_gram,
    image,
    intersect,
    kernel,
    nilpotency_index,
    solve,
    unvec,
    vec,
)
from hodgeorbit.scalars import I, Scalar


def int_matrix(rows, cols=None, lo=-3, hi=3):
    cols = rows if cols is None else cols
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=cols, max_size=cols), min_size=rows, max_size=rows
    ).map(Matrix)


def strictly_lower(n):
    return st.lists(st.integers(-3, 3), min_size=n * n, max_size=n * n).map(
        lambda xs: Matrix([[xs[i * n + j] if j < i else 0 for j in range(n)] for i in range(n)])
    )


vectors4 = st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=0, max_size=4)


@given(int_matrix(3), int_matrix(3))
def test_determinant_is_multiplicative(a, b):
    assert (a @ b).det() == a.det() * b.det()


@given(int_matrix(3))
def test_inverse(a):
    if a.det():
        assert a @ a.inverse() == Matrix.identity(3)
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(int_matrix(3, 4))
def test_rank_nullity(a):
    k = kernel(a)
    assert a.rank() + k.dim == 4
    assert all(x == 0 for v in k.basis for x in a.apply(v))
    assert image(a).dim == a.rank()


@given(vectors4, vectors4)
def test_modular_dimension_formula(us, vs):
    u, v = Subspace.span(us, 4), Subspace.span(vs, 4)
    s, m = u + v, intersect(u, v)
    assert s.dim + m.dim == u.dim + v.dim
    assert m <= u and m <= v and u <= s and v <= s


@given(vectors4, st.integers(-3, 3).filter(bool))
def test_span_is_canonical(us, c):
    u = Subspace.span(us, 4)
    scaled = Subspace.span([[c * x for x in v] for v in us] + [[0, 0, 0, 0]], 4)
    assert u == scaled
    assert hash(u) == hash(scaled)


@given(int_matrix(3), st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_solve(a, b):
    x, nullity = solve(a, b)
    if x is not None:
        assert list(a.apply(x)) == [Scalar(t) for t in b]
    assert nullity == 3 - a.rank()


@given(int_matrix(3), int_matrix(3), int_matrix(3))
def test_bracket_identities(a, b, c):
    assert bracket(a, b) == -bracket(b, a)
    jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
    assert jac.is_zero()


@given(int_matrix(3))
def test_vec_round_trip(a):
    assert unvec(vec(a), 3) == a


@settings(max_examples=30)
@given(strictly_lower(4), st.integers(-3, 3), st.integers(-3, 3))
def test_exponential_is_a_one_parameter_group(n, s, t):
    assert exp_nilpotent(n, s) @ exp_nilpotent(n, t) == exp_nilpotent(n, s + t)
    assert nilpotency_index(n) <= 4


@given(strictly_lower(3))
def test_float_exponential_agrees_with_exact(n):
    exact = exp_nilpotent(n, I).to_float()
    approx = expm_float(n, I)
    assert (exact - approx).is_zero(1e-30)


def test_non_nilpotent_is_rejected():
    with pytest.raises(ValueError):
        nilpotency_index(Matrix([[1, 0], [0, 0]]))


def test_mixed_mode_products_promote_to_float():
    a = Matrix([[1, 2], [3, 4]])
    f = a.to_float()
    assert (a @ f).mode == "float"
    assert ((a @ f) - (a @ a).to_float()).is_zero(1e-30)


def test_filtration_validation():
    e = Matrix.identity(3).rows
    with pytest.raises(ValueError):
        DecreasingFiltration({0: Subspace.span([e[0]], 3), 1: Subspace.span([e[0], e[1]], 3)})
    with pytest.raises(ValueError):
        IncreasingFiltration({0: Subspace.zero(3), 2: Subspace.full(3)})
    f = DecreasingFiltration.from_generators({2: [e[0]], 1: [e[1]]}, 3)
    assert f.dims() == {1: 2, 2: 1}
    assert f[0].is_full() and f[3].is_zero()
    assert f.top() == 2 and f.bottom() == 0
    assert [lvl for _, lvl in f.adapted_basis()] == [2, 1, 0]


def test_flag_equality_ignores_redundant_steps():
    e = Matrix.identity(2).rows
    a = DecreasingFiltration({1: Subspace.span([e[0]], 2)})
    b = DecreasingFiltration({0: Subspace.full(2), 1: Subspace.span([e[0]], 2), 2: Subspace.zero(2)})
    assert a == b


def test_float_flags_agree():
    e = Matrix.identity(2).rows
    a = DecreasingFiltration({1: Subspace.span([e[0]], 2)})
    b = DecreasingFiltration({1: Subspace.span([[2, 0]], 2)})
    c = DecreasingFiltration({1: Subspace.span([e[1]], 2)})
    assert float_flags_agree(a.to_float(), b.to_float())
    assert not float_flags_agree(a.to_float(), c.to_float())


def test_form_validation():
    with pytest.raises(ValueError):
        PolarizationForm(Matrix([[0, 1], [1, 0]]), skew=True)
    with pytest.raises(ValueError):
        PolarizationForm(Matrix([[0, 0], [0, 0]]), skew=False)
    q = PolarizationForm.for_weight([[0, -1], [1, 0]], 1)
    assert q.skew
    n = Matrix([[0, 1], [0, 0]])
    assert q.is_compatible(n)
    assert q.preserves(exp_nilpotent(n, 5))
    assert q.orthogonal(Subspace.span([[1, 0]], 2)) == Subspace.span([[1, 0]], 2)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=2, max_size=2), min_size=2, max_size=2))
def test_hermitian_gram_is_hermitian(rows):
    q = PolarizationForm.for_weight([[0, -1], [1, 0]], 1)
    basis = [[Scalar(a, 0, b) for a, b in [r, r[::-1]]] for r in rows]
    g = hermitian_gram(q, basis, 1)
    assert g == g.H


@pytest.mark.parametrize(
    "m,expected",
    [
        ([[2, 1], [1, 2]], Definiteness.POSITIVE),
        ([[-2, 1], [1, -2]], Definiteness.NEGATIVE),
        ([[0, 1], [1, 0]], Definiteness.INDEFINITE),
        ([[1, 1], [1, 1]], Definiteness.DEGENERATE),
    ],
)
def test_sylvester_exact(m, expected):
    assert definiteness(Matrix(m)) is expected


def test_float_near_zero_minor_is_inconclusive():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert definiteness(Matrix([[1, 1], [1, 1]]).to_float()) is Definiteness.DEGENERATE
    assert any(issubclass(w.category, InconclusiveWarning) for w in caught)
    assert definiteness(Matrix([[2, 1], [1, 2]]).to_float()) is Definiteness.POSITIVE


def test_float_equality_is_refused():
    a = Matrix([[1]]).to_float()
    with pytest.raises(TypeError):
        _ = a == a
