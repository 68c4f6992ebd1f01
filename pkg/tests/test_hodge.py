from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodgeorbit.case1111 import HODGE_1111
from hodgeorbit.hodge import (
    HodgeType,
    NotInPeriodDomain,
    PeriodDomainSpec,
    check_axioms,
    domain_dimension,
    flag,
    hodge_decomposition,
    is_hermitian_symmetric,
    isotropy_dim,
    lie_algebra,
    lie_bigrading,
)
from hodgeorbit.linalg import Matrix, PolarizationForm, exp_nilpotent, unvec
from hodgeorbit.scalars import I, Scalar


@pytest.fixture(scope="module")
def f0(examples):
    e = examples["III"]
    return e.spec, e.base_flag.apply(exp_nilpotent(e.N, I))


@pytest.fixture(scope="module")
def g_real(examples):
    return lie_algebra(examples["III"].spec.form)


def cayley(a: Matrix) -> Matrix | None:
    one = Matrix.identity(a.nrows)
    m = one - a
    if not m.det():
        return None
    return m.inverse() @ (one + a)


def test_hodge_type_validation():
    with pytest.raises(ValueError):
        HodgeType(1, {1: 1})
    with pytest.raises(ValueError):
        HodgeType(2, {1: -1})
    with pytest.raises(ValueError):
        HodgeType.from_pairs(3, {(2, 2): 1})
    t = HodgeType.from_pairs(3, {(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1})
    assert t == HODGE_1111
    assert t.rank == 4 and t.f(2) == 2 and t.f(4) == 0 and t.f(0) == 4


def test_spec_checks_form_parity():
    t = HodgeType(2, {2: 1, 1: 1, 0: 1})
    with pytest.raises(ValueError):
        PeriodDomainSpec(t, PolarizationForm.for_weight([[0, 0, 1], [0, 1, 0], [-1, 0, 0]], 3))


def test_reference_point_is_in_d(f0):
    spec, f = f0
    rep = check_axioms(spec, f)
    assert rep.as_dict() == {"H1": True, "H2": True, "P1": True, "P2": True, "in_D": True, "in_compact_dual": True}


def test_real_flag_is_boundary(examples):
    e = examples["III"]
    rep = check_axioms(e.spec, e.base_flag)
    assert rep.in_compact_dual and not rep.h2 and not rep.p2


def test_non_isotropic_top_step_breaks_p1(examples):
    spec = examples["III"].spec
    c = Matrix.identity(4).rows
    bad = flag({3: [c[0]], 2: [c[3]], 1: [c[1]]}, 4)
    assert not check_axioms(spec, bad).p1


def test_dimension_count_breaks_h1(examples):
    spec = examples["III"].spec
    c = Matrix.identity(4).rows
    assert not check_axioms(spec, flag({3: [c[0], c[1]]}, 4)).h1


def test_decomposition_and_weil_operator(f0):
    spec, f = f0
    dec = hodge_decomposition(spec, f)
    assert {pq: s.dim for pq, s in dec.parts.items()} == {(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1}
    c = dec.weil_operator()
    assert c.is_real()
    assert spec.form.preserves(c)
    for v, _ in dec.adapted_basis():
        n2 = dec.hodge_norm2(v)
        assert n2.is_real() and n2.sign() > 0
    v = tuple(Scalar(k) for k in (1, 2, 3, 4))
    parts = dec.components(v)
    assert tuple(sum(xs, Scalar(0)) for xs in zip(*parts.values())) == v


def test_lie_algebra_dimension(examples):
    assert lie_algebra(examples["III"].spec.form).dim == 10
    assert lie_algebra(PolarizationForm.for_weight([[0, -1], [1, 0]], 1)).dim == 3


def test_bigrading_exhausts_and_conjugates(f0, g_real):
    spec, f = f0
    big = lie_bigrading(spec, f)
    assert sum(s.dim for s in big.values()) == g_real.dim
    for (s, _), block in big.items():
        assert block.conj() == big[(-s, s)]


def test_dimensions_of_1111_domain(f0):
    spec, f = f0
    assert isotropy_dim(spec, f) == 2
    assert domain_dimension(spec, f) == 4


def test_isotropy_needs_a_point_of_d(examples):
    e = examples["III"]
    with pytest.raises(NotInPeriodDomain):
        isotropy_dim(e.spec, e.base_flag)


@settings(max_examples=15)
@given(st.lists(st.integers(-2, 2), min_size=10, max_size=10))
def test_group_action_preserves_d(f0, g_real, coeffs):
    spec, f = f0
    a = Matrix.zeros(4)
    for c, v in zip(coeffs, g_real.basis):
        a = a + unvec(v, 4) * c
    g = cayley(a / 3)
    if g is None:
        return
    assert spec.form.preserves(g)
    assert check_axioms(spec, f.apply(g)).in_domain


def test_hermitian_symmetric_table():
    assert is_hermitian_symmetric(HodgeType(1, {1: 2, 0: 2}))
    assert is_hermitian_symmetric(HodgeType(2, {2: 1, 1: 3, 0: 1}))
    assert not is_hermitian_symmetric(HODGE_1111)
