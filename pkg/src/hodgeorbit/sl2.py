"""sl2-triples attached to R-split limiting mixed Hodge structures, and the operator X."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .degeneration import (
    DeligneBigrading,
    MixedHodge,
    NilpotentCone,
    NotMixedHodge,
    OrbitVerification,
    deligne_bigrading,
    is_r_split,
    verify_nilpotent_orbit,
    weight_filtration,
)
from .hodge import HodgeDecomposition, PeriodDomainSpec, check_axioms, hodge_decomposition
from .linalg import (
    DecreasingFiltration,
    Matrix,
    bracket,
    exp_nilpotent,
    expm_float,
    float_flags_agree,
    nilpotency_index,
    solve,
    vec,
    unvec,
)
from .scalars import I, Scalar, sqrt_rational

__all__ = [
    "Sl2Triple",
    "Sl2OrbitData",
    "OrbitDataError",
    "grading_operator",
    "raising_operator",
    "build_orbit_data",
    "xn_relation_check",
    "maps_hodge_type",
    "unit_vector",
]


class OrbitDataError(ValueError):
    """Inputs do not determine valid SL(2)-orbit data."""


@dataclass(frozen=True)
class Sl2Triple:
    N: Matrix
    H: Matrix
    Nplus: Matrix

    def relations_hold(self) -> bool:
        """``[N+, N] = H``, ``[H, N] = -2N`` and ``[H, N+] = 2N+``."""
        return (
            bracket(self.Nplus, self.N) == self.H
            and bracket(self.H, self.N) == self.N * -2
            and bracket(self.H, self.Nplus) == self.Nplus * 2
        )


def grading_operator(bigrading: DeligneBigrading, w: int) -> Matrix:
    """Semisimple ``H`` acting on ``I^{p,q}`` by ``p + q - w``."""
    tagged = bigrading.adapted_basis()
    b = bigrading.basis_matrix()
    h = b @ Matrix.diag([p + q - w for _, (p, q) in tagged]) @ b.inverse()
    if not h.is_real():
        raise OrbitDataError("grading operator is not real; bigrading is not R-split")
    return h


def _linear_map_matrix(fn, n: int) -> Matrix:
    cols = []
    for i in range(n):
        for j in range(n):
            e = Matrix([[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)])
            cols.append(vec(fn(e)))
    return Matrix.from_columns(cols)


def raising_operator(n_mat: Matrix, h: Matrix) -> Matrix:
    """The unique ``N+`` with ``[N+, N] = H`` and ``[H, N+] = 2 N+``."""
    nilpotency_index(n_mat)
    if bracket(h, n_mat) != n_mat * -2:
        raise OrbitDataError("[H, N] != -2N; (N, H) cannot be completed")
    n = n_mat.nrows
    a1 = _linear_map_matrix(lambda x: bracket(x, n_mat), n)
    a2 = _linear_map_matrix(lambda x: bracket(h, x) - x * 2, n)
    system = Matrix(a1.rows + a2.rows)
    rhs = vec(h) + tuple(0 for _ in range(n * n))
    sol, nullity = solve(system, rhs)
    if sol is None:
        raise OrbitDataError("no N+ solves the sl2 relations")
    if nullity:
        raise OrbitDataError(f"N+ is not unique (solution space of dimension {nullity})")
    return unvec(sol, n)


def maps_hodge_type(op: Matrix, dec: HodgeDecomposition, shift: int) -> bool:
    """Whether ``op`` sends each ``H^{p,q}`` into ``H^{p+shift, q-shift}``."""
    for (p, q), s in dec.parts.items():
        target = dec[(p + shift, q - shift)]
        if not s.image(op) <= target:
            return False
    return True


def unit_vector(dec: HodgeDecomposition, pq: tuple[int, int]) -> tuple:
    """The echelon generator of a one-dimensional ``H^{p,q}``, scaled to Hodge norm 1."""
    s = dec[pq]
    if s.dim != 1:
        raise ValueError(f"H^{pq} has dimension {s.dim}, expected 1")
    v = s.basis[0]
    n2 = dec.hodge_norm2(v)
    if not n2.is_rational():
        raise ArithmeticError("Hodge norm is not rational")
    scale = sqrt_rational(n2.to_fraction()).inverse()
    return tuple(scale * x for x in v)


@dataclass(frozen=True)
class Sl2OrbitData:
    spec: PeriodDomainSpec
    triple: Sl2Triple
    base_flag: DecreasingFiltration
    F0: DecreasingFiltration
    X: Matrix
    bigrading: DeligneBigrading
    decomposition: HodgeDecomposition
    orbit: OrbitVerification

    @property
    def N(self) -> Matrix:
        return self.triple.N

    @property
    def H(self) -> Matrix:
        return self.triple.H

    @property
    def Nplus(self) -> Matrix:
        return self.triple.Nplus

    @property
    def weight(self) -> int:
        return self.spec.weight


def build_orbit_data(n_mat: Matrix, base_flag: DecreasingFiltration, spec: PeriodDomainSpec) -> Sl2OrbitData:
    """Assemble ``(N, H, N+)``, ``F0 = exp(iN) F̂`` and ``X = (iN - H + iN+)/2``."""
    w = spec.weight
    mhs = MixedHodge(weight_filtration(n_mat, w), base_flag)
    try:
        big = deligne_bigrading(mhs)
    except NotMixedHodge as exc:
        raise OrbitDataError(f"(W(N), F̂) is not a mixed Hodge structure: {exc}") from exc
    if not is_r_split(mhs, big):
        raise OrbitDataError("(W(N), F̂) is not R-split")
    orbit = verify_nilpotent_orbit(NilpotentCone((n_mat,), spec.form), base_flag, spec)
    if not orbit.ok:
        raise OrbitDataError(f"not a nilpotent orbit: {orbit.failure}")
    h = grading_operator(big, w)
    nplus = raising_operator(n_mat, h)
    triple = Sl2Triple(n_mat, h, nplus)
    for name, op in (("N", n_mat), ("H", h), ("N+", nplus)):
        if not spec.form.is_compatible(op) or not op.is_real():
            raise OrbitDataError(f"{name} is not in g_R")
    f0 = base_flag.apply(exp_nilpotent(n_mat, I))
    if not check_axioms(spec, f0).in_domain:
        raise OrbitDataError("exp(iN) F̂ is not in D")
    x = (n_mat * I - h + nplus * I) / 2
    dec = hodge_decomposition(spec, f0)
    if not maps_hodge_type(x, dec, -1) or not maps_hodge_type(x.conj(), dec, 1):
        raise OrbitDataError("X is not of Hodge type (-1, 1) at F0")
    return Sl2OrbitData(spec, triple, base_flag, f0, x, big, dec, orbit)


def xn_relation_check(data: Sl2OrbitData, y, x_override: Matrix | None = None) -> bool:
    """Compare ``exp(y/(2+y) X) F0`` with ``exp(iyN) F0`` as flags."""
    y = Fraction(y)
    x = data.X if x_override is None else x_override
    t = Scalar(y / (2 + y))
    rhs = data.F0.apply(exp_nilpotent(data.N, I * Scalar(y)))
    try:
        gx = exp_nilpotent(x, t)
    except ValueError:
        # a non-nilpotent override has no exact exponential; compare in float mode
        lhs = data.F0.to_float().apply(expm_float(x, t))
        return float_flags_agree(lhs, rhs.to_float())
    return data.F0.apply(gx) == rhs
