"""Polarized Hodge structures: axioms, decompositions and the Lie algebra of the form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .linalg import (
    DecreasingFiltration,
    Definiteness,
    Matrix,
    PolarizationForm,
    Subspace,
    definiteness,
    hermitian_gram,
    i_power,
    kernel,
    unvec,
)
from .scalars import ZERO

__all__ = [
    "HodgeType",
    "PeriodDomainSpec",
    "AxiomReport",
    "HodgeDecomposition",
    "NotInPeriodDomain",
    "check_axioms",
    "hodge_decomposition",
    "lie_algebra",
    "lie_bigrading",
    "isotropy_dim",
    "domain_dimension",
    "is_hermitian_symmetric",
    "flag",
]


class NotInPeriodDomain(ValueError):
    """Raised when an operation needs a point of the period domain."""


@dataclass(frozen=True)
class HodgeType:
    """Weight and Hodge numbers ``h^{p, w-p}``, keyed by ``p``."""

    weight: int
    numbers: Mapping[int, int]

    def __post_init__(self):
        nums = {int(p): int(h) for p, h in self.numbers.items() if h}
        if any(h < 0 for h in nums.values()):
            raise ValueError("Hodge numbers must be non-negative")
        if not nums:
            raise ValueError("at least one Hodge number must be positive")
        object.__setattr__(self, "numbers", dict(sorted(nums.items())))
        if self.weight % 2 and self.rank % 2:
            raise ValueError("odd weight needs even rank")

    @classmethod
    def from_pairs(cls, weight: int, pairs: Mapping[tuple[int, int], int]) -> "HodgeType":
        for (p, q) in pairs:
            if p + q != weight:
                raise ValueError(f"h^{{{p},{q}}} does not have weight {weight}")
        return cls(weight, {p: h for (p, _), h in pairs.items()})

    def h(self, p: int) -> int:
        return self.numbers.get(p, 0)

    @property
    def rank(self) -> int:
        return sum(self.numbers.values())

    @property
    def p_max(self) -> int:
        return max(self.numbers)

    @property
    def p_min(self) -> int:
        return min(self.numbers)

    @property
    def h_odd(self) -> int:
        return sum(h for p, h in self.numbers.items() if p % 2)

    @property
    def h_even(self) -> int:
        return sum(h for p, h in self.numbers.items() if not p % 2)

    def f(self, p: int) -> int:
        """``dim F^p``."""
        return sum(h for r, h in self.numbers.items() if r >= p)

    def is_symmetric(self) -> bool:
        w = self.weight
        return all(self.h(p) == self.h(w - p) for p in self.numbers)

    def pairs(self) -> dict[tuple[int, int], int]:
        return {(p, self.weight - p): h for p, h in self.numbers.items()}


@dataclass(frozen=True)
class PeriodDomainSpec:
    hodge_type: HodgeType
    form: PolarizationForm
    reference: DecreasingFiltration | None = None

    def __post_init__(self):
        if self.form.n != self.hodge_type.rank:
            raise ValueError(
                f"form has size {self.form.n} but the Hodge numbers sum to {self.hodge_type.rank}"
            )
        if self.form.skew != bool(self.hodge_type.weight % 2):
            raise ValueError("form symmetry does not match the weight parity")
        if not self.hodge_type.is_symmetric():
            raise ValueError("Hodge numbers must satisfy h^{p,q} = h^{q,p}")

    @property
    def weight(self) -> int:
        return self.hodge_type.weight

    @property
    def n(self) -> int:
        return self.form.n


@dataclass
class AxiomReport:
    h1: bool
    h2: bool
    p1: bool
    p2: bool
    details: dict = field(default_factory=dict)

    @property
    def in_domain(self) -> bool:
        return self.h1 and self.h2 and self.p1 and self.p2

    @property
    def in_compact_dual(self) -> bool:
        return self.h1 and self.p1

    def as_dict(self) -> dict:
        return {
            "H1": self.h1,
            "H2": self.h2,
            "P1": self.p1,
            "P2": self.p2,
            "in_D": self.in_domain,
            "in_compact_dual": self.in_compact_dual,
        }


def flag(gens: Mapping[int, list], n: int) -> DecreasingFiltration:
    """Shorthand for a flag whose ``F^p`` is spanned by generators at levels ``>= p``."""
    return DecreasingFiltration.from_generators(gens, n)


def _index_range(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> range:
    t = spec.hodge_type
    return range(min(t.p_min, filt.lo) - 1, max(t.p_max, filt.hi) + 2)


def _pairing_vanishes(form: PolarizationForm, a: Subspace, b: Subspace) -> bool:
    if a.is_zero() or b.is_zero():
        return True
    return (Matrix(a.basis) @ form.matrix @ Matrix(b.basis).T).is_zero()


def _blocks(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> dict[tuple[int, int], Subspace]:
    w = spec.weight
    out = {}
    for p in _index_range(spec, filt):
        s = filt[p] & filt[w - p].conj()
        if not s.is_zero():
            out[(p, w - p)] = s
    return out


def check_axioms(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> AxiomReport:
    """Evaluate H1, H2, P1 and P2 for a flag.

    P2 is only meaningful once the blocks ``F^p ∩ conj F^{w-p}`` form a
    decomposition, so it is reported as failing whenever H2 fails.
    """
    if filt.ambient != spec.n:
        raise ValueError(f"flag lives in dimension {filt.ambient}, spec has rank {spec.n}")
    t, w, form = spec.hodge_type, spec.weight, spec.form
    idx = _index_range(spec, filt)
    dims = {p: filt[p].dim for p in idx}
    h1 = all(dims[p] == t.f(p) for p in idx)

    blocks = _blocks(spec, filt)
    total = sum(s.dim for s in blocks.values())
    span = Subspace.zero(spec.n)
    for s in blocks.values():
        span = span + s
    h2 = total == spec.n and span.is_full()

    p1 = all(_pairing_vanishes(form, filt[p], filt[w + 1 - p]) for p in idx)

    verdicts = {}
    for (p, q), s in blocks.items():
        verdicts[f"{p},{q}"] = definiteness(hermitian_gram(form, s.basis, p - q)).value
    p2 = h2 and all(v == Definiteness.POSITIVE.value for v in verdicts.values())
    details = {
        "dims": {str(p): dims[p] for p in idx},
        "block_dims": {f"{p},{q}": s.dim for (p, q), s in blocks.items()},
        "block_definiteness": verdicts,
    }
    return AxiomReport(h1, h2, p1, p2, details)


@dataclass(frozen=True)
class HodgeDecomposition:
    """``H^{p,q}`` blocks of a pure Hodge structure, keyed by ``(p, q)``."""

    parts: Mapping[tuple[int, int], Subspace]
    form: PolarizationForm

    def __getitem__(self, pq: tuple[int, int]) -> Subspace:
        return self.parts.get(pq, Subspace.zero(self.form.n))

    def adapted_basis(self) -> list[tuple[tuple, tuple[int, int]]]:
        """Basis vectors tagged with their ``(p, q)``, highest ``p`` first."""
        return [
            (v, pq) for pq in sorted(self.parts, reverse=True) for v in self.parts[pq].basis
        ]

    def basis_matrix(self) -> Matrix:
        return Matrix.from_columns([v for v, _ in self.adapted_basis()])

    def components(self, v) -> dict[tuple[int, int], tuple]:
        """Split ``v`` along the decomposition."""
        tagged = self.adapted_basis()
        b = self.basis_matrix()
        coeffs = b.inverse().apply(v)
        n = self.form.n
        out: dict[tuple[int, int], list] = {}
        for c, (vec, pq) in zip(coeffs, tagged):
            acc = out.setdefault(pq, [ZERO] * n)
            out[pq] = [a + c * x for a, x in zip(acc, vec)]
        return {pq: tuple(x) for pq, x in out.items()}

    def weil_operator(self) -> Matrix:
        """``C`` acting as ``i^{p-q}`` on ``H^{p,q}``."""
        tagged = self.adapted_basis()
        b = self.basis_matrix()
        return b @ Matrix.diag([i_power(p - q) for _, (p, q) in tagged]) @ b.inverse()

    def hodge_norm2(self, v):
        """``<C v, conj v>``, positive for ``v != 0`` at a point of D."""
        c = self.weil_operator()
        return self.form.pair(c.apply(v), [x.conjugate() for x in v])


def hodge_decomposition(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> HodgeDecomposition:
    rep = check_axioms(spec, filt)
    if not (rep.h1 and rep.h2):
        raise ValueError("flag does not define a Hodge decomposition (H1 or H2 fails)")
    return HodgeDecomposition(_blocks(spec, filt), spec.form)


# -- Lie algebra of the form -------------------------------------------
def _compatibility_rows(form: PolarizationForm) -> list[list]:
    """Rows of the linear map ``vec(a) -> vec(a^T Q + Q a)``."""
    n = form.n
    q = form.matrix
    rows = []
    for k in range(n):
        for ell in range(n):
            r = [ZERO] * (n * n)
            for i in range(n):
                r[i * n + k] = r[i * n + k] + q[i, ell]
            for j in range(n):
                r[j * n + ell] = r[j * n + ell] + q[k, j]
            rows.append(r)
    return rows


def lie_algebra(form: PolarizationForm) -> Subspace:
    """``g_C`` as a subspace of row-major flattened ``n x n`` matrices."""
    return kernel(Matrix(_compatibility_rows(form)))


def _stabilizer_rows(filt: DecreasingFiltration) -> list[list]:
    n = filt.ambient
    rows = []
    for p in filt.indices():
        s = filt[p]
        if s.is_zero() or s.is_full():
            continue
        for a in kernel(Matrix(s.basis)).basis:
            for f in s.basis:
                rows.append([a[i] * f[j] for i in range(n) for j in range(n)])
    return rows


def _require_domain(spec, filt):
    if not check_axioms(spec, filt).in_domain:
        raise NotInPeriodDomain("flag is not a point of the period domain")


def lie_bigrading(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> dict[tuple[int, int], Subspace]:
    """Blocks ``g^{s,-s}`` of ``g_C`` raising the Hodge level by ``s``."""
    _require_domain(spec, filt)
    dec = hodge_decomposition(spec, filt)
    tagged = dec.adapted_basis()
    b = dec.basis_matrix()
    binv = b.inverse()
    n = spec.n
    levels = [pq[0] for _, pq in tagged]
    g = lie_algebra(spec.form)
    out = {}
    spread = spec.hodge_type.p_max - spec.hodge_type.p_min
    for s in range(-spread, spread + 1):
        gens = []
        for i in range(n):
            for j in range(n):
                if levels[i] == levels[j] + s:
                    # b E_ij b^{-1} is the outer product of column i and row j
                    col, row = b.col(i), binv.row(j)
                    gens.append(tuple(x * y for x in col for y in row))
        if not gens:
            continue
        block = Subspace.span(gens, n * n) & g
        if not block.is_zero():
            out[(s, -s)] = block
    if sum(v.dim for v in out.values()) != g.dim:
        raise ArithmeticError("Lie bigrading does not exhaust g_C")
    return out


def block_matrices(block: Subspace, n: int) -> list[Matrix]:
    return [unvec(v, n) for v in block.basis]


def isotropy_dim(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> int:
    """Real dimension of the stabilizer of ``filt`` in ``g_R``."""
    _require_domain(spec, filt)
    rows = _compatibility_rows(spec.form) + _stabilizer_rows(filt)
    b = kernel(Matrix(rows))
    return (b & b.conj()).dim


def domain_dimension(spec: PeriodDomainSpec, filt: DecreasingFiltration) -> int:
    """Complex dimension of D, from ``dim g`` and the isotropy dimension."""
    return (lie_algebra(spec.form).dim - isotropy_dim(spec, filt)) // 2


def is_hermitian_symmetric(t: HodgeType) -> bool:
    """Whether the Hodge numbers fall in one of the classical shapes."""
    nz = {p: h for p, h in t.numbers.items() if h}
    w = t.weight
    if w % 2:
        m = (w - 1) // 2
        return set(nz) <= {m, m + 1}
    m = w // 2
    if set(nz) - {m} == {m - 1, m + 1}:
        return nz[m - 1] == nz[m + 1] == 1
    if m in nz:
        return False
    for a in range(2, w + 1):
        ps = {m + a, m + a - 1, m - a, m - a + 1}
        if set(nz) == ps and all(nz[p] == 1 for p in ps):
            return True
    return False
