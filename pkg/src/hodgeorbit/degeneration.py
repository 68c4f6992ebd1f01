"""Nilpotent cones, weight filtrations, Deligne bigradings and nilpotent-orbit certificates."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .hodge import PeriodDomainSpec, check_axioms
from .linalg import (
    DecreasingFiltration,
    IncreasingFiltration,
    Matrix,
    PolarizationForm,
    Subspace,
    bracket,
    i_power,
    kernel,
    nilpotency_index,
)
from .poly import Poly, cauchy_bound, poly_leading_minors
from .scalars import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "NilpotentCone",
    "MixedHodge",
    "DeligneBigrading",
    "NotMixedHodge",
    "MinorBound",
    "EventualPositivityCertificate",
    "OrbitVerification",
    "weight_filtration",
    "weight_filtration_oracle",
    "deligne_bigrading",
    "is_r_split",
    "is_horizontal",
    "signed_minor_polys",
    "signed_minors",
    "verify_nilpotent_orbit",
    "default_rays",
]


class NotMixedHodge(ValueError):
    """The pair (W, F) does not admit a Deligne splitting."""


@dataclass(frozen=True)
class NilpotentCone:
    """Cone spanned by commuting, rational, form-compatible nilpotents."""

    generators: tuple[Matrix, ...]
    form: PolarizationForm

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        n = self.form.n
        for k, g in enumerate(gens):
            if g.shape != (n, n):
                raise ValueError(f"generator {k} has shape {g.shape}, expected {(n, n)}")
            if g.mode != "exact" or not all(x.is_rational() for r in g.rows for x in r):
                raise ValueError(f"generator {k} is not rational")
            nilpotency_index(g)
            if not self.form.is_compatible(g):
                raise ValueError(f"generator {k} is not compatible with the form")
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if not bracket(gens[a], gens[b]).is_zero():
                    raise ValueError(f"generators {a} and {b} do not commute")
        if len(gens) > 1:
            vecs = [tuple(x for r in g.rows for x in r) for g in gens]
            if Subspace.span(vecs, n * n).dim != len(gens):
                raise ValueError("cone is not simplicial: generators are dependent")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def combination(self, coeffs: Sequence) -> Matrix:
        n = self.form.n
        out = Matrix.zeros(n)
        for c, g in zip(coeffs, self.generators):
            out = out + g * c
        return out

    def face(self, rays: Sequence[int]) -> "NilpotentCone":
        return NilpotentCone(tuple(self.generators[j] for j in rays), self.form)


# -- weight filtration -------------------------------------------------
def _preimage(m: Matrix, target: Subspace) -> Subspace:
    """``{x : m x in target}``."""
    n = m.nrows
    if target.is_full():
        return Subspace.full(m.ncols)
    ann = kernel(Matrix(target.basis)) if not target.is_zero() else Subspace.full(n)
    return kernel(Matrix(ann.basis) @ m)


def _relative_weights(n_mat: Matrix, top: Subspace, bottom: Subspace, w: int) -> dict[int, Subspace]:
    """Weight filtration of ``n_mat`` on the subquotient ``top / bottom``."""
    if top <= bottom:
        return {}
    ell = 0
    power = n_mat
    while not top.image(power) <= bottom:
        ell += 1
        power = power @ n_mat
    if ell == 0:
        return {w - 1: bottom, w: top}
    p_ell = n_mat ** ell
    ker_rel = top & _preimage(p_ell, bottom)
    im_rel = top.image(p_ell) + bottom
    steps = {w - ell - 1: bottom, w - ell: im_rel, w + ell - 1: ker_rel, w + ell: top}
    steps.update(_relative_weights(n_mat, ker_rel, im_rel, w))
    return steps


def _fill(steps: Mapping[int, Subspace]) -> dict[int, Subspace]:
    lo, hi = min(steps), max(steps)
    out = {}
    cur = steps[lo]
    for k in range(lo, hi + 1):
        cur = steps.get(k, cur)
        out[k] = cur
    return out


def weight_filtration(n_mat: Matrix, w: int) -> IncreasingFiltration:
    """Monodromy weight filtration of a nilpotent endomorphism, centred at ``w``.

    Built by peeling off ``ker N^l`` and ``im N^l`` for the top power
    ``l`` and recursing on the induced map on ``ker N^l / im N^l``.
    """
    if not n_mat.is_square():
        raise ValueError("weight filtration needs a square matrix")
    nilpotency_index(n_mat)
    n = n_mat.nrows
    steps = _relative_weights(n_mat, Subspace.full(n), Subspace.zero(n), w)
    return IncreasingFiltration(_fill(steps))


def weight_filtration_oracle(n_mat: Matrix, w: int) -> IncreasingFiltration:
    """Closed form ``W_{w+k} = sum_{j >= max(0,-k)} ker N^{j+k+1} ∩ im N^j``."""
    n = n_mat.nrows
    ell = nilpotency_index(n_mat) - 1
    if ell <= 0:
        return IncreasingFiltration({w - 1: Subspace.zero(n), w: Subspace.full(n)})
    powers = [n_mat ** j for j in range(2 * ell + 2)]
    kers = [kernel(p) for p in powers]
    ims = [Subspace.span(p.columns(), n) for p in powers]
    steps = {}
    for k in range(-ell - 1, ell + 1):
        acc = Subspace.zero(n)
        for j in range(max(0, -k), ell + 1):
            if j + k + 1 < len(kers):
                acc = acc + (kers[j + k + 1] & ims[j])
        steps[w + k] = acc
    return IncreasingFiltration(steps)


# -- Deligne bigrading -------------------------------------------------
@dataclass(frozen=True)
class MixedHodge:
    W: IncreasingFiltration
    F: DecreasingFiltration

    def __post_init__(self):
        if self.W.ambient != self.F.ambient:
            raise ValueError("W and F live in different dimensions")

    @property
    def n(self) -> int:
        return self.F.ambient


@dataclass(frozen=True)
class DeligneBigrading:
    parts: Mapping[tuple[int, int], Subspace]
    n: int

    def __getitem__(self, pq: tuple[int, int]) -> Subspace:
        return self.parts.get(pq, Subspace.zero(self.n))

    def dims(self) -> dict[tuple[int, int], int]:
        return {pq: s.dim for pq, s in sorted(self.parts.items())}

    def adapted_basis(self) -> list[tuple[tuple, tuple[int, int]]]:
        return [(v, pq) for pq in sorted(self.parts, reverse=True) for v in self.parts[pq].basis]

    def basis_matrix(self) -> Matrix:
        return Matrix.from_columns([v for v, _ in self.adapted_basis()])

    def flag_part(self, p: int) -> Subspace:
        """``⊕_{r >= p} I^{r,s}``."""
        return _sum_parts(self.n, (s for (r, _), s in self.parts.items() if r >= p))

    def weight_part(self, k: int) -> Subspace:
        """``⊕_{r+s <= k} I^{r,s}``."""
        return _sum_parts(self.n, (s for (r, q), s in self.parts.items() if r + q <= k))


def _sum_parts(n: int, parts) -> Subspace:
    acc = Subspace.zero(n)
    for s in parts:
        acc = acc + s
    return acc


def deligne_bigrading(m: MixedHodge) -> DeligneBigrading:
    """The canonical splitting ``I^{p,q}`` of a mixed Hodge structure.

    Validity is checked after the fact: the blocks must be a direct sum and
    must rebuild both ``F`` and ``W``.
    """
    F, W, n = m.F, m.W, m.n
    cF = F.conj()
    lo, hi = F.bottom(), F.top()
    parts = {}
    for p in range(lo, hi + 1):
        for q in range(lo, hi + 1):
            k = p + q
            inner = cF[q] & W[k]
            for j in range(1, max(1, q - lo) + 2):
                inner = inner + (cF[q - j] & W[k - j - 1])
            block = F[p] & W[k] & inner
            if not block.is_zero():
                parts[(p, q)] = block
    big = DeligneBigrading(parts, n)
    if sum(s.dim for s in parts.values()) != n or not _sum_parts(n, parts.values()).is_full():
        raise NotMixedHodge("Deligne blocks do not split the space")
    for p in range(F.lo - 1, F.hi + 2):
        if big.flag_part(p) != F[p]:
            raise NotMixedHodge(f"Deligne blocks do not rebuild F^{p}")
    for k in range(W.lo - 1, W.hi + 2):
        if big.weight_part(k) != W[k]:
            raise NotMixedHodge(f"Deligne blocks do not rebuild W_{k}")
    return big


def is_r_split(m: MixedHodge, bigrading: DeligneBigrading | None = None) -> bool:
    big = bigrading or deligne_bigrading(m)
    keys = set(big.parts) | {(q, p) for p, q in big.parts}
    return all(big[(p, q)].conj() == big[(q, p)] for p, q in keys)


# -- nilpotent orbits ----------------------------------------------------
def is_horizontal(n_mat: Matrix, filt: DecreasingFiltration) -> bool:
    """``N F^p ⊆ F^{p-1}`` for every ``p``."""
    return all(filt[p].image(n_mat) <= filt[p - 1] for p in range(filt.lo, filt.hi + 2))


def _poly_exp(n_mat: Matrix) -> list[list[Poly]]:
    """Entries of ``exp(i y N)`` as polynomials in ``y``."""
    k_max = nilpotency_index(n_mat)
    size = n_mat.nrows
    powers = [Matrix.identity(size)]
    for _ in range(1, k_max):
        powers.append(powers[-1] @ n_mat)
    fact = 1
    scales = []
    for k in range(k_max):
        fact = fact * k if k else 1
        scales.append(i_power(k) / fact)
    return [
        [Poly([scales[k] * powers[k][r, c] for k in range(k_max)]) for c in range(size)]
        for r in range(size)
    ]


def _level_signs(levels: Sequence[int]) -> list[int]:
    out, acc = [], 1
    for p in levels:
        acc *= -1 if p % 2 else 1
        out.append(acc)
    return out


def signed_minor_polys(
    n_mat: Matrix, filt: DecreasingFiltration, form: PolarizationForm, w: int
) -> list[tuple[int, Poly]]:
    """Signed leading minors of ``i^{-w}<u, conj v>`` along ``exp(iyN) filt``.

    The basis is adapted to the flag, top step first; for a flag in the
    compact dual all returned polynomials are positive at ``y`` exactly
    when ``exp(iyN) filt`` lies in D.  Each entry is ``(level, minor)``.
    """
    tagged = filt.adapted_basis()
    e = _poly_exp(n_mat)
    q = form.matrix
    vecs = [[sum((e[r][c] * v[c] for c in range(len(v))), Poly()) for r in range(len(v))] for v, _ in tagged]
    bars = [[x.conj() for x in u] for u in vecs]
    qbars = [[sum((bar[c] * q[r, c] for c in range(len(bar))), Poly()) for r in range(len(bar))] for bar in bars]
    twist = i_power(-w)
    gram = [
        [sum((a * b for a, b in zip(u, qb)), Poly()) * twist for qb in qbars]
        for u in vecs
    ]
    minors = poly_leading_minors(gram)
    signs = _level_signs([p for _, p in tagged])
    return [(p, m * s) for (_, p), m, s in zip(tagged, minors, signs)]


def signed_minors(filt: DecreasingFiltration, form: PolarizationForm, w: int) -> list:
    """Signed leading minors for a fixed flag; all positive iff a compact-dual flag is in D."""
    n = form.n
    return [m.coeff(0) for _, m in signed_minor_polys(Matrix.zeros(n), filt, form, w)]


@dataclass(frozen=True)
class MinorBound:
    level: int
    poly: Poly
    leading: Scalar
    root_bound: Fraction


@dataclass
class EventualPositivityCertificate:
    """Positivity of every signed minor for ``y > y0`` along one ray."""

    y0: Fraction
    ray: tuple
    blocks: dict[tuple[int, int], list[MinorBound]]

    def leading_coefficients(self) -> list[Scalar]:
        return [mb.leading for bs in self.blocks.values() for mb in bs]

    def as_dict(self) -> dict:
        return {
            "y0": str(self.y0),
            "ray": [str(c) for c in self.ray],
            "blocks": {
                f"{p},{q}": [
                    {
                        "poly": [str(c) for c in mb.poly.coeffs],
                        "leading": str(mb.leading),
                        "root_bound": str(mb.root_bound),
                    }
                    for mb in bs
                ]
                for (p, q), bs in sorted(self.blocks.items(), reverse=True)
            },
        }


@dataclass
class OrbitVerification:
    horizontal: bool
    compact_dual: bool
    certificates: list[EventualPositivityCertificate] = field(default_factory=list)
    failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    @property
    def y0(self) -> Fraction | None:
        if not self.ok:
            return None
        return max((c.y0 for c in self.certificates), default=Fraction(0))

    @property
    def certificate(self) -> EventualPositivityCertificate | None:
        return self.certificates[0] if self.certificates else None

    def as_dict(self) -> dict:
        return {
            "horizontality": self.horizontal,
            "compact_dual": self.compact_dual,
            "ok": self.ok,
            "failure": self.failure,
            "y0": None if self.y0 is None else str(self.y0),
            "certificates": [c.as_dict() for c in self.certificates],
        }


def default_rays(rank: int) -> list[tuple[Fraction, ...]]:
    """The diagonal ray, then each unit vector added to it."""
    if rank == 0:
        return [()]
    diag = tuple(Fraction(1) for _ in range(rank))
    rays = [diag]
    if rank > 1:
        for j in range(rank):
            rays.append(tuple(Fraction(2 if k == j else 1) for k in range(rank)))
    return rays


def _certify_ray(cone, filt, spec, ray) -> EventualPositivityCertificate | str:
    w = spec.weight
    n_ray = cone.combination(ray) if cone.rank else Matrix.zeros(spec.n)
    blocks: dict[tuple[int, int], list[MinorBound]] = {}
    y0 = Fraction(0)
    for level, m in signed_minor_polys(n_ray, filt, spec.form, w):
        if not m:
            return f"signed minor at level {level} vanishes identically"
        lead = m.lead
        if not lead.is_real():
            raise ArithmeticError("Gram minor has a non-real leading coefficient")
        if lead.sign() <= 0:
            return f"signed minor at level {level} has leading coefficient {lead}"
        bound = cauchy_bound(m)
        y0 = max(y0, bound)
        blocks.setdefault((level, w - level), []).append(MinorBound(level, m, lead, bound))
    return EventualPositivityCertificate(y0, tuple(ray), blocks)


def verify_nilpotent_orbit(
    cone: NilpotentCone,
    filt: DecreasingFiltration,
    spec: PeriodDomainSpec,
    rays: Sequence[Sequence] | None = None,
) -> OrbitVerification:
    """Check horizontality and certify ``exp(i y N) F ∈ D`` for large ``y``.

    Rank-one cones get an exact certificate: every signed minor is a
    polynomial in ``y`` with positive leading coefficient, and ``y0``
    dominates their Cauchy bounds.  Higher-rank cones are certified on
    ``rays`` (default :func:`default_rays`).
    """
    horizontal = all(is_horizontal(g, filt) for g in cone.generators)
    rep = check_axioms(spec, filt)
    res = OrbitVerification(horizontal, rep.in_compact_dual)
    if not horizontal:
        res.failure = "horizontality fails"
        return res
    if not rep.in_compact_dual:
        res.failure = "flag is not in the compact dual"
        return res
    if rays is None:
        rays = default_rays(cone.rank)
    for ray in rays:
        ray = tuple(Fraction(c) for c in ray)
        cert = _certify_ray(cone, filt, spec, ray)
        if isinstance(cert, str):
            res.failure = cert
            return res
        res.certificates.append(cert)
    return res
