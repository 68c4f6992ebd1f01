"""Base cycles, cycle-space membership, exp(X)-fixed points and positivity radii (odd weight)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .degeneration import deligne_bigrading
from .hodge import HodgeType
from .linalg import (
    DecreasingFiltration,
    Definiteness,
    InconclusiveWarning,
    Matrix,
    PolarizationForm,
    Subspace,
    definiteness,
    exp_nilpotent,
    hermitian_gram,
    i_power,
    nilpotency_index,
)
from .poly import Poly, poly_det, poly_gcd, smallest_positive_root
from .scalars import I, ONE, ZERO, Scalar, format_sqrt_rational, sqrt_rational
from .sl2 import Sl2OrbitData

__all__ = [
    "ParityProfile",
    "CyclePair",
    "CycleVerdict",
    "FixedPointResult",
    "RadiusResult",
    "MEpsilonSample",
    "parity_profile",
    "base_pair",
    "base_cycle_point",
    "cvw_contains",
    "in_cycle_space",
    "translate_pair",
    "fixed_point_search",
    "positivity_radius",
    "m_epsilon_sample",
    "DIRECTIONS",
]

# unit directions used to confirm that the Gram determinants only see |z|
DIRECTIONS = (Scalar(1), Scalar(Fraction(3, 5), 0, Fraction(4, 5)), I)


@dataclass(frozen=True)
class ParityProfile:
    """``f^p_even`` and ``f^p_odd``: dimensions of ``F^p`` inside ``H^even`` and ``H^odd``."""

    even: dict[int, int]
    odd: dict[int, int]

    def indices(self) -> list[int]:
        return sorted(self.even)


def parity_profile(t: HodgeType) -> ParityProfile:
    if not t.weight % 2:
        raise ValueError("parity profiles are only defined for odd weight")
    ps = range(t.p_min, t.p_max + 2)
    even = {p: sum(t.h(r) for r in range(p, t.p_max + 1) if r % 2 == 0) for p in ps}
    odd = {p: sum(t.h(r) for r in range(p, t.p_max + 1) if r % 2) for p in ps}
    return ParityProfile(even, odd)


@dataclass(frozen=True)
class CyclePair:
    """Isotropic pair ``(V, W)`` cutting out ``C_{V,W}``."""

    V: Subspace
    W: Subspace
    form: PolarizationForm

    def __post_init__(self):
        for name, s in (("V", self.V), ("W", self.W)):
            if not s.is_zero() and not (Matrix(s.basis) @ self.form.matrix @ Matrix(s.basis).T).is_zero():
                raise ValueError(f"{name} is not isotropic")

    def translate(self, g: Matrix) -> "CyclePair":
        return CyclePair(self.V.image(g), self.W.image(g), self.form)


def base_pair(data: Sl2OrbitData) -> CyclePair:
    """``(H^even, H^odd)`` for the Hodge decomposition at ``F0``."""
    if not data.weight % 2:
        raise ValueError("cycle pairs need odd weight")
    n = data.spec.n
    dec = data.decomposition
    even = [v for v, (p, _) in dec.adapted_basis() if p % 2 == 0]
    odd = [v for v, (p, _) in dec.adapted_basis() if p % 2]
    return CyclePair(Subspace.span(even, n), Subspace.span(odd, n), data.spec.form)


def translate_pair(data: Sl2OrbitData, z) -> CyclePair:
    """``exp(zX)`` applied to the base pair."""
    return base_pair(data).translate(exp_nilpotent(data.X, z))


def cvw_contains(pair: CyclePair, filt: DecreasingFiltration, profile: ParityProfile) -> bool:
    for p in profile.indices():
        if (filt[p] & pair.V).dim != profile.even[p] or (filt[p] & pair.W).dim != profile.odd[p]:
            return False
    return True


@dataclass(frozen=True)
class CycleVerdict:
    inside: bool
    v_definiteness: Definiteness
    w_definiteness: Definiteness
    diagnostic: str = ""

    def __bool__(self):
        return self.inside

    def as_dict(self) -> dict:
        return {
            "in_M_D": self.inside,
            "V": self.v_definiteness.value,
            "W": self.w_definiteness.value,
            "diagnostic": self.diagnostic,
        }


def in_cycle_space(pair: CyclePair, w: int, form: PolarizationForm | None = None) -> CycleVerdict:
    """``V`` negative and ``W`` positive definite for ``i^w <x, conj x>``."""
    form = form or pair.form
    dv = definiteness(hermitian_gram(form, pair.V.basis, w)) if not pair.V.is_zero() else Definiteness.NEGATIVE
    dw = definiteness(hermitian_gram(form, pair.W.basis, w)) if not pair.W.is_zero() else Definiteness.POSITIVE
    inside = dv == Definiteness.NEGATIVE and dw == Definiteness.POSITIVE
    diag = ""
    if Definiteness.DEGENERATE in (dv, dw):
        diag = "degenerate Gram: the pair lies on the boundary of the cycle space"
    elif not inside:
        diag = f"V is {dv.value}, W is {dw.value}"
    return CycleVerdict(inside, dv, dw, diag)


# -- base cycle of the (1,1,1,1) case ----------------------------------
def _is_1111(t: HodgeType) -> bool:
    return t.weight == 3 and t.numbers == {0: 1, 1: 1, 2: 1, 3: 1}


def _cycle_vectors(data: Sl2OrbitData):
    dec = data.decomposition
    u3 = dec[(3, 0)].basis[0]
    u2 = dec[(2, 1)].basis[0]
    conj = lambda v: tuple(x.conjugate() for x in v)
    return u3, u2, conj(u3), conj(u2)


def _cycle_coefficients(data: Sl2OrbitData, u3, u2, u3b, u2b):
    form = data.spec.form
    return form.pair(u3, u3b), form.pair(u2b, u2)


def base_cycle_point(data: Sl2OrbitData, zeta) -> DecreasingFiltration:
    """The point ``F_zeta`` of the base cycle ``P^1``; ``zeta=None`` is the point at infinity."""
    if not _is_1111(data.spec.hodge_type):
        raise ValueError("the P^1 parametrization needs Hodge numbers (1,1,1,1)")
    u3, u2, u3b, u2b = _cycle_vectors(data)
    if zeta is None:
        return DecreasingFiltration(_complete_flag(data, [u2b], [u2b, u3b]))
    a, b = _cycle_coefficients(data, u3, u2, u3b, u2b)
    zeta = Scalar(0) + zeta
    x = tuple(zeta * p + q for p, q in zip(u2b, u3))
    y = tuple(a * p - zeta * b * q for p, q in zip(u2, u3b))
    return DecreasingFiltration(_complete_flag(data, [x], [x, y]))


def _complete_flag(data: Sl2OrbitData, f3, f2) -> dict[int, Subspace]:
    n = data.spec.n
    s3 = Subspace.span(f3, n)
    return {
        0: Subspace.full(n),
        1: data.spec.form.orthogonal(s3),
        2: Subspace.span(f2, n),
        3: s3,
    }


# -- fixed points --------------------------------------------------------
@dataclass
class FixedPointResult:
    found: bool
    route: str
    flag: DecreasingFiltration | None = None
    detail: dict = field(default_factory=dict)


def _stabilizes(x: Matrix, filt: DecreasingFiltration) -> bool:
    return all(filt[p].image(x) <= filt[p] for p in filt.indices())


def _rank_one_route(data: Sl2OrbitData) -> FixedPointResult:
    w = data.weight
    m = (w + 1) // 2
    n = data.spec.n
    big = data.bigrading
    if big[(m, m)].dim != 1:
        raise ValueError("rank-one monodromy expected a one-dimensional I^{m,m}")
    e = big[(m, m)].basis[0]
    u = exp_nilpotent(data.N, I).apply(e)
    dec = data.decomposition
    target = dec[(m - 2, m + 1)]
    if target.is_zero():
        raise ValueError(f"H^{{{m - 2},{m + 1}}} vanishes; no partner for the swap")
    v = target.basis[0]
    conj = lambda vec: tuple(x.conjugate() for x in vec)
    src = [u, v, conj(u), conj(v)]
    dst = [v, u, conj(v), conj(u)]
    rest = data.spec.form.orthogonal(Subspace.span(src, n)).basis
    g = Matrix.from_columns(dst + list(rest)) @ Matrix.from_columns(src + list(rest)).inverse()
    f_fix = data.F0.apply(g)
    fixed = f_fix.apply(exp_nilpotent(data.X, 1)) == f_fix
    if not fixed:
        raise ArithmeticError("swap construction did not produce an exp(X)-fixed flag")
    return FixedPointResult(True, "rank-one-image", f_fix, {"g_real": g.is_real()})


def _minors(cols: Sequence[Sequence[Poly]], size: int) -> list[Poly]:
    from itertools import combinations

    n = len(cols[0])
    out = []
    for rows in combinations(range(n), size):
        for cs in combinations(range(len(cols)), size):
            out.append(poly_det([[cols[c][r] for c in cs] for r in rows]))
    return out


def _p1_route(data: Sl2OrbitData) -> FixedPointResult:
    x_op = data.X
    u3, u2, u3b, u2b = _cycle_vectors(data)
    a, b = _cycle_coefficients(data, u3, u2, u3b, u2b)
    z = Poly.x()
    xv = [z * p + q for p, q in zip(u2b, u3)]
    yv = [p * a - z * (b * q) for p, q in zip(u2, u3b)]
    apply = lambda vec: [sum((x_op[r, c] * vec[c] for c in range(len(vec))), Poly()) for r in range(len(vec))]
    conds = _minors([xv, apply(xv)], 2) + _minors([xv, yv, apply(xv), apply(yv)], 3)
    g = Poly()
    for c in conds:
        g = poly_gcd(g, c) if c else g
    detail = {"condition_gcd": [str(c) for c in g.coeffs]}
    candidates: list[tuple[object, str]] = []
    if not g:
        candidates.append((Scalar(0), "0"))
    elif g.degree == 1:
        root = -g.coeff(0) / g.coeff(1)
        candidates.append((root, str(root)))
    elif g.degree > 1:
        detail["unresolved_roots"] = f"degree {g.degree} condition polynomial"
    candidates.append((None, "infinity"))
    for zeta, label in candidates:
        filt = base_cycle_point(data, zeta)
        if _stabilizes(x_op, filt):
            if filt.apply(exp_nilpotent(x_op, 1)) != filt:
                raise ArithmeticError("X-stable flag is not exp(X)-fixed")
            detail["zeta"] = label
            return FixedPointResult(True, "p1", filt, detail)
    return FixedPointResult(False, "p1", None, detail)


def fixed_point_search(data: Sl2OrbitData, route: str | None = None) -> FixedPointResult:
    """Look for ``F_fix`` on the base cycle with ``exp(X) F_fix = F_fix``.

    ``route`` is ``"rank-one-image"`` (swap construction, needs
    ``dim Im N = 1``), ``"p1"`` (explicit P^1 base cycle of the (1,1,1,1)
    case), or ``None`` to pick the first applicable one.
    """
    rank_n = data.N.rank()
    if route is None:
        route = "rank-one-image" if rank_n == 1 else "p1"
    if route == "rank-one-image":
        if rank_n != 1:
            raise ValueError("swap construction needs dim Im N = 1")
        return _rank_one_route(data)
    if route == "p1":
        if not _is_1111(data.spec.hodge_type):
            raise ValueError("unsupported base cycle: only the (1,1,1,1) P^1 is enumerated")
        return _p1_route(data)
    raise ValueError(f"unknown route {route!r}")


# -- positivity radius -------------------------------------------------
@dataclass
class RadiusResult:
    mode: str
    radius: object  # exact Scalar, float, or None for an unbounded radius
    text: str
    t_star: Fraction | None = None
    witness: dict = field(default_factory=dict)
    tolerance: float | None = None

    @property
    def approx(self) -> float:
        if self.radius is None:
            return float("inf")
        return float(self.radius)

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "radius": self.text,
            "t_star": None if self.t_star is None else str(self.t_star),
            "approx": self.approx,
            "witness": self.witness,
            "tolerance": self.tolerance,
        }


def _poly_translates(x_op: Matrix, vecs, omega: Scalar) -> list[list[Poly]]:
    """``exp(s omega X) v`` as polynomial vectors in the real parameter ``s``."""
    k_max = nilpotency_index(x_op)
    n = x_op.nrows
    out = []
    for v in vecs:
        terms = [tuple(v)]
        for _ in range(1, k_max):
            terms.append(x_op.apply(terms[-1]))
        coeffs = []
        fact = 1
        for k in range(k_max):
            fact = fact * k if k else 1
            coeffs.append(omega**k / fact)
        out.append([Poly([coeffs[k] * terms[k][r] for k in range(k_max)]) for r in range(n)])
    return out


def _poly_gram_det(form: PolarizationForm, vecs: list[list[Poly]], twist: int) -> Poly:
    q = form.matrix
    n = form.n
    c = i_power(twist)
    bars = [[p.conj() for p in v] for v in vecs]
    qb = [[sum((b[j] * q[r, j] for j in range(n)), Poly()) for r in range(n)] for b in bars]
    gram = [[sum((a * b for a, b in zip(u, v)), Poly()) * c for v in qb] for u in vecs]
    return poly_det(gram)


def _exact_radius(data: Sl2OrbitData) -> RadiusResult:
    pair = base_pair(data)
    form, w = data.spec.form, data.weight
    dets = {}
    for side, sub in (("V", pair.V), ("W", pair.W)):
        per_dir = [_poly_gram_det(form, _poly_translates(data.X, sub.basis, om), w) for om in DIRECTIONS]
        if any(p != per_dir[0] for p in per_dir[1:]):
            raise ArithmeticError(f"{side} Gram determinant depends on the direction of z")
        p = per_dir[0]
        if not p.is_even() or not p.is_real():
            raise ArithmeticError(f"{side} Gram determinant is not a real function of |z|^2")
        dets[side] = p.in_square()
    roots = {}
    for side, p in dets.items():
        norm = p.normalized_rational()
        if norm is None:
            raise ArithmeticError(f"{side} Gram determinant is not rational in |z|^2")
        roots[side] = smallest_positive_root(norm) if norm.degree > 0 else None
    witness = {
        side: {"det_in_t": [str(c) for c in dets[side].coeffs], "first_root": None if r is None else r.describe()}
        for side, r in roots.items()
    }
    live = [(r.approx, side, r) for side, r in roots.items() if r is not None]
    if not live:
        return RadiusResult("exact", None, "infinity", None, witness)
    _, side, root = min(live, key=lambda t: t[0])
    witness["fails_on"] = side
    if root.exact is not None:
        t_star = root.exact
        return RadiusResult("exact", sqrt_rational(t_star), format_sqrt_rational(t_star), t_star, witness)
    return RadiusResult("exact", mpmath.sqrt(root.approx), f"sqrt({root.describe()})", None, witness)


def _inside_float(data: Sl2OrbitData, pair: CyclePair, r: float, omega) -> bool:
    xf = data.X.to_float()
    g = exp_nilpotent(xf, mpmath.mpc(omega) * r)
    vf = [g.apply([mpmath.mpc(complex(x)) for x in v]) for v in pair.V.basis]
    wf = [g.apply([mpmath.mpc(complex(x)) for x in v]) for v in pair.W.basis]
    form, w = data.spec.form, data.weight
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", InconclusiveWarning)
        dv = definiteness(hermitian_gram(form, vf, w))
        dw = definiteness(hermitian_gram(form, wf, w))
    return dv == Definiteness.NEGATIVE and dw == Definiteness.POSITIVE


def _sampled_radius(data: Sl2OrbitData, samples: int, tol: float = 1e-9) -> RadiusResult:
    pair = base_pair(data)
    dirs = [mpmath.expjpi(mpmath.mpf(2 * j) / samples) for j in range(samples)]
    inside = lambda r: all(_inside_float(data, pair, r, om) for om in dirs)
    hi = 1.0
    while inside(hi):
        hi *= 2
        if hi > 2**20:
            return RadiusResult("sampled", None, "infinity", tolerance=tol)
    lo = 0.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if inside(mid):
            lo = mid
        else:
            hi = mid
    r = (lo + hi) / 2
    return RadiusResult("sampled", r, f"{r:.12g}", tolerance=tol, witness={"directions": samples})


def positivity_radius(data: Sl2OrbitData, samples: int = 8, mode: str = "exact") -> RadiusResult:
    """Supremum of ``r`` with ``exp(zX) C0`` in the cycle space for ``|z| < r``.

    Exact mode solves the Gram determinants of the translated pair as
    polynomials in ``t = |z|^2``; sampled mode bisects in float arithmetic
    over ``samples`` directions.
    """
    if mode == "exact":
        return _exact_radius(data)
    if mode == "sampled":
        return _sampled_radius(data, samples)
    raise ValueError(f"unknown radius mode {mode!r}")


# -- M(epsilon) ----------------------------------------------------------
@dataclass
class MEpsilonSample:
    alpha: Fraction
    pair: CyclePair
    verdict: CycleVerdict

    def as_dict(self) -> dict:
        return {"alpha": str(self.alpha), **self.verdict.as_dict()}


def m_epsilon_sample(data: Sl2OrbitData, epsilon, k: int) -> tuple[list[MEpsilonSample], str]:
    """``k`` translates ``exp(alpha X) C0`` with ``alpha`` evenly spaced in ``(1 - eps, 1)``."""
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if k < 1:
        raise ValueError("need at least one sample")
    base = base_pair(data)
    out = []
    for j in range(1, k + 1):
        alpha = 1 - eps + eps * Fraction(j, k + 1)
        pair = base.translate(exp_nilpotent(data.X, Scalar(alpha)))
        out.append(MEpsilonSample(alpha, pair, in_cycle_space(pair, data.weight)))
    radius = positivity_radius(data)
    note = ""
    if radius.radius is not None and radius.approx < 1:
        note = f"positivity radius {radius.text} < 1: translates beyond it leave the cycle space"
    return out, note
