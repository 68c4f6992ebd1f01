"""Toric charts attached to nilpotent cones.

A point of the chart is a tuple of coordinates ``q_j``, one per ray;
exact coordinates are kept symbolically as ``e(w) = exp(2 pi i w)`` so
that kernel identities such as ``e(w + 1) = e(w)`` hold exactly.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .degeneration import NilpotentCone, signed_minor_polys, verify_nilpotent_orbit
from .hodge import PeriodDomainSpec, check_axioms
from .linalg import DecreasingFiltration, Matrix, exp_nilpotent
from .scalars import I, Scalar, as_scalar, format_scalar
from .sl2 import Sl2OrbitData

__all__ = [
    "MonoidData",
    "ExpCoord",
    "ToricPoint",
    "ESigmaPoint",
    "TrajectoryRow",
    "monoid_generators",
    "minimal_integral_multiple",
    "e_map",
    "distinguished_point",
    "make_point",
    "e_sigma_contains",
    "torsor_action",
    "limit_trajectory",
    "trajectory_csv",
    "FLOAT_ZERO",
]

FLOAT_ZERO = 1e-300


def _is_integral(m: Matrix) -> bool:
    return all(x.is_rational() and x.to_fraction().denominator == 1 for r in m.rows for x in r)


def _primitive(n_mat: Matrix) -> tuple[Fraction, Matrix]:
    """``N = c N'`` with ``N'`` integral and primitive."""
    entries = [x.to_fraction() for r in n_mat.rows for x in r if x]
    num = math.gcd(*(e.numerator for e in entries))
    den = math.lcm(*(e.denominator for e in entries))
    c = Fraction(num, den)
    return c, n_mat / Scalar(c)


def minimal_integral_multiple(n_mat: Matrix) -> Fraction:
    """Least ``t > 0`` with ``exp(t N)`` integral (among integer multiples of the primitive ``N'``)."""
    if n_mat.is_zero():
        raise ValueError("zero generator has no monoid element")
    c, prim = _primitive(n_mat)
    lcm = 1
    power = Matrix.identity(prim.nrows)
    fact = 1
    k = 0
    while True:
        k += 1
        power = power @ prim
        if power.is_zero():
            break
        fact *= k
        for r in power.rows:
            for x in r:
                lcm = math.lcm(lcm, (x.to_fraction() / fact).denominator)
    for d in range(1, lcm + 1):
        if lcm % d == 0 and _is_integral(exp_nilpotent(prim, d)):
            return Fraction(d) / c
    raise ArithmeticError("no integral multiple found below the denominator bound")


@dataclass(frozen=True)
class MonoidData:
    cone: NilpotentCone
    t: tuple[Fraction, ...]
    generators: tuple[Matrix, ...]
    faces: tuple[frozenset, ...]

    @property
    def rank(self) -> int:
        return self.cone.rank

    def log_matrix(self, w: Sequence) -> Matrix:
        """``sum_j w_j log(gamma_j) = sum_j w_j t_j N_j``."""
        n = self.cone.form.n
        out = Matrix.zeros(n)
        for wj, tj, g in zip(w, self.t, self.cone.generators):
            out = out + g * (as_scalar(wj) * Scalar(tj))
        return out

    def log_coordinates(self, coeffs: Sequence) -> tuple[Scalar, ...]:
        """Convert ``sum_j a_j N_j`` into generator coordinates ``w_j = a_j / t_j``."""
        return tuple(as_scalar(a) / Scalar(t) for a, t in zip(coeffs, self.t))


def monoid_generators(cone: NilpotentCone) -> MonoidData:
    ts = tuple(minimal_integral_multiple(g) for g in cone.generators)
    gens = tuple(exp_nilpotent(g, Scalar(t)) for g, t in zip(cone.generators, ts))
    rays = range(cone.rank)
    faces = tuple(frozenset(c) for k in range(cone.rank + 1) for c in combinations(rays, k))
    return MonoidData(cone, ts, gens, faces)


# -- chart coordinates -------------------------------------------------
class ExpCoord:
    """``exp(2 pi i w)`` for exact ``w``, or the coordinate value zero."""

    __slots__ = ("w",)

    def __init__(self, w=None):
        if w is not None:
            w = as_scalar(w)
            if not isinstance(w, Scalar):
                raise TypeError("ExpCoord needs an exact exponent")
            if w.is_gaussian():
                a = w.a - math.floor(w.a)
                w = Scalar(a, 0, w.c)
        object.__setattr__(self, "w", w)

    def __setattr__(self, name, value):
        raise AttributeError("ExpCoord is immutable")

    @classmethod
    def zero(cls) -> "ExpCoord":
        return cls(None)

    @property
    def is_zero(self) -> bool:
        return self.w is None

    def __mul__(self, other: "ExpCoord") -> "ExpCoord":
        if self.is_zero or other.is_zero:
            return ExpCoord.zero()
        return ExpCoord(self.w + other.w)

    def __eq__(self, other):
        return isinstance(other, ExpCoord) and self.w == other.w

    def __hash__(self):
        return hash(self.w)

    def log_abs_over_2pi(self) -> Scalar:
        """``-Im w``; ``|q| = exp(2 pi * this)``."""
        return -self.w.imag

    def abs_less(self, other: "ExpCoord") -> bool:
        """Exact ``|self| < |other|``."""
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        return self.log_abs_over_2pi() < other.log_abs_over_2pi()

    def __complex__(self):
        if self.is_zero:
            return 0j
        return cmath.exp(2j * math.pi * complex(self.w))

    def tag(self) -> str:
        return "0" if self.is_zero else f"e({format_scalar(self.w)})"

    def __repr__(self):
        return f"ExpCoord({self.tag()})"


@dataclass(frozen=True)
class ToricPoint:
    coords: tuple[ExpCoord, ...]

    @classmethod
    def from_complex(cls, values: Sequence[complex]) -> "ToricPoint":
        """Float coordinates: only the faces matter, so tiny values become exact zeros."""
        coords = []
        for v in values:
            if abs(v) < FLOAT_ZERO:
                if v != 0:
                    warnings.warn("coordinate below 1e-300 treated as zero", RuntimeWarning, stacklevel=2)
                coords.append(ExpCoord.zero())
            else:
                coords.append(ExpCoord(_float_log(v)))
        return cls(tuple(coords))

    def face(self) -> frozenset:
        return frozenset(j for j, q in enumerate(self.coords) if q.is_zero)

    def __mul__(self, other: "ToricPoint") -> "ToricPoint":
        return ToricPoint(tuple(a * b for a, b in zip(self.coords, other.coords)))

    def tags(self) -> list[str]:
        return [q.tag() for q in self.coords]


def _float_log(v: complex) -> Scalar:
    w = cmath.log(v) / (2j * math.pi)
    return Scalar(Fraction(w.real).limit_denominator(10**12), 0, Fraction(w.imag).limit_denominator(10**12))


def e_map(md: MonoidData, w: Sequence) -> ToricPoint:
    """``q_j = exp(2 pi i w_j)`` for ``z = sum_j w_j log(gamma_j)``."""
    if len(w) != md.rank:
        raise ValueError(f"expected {md.rank} coordinates")
    return ToricPoint(tuple(ExpCoord(x) for x in w))


def distinguished_point(md: MonoidData, face) -> ToricPoint:
    """``x_tau``: zero on the rays of ``tau`` and one elsewhere."""
    face = frozenset(face)
    if face not in md.faces:
        raise ValueError(f"{set(face)} is not a face")
    return ToricPoint(tuple(ExpCoord.zero() if j in face else ExpCoord(0) for j in range(md.rank)))


@dataclass(frozen=True)
class ESigmaPoint:
    """``(q, F)`` with a log coordinate ``z`` satisfying ``q = e(z) x_{sigma(q)}``."""

    md: MonoidData
    q: ToricPoint
    F: DecreasingFiltration
    z: tuple[Scalar, ...]

    def __post_init__(self):
        face = self.q.face()
        expected = e_map(self.md, self.z) * distinguished_point(self.md, face)
        if expected != self.q:
            raise ValueError("log coordinate does not match the chart point")

    @property
    def face(self) -> frozenset:
        return self.q.face()


def make_point(md: MonoidData, z: Sequence, face, filt: DecreasingFiltration) -> ESigmaPoint:
    z = tuple(as_scalar(x) for x in z)
    q = e_map(md, z) * distinguished_point(md, face)
    return ESigmaPoint(md, q, filt, z)


def e_sigma_contains(p: ESigmaPoint, spec: PeriodDomainSpec) -> bool:
    """Whether ``exp(sigma(q)_C) exp(z) F`` is a ``sigma(q)``-nilpotent orbit."""
    translated = p.F.apply(exp_nilpotent(p.md.log_matrix(p.z), 1))
    face = sorted(p.face)
    if not face:
        return check_axioms(spec, translated).in_domain
    return verify_nilpotent_orbit(p.md.cone.face(face), translated, spec).ok


def torsor_action(a: Sequence, p: ESigmaPoint) -> ESigmaPoint:
    """``a . (q, F) = (e(a) q, exp(-a) F)``, with ``z`` shifted by ``a``."""
    a = tuple(as_scalar(x) for x in a)
    q = e_map(p.md, a) * p.q
    filt = p.F.apply(exp_nilpotent(p.md.log_matrix(a), -1))
    z = tuple(x + y for x, y in zip(p.z, a))
    return ESigmaPoint(p.md, q, filt, z)


# -- trajectories --------------------------------------------------------
@dataclass(frozen=True)
class TrajectoryRow:
    y: Fraction
    q: ExpCoord
    in_D: bool
    min_minor: float

    def as_dict(self) -> dict:
        return {
            "y": str(self.y),
            "q": self.q.tag(),
            "q_float": abs(complex(self.q)),
            "in_D": self.in_D,
            "min_minor": self.min_minor,
        }


def limit_trajectory(data: Sl2OrbitData, y_values: Sequence) -> list[TrajectoryRow]:
    """Chart coordinate, D-membership and smallest signed minor along ``exp(iyN) F̂``."""
    md = monoid_generators(NilpotentCone((data.N,), data.spec.form))
    minors = [m for _, m in signed_minor_polys(data.N, data.base_flag, data.spec.form, data.weight)]
    rows = []
    for y in y_values:
        y = Fraction(y)
        q = e_map(md, md.log_coordinates([I * Scalar(y)])).coords[0]
        filt = data.base_flag.apply(exp_nilpotent(data.N, I * Scalar(y)))
        in_d = check_axioms(data.spec, filt).in_domain
        low = min(float(m(Scalar(y))) for m in minors)
        rows.append(TrajectoryRow(y, q, in_d, low))
    return rows


def trajectory_csv(rows: Sequence[TrajectoryRow]) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["y", "q", "in_D", "min_minor"])
    for r in rows:
        out.writerow([str(r.y), r.q.tag(), int(r.in_D), repr(r.min_minor)])
    return buf.getvalue()
