"""Univariate polynomials over the exact scalar tower.

Used for determinants whose entries depend polynomially on a real
parameter (Gram matrices along ``exp(iyN)`` rays or ``exp(sX)`` discs),
for Cauchy root bounds, and for exact isolation of the smallest positive
real root of a rational polynomial via Sturm sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import ONE, ZERO, Scalar, as_scalar

__all__ = [
    "Poly",
    "poly_det",
    "poly_leading_minors",
    "cauchy_bound",
    "rational_upper_abs",
    "sturm_sequence",
    "count_roots",
    "RealRoot",
    "smallest_positive_root",
]


class Poly:
    """Polynomial with exact coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        cs = [as_scalar(c) for c in coeffs]
        if any(not isinstance(c, Scalar) for c in cs):
            raise TypeError("Poly coefficients must be exact scalars")
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __call__(self, x):
        x = as_scalar(x)
        acc = ZERO if isinstance(x, Scalar) else x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _lift(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        try:
            return Poly.const(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self or not o:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [ZERO] * max(len(rem) - len(o.coeffs) + 1, 0)
        inv = o.lead.inverse()
        for k in range(len(quo) - 1, -1, -1):
            c = rem[k + o.degree] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return Poly(quo), Poly(rem[: o.degree] if o.degree > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def monic(self) -> "Poly":
        return self * self.lead.inverse() if self else self

    def derivative(self) -> "Poly":
        return Poly([c * k for k, c in enumerate(self.coeffs)][1:])

    def conj(self) -> "Poly":
        return Poly([c.conjugate() for c in self.coeffs])

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.coeffs)

    def is_even(self) -> bool:
        return all(not c for c in self.coeffs[1::2])

    def in_square(self) -> "Poly":
        """For an even polynomial ``p(s)``, the ``q`` with ``q(s^2) = p(s)``."""
        if not self.is_even():
            raise ValueError("polynomial has odd-degree terms")
        return Poly(self.coeffs[::2])

    def normalized_rational(self) -> "Poly | None":
        """Divide by the leading coefficient; ``None`` if the result is not over Q."""
        if not self:
            return self
        p = self.monic()
        return p if p.is_rational() else None

    def fractions(self) -> list[Fraction]:
        return [c.to_fraction() for c in self.coeffs]

    def __repr__(self):
        return f"Poly([{', '.join(str(c) for c in self.coeffs)}])"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


# -- determinants ------------------------------------------------------
def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly.const(x)


def poly_det(rows: Sequence[Sequence]) -> Poly:
    """Bareiss fraction-free determinant of a square polynomial matrix."""
    m = [[_as_poly(x) for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Poly.const(1)
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return Poly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def poly_leading_minors(rows: Sequence[Sequence]) -> list[Poly]:
    return [poly_det([r[:k] for r in rows[:k]]) for k in range(1, len(rows) + 1)]


# -- root bounds -------------------------------------------------------
def rational_upper_abs(x: Scalar) -> Fraction:
    """A rational number ``>= |x|`` for a real tower element (exact on Q)."""
    if not x.is_real():
        raise ValueError(f"expected a real scalar, got {x}")
    if x.d is None:
        return abs(x.a)
    root_up = math.isqrt(x.d) + 1
    return abs(x.a) + abs(x.b) * root_up


def cauchy_bound(p: Poly) -> Fraction:
    """Rational ``B`` with every real root of ``p`` in ``[-B, B]``; uses ``1 + max |a_k / a_n|``."""
    if p.degree < 1:
        return Fraction(0)
    lead = p.lead
    return 1 + max(rational_upper_abs(c / lead) for c in p.coeffs[:-1])


# -- Sturm sequences ---------------------------------------------------
def _rat_poly(p: Poly) -> list[Fraction]:
    if not p.is_rational():
        raise ValueError("Sturm isolation requires rational coefficients")
    return p.fractions()


def _frac_eval(cs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def _square_free(p: Poly) -> Poly:
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).monic() if g.degree > 0 else p.monic()


def sturm_sequence(p: Poly) -> list[list[Fraction]]:
    p = _square_free(p)
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        seq.append(r)
    return [_rat_poly(q) for q in seq if q]


def _variations(seq, x: Fraction) -> int:
    signs = [v for v in (_frac_eval(q, x) for q in seq) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(seq, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in ``(lo, hi]``, for ``lo`` not itself a root."""
    return _variations(seq, lo) - _variations(seq, hi)


@dataclass(frozen=True)
class RealRoot:
    """A real root, either an exact rational or an isolating interval ``(lo, hi]``."""

    poly: Poly
    lo: Fraction
    hi: Fraction
    exact: Fraction | None

    @property
    def approx(self) -> float:
        if self.exact is not None:
            return float(self.exact)
        return float((self.lo + self.hi) / 2)

    def describe(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        terms = " ".join(f"{c}" for c in self.poly.coeffs)
        return f"root of [{terms}] in ({self.lo}, {self.hi}]"


def smallest_positive_root(p: Poly) -> RealRoot | None:
    """Exact isolation of the least positive real root of a rational polynomial.

    Rational roots are certified exactly: the interval is shrunk below
    ``1/a_n^2`` (``a_n`` the leading coefficient of the primitive integer
    multiple), where at most one rational of denominator ``<= |a_n|`` fits.
    """
    if not p:
        raise ValueError("zero polynomial has no isolated roots")
    cs = _rat_poly(p)
    while cs and cs[0] == 0:
        cs = cs[1:]
    q = Poly(cs)
    if q.degree < 1:
        return None
    seq = sturm_sequence(q)
    bound = cauchy_bound(q)
    lo, hi = Fraction(0), bound
    if count_roots(seq, lo, hi) == 0:
        return None
    den = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    g = math.gcd(*ints)
    a_n = abs(ints[-1] // g)
    width = Fraction(1, 2 * a_n * a_n)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    guess = ((lo + hi) / 2).limit_denominator(a_n)
    for cand in (guess, hi):
        if lo < cand <= hi and _frac_eval(cs, cand) == 0:
            return RealRoot(q, lo, hi, cand)
    while hi - lo > Fraction(1, 2**64):
        mid = (lo + hi) / 2
        if count_roots(seq, lo, mid) > 0:
            hi = mid
        else:
            lo = mid
    return RealRoot(q, lo, hi, None)
