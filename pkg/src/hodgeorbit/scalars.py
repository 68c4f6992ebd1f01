"""Exact scalars in the tower Q ⊂ Q(i) ⊂ Q(i, √d).

An element is stored as ``(a + b√d) + (c + e√d)·i`` with rational
coefficients.  At most one square-free radicand ``d`` may appear in a
computation; mixing two different radicands raises ``ValueError``.

Float work goes through :mod:`mpmath` (``mpc``) rather than through this
class; see :func:`to_mpc` and :func:`precision_bits`.
"""

from __future__ import annotations

import math
import os
import re
from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = [
    "Scalar",
    "I",
    "ONE",
    "ZERO",
    "as_scalar",
    "parse_scalar",
    "format_scalar",
    "sqrt_rational",
    "format_sqrt_rational",
    "square_free_split",
    "to_mpc",
    "precision_bits",
    "is_exact",
]


def square_free_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` square-free."""
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    s, d = 1, 1
    k = 2
    while k * k <= n:
        while n % (k * k) == 0:
            n //= k * k
            s *= k
        if n % k == 0:
            n //= k
            d *= k
        k += 1
    return s, d * n


def _check_radicand(d: int) -> int:
    if not isinstance(d, int) or d < 2:
        raise ValueError(f"radicand must be a square-free integer >= 2, got {d!r}")
    if square_free_split(d)[0] != 1:
        raise ValueError(f"radicand {d} is not square-free")
    return d


def _merge_d(d1, d2):
    if d1 is None:
        return d2
    if d2 is None or d1 == d2:
        return d1
    raise ValueError(f"cannot mix Q(sqrt({d1})) and Q(sqrt({d2}))")


def _qmul(p, q, r, s, d):
    # (p + q√d)(r + s√d)
    if d is None:
        return p * r, 0
    return p * r + q * s * d, p * s + q * r


def _qsign(p: Fraction, q: Fraction, d) -> int:
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    return sp if p * p > q * q * d else -sp


_FZERO = Fraction(0)


class Scalar:
    """An element ``(a + b√d) + (c + e√d) i`` of Q(i, √d)."""

    __slots__ = ("a", "b", "c", "e", "d")

    def __init__(self, a=0, b=0, c=0, e=0, d=None):
        a, b, c, e = (Fraction(x) for x in (a, b, c, e))
        if b == 0 and e == 0:
            d = None
        elif d is None:
            raise ValueError("radical coefficients given without a radicand")
        else:
            _check_radicand(d)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, c: Fraction, e: Fraction, d) -> "Scalar":
        # trusted fast path: Fraction coefficients, checked radicand
        out = object.__new__(cls)
        if not b and not e:
            d = None
        for name, val in (("a", a), ("b", b), ("c", c), ("e", e), ("d", d)):
            object.__setattr__(out, name, val)
        return out

    @classmethod
    def root(cls, d: int) -> "Scalar":
        """The real square root of a positive integer, as a tower element."""
        s, free = square_free_split(d)
        if free == 1:
            return cls(s)
        return cls(0, s, d=free)

    # -- structure -----------------------------------------------------
    def conjugate(self) -> "Scalar":
        return Scalar(self.a, self.b, -self.c, -self.e, self.d)

    conj = conjugate

    @property
    def real(self) -> "Scalar":
        return Scalar(self.a, self.b, d=self.d)

    @property
    def imag(self) -> "Scalar":
        return Scalar(self.c, self.e, d=self.d)

    def is_real(self) -> bool:
        return self.c == 0 and self.e == 0

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.e == 0

    def is_gaussian(self) -> bool:
        return self.d is None

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def abs2(self) -> "Scalar":
        """``self * conj(self)``, a real element."""
        return (self * self.conjugate()).real

    def sign(self) -> int:
        if not self.is_real():
            raise ValueError(f"sign of non-real element {self}")
        return _qsign(self.a, self.b, self.d)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.d is None and o.d is None:
            return Scalar._make(self.a + o.a, _FZERO, self.c + o.c, _FZERO, None)
        d = _merge_d(self.d, o.d)
        return Scalar._make(self.a + o.a, self.b + o.b, self.c + o.c, self.e + o.e, d)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(-self.a, -self.b, -self.c, -self.e, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.d is None and o.d is None:
            a, c, r, t = self.a, self.c, o.a, o.c
            if not c and not t:
                return Scalar._make(a * r, _FZERO, _FZERO, _FZERO, None)
            return Scalar._make(a * r - c * t, _FZERO, a * t + c * r, _FZERO, None)
        d = _merge_d(self.d, o.d)
        # (A + Ci)(R + Ti) = (AR - CT) + (AT + CR) i
        ar = _qmul(self.a, self.b, o.a, o.b, d)
        ct = _qmul(self.c, self.e, o.c, o.e, d)
        at = _qmul(self.a, self.b, o.c, o.e, d)
        cr = _qmul(self.c, self.e, o.a, o.b, d)
        return Scalar._make(ar[0] - ct[0], ar[1] - ct[1], at[0] + cr[0], at[1] + cr[1], d)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("division by zero in Q(i, sqrt d)")
        d = self.d
        # |x|^2 = p + q√d, real; invert it, then multiply by conj(x)
        n2 = self.abs2()
        p, q = n2.a, n2.b
        den = p * p - q * q * d if d is not None else p * p
        if d is None:
            inv = Scalar(1 / p)
        else:
            inv = Scalar(p / den, -q / den, d=d)
        return self.conjugate() * inv

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison ----------------------------------------------------
    def __bool__(self):
        return bool(self.a or self.b or self.c or self.e)

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.e, self.d) == (o.a, o.b, o.c, o.e, o.d)

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.e, self.d))

    def _cmp(self, other) -> int:
        o = _coerce(other)
        if o is None:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversion ----------------------------------------------------
    def __complex__(self):
        r = math.sqrt(self.d) if self.d else 0.0
        return complex(float(self.a) + float(self.b) * r, float(self.c) + float(self.e) * r)

    def __float__(self):
        if not self.is_real():
            raise TypeError(f"{self} is not real")
        return complex(self).real

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Scalar(x)
    if isinstance(x, bool):
        return Scalar(int(x))
    return None


def as_scalar(x):
    """Coerce ints, Fractions and Scalars; pass mpmath numbers through."""
    s = _coerce(x)
    if s is not None:
        return s
    if isinstance(x, (mpmath.mpc, mpmath.mpf)):
        return mpmath.mpc(x)
    if isinstance(x, (float, complex)):
        return mpmath.mpc(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not a scalar: {x!r}")


def is_exact(x) -> bool:
    return isinstance(x, Scalar)


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 0, 1)


# -- literals ----------------------------------------------------------
_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|(rt)|(i)|([+\-])|(\()|(\)))")


class _Parser:
    def __init__(self, text: str, sqrt_d):
        self.text = text
        self.rt = Scalar.root(sqrt_d) if sqrt_d else None
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad scalar literal {self.text!r} at offset {pos}")
            kind = m.lastindex
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.k = 0

    def peek(self):
        return self.tokens[self.k] if self.k < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.k += 1
        return tok

    def parse(self) -> Scalar:
        if not self.tokens:
            raise ValueError("empty scalar literal")
        val = self.sum()
        if self.k != len(self.tokens):
            raise ValueError(f"trailing input in scalar literal {self.text!r}")
        return val

    def sum(self) -> Scalar:
        sign = 1
        kind, tok = self.peek()
        if kind == 4:
            self.take()
            sign = -1 if tok == "-" else 1
        total = sign * self.product()
        while self.peek()[0] == 4:
            _, tok = self.take()
            term = self.product()
            total = total + term if tok == "+" else total - term
        return total

    def product(self) -> Scalar:
        val = None
        while True:
            kind, tok = self.peek()
            if kind == 1:
                self.take()
                atom = Scalar(Fraction(tok))
            elif kind == 2:
                self.take()
                if self.rt is None:
                    raise ValueError(f"literal {self.text!r} uses 'rt' but no sqrt_d is declared")
                atom = self.rt
            elif kind == 3:
                self.take()
                atom = I
            elif kind == 5:
                self.take()
                atom = self.sum()
                if self.take()[0] != 6:
                    raise ValueError(f"unbalanced parenthesis in {self.text!r}")
            else:
                break
            val = atom if val is None else val * atom
        if val is None:
            raise ValueError(f"expected a term in scalar literal {self.text!r}")
        return val


def parse_scalar(text, sqrt_d: int | None = None) -> Scalar:
    """Parse ``"p/q"``, ``"p/q+r/s i"`` or ``"(p/q+r/s rt)+(t/u+v/w rt) i"``.

    ``rt`` denotes the square root of ``sqrt_d``.  Plain ints are accepted
    as rationals.
    """
    if isinstance(text, int) and not isinstance(text, bool):
        return Scalar(text)
    if not isinstance(text, str):
        raise ValueError(f"scalar literal must be a string, got {text!r}")
    return _Parser(text, sqrt_d).parse()


def _fmt_quad(p: Fraction, q: Fraction) -> str:
    if q == 0:
        return str(p)
    if p == 0:
        return f"{q} rt"
    return f"{p}{'+' if q > 0 else '-'}{abs(q)} rt"


def format_scalar(x: Scalar) -> str:
    """Inverse of :func:`parse_scalar` (canonical literal)."""
    if x.d is None:
        if x.c == 0:
            return str(x.a)
        if x.a == 0:
            return f"{x.c} i"
        return f"{x.a}{'+' if x.c > 0 else '-'}{abs(x.c)} i"
    re_part = _fmt_quad(x.a, x.b)
    if x.c == 0 and x.e == 0:
        return f"({re_part})"
    if x.a == 0 and x.b == 0:
        return f"({_fmt_quad(x.c, x.e)}) i"
    return f"({re_part})+({_fmt_quad(x.c, x.e)}) i"


def sqrt_rational(t) -> Scalar:
    """Exact square root of a non-negative rational, as an element of Q(√d)."""
    t = Fraction(t)
    if t < 0:
        raise ValueError(f"square root of negative rational {t}")
    if t == 0:
        return ZERO
    n, m = t.numerator, t.denominator
    s, free = square_free_split(n * m)
    if free == 1:
        return Scalar(Fraction(s, m))
    return Scalar(0, Fraction(s, m), d=free)


def format_sqrt_rational(t) -> str:
    """Human form of ``sqrt(t)``: ``"1/2"``, ``"1/sqrt(3)"``, ``"sqrt(2)/3"``, ``"2 sqrt(3)"``."""
    t = Fraction(t)
    if t < 0:
        raise ValueError(f"square root of negative rational {t}")

    def part(k: int) -> str:
        a, b = square_free_split(k) if k else (0, 1)
        if b == 1:
            return str(a)
        return f"sqrt({b})" if a == 1 else f"{a} sqrt({b})"

    num, den = part(t.numerator), part(t.denominator)
    if den == "1":
        return num
    return f"{num}/({den})" if " " in den else f"{num}/{den}"


# -- floats ------------------------------------------------------------
def precision_bits() -> int:
    """Float precision, overridable with ``HODGEORBIT_PRECISION_BITS``."""
    return int(os.environ.get("HODGEORBIT_PRECISION_BITS", "256"))


def to_mpc(x) -> mpmath.mpc:
    if isinstance(x, mpmath.mpc):
        return x
    if isinstance(x, (mpmath.mpf, int, float, complex, Fraction)):
        if isinstance(x, Fraction):
            return mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
        return mpmath.mpc(x)
    x = _coerce(x)
    r = mpmath.sqrt(x.d) if x.d else mpmath.mpf(0)

    def q(f: Fraction):
        return mpmath.mpf(f.numerator) / f.denominator

    return mpmath.mpc(q(x.a) + q(x.b) * r, q(x.c) + q(x.e) * r)
