"""Exact linear algebra over the scalar tower, with an mpmath float mode.

Subspaces are kept in reduced row echelon form, which is the canonical
representative: two exact subspaces are equal iff their bases agree
entrywise.  Float-mode subspaces use partial pivoting with a relative
tolerance of 1e-12 and refuse equality tests.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import mpmath

from .scalars import I, ONE, ZERO, Scalar, as_scalar, to_mpc

__all__ = [
    "Matrix",
    "Subspace",
    "DecreasingFiltration",
    "IncreasingFiltration",
    "PolarizationForm",
    "Definiteness",
    "InconclusiveWarning",
    "canonical_basis",
    "intersect",
    "subspace_sum",
    "kernel",
    "image",
    "solve",
    "exp_nilpotent",
    "expm_float",
    "float_flags_agree",
    "nilpotency_index",
    "hermitian_gram",
    "definiteness",
    "leading_minors",
    "bracket",
    "vec",
    "unvec",
    "i_power",
]

FLOAT_TOL = 1e-12


class InconclusiveWarning(UserWarning):
    """A float-mode test could not separate a value from zero."""


def _is_zero(x, tol=FLOAT_TOL) -> bool:
    if isinstance(x, Scalar):
        return not x
    return abs(x) <= tol


def _mode_of(entries) -> str:
    modes = {"exact" if isinstance(x, Scalar) else "float" for x in entries}
    if len(modes) > 1:
        raise ValueError("mixed exact and float scalars")
    return modes.pop() if modes else "exact"


def _zero(mode):
    return ZERO if mode == "exact" else mpmath.mpc(0)


def _one(mode):
    return ONE if mode == "exact" else mpmath.mpc(1)


def i_power(k: int, mode: str = "exact"):
    """``i**k`` for an integer ``k``."""
    val = (ONE, I, -ONE, -I)[k % 4]
    return val if mode == "exact" else to_mpc(val)


def _vec(v) -> tuple:
    return tuple(as_scalar(x) for x in v)


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        t = a * b
        acc = t if acc is None else acc + t
    return acc


def _conj(x):
    return x.conjugate()


# -- matrices ----------------------------------------------------------
class Matrix:
    """Immutable dense matrix over exact scalars or mpmath complexes."""

    __slots__ = ("rows", "mode")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(_vec(r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "mode", _mode_of(x for r in rows for x in r))

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int, mode: str = "exact") -> "Matrix":
        one, zero = _one(mode), _zero(mode)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int | None = None, mode: str = "exact") -> "Matrix":
        zero = _zero(mode)
        return cls([[zero] * (r if c is None else c) for _ in range(r)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        entries = [as_scalar(x) for x in entries]
        zero = _zero(_mode_of(entries))
        n = len(entries)
        return cls([[entries[i] if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0])

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def conj(self) -> "Matrix":
        return Matrix([[_conj(x) for x in r] for r in self.rows])

    @property
    def H(self) -> "Matrix":
        return self.conj().T

    def map(self, f) -> "Matrix":
        return Matrix([[f(x) for x in r] for r in self.rows])

    def to_float(self) -> "Matrix":
        return self.map(to_mpc)

    def apply(self, v: Sequence) -> tuple:
        v = _vec(v)
        if len(v) != self.ncols:
            raise ValueError(f"vector of length {len(v)} for a {self.shape} matrix")
        rows = self.rows
        vmode = _mode_of(v)
        if vmode != self.mode:
            # promote the exact side; float results never flow back into exact mode
            if vmode == "float":
                rows = self.to_float().rows
            else:
                v = tuple(to_mpc(x) for x in v)
        return tuple(_dot(r, v) for r in rows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            a, b = self, other
            if a.mode != b.mode:
                a, b = a.to_float(), b.to_float()
            cols = b.columns()
            return Matrix([[_dot(r, c) for c in cols] for r in a.rows])
        if isinstance(other, (tuple, list)):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Matrix([[-x for x in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        c = self._scalar(c)
        return Matrix([[c * x for x in r] for r in self.rows])

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = self._scalar(c)
        return Matrix([[x / c for x in r] for r in self.rows])

    def _scalar(self, c):
        c = as_scalar(c)
        if self.mode == "float" and isinstance(c, Scalar):
            return to_mpc(c)
        if self.mode == "exact" and not isinstance(c, Scalar):
            raise ValueError("float scalar applied to an exact matrix; convert with to_float()")
        return c

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        out = Matrix.identity(self.nrows, self.mode)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_zero(self, tol=FLOAT_TOL) -> bool:
        return all(_is_zero(x, tol) for r in self.rows for x in r)

    def is_real(self) -> bool:
        return self == self.conj()

    def trace(self):
        return sum((self.rows[i][i] for i in range(1, self.nrows)), self.rows[0][0])

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.mode == "float" or other.mode == "float":
            raise TypeError("float matrices do not support exact equality")
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        ident = Matrix.identity(n, self.mode)
        aug = [list(r) + list(e) for r, e in zip(self.rows, ident.rows)]
        red, piv = _rref(aug, 2 * n)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix([r[n:] for r in red[:n]])

    def det(self):
        return _det([list(r) for r in self.rows], self.mode)

    def rank(self) -> int:
        return len(_rref([list(r) for r in self.rows], self.ncols)[1])

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix([{body}])"


def bracket(a: Matrix, b: Matrix) -> Matrix:
    """Commutator ``ab - ba``."""
    return a @ b - b @ a


def vec(m: Matrix) -> tuple:
    """Row-major flattening."""
    return tuple(x for r in m.rows for x in r)


def unvec(v: Sequence, n: int) -> Matrix:
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)])


# -- elimination -------------------------------------------------------
def _rref(rows: list[list], ncols: int, tol=FLOAT_TOL):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    mode = _mode_of(x for r in rows for x in r)
    if mode == "float":
        scale = max((abs(x) for r in rows for x in r), default=0) or 1
        eps = tol * scale
    pivots = []
    cur = 0
    for c in range(ncols):
        if cur == len(rows):
            break
        if mode == "exact":
            k = next((i for i in range(cur, len(rows)) if rows[i][c]), None)
        else:
            k = max(range(cur, len(rows)), key=lambda i: abs(rows[i][c]))
            if abs(rows[k][c]) <= eps:
                k = None
        if k is None:
            continue
        rows[cur], rows[k] = rows[k], rows[cur]
        inv = 1 / rows[cur][c]
        prow = [x * inv for x in rows[cur]]
        prow[c] = _one(mode)
        rows[cur] = prow
        for i in range(len(rows)):
            if i != cur:
                f = rows[i][c]
                if not _is_zero(f, 0 if mode == "float" else tol):
                    rows[i] = [x - f * y for x, y in zip(rows[i], prow)]
                    rows[i][c] = _zero(mode)
        pivots.append(c)
        cur += 1
    out = rows[:cur]
    if mode == "float":
        out = [[_zero(mode) if abs(x) <= eps else x for x in r] for r in out]
    return out, pivots


def _det(rows: list[list], mode: str):
    n = len(rows)
    rows = [list(r) for r in rows]
    det = _one(mode)
    for c in range(n):
        if mode == "exact":
            k = next((i for i in range(c, n) if rows[i][c]), None)
        else:
            k = max(range(c, n), key=lambda i: abs(rows[i][c]))
            if rows[k][c] == 0:
                k = None
        if k is None:
            return _zero(mode)
        if k != c:
            rows[c], rows[k] = rows[k], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        for i in range(c + 1, n):
            f = rows[i][c] / p
            if not _is_zero(f, 0):
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


# -- subspaces ---------------------------------------------------------
class Subspace:
    """A subspace of K^n stored by its reduced row echelon basis."""

    __slots__ = ("ambient", "basis", "_pivots")

    def __init__(self, ambient: int, basis=(), _pivots=None):
        if ambient <= 0:
            raise ValueError("ambient dimension must be positive")
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "basis", tuple(tuple(r) for r in basis))
        if _pivots is None:
            _pivots = tuple(next(j for j, x in enumerate(r) if not _is_zero(x, 0)) for r in self.basis)
        object.__setattr__(self, "_pivots", tuple(_pivots))

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient: int | None = None) -> "Subspace":
        vectors = [_vec(v) for v in vectors]
        if ambient is None:
            if not vectors:
                raise ValueError("ambient dimension needed for an empty span")
            ambient = len(vectors[0])
        if any(len(v) != ambient for v in vectors):
            raise ValueError("vectors do not share the ambient dimension")
        red, piv = _rref(vectors, ambient)
        return cls(ambient, red, piv)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(Matrix.identity(n).rows)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def mode(self) -> str:
        return _mode_of(x for r in self.basis for x in r)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient

    def vectors(self) -> list[tuple]:
        return list(self.basis)

    def reduce(self, v: Sequence) -> tuple:
        """Remainder of ``v`` after clearing the pivot columns."""
        v = list(_vec(v))
        for row, c in zip(self.basis, self._pivots):
            f = v[c]
            if not _is_zero(f, 0):
                v = [x - f * y for x, y in zip(v, row)]
        return tuple(v)

    def __contains__(self, v) -> bool:
        return all(_is_zero(x) for x in self.reduce(v))

    def __le__(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        a, b = _common_mode(self, other)
        return all(v in b for v in a.basis)

    def __ge__(self, other: "Subspace") -> bool:
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.mode == "float" or other.mode == "float":
            raise TypeError("float subspaces do not support equality; compare dims or use <=")
        return self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def conj(self) -> "Subspace":
        return Subspace.span([[_conj(x) for x in r] for r in self.basis], self.ambient)

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span([m.apply(v) for v in self.basis], m.nrows)

    def to_float(self) -> "Subspace":
        return Subspace.span([[to_mpc(x) for x in r] for r in self.basis], self.ambient)

    def complement_in(self, larger: "Subspace") -> list[tuple]:
        """Vectors extending this basis to one of ``larger`` (self <= larger)."""
        cur = self
        extra = []
        for v in larger.basis:
            if v not in cur:
                extra.append(v)
                cur = cur + Subspace.span([v], self.ambient)
        return extra

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def _same_ambient(u: Subspace, v: Subspace) -> None:
    if u.ambient != v.ambient:
        raise ValueError(f"ambient dimension mismatch: {u.ambient} vs {v.ambient}")


def _common_mode(u: Subspace, v: Subspace) -> tuple[Subspace, Subspace]:
    """Promote an exact operand when the other one is float."""
    if u.mode == v.mode:
        return u, v
    return u.to_float(), v.to_float()


def canonical_basis(vectors: Iterable[Sequence], ambient: int | None = None) -> Subspace:
    return Subspace.span(vectors, ambient)


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _same_ambient(u, v)
    u, v = _common_mode(u, v)
    return Subspace.span(list(u.basis) + list(v.basis), u.ambient)


def intersect(u: Subspace, v: Subspace) -> Subspace:
    """Zassenhaus intersection."""
    _same_ambient(u, v)
    n = u.ambient
    if u.is_zero() or v.is_zero():
        return Subspace.zero(n)
    u, v = _common_mode(u, v)
    zero = _zero(_mode_of([x for r in u.basis + v.basis for x in r]))
    rows = [list(r) + list(r) for r in u.basis] + [list(r) + [zero] * n for r in v.basis]
    red, piv = _rref(rows, 2 * n)
    meet = [r[n:] for r, c in zip(red, piv) if c >= n]
    return Subspace.span(meet, n)


def kernel(m: Matrix) -> Subspace:
    """Null space ``{x : m x = 0}``."""
    n = m.ncols
    red, piv = _rref([list(r) for r in m.rows], n)
    mode = m.mode
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [_zero(mode)] * n
        v[f] = _one(mode)
        for r, c in zip(red, piv):
            v[c] = -r[f]
        basis.append(v)
    return Subspace.span(basis, n)


def image(m: Matrix) -> Subspace:
    return Subspace.span(m.columns(), m.nrows)


def solve(a: Matrix, b: Sequence):
    """Solve ``a x = b``; returns ``(x, nullity)`` or ``(None, nullity)``."""
    n = a.ncols
    b = _vec(b)
    red, piv = _rref([list(r) + [y] for r, y in zip(a.rows, b)], n + 1)
    nullity = n - len([c for c in piv if c < n])
    if n in piv:
        return None, nullity
    x = [_zero(a.mode)] * n
    for r, c in zip(red, piv):
        x[c] = r[n]
    return tuple(x), nullity


# -- filtrations -------------------------------------------------------
class _Filtration:
    increasing: bool

    __slots__ = ("ambient", "steps", "lo", "hi")

    def __init__(self, steps: Mapping[int, Subspace], ambient: int | None = None):
        if not steps:
            if ambient is None:
                raise ValueError("empty filtration needs an ambient dimension")
            steps = {0: Subspace.full(ambient)}
        steps = dict(sorted(steps.items()))
        amb = {s.ambient for s in steps.values()}
        if len(amb) != 1 or (ambient is not None and amb != {ambient}):
            raise ValueError("filtration steps do not share the ambient dimension")
        object.__setattr__(self, "ambient", amb.pop())
        object.__setattr__(self, "steps", steps)
        object.__setattr__(self, "lo", min(steps))
        object.__setattr__(self, "hi", max(steps))
        if set(steps) != set(range(self.lo, self.hi + 1)):
            raise ValueError("filtration indices must be contiguous")
        for k in range(self.lo, self.hi):
            small, big = (steps[k], steps[k + 1]) if self.increasing else (steps[k + 1], steps[k])
            if not small <= big:
                raise ValueError(f"filtration not nested at index {k}")

    def __setattr__(self, name, value):
        raise AttributeError("filtrations are immutable")

    def __getitem__(self, k: int) -> Subspace:
        if k in self.steps:
            return self.steps[k]
        below = k < self.lo
        if below != self.increasing:
            return Subspace.full(self.ambient)
        return Subspace.zero(self.ambient)

    def indices(self) -> range:
        return range(self.lo, self.hi + 1)

    def dims(self) -> dict[int, int]:
        return {k: s.dim for k, s in self.steps.items()}

    def apply(self, g: Matrix):
        return type(self)({k: s.image(g) for k, s in self.steps.items()})

    def conj(self):
        return type(self)({k: s.conj() for k, s in self.steps.items()})

    def to_float(self):
        return type(self)({k: s.to_float() for k, s in self.steps.items()})

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.ambient != other.ambient:
            return False
        ks = range(min(self.lo, other.lo) - 1, max(self.hi, other.hi) + 2)
        return all(self[k] == other[k] for k in ks)

    def __hash__(self):
        return hash(tuple(self[k] for k in self.indices()))

    def __repr__(self):
        return f"{type(self).__name__}({self.dims()})"


class DecreasingFiltration(_Filtration):
    """``F^p`` with ``F^{p+1} ⊆ F^p``; full below ``lo``, zero above ``hi``."""

    increasing = False
    __slots__ = ()

    @classmethod
    def from_generators(cls, gens: Mapping[int, Sequence[Sequence]], ambient: int) -> "DecreasingFiltration":
        """``F^p`` is spanned by the vectors listed at every index ``>= p``."""
        if not gens:
            return cls({0: Subspace.full(ambient)})
        lo, hi = min(gens), max(gens)
        steps = {}
        acc = []
        for p in range(hi, lo - 1, -1):
            acc = acc + [_vec(v) for v in gens.get(p, [])]
            steps[p] = Subspace.span(acc, ambient)
        return cls(steps)

    def top(self) -> int:
        """Largest ``p`` with ``F^p != 0``."""
        return max((p for p in self.indices() if not self[p].is_zero()), default=self.lo - 1)

    def bottom(self) -> int:
        """Largest ``p`` with ``F^p`` the whole space."""
        full = [p for p in self.indices() if self[p].is_full()]
        return max(full) if full else self.lo - 1

    def adapted_basis(self) -> list[tuple[tuple, int]]:
        """Basis vectors paired with their level, ordered from the top step down."""
        out = []
        cur = Subspace.zero(self.ambient)
        for p in range(self.top(), self.bottom() - 1, -1):
            for v in cur.complement_in(self[p]):
                out.append((v, p))
            cur = self[p]
        return out


class IncreasingFiltration(_Filtration):
    """``W_k`` with ``W_k ⊆ W_{k+1}``; zero below ``lo``, full above ``hi``."""

    increasing = True
    __slots__ = ()


# -- forms -------------------------------------------------------------
@dataclass(frozen=True)
class PolarizationForm:
    """Non-degenerate bilinear form ``<x, y> = x^T Q y``."""

    matrix: Matrix
    skew: bool

    def __post_init__(self):
        q = self.matrix
        if not q.is_square():
            raise ValueError("form matrix must be square")
        expected = -q if self.skew else q
        if q.T != expected:
            kind = "skew-symmetric" if self.skew else "symmetric"
            raise ValueError(f"form matrix is not {kind}")
        if not q.det():
            raise ValueError("form is degenerate")

    @classmethod
    def for_weight(cls, matrix, weight: int) -> "PolarizationForm":
        m = matrix if isinstance(matrix, Matrix) else Matrix(matrix)
        return cls(m, skew=bool(weight % 2))

    @property
    def n(self) -> int:
        return self.matrix.nrows

    def pair(self, x: Sequence, y: Sequence):
        return _dot(_vec(x), self.matrix.apply(y))

    def compatibility_defect(self, a: Matrix) -> Matrix:
        return a.T @ self.matrix + self.matrix @ a

    def is_compatible(self, a: Matrix) -> bool:
        """``<a x, y> + <x, a y> = 0`` for all ``x, y``."""
        return self.compatibility_defect(a).is_zero()

    def orthogonal(self, s: Subspace) -> Subspace:
        """``{x : <b, x> = 0 for b in s}``."""
        if s.is_zero():
            return Subspace.full(self.n)
        return kernel(Matrix(s.basis) @ self.matrix)

    def preserves(self, g: Matrix) -> bool:
        return g.T @ self.matrix @ g == self.matrix


# -- exponentials ------------------------------------------------------
def nilpotency_index(n_mat: Matrix) -> int:
    """Smallest ``k`` with ``N^k = 0``; raises if ``N`` is not nilpotent."""
    size = n_mat.nrows
    p = Matrix.identity(size, n_mat.mode)
    for k in range(size + 1):
        if p.is_zero():
            return k
        p = p @ n_mat
    raise ValueError("matrix is not nilpotent")


def exp_nilpotent(n_mat: Matrix, scale=1) -> Matrix:
    """``sum_k (scale N)^k / k!`` for nilpotent ``N``; exact, no truncation."""
    k_max = nilpotency_index(n_mat)
    a = n_mat * scale
    out = Matrix.identity(n_mat.nrows, a.mode)
    term = out
    for k in range(1, k_max):
        term = (term @ a) / k
        out = out + term
    return out


def expm_float(a: Matrix, scale=1) -> Matrix:
    """Matrix exponential in float mode, at the working mpmath precision."""
    from .scalars import precision_bits

    with mpmath.workprec(precision_bits()):
        m = mpmath.matrix([[to_mpc(x) for x in r] for r in a.rows]) * to_mpc(as_scalar(scale))
        e = mpmath.expm(m)
        return Matrix([[mpmath.mpc(e[i, j]) for j in range(a.ncols)] for i in range(a.nrows)])


def float_flags_agree(f: "_Filtration", g: "_Filtration") -> bool:
    """Equality test for float flags: every step has the dimension of the pairwise sum."""
    ks = range(min(f.lo, g.lo), max(f.hi, g.hi) + 1)
    return all(f[k].dim == g[k].dim == (f[k] + g[k]).dim for k in ks)


# -- Hermitian forms ---------------------------------------------------
def hermitian_gram(form: PolarizationForm, basis: Sequence[Sequence], twist: int = 0) -> Matrix:
    """``G_jk = i^twist <b_j, conj(b_k)>``."""
    basis = [_vec(b) for b in basis]
    if any(len(b) != form.n for b in basis):
        raise ValueError("basis vectors do not match the form dimension")
    mode = _mode_of(x for b in basis for x in b)
    q = form.matrix if mode == "exact" else form.matrix.to_float()
    c = i_power(twist, mode)
    qbar = [q.apply([_conj(x) for x in b]) for b in basis]
    return Matrix([[c * _dot(bj, qk) for qk in qbar] for bj in basis])


class Definiteness(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INDEFINITE = "indefinite"
    DEGENERATE = "degenerate"


def leading_minors(g: Matrix) -> list:
    return [_det([list(r[:k]) for r in g.rows[:k]], g.mode) for k in range(1, g.nrows + 1)]


def definiteness(g: Matrix, tol: float = 1e-9) -> Definiteness:
    """Sylvester classification from leading principal minors.

    Float mode treats a minor within ``tol`` (relative to the entry scale)
    as zero, returns ``DEGENERATE`` and warns that the verdict is
    inconclusive.
    """
    if not g.is_square():
        raise ValueError("Gram matrix must be square")
    minors = leading_minors(g)
    if g.mode == "exact":
        if any(not m.is_real() for m in minors):
            raise ValueError("leading minors are not real; matrix is not Hermitian")
        signs = [m.sign() for m in minors]
    else:
        scale = max((abs(x) for r in g.rows for x in r), default=1) or 1
        signs = []
        for k, m in enumerate(minors, start=1):
            if abs(m.imag) > tol * scale**k:
                raise ValueError("leading minors are not real; matrix is not Hermitian")
            if abs(m.real) <= tol * scale**k:
                warnings.warn("leading minor within tolerance of zero", InconclusiveWarning, stacklevel=2)
                return Definiteness.DEGENERATE
            signs.append(1 if m.real > 0 else -1)
    if all(s > 0 for s in signs):
        return Definiteness.POSITIVE
    if all(s == (-1) ** k for k, s in enumerate(signs, start=1)):
        return Definiteness.NEGATIVE
    if signs[-1] == 0:
        return Definiteness.DEGENERATE
    return Definiteness.INDEFINITE
