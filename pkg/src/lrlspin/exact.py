"""Exact Gaussian-rational arithmetic and sparse exact matrices.

Everything downstream of the representation builders and the operator
algebra runs on these two types, so every identity check is a statement
about integers, never about floats.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

RationalLike = Union[int, Fraction]


class GaussRat:
    """A Gaussian rational a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: RationalLike = 0, im: RationalLike = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(x) -> "GaussRat":
        if isinstance(x, GaussRat):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussRat(x)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def __add__(self, other):
        o = self._coerce(other)
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return GaussRat(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat((self.re * o.re + self.im * o.im) / n,
                        (self.im * o.re - self.re * o.im) / n)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"{self.re}"
        if not self.re:
            return f"{self.im}*i"
        return f"({self.re}{'+' if self.im > 0 else '-'}{abs(self.im)}*i)"

    def __complex__(self):
        return complex(float(self.re), float(self.im))


ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


class Matrix:
    """Immutable sparse square-ish matrix over GaussRat.

    Stored as {(i, j): GaussRat} with zero entries absent.  The
    representation matrices built here have O(1) nonzeros per row, so
    products and commutators cost O(dim), not O(dim^3).
    """

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int,
                 data: Mapping[tuple, GaussRat] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        clean = {}
        if data:
            for (i, j), v in data.items():
                if not (0 <= i < nrows and 0 <= j < ncols):
                    raise IndexError(f"entry {(i, j)} outside {nrows}x{ncols}")
                v = v if isinstance(v, GaussRat) else GaussRat(v)
                if v:
                    clean[(i, j)] = v
        self.data = clean

    @staticmethod
    def identity(n: int, scale=ONE) -> "Matrix":
        s = scale if isinstance(scale, GaussRat) else GaussRat(scale)
        return Matrix(n, n, {(i, i): s for i in range(n)})

    @staticmethod
    def zeros(n: int, m: int | None = None) -> "Matrix":
        return Matrix(n, m if m is not None else n)

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "Matrix":
        rows = [list(r) for r in rows]
        data = {}
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                g = v if isinstance(v, GaussRat) else GaussRat(v)
                if g:
                    data[(i, j)] = g
        return Matrix(len(rows), len(rows[0]) if rows else 0, data)

    def __getitem__(self, ij):
        return self.data.get(ij, ZERO)

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in matrix addition")
        out = dict(self.data)
        for k, v in other.data.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return Matrix(self.nrows, self.ncols, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Matrix(self.nrows, self.ncols,
                      {k: -v for k, v in self.data.items()})

    def scale(self, c) -> "Matrix":
        c = c if isinstance(c, GaussRat) else GaussRat(c)
        if not c:
            return Matrix.zeros(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols,
                      {k: v * c for k, v in self.data.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch in matrix product")
        rows: dict = {}
        for (i, j), v in other.data.items():
            rows.setdefault(i, []).append((j, v))
        out: dict = {}
        for (i, k), va in self.data.items():
            for j, vb in rows.get(k, ()):
                key = (i, j)
                s = out.get(key, ZERO) + va * vb
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Matrix(self.nrows, other.ncols, out)

    def conj_t(self) -> "Matrix":
        return Matrix(self.ncols, self.nrows,
                      {(j, i): v.conj() for (i, j), v in self.data.items()})

    def is_zero(self) -> bool:
        return not self.data

    def is_hermitian(self) -> bool:
        return (self - self.conj_t()).is_zero()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) \
            and self.data == other.data

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset(self.data.items())))

    def max_abs(self) -> Fraction:
        """Largest |entry| measured as |re| + |im| (exact residual size)."""
        best = Fraction(0)
        for v in self.data.values():
            m = abs(v.re) + abs(v.im)
            if m > best:
                best = m
        return best

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, {len(self.data)} nonzero)"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def anticommutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b + b @ a


def kron(a: Matrix, b: Matrix) -> Matrix:
    out = {}
    for (ia, ja), va in a.data.items():
        for (ib, jb), vb in b.data.items():
            out[(ia * b.nrows + ib, ja * b.ncols + jb)] = va * vb
    return Matrix(a.nrows * b.nrows, a.ncols * b.ncols, out)


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or 'p' command-line rationals exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational 'p/q' value: {text!r}") from exc
