"""Exact complex-rational linear algebra.

Scalars are Gaussian rationals (``re + i*im`` with rational parts) and
matrices are dense, immutable and row-major.  Rank and kernel computations
clear denominators once and then run fraction-free (Bareiss) elimination on
Python integers, so no floating point is ever involved.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def _norm_rational(x) -> Rational:
    if type(x) is int:
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return int(x)
    if isinstance(x, str):
        return _norm_rational(Fraction(x))
    raise TypeError(f"not an exact rational: {x!r}")


class ExactScalar:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _norm_rational(re)
        self.im = _norm_rational(im)

    @classmethod
    def _raw(cls, re: Rational, im: Rational) -> ExactScalar:
        s = object.__new__(cls)
        s.re = re.numerator if type(re) is Fraction and re.denominator == 1 else re
        s.im = im.numerator if type(im) is Fraction and im.denominator == 1 else im
        return s

    @classmethod
    def coerce(cls, x) -> ExactScalar:
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        if isinstance(x, float):
            raise TypeError("floating-point values are not exact")
        return cls(x, 0)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return ExactScalar._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return ExactScalar._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return ExactScalar._raw(a * c, 0)
        return ExactScalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        den = o.re * o.re + o.im * o.im
        if not den:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conj()
        return ExactScalar._raw(Fraction(num.re) / den, Fraction(num.im) / den)

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ExactScalar._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> ExactScalar:
        return ExactScalar._raw(self.re, -self.im)

    def abs2(self) -> ExactScalar:
        """``|x|^2 = x * conj(x)``, always real and non-negative."""
        return ExactScalar._raw(self.re * self.re + self.im * self.im, 0)

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"ExactScalar({self.re})"
        return f"ExactScalar({self.re}, {self.im})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_or_none(x):
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar._raw(_norm_rational(x), 0)
    return None


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I_UNIT = ExactScalar(0, 1)


def as_scalar(x) -> ExactScalar:
    return ExactScalar.coerce(x)


class ExactMatrix:
    """Dense immutable matrix of :class:`ExactScalar` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_scalar(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def _from_scalars(cls, rows: int, cols: int, entries: tuple) -> ExactMatrix:
        m = object.__new__(cls)
        m.rows, m.cols, m.entries = rows, cols, entries
        return m

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> ExactMatrix:
        data = [list(r) for r in data]
        if not data:
            return cls._from_scalars(0, 0, ())
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged row lengths")
        return cls(len(data), ncols, [x for r in data for x in r])

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls._from_scalars(
            n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n))
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls._from_scalars(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def column(cls, vector: Sequence) -> ExactMatrix:
        return cls(len(vector), 1, vector)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> ExactScalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return self.entries[j::self.cols]

    def to_lists(self) -> list[list[ExactScalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    # -- structure --------------------------------------------------------
    @property
    def T(self) -> ExactMatrix:
        return ExactMatrix._from_scalars(
            self.cols, self.rows, tuple(e for j in range(self.cols) for e in self.col(j))
        )

    @property
    def H(self) -> ExactMatrix:
        """Conjugate transpose."""
        return ExactMatrix._from_scalars(
            self.cols,
            self.rows,
            tuple(e.conj() for j in range(self.cols) for e in self.col(j)),
        )

    def conj(self) -> ExactMatrix:
        return ExactMatrix._from_scalars(self.rows, self.cols, tuple(e.conj() for e in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_real(self) -> bool:
        return all(not e.im for e in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self) -> bool:
        return self.is_square() and self == self.H

    def trace(self) -> ExactScalar:
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i * self.cols + i] for i in range(self.rows)), ZERO)

    def is_scalar_multiple_of_identity(self) -> bool:
        if not self.is_square():
            return False
        d = self.entries[0] if self.entries else ZERO
        n = self.cols
        return all(
            (e == d) if i // n == i % n else (not e) for i, e in enumerate(self.entries)
        )

    # -- arithmetic -------------------------------------------------------
    def _check_same_shape(self, other: ExactMatrix):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix._from_scalars(
            self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        self._check_same_shape(other)
        return ExactMatrix._from_scalars(
            self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries))
        )

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix._from_scalars(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, s) -> ExactMatrix:
        s = as_scalar(s)
        return ExactMatrix._from_scalars(self.rows, self.cols, tuple(s * a for a in self.entries))

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                out.append(acc)
        return ExactMatrix._from_scalars(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValueError("vector length does not match column count")
        vector = [as_scalar(v) for v in vector]
        out = []
        for i in range(self.rows):
            acc = ZERO
            for a, b in zip(self.row(i), vector):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix({self.rows}x{self.cols}: [{body}])"

    def rank(self) -> int:
        return rank(self)

    def kernel_basis(self) -> list[tuple]:
        return kernel_basis(self)


def kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product ``a (x) b``."""
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            for j in range(a.cols):
                x = a.entries[i * a.cols + j]
                for l in range(b.cols):
                    out.append(x * b.entries[k * b.cols + l] if x else ZERO)
    return ExactMatrix._from_scalars(a.rows * b.rows, a.cols * b.cols, tuple(out))


# ---------------------------------------------------------------------------
# integer forms

def _common_denominator(scalars: Iterable[ExactScalar]) -> int:
    den = 1
    for s in scalars:
        re, im = s.re, s.im
        if type(re) is Fraction:
            den = lcm(den, re.denominator)
        if type(im) is Fraction:
            den = lcm(den, im.denominator)
    return den


def integer_rows(rows: Sequence[Sequence[ExactScalar]]):
    """Scale a block of scalars to Gaussian integers.

    Returns ``(int_rows, is_real)``.  Real blocks come back as lists of
    ``int``; complex blocks as lists of ``(re, im)`` integer pairs.  Each
    row is scaled by its own positive factor, which leaves row space and
    rank unchanged.
    """
    is_real = all(not s.im for r in rows for s in r)
    out = []
    for r in rows:
        den = _common_denominator(r)
        if is_real:
            if den == 1:
                out.append([s.re for s in r])
            else:
                out.append([int(s.re * den) for s in r])
        else:
            out.append([(int(s.re * den), int(s.im * den)) for s in r])
    return out, is_real


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gsub(x, y):
    return (x[0] - y[0], x[1] - y[1])


def _gdiv_exact(x, d):
    n = d[0] * d[0] + d[1] * d[1]
    a = x[0] * d[0] + x[1] * d[1]
    b = x[1] * d[0] - x[0] * d[1]
    qa, ra = divmod(a, n)
    qb, rb = divmod(b, n)
    if ra or rb:
        raise ArithmeticError("inexact Gaussian division in Bareiss step")
    return (qa, qb)


def bareiss_echelon(rows: list, ncols: int, is_real: bool = True):
    """Fraction-free row echelon form.

    The pivot for each column is the first nonzero entry found scanning rows
    top-down at or below the current pivot row.  Returns ``(echelon_rows,
    pivot_columns)`` where only the nonzero rows are kept.  The input lists
    are not modified.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    if is_real:
        prev = 1
        for c in range(ncols):
            if r == nrows:
                break
            piv = None
            for i in range(r, nrows):
                if rows[i][c]:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
            prow = rows[r]
            p = prow[c]
            ptail = prow[c + 1:]
            for i in range(r + 1, nrows):
                row = rows[i]
                f = row[c]
                if f:
                    row[c + 1:] = [(p * x - f * y) // prev for x, y in zip(row[c + 1:], ptail)]
                elif p != prev:
                    row[c + 1:] = [(p * x) // prev for x in row[c + 1:]]
                row[c] = 0
            prev = p
            pivots.append(c)
            r += 1
    else:
        zero = (0, 0)
        prev = (1, 0)
        for c in range(ncols):
            if r == nrows:
                break
            piv = None
            for i in range(r, nrows):
                if rows[i][c] != zero:
                    piv = i
                    break
            if piv is None:
                continue
            if piv != r:
                rows[r], rows[piv] = rows[piv], rows[r]
            prow = rows[r]
            p = prow[c]
            for i in range(r + 1, nrows):
                row = rows[i]
                f = row[c]
                for j in range(c + 1, ncols):
                    row[j] = _gdiv_exact(_gsub(_gmul(p, row[j]), _gmul(f, prow[j])), prev)
                row[c] = zero
            prev = p
            pivots.append(c)
            r += 1
    return rows[:r], pivots


def _row_blocks(m: ExactMatrix) -> list:
    return [m.row(i) for i in range(m.rows)]


def rank(m: ExactMatrix) -> int:
    """Exact rank over the complex numbers."""
    if m.rows == 0 or m.cols == 0:
        return 0
    # eliminate along the shorter dimension
    src = m if m.rows <= m.cols else m.T
    int_rows, is_real = integer_rows(_row_blocks(src))
    _, pivots = bareiss_echelon(int_rows, src.cols, is_real)
    return len(pivots)


def rank_of_integer_rows(rows: list, ncols: int, is_real: bool = True) -> int:
    """Rank of a block already in Gaussian-integer form (see :func:`integer_rows`)."""
    if not rows or ncols == 0:
        return 0
    _, pivots = bareiss_echelon(rows, ncols, is_real)
    return len(pivots)


def _primitive(vec: list) -> tuple:
    """Scale a rational vector to coprime Gaussian-integer entries (positive factor)."""
    den = _common_denominator(vec)
    ints = []
    g = 0
    for s in vec:
        a, b = int(s.re * den), int(s.im * den)
        ints.append((a, b))
        g = gcd(g, a, b)
    if g == 0:
        return tuple(vec)
    return tuple(ExactScalar._raw(a // g, b // g) for a, b in ints)


def kernel_basis(m: ExactMatrix) -> list[tuple]:
    """Basis of ``{v : m v = 0}``.

    One vector per non-pivot column, in increasing column order; the free
    coordinate is set to 1 and the result rescaled to coprime Gaussian
    integers.  ``len(result) == m.cols - rank(m)``.
    """
    n = m.cols
    if m.rows == 0:
        return [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)]
    int_rows, is_real = integer_rows(_row_blocks(m))
    ech, pivots = bareiss_echelon(int_rows, n, is_real)
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if is_real:
        ech_s = [[ExactScalar._raw(x, 0) for x in r] for r in ech]
    else:
        ech_s = [[ExactScalar._raw(a, b) for a, b in r] for r in ech]
    basis = []
    for f in free:
        x = [ZERO] * n
        x[f] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = ech_s[r]
            acc = ZERO
            for j in range(pc + 1, n):
                if row[j] and x[j]:
                    acc = acc + row[j] * x[j]
            x[pc] = -acc / row[pc] if acc else ZERO
        basis.append(_primitive(x))
    return basis


def determinant(m: ExactMatrix) -> ExactScalar:
    """Exact determinant via fraction-free elimination."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return ONE
    den = _common_denominator(m.entries)
    real = m.is_real()
    if real:
        rows = [[int(s.re * den) for s in m.row(i)] for i in range(n)]
    else:
        rows = [[(int(s.re * den), int(s.im * den)) for s in m.row(i)] for i in range(n)]
    sign = 1
    # track swaps: replicate the pivot rule locally so the sign is known
    zero = 0 if real else (0, 0)
    prev = 1 if real else (1, 0)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c] != zero:
                piv = i
                break
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, n):
            row = rows[i]
            f = row[c]
            for j in range(c + 1, n):
                if real:
                    row[j] = (p * row[j] - f * rows[c][j]) // prev
                else:
                    row[j] = _gdiv_exact(_gsub(_gmul(p, row[j]), _gmul(f, rows[c][j])), prev)
            row[c] = zero
        prev = p
    last = rows[n - 1][n - 1]
    scale = Fraction(sign, den ** n)
    if real:
        return ExactScalar._raw(last * scale, 0)
    return ExactScalar._raw(last[0] * scale, last[1] * scale)


def vectorize(m: ExactMatrix) -> tuple:
    """Column-major stacking ``[a11, ..., am1, a12, ..., amn]``."""
    return tuple(e for j in range(m.cols) for e in m.col(j))


def unvectorize(vec: Sequence, rows: int, cols: int) -> ExactMatrix:
    """Inverse of :func:`vectorize`."""
    if len(vec) != rows * cols:
        raise ValueError("vector length does not match the requested shape")
    vec = [as_scalar(v) for v in vec]
    return ExactMatrix._from_scalars(
        rows, cols, tuple(vec[j * rows + i] for i in range(rows) for j in range(cols))
    )


def column_stack(ms: Sequence[ExactMatrix]) -> ExactMatrix:
    """Matrix whose i-th column is ``vectorize(ms[i])``."""
    if not ms:
        raise ValueError("column_stack needs at least one matrix")
    shape = ms[0].shape
    for k, m in enumerate(ms):
        if m.shape != shape:
            raise ValueError(f"matrix {k} has shape {m.shape}, expected {shape}")
    cols = [vectorize(m) for m in ms]
    nrows = shape[0] * shape[1]
    return ExactMatrix._from_scalars(
        nrows, len(ms), tuple(cols[j][i] for i in range(nrows) for j in range(len(ms)))
    )


def is_psd(m: ExactMatrix) -> bool:
    """Hermitian positive-semidefinite test by principal minors.

    A Hermitian matrix is PSD iff *every* principal minor is non-negative
    (leading minors alone only characterize the definite case).
    """
    if not m.is_hermitian():
        return False
    n = m.rows
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        sub = ExactMatrix._from_scalars(
            len(idx), len(idx), tuple(m.entries[i * n + j] for i in idx for j in idx)
        )
        d = determinant(sub)
        if d.re < 0:
            return False
    return True
