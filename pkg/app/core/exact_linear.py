"""
Exact linear algebra over the Gaussian rationals Q(i).

Every value is exact: entries are pairs of Fractions, ranks come from
fraction-free (Bareiss) elimination over the Gaussian integers, and nothing
is ever rounded.
"""

import logging
import math
from fractions import Fraction
from numbers import Rational

from app.core.errors import DomainError, InvariantBreachError, ShapeError

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# Scalars
# ----------------------------------------------------------------------
class GaussianRational:
    """An exact complex number re + im·i with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_fraction(re)
        self.im = _to_fraction(im)

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def from_string(cls, text: str) -> "GaussianRational":
        """Parse "3/2", "-1", "1/2+3/4i", "i" or "-2i"."""
        s = text.replace(" ", "")
        if not s:
            raise DomainError("empty Gaussian rational")
        if not s.endswith("i"):
            try:
                return cls(Fraction(s))
            except (ValueError, ZeroDivisionError) as exc:
                raise DomainError(f"not a Gaussian rational: {text!r}") from exc
        body = s[:-1]
        split = max(body.rfind("+"), body.rfind("-"))
        if split <= 0:
            re_part, im_part = "0", body
        else:
            re_part, im_part = body[:split], body[split:]
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        try:
            return cls(Fraction(re_part), Fraction(im_part))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"not a Gaussian rational: {text!r}") from exc

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._make(a * c, Fraction(0))
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = other.norm()
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussianRational._make(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def norm(self) -> Fraction:
        """|z|², always rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    # -- comparison ----------------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise DomainError(f"inexact or unsupported scalar: {value!r}")


def _coerce(value) -> "GaussianRational | None":
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, bool):
        return GaussianRational._make(Fraction(int(value)), Fraction(0))
    if isinstance(value, (int, Rational)):
        return GaussianRational._make(Fraction(value), Fraction(0))
    if isinstance(value, complex):
        if value.real.is_integer() and value.imag.is_integer():
            return GaussianRational._make(Fraction(int(value.real)), Fraction(int(value.imag)))
        return None
    return None


def gr(value) -> GaussianRational:
    """Coerce an int, Fraction, integral complex or string to a GaussianRational."""
    if isinstance(value, str):
        return GaussianRational.from_string(value)
    coerced = _coerce(value)
    if coerced is None:
        raise DomainError(f"cannot represent {value!r} exactly")
    return coerced


ZERO = GaussianRational._make(Fraction(0), Fraction(0))
ONE = GaussianRational._make(Fraction(1), Fraction(0))
I = GaussianRational._make(Fraction(0), Fraction(1))
HALF = GaussianRational._make(Fraction(1, 2), Fraction(0))


# ----------------------------------------------------------------------
# Matrices
# ----------------------------------------------------------------------
class GaussianRationalMatrix:
    """Immutable dense matrix of Gaussian rationals, stored row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = tuple(entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise ShapeError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self._entries = entries

    @classmethod
    def from_rows(cls, rows) -> "GaussianRationalMatrix":
        rows = [list(r) for r in rows]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), width, (gr(v) for r in rows for v in r))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple:
        return self._entries

    def __getitem__(self, key):
        i, j = key
        return self._entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[GaussianRational]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def nonzero_items(self):
        cols = self.cols
        for k, v in enumerate(self._entries):
            if v:
                yield divmod(k, cols) + (v,)

    def is_zero(self) -> bool:
        return not any(self._entries)

    def __eq__(self, other):
        if not isinstance(other, GaussianRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self):
        return hash((self.rows, self.cols, self._entries))

    def __add__(self, other):
        _same_shape(self, other)
        return GaussianRationalMatrix(self.rows, self.cols,
                                      (x + y for x, y in zip(self._entries, other._entries)))

    def __sub__(self, other):
        _same_shape(self, other)
        return GaussianRationalMatrix(self.rows, self.cols,
                                      (x - y for x, y in zip(self._entries, other._entries)))

    def __neg__(self):
        return GaussianRationalMatrix(self.rows, self.cols, (-x for x in self._entries))

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __repr__(self):
        body = "; ".join(", ".join(str(v) for v in self.row(i)) for i in range(self.rows))
        return f"GaussianRationalMatrix({self.rows}x{self.cols}: [{body}])"


def _same_shape(a: GaussianRationalMatrix, b: GaussianRationalMatrix):
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")


def zeros(rows: int, cols: int) -> GaussianRationalMatrix:
    return GaussianRationalMatrix(rows, cols, (ZERO,) * (rows * cols))


def identity(n: int) -> GaussianRationalMatrix:
    return GaussianRationalMatrix(n, n, (ONE if i == j else ZERO for i in range(n) for j in range(n)))


def matrix_unit(rows: int, cols: int, i: int, j: int) -> GaussianRationalMatrix:
    """E_{i,j} with 1-based indices."""
    if not (1 <= i <= rows and 1 <= j <= cols):
        raise ShapeError(f"E_{{{i},{j}}} does not fit a {rows}x{cols} matrix")
    entries = [ZERO] * (rows * cols)
    entries[(i - 1) * cols + (j - 1)] = ONE
    return GaussianRationalMatrix(rows, cols, entries)


def scale(c, a: GaussianRationalMatrix) -> GaussianRationalMatrix:
    c = gr(c)
    return GaussianRationalMatrix(a.rows, a.cols, (c * x if x else ZERO for x in a.entries))


def linear_combination(coefficients, matrices) -> GaussianRationalMatrix:
    matrices = list(matrices)
    if not matrices:
        raise ShapeError("empty linear combination")
    rows, cols = matrices[0].shape
    acc = [ZERO] * (rows * cols)
    for c, m in zip(coefficients, matrices):
        if m.shape != (rows, cols):
            raise ShapeError(f"shape mismatch: {m.shape} vs {(rows, cols)}")
        c = gr(c)
        if not c:
            continue
        for k, v in enumerate(m.entries):
            if v:
                acc[k] = acc[k] + c * v
    return GaussianRationalMatrix(rows, cols, acc)


def mat_mul(a: GaussianRationalMatrix, b: GaussianRationalMatrix) -> GaussianRationalMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    # zero entries are skipped; spin generators are monomial
    b_sparse = [[(j, v) for j, v in enumerate(b.row(k)) if v] for k in range(b.rows)]
    out = []
    for i in range(a.rows):
        acc = {}
        for k, x in enumerate(a.row(i)):
            if not x:
                continue
            for j, y in b_sparse[k]:
                prev = acc.get(j)
                acc[j] = x * y if prev is None else prev + x * y
        row = [ZERO] * b.cols
        for j, v in acc.items():
            row[j] = v
        out.extend(row)
    return GaussianRationalMatrix(a.rows, b.cols, out)


def transpose(a: GaussianRationalMatrix) -> GaussianRationalMatrix:
    return GaussianRationalMatrix(a.cols, a.rows, (a[i, j] for j in range(a.cols) for i in range(a.rows)))


def adjoint(a: GaussianRationalMatrix) -> GaussianRationalMatrix:
    """Conjugate transpose."""
    return GaussianRationalMatrix(a.cols, a.rows,
                                  (a[i, j].conjugate() for j in range(a.cols) for i in range(a.rows)))


def tensor(a: GaussianRationalMatrix, b: GaussianRationalMatrix) -> GaussianRationalMatrix:
    """Kronecker product a ⊗ b."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    entries = [ZERO] * (rows * cols)
    b_items = list(b.nonzero_items())
    for i, j, x in a.nonzero_items():
        for k, l, y in b_items:
            entries[(i * b.rows + k) * cols + j * b.cols + l] = x * y
    return GaussianRationalMatrix(rows, cols, entries)


def tensor_power(a: GaussianRationalMatrix, k: int) -> GaussianRationalMatrix:
    result = identity(1)
    for _ in range(k):
        result = tensor(result, a)
    return result


def block_diagonal(blocks, rows: int | None = None, cols: int | None = None) -> GaussianRationalMatrix:
    """Place blocks down the diagonal, padding with zeros up to rows x cols."""
    blocks = list(blocks)
    used_rows = sum(b.rows for b in blocks)
    used_cols = sum(b.cols for b in blocks)
    rows = used_rows if rows is None else rows
    cols = used_cols if cols is None else cols
    if used_rows > rows or used_cols > cols:
        raise ShapeError(f"blocks need {used_rows}x{used_cols}, target is {rows}x{cols}")
    entries = [ZERO] * (rows * cols)
    r0 = c0 = 0
    for b in blocks:
        for i, j, v in b.nonzero_items():
            entries[(r0 + i) * cols + c0 + j] = v
        r0 += b.rows
        c0 += b.cols
    return GaussianRationalMatrix(rows, cols, entries)


def ternary_product(a, b, c) -> GaussianRationalMatrix:
    """{a,b,c} = ½(a·b*·c + c·b*·a) for matrices of one common shape."""
    _same_shape(a, b)
    _same_shape(b, c)
    b_star = adjoint(b)
    total = mat_mul(mat_mul(a, b_star), c) + mat_mul(mat_mul(c, b_star), a)
    return scale(HALF, total)


# ----------------------------------------------------------------------
# Rank (fraction-free elimination over Z[i])
# ----------------------------------------------------------------------
def _gi_mul(x, y):
    a, b = x
    c, d = y
    return a * c - b * d, a * d + b * c


def _gi_exact_div(x, y):
    a, b = x
    c, d = y
    n = c * c + d * d
    re = a * c + b * d
    im = b * c - a * d
    if re % n or im % n:
        raise InvariantBreachError(f"Bareiss division not exact: {x} / {y}")
    return re // n, im // n


def _integer_rows(a: GaussianRationalMatrix) -> list[list[tuple[int, int]]]:
    rows = []
    for i in range(a.rows):
        row = a.row(i)
        lcm = 1
        for v in row:
            lcm = math.lcm(lcm, v.re.denominator, v.im.denominator)
        rows.append([(int(v.re * lcm), int(v.im * lcm)) for v in row])
    return rows


def rank(a: GaussianRationalMatrix) -> int:
    """Exact rank. Rows are cleared of denominators, then Bareiss-eliminated;
    columns without a pivot are skipped and the previous pivot is kept as divisor."""
    m = _integer_rows(a)
    nrows, ncols = a.rows, a.cols
    r = 0
    prev = (1, 0)
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if m[i][c] != (0, 0)), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        row_r = m[r]
        for i in range(r + 1, nrows):
            row_i = m[i]
            f = row_i[c]
            for j in range(c + 1, ncols):
                pa, pb = _gi_mul(p, row_i[j])
                qa, qb = _gi_mul(f, row_r[j])
                row_i[j] = _gi_exact_div((pa - qa, pb - qb), prev)
            row_i[c] = (0, 0)
        prev = p
        r += 1
    return r


def is_linearly_independent(matrices) -> bool:
    matrices = list(matrices)
    if not matrices:
        return True
    stacked = GaussianRationalMatrix(len(matrices), len(matrices[0].entries),
                                     (v for m in matrices for v in m.entries))
    return rank(stacked) == len(matrices)


def inverse(a: GaussianRationalMatrix) -> GaussianRationalMatrix:
    """Gauss-Jordan inverse; DomainError when singular."""
    if a.rows != a.cols:
        raise ShapeError(f"cannot invert a {a.rows}x{a.cols} matrix")
    n = a.rows
    work = [list(a.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if work[i][c]), None)
        if pivot is None:
            raise DomainError("matrix is singular")
        work[c], work[pivot] = work[pivot], work[c]
        inv = ONE / work[c][c]
        work[c] = [x * inv if x else ZERO for x in work[c]]
        for i in range(n):
            f = work[i][c]
            if i != c and f:
                work[i] = [x - f * y if y else x for x, y in zip(work[i], work[c])]
    return GaussianRationalMatrix(n, n, (v for row in work for v in row[n:]))


# ----------------------------------------------------------------------
# Span membership
# ----------------------------------------------------------------------
class SpanSolver:
    """Coordinates with respect to a fixed, linearly independent basis.

    The pivot positions and the inverse of the pivot block are computed once;
    every answer is checked by re-expansion, so a target outside the span
    yields None rather than a wrong vector.
    """

    def __init__(self, basis):
        self.basis = tuple(basis)
        if not self.basis:
            raise ShapeError("empty basis")
        self.shape = self.basis[0].shape
        for m in self.basis:
            if m.shape != self.shape:
                raise ShapeError(f"basis shape mismatch: {m.shape} vs {self.shape}")
        self._sparse = [{k: v for k, v in enumerate(m.entries) if v} for m in self.basis]
        self.pivots = self._find_pivots()
        d = len(self.basis)
        block = GaussianRationalMatrix(d, d, (self._sparse[k].get(p, ZERO)
                                              for p in self.pivots for k in range(d)))
        # block[t][k] = basis_k at pivot t, so c = block⁻¹ · target_P
        self._inverse = inverse(block)

    def _find_pivots(self) -> list[int]:
        reduced: list[tuple[int, dict]] = []
        for vec in self._sparse:
            row = dict(vec)
            for pcol, prow in reduced:
                f = row.get(pcol)
                if not f:
                    continue
                for k, y in prow.items():
                    v = row.get(k, ZERO) - f * y
                    if v:
                        row[k] = v
                    else:
                        row.pop(k, None)
            if not row:
                raise DomainError("basis is linearly dependent")
            pcol = min(row)
            inv = ONE / row[pcol]
            reduced.append((pcol, {k: v * inv for k, v in row.items()}))
        return [p for p, _ in reduced]

    def coordinates(self, target: GaussianRationalMatrix) -> "tuple[GaussianRational, ...] | None":
        if target.shape != self.shape:
            raise ShapeError(f"target shape {target.shape} vs basis shape {self.shape}")
        d = len(self.basis)
        t = [target.entries[p] for p in self.pivots]
        coords = []
        for k in range(d):
            acc = ZERO
            for s in range(d):
                if t[s]:
                    w = self._inverse[k, s]
                    if w:
                        acc = acc + w * t[s]
            coords.append(acc)
        expanded: dict[int, GaussianRational] = {}
        for c, vec in zip(coords, self._sparse):
            if not c:
                continue
            for k, v in vec.items():
                expanded[k] = expanded.get(k, ZERO) + c * v
        for k, v in enumerate(target.entries):
            if expanded.get(k, ZERO) != v:
                return None
        for k, v in expanded.items():
            if v and not target.entries[k]:
                return None
        return tuple(coords)

    def contains(self, target: GaussianRationalMatrix) -> bool:
        return self.coordinates(target) is not None
