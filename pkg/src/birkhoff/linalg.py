"""Dense exact matrices and the rank / nullspace / inverse kernel.

Over ``GF(p)`` elimination runs directly in the compiled kernel.  Over the
rationals the rows are first scaled to primitive integer rows; a reduced
echelon form is then computed modulo a private 62-bit prime, the kernel basis
is lifted by rational reconstruction and checked exactly over the integers.
Since rank can only drop modulo a prime, a checked basis of the predicted size
is the rational kernel.  Whenever the check fails the fraction-free integer
elimination is used instead, so results are always exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from . import kernel
from .errors import ShapeMismatch, SingularMatrix
from .fields import RATIONAL, PrimeField, RationalField

# Internal modulus for the rational fast path; kept distinct from the
# user-facing default prime so the two routes stay independent.
CERT_PRIME = 2**62 - 57


class Matrix:
    """Immutable dense matrix over an exact field.

    Zero-row and zero-column matrices are legal; they multiply like zero
    maps of the appropriate shape.
    """

    __slots__ = ("rows", "cols", "_data", "field", "_hash", "_flat")

    def __init__(self, data, field=RATIONAL, cols=None, _trusted=False):
        if _trusted:
            self._data = data
        else:
            red = field.reduce
            self._data = tuple(tuple(red(x) for x in row) for row in data)
        self.rows = len(self._data)
        if cols is None:
            if self.rows == 0:
                raise ShapeMismatch("cols must be given for a matrix with no rows")
            cols = len(self._data[0])
        self.cols = cols
        if any(len(row) != cols for row in self._data):
            raise ShapeMismatch("ragged rows")
        self.field = field
        self._hash = None
        self._flat = None

    # construction helpers
    @classmethod
    def zeros(cls, rows, cols, field=RATIONAL):
        return cls(tuple((0,) * cols for _ in range(rows)), field, cols, _trusted=True)

    @classmethod
    def identity(cls, n, field=RATIONAL):
        return cls(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
            field,
            n,
            _trusted=True,
        )

    @classmethod
    def from_flat(cls, rows, cols, entries, field=RATIONAL):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ShapeMismatch("entries length must be rows*cols")
        return cls([entries[i * cols:(i + 1) * cols] for i in range(rows)], field, cols)

    # accessors
    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        if self._flat is None:
            self._flat = tuple(x for row in self._data for x in row)
        return self._flat

    def tolist(self):
        return [list(row) for row in self._data]

    def row(self, i):
        return self._data[i]

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shape, self._data))
        return self._hash

    def __repr__(self):
        return f"Matrix({self.tolist()!r}, rows={self.rows}, cols={self.cols})"

    def is_zero(self):
        return all(not x for row in self._data for x in row)

    def is_square(self):
        return self.rows == self.cols

    # arithmetic
    def _same_field(self, other):
        if self.field != other.field:
            raise ShapeMismatch("matrices over different fields")

    def __add__(self, other):
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        red = self.field.reduce
        return Matrix(
            tuple(tuple(red(x + y) for x, y in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.field, self.cols, _trusted=True,
        )

    def __neg__(self):
        red = self.field.reduce
        return Matrix(tuple(tuple(red(-x) for x in r) for r in self._data),
                      self.field, self.cols, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        red = self.field.reduce
        c = red(c)
        return Matrix(tuple(tuple(red(c * x) for x in r) for r in self._data),
                      self.field, self.cols, _trusted=True)

    def __matmul__(self, other):
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        ocols = other.cols
        # sparse rows of the left factor; right factor by rows
        odata = other._data
        out = []
        for row in self._data:
            acc = [0] * ocols
            for k, x in enumerate(row):
                if x:
                    orow = odata[k]
                    for j in range(ocols):
                        y = orow[j]
                        if y:
                            acc[j] += x * y
            out.append(tuple(red(v) for v in acc))
        return Matrix(tuple(out), self.field, ocols, _trusted=True)

    @property
    def T(self):
        if self.rows == 0:
            return Matrix(tuple(() for _ in range(self.cols)), self.field, 0, _trusted=True)
        return Matrix(tuple(zip(*self._data)), self.field, self.rows, _trusted=True)

    def power(self, k):
        if not self.is_square():
            raise ShapeMismatch("power of a non-square matrix")
        result = Matrix.identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def submatrix(self, r0, r1, c0, c1):
        return Matrix(tuple(row[c0:c1] for row in self._data[r0:r1]),
                      self.field, max(c1 - c0, 0), _trusted=True)

    def convert(self, field):
        """Reduce an integer/rational matrix into ``field``."""
        if field == self.field:
            return self
        return Matrix(self._data, field, self.cols)


def block_diag(*blocks, field=None):
    if field is None:
        field = blocks[0].field if blocks else RATIONAL
    n = sum(b.rows for b in blocks)
    c = sum(b.cols for b in blocks)
    out = []
    off = 0
    for b in blocks:
        for row in b._data:
            out.append((0,) * off + row + (0,) * (c - off - b.cols))
        off += b.cols
    assert len(out) == n
    return Matrix(tuple(out), field, c, _trusted=True)


def hstack(*blocks):
    if not blocks:
        raise ShapeMismatch("hstack of nothing")
    rows = blocks[0].rows
    if any(b.rows != rows for b in blocks):
        raise ShapeMismatch("hstack row mismatch")
    data = tuple(tuple(x for b in blocks for x in b._data[i]) for i in range(rows))
    return Matrix(data, blocks[0].field, sum(b.cols for b in blocks), _trusted=True)


def vstack(*blocks):
    if not blocks:
        raise ShapeMismatch("vstack of nothing")
    cols = blocks[0].cols
    if any(b.cols != cols for b in blocks):
        raise ShapeMismatch("vstack column mismatch")
    data = tuple(row for b in blocks for row in b._data)
    return Matrix(data, blocks[0].field, cols, _trusted=True)


def block_matrix(row_sizes, col_sizes, blocks, field=RATIONAL):
    """Assemble a matrix from a ``{(i, j): Matrix}`` dict of nonzero blocks."""
    roff = [0]
    for s in row_sizes:
        roff.append(roff[-1] + s)
    coff = [0]
    for s in col_sizes:
        coff.append(coff[-1] + s)
    out = [[0] * coff[-1] for _ in range(roff[-1])]
    for (i, j), b in blocks.items():
        if b.shape != (row_sizes[i], col_sizes[j]):
            raise ShapeMismatch(f"block {(i, j)} has shape {b.shape}, "
                                f"expected {(row_sizes[i], col_sizes[j])}")
        for r in range(b.rows):
            out[roff[i] + r][coff[j]:coff[j] + b.cols] = b._data[r]
    return Matrix(tuple(tuple(r) for r in out), field, coff[-1], _trusted=True)


# ---------------------------------------------------------------------------
# the kernel on plain row lists

def _integer_rows(rows):
    out = []
    for row in rows:
        den = 1
        for x in row:
            if type(x) is not int:
                den = lcm(den, x.denominator)
        if den != 1:
            row = [int(x * den) for x in row]
        g = 0
        for x in row:
            if x:
                g = gcd(g, x)
        if g == 0:
            continue
        if g != 1:
            row = [x // g for x in row]
        out.append(list(row))
    return out


def _ratrecon(a, m):
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return RationalField.reduce(Fraction(r1, s1))


def _basis_from_echelon(red, pivots, ncols, entry):
    """Kernel basis from a reduced echelon form: one vector per free column."""
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for r, c in enumerate(pivots):
            x = red[r][f]
            if x:
                val = entry(r, x)
                if val is None:
                    return None
                v[c] = val
        basis.append(v)
    return basis


def _check_kernel(int_rows, basis):
    sparse = [[(k, x) for k, x in enumerate(row) if x] for row in int_rows]
    for v in basis:
        den = 1
        for x in v:
            if type(x) is not int:
                den = lcm(den, x.denominator)
        w = v if den == 1 else [int(x * den) for x in v]
        for row in sparse:
            s = 0
            for k, x in row:
                y = w[k]
                if y:
                    s += x * y
            if s:
                return False
    return True


def _nullspace_rational(rows, ncols):
    irows = _integer_rows(rows)
    if not irows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)], []
    red, piv = kernel.rref_mod(irows, ncols, CERT_PRIME)
    basis = _basis_from_echelon(red, piv, ncols, lambda r, x: _ratrecon(-x, CERT_PRIME))
    if basis is not None and _check_kernel(irows, basis):
        return basis, piv
    return _nullspace_exact(irows, ncols)


def _nullspace_exact(irows, ncols):
    red, piv = kernel.rref_int(irows, ncols)
    basis = _basis_from_echelon(
        red, piv, ncols,
        lambda r, x: RationalField.reduce(Fraction(-x, red[r][piv[r]])))
    return basis, piv


def nullspace_rows(rows, ncols, field=RATIONAL, exact=False):
    """Kernel basis of the matrix given as a list of rows.

    Returns ``(basis, pivots)``; each basis vector is a list of ``ncols``
    field elements with a 1 in its free column and 0 in the other free
    columns.  ``exact`` forces the fraction-free route over the rationals.
    """
    if ncols == 0:
        return [], []
    if isinstance(field, PrimeField):
        p = field.p
        red, piv = kernel.rref_mod([[x % p for x in r] for r in rows], ncols, p)
        return _basis_from_echelon(red, piv, ncols, lambda r, x: (-x) % p), piv
    if exact:
        irows = _integer_rows(rows)
        if not irows:
            return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)], []
        return _nullspace_exact(irows, ncols)
    return _nullspace_rational(rows, ncols)


def rank_rows(rows, ncols, field=RATIONAL, exact=False):
    if ncols == 0 or not rows:
        return 0
    if isinstance(field, PrimeField):
        p = field.p
        return kernel.rank_mod([[x % p for x in r] for r in rows], ncols, p)
    nrows = len(rows)
    if ncols > nrows:
        rows = [list(c) for c in zip(*rows)]
        ncols = nrows
    return ncols - len(nullspace_rows(rows, ncols, field, exact)[0])


# ---------------------------------------------------------------------------
# public operations on Matrix

def rank(a: Matrix, exact: bool = False) -> int:
    return rank_rows(a._data, a.cols, a.field, exact)


def nullspace_basis(a: Matrix, exact: bool = False):
    """Kernel basis as a list of column vectors (tuples), in reduced-echelon form."""
    basis, _ = nullspace_rows(a._data, a.cols, a.field, exact)
    return [tuple(v) for v in basis]


def invert(a: Matrix) -> Matrix:
    if not a.is_square():
        raise ShapeMismatch("only square matrices can be inverted")
    n = a.rows
    field = a.field
    if n == 0:
        return a
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a._data)]
    if isinstance(field, PrimeField):
        p = field.p
        red, piv = kernel.rref_mod(aug, 2 * n, p)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise SingularMatrix("matrix is singular")
        return Matrix(tuple(tuple(r[n:]) for r in red[:n]), field, n, _trusted=True)
    iaug = []
    for row in aug:
        den = 1
        for x in row:
            if type(x) is not int:
                den = lcm(den, x.denominator)
        iaug.append([int(x * den) for x in row])
    red, piv = kernel.rref_mod(iaug, 2 * n, CERT_PRIME)
    if len(piv) >= n and piv[:n] == list(range(n)):
        inv = []
        for r in red[:n]:
            row = [_ratrecon(x, CERT_PRIME) for x in r[n:]]
            if any(x is None for x in row):
                break
            inv.append(tuple(row))
        else:
            b = Matrix(tuple(inv), field, n, _trusted=True)
            if a @ b == Matrix.identity(n, field):
                return b
    red, piv = kernel.rref_int(iaug, 2 * n)
    if len(piv) < n or piv[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    rows = tuple(tuple(RationalField.reduce(Fraction(x, r[c])) for x in r[n:])
                 for r, c in zip(red[:n], piv[:n]))
    return Matrix(rows, field, n, _trusted=True)


def is_invertible(a: Matrix) -> bool:
    """Exact invertibility test; over the rationals a full rank modulo the
    internal prime is already a proof."""
    if not a.is_square():
        return False
    if a.rows == 0:
        return True
    if isinstance(a.field, RationalField):
        irows = _integer_rows(a._data)
        if len(irows) < a.rows:
            return False
        if kernel.rank_mod(irows, a.cols, CERT_PRIME) == a.rows:
            return True
    return rank(a) == a.rows


def is_nilpotent_of_order(a: Matrix, m: int) -> bool:
    if not a.is_square():
        raise ShapeMismatch("nilpotency of a non-square matrix")
    n = a.rows
    if n == 0:
        return True
    k = min(m, n)
    return a.power(k).is_zero()
