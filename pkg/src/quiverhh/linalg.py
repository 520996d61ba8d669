"""Exact linear algebra over Q and over prime fields F_p.

Every homology dimension computed by this package reduces to exact
ranks of sparse matrices computed here.  Two elimination strategies are
used:

* small matrices (both sides <= DENSE_THRESHOLD) are densified; over Q
  rank runs fraction-free (Bareiss) elimination to control coefficient
  swell, over F_p plain Gaussian elimination;
* larger matrices stay sparse: rows are eliminated by leading
  coordinate, over Q with integer cross-multiplication and content
  stripping (the sparse analogue of fraction-free elimination).

Nothing here ever rounds: Q values are `fractions.Fraction`, F_p values
are residues in [0, p).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import FieldMismatch, ShapeError

DENSE_THRESHOLD = 256


class Field:
    """Common interface for the two supported exact fields."""

    def coerce(self, x):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero


class RationalField(Field):
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise FieldMismatch(f"expected a rational, got a value over {x.field.name}")
            return x.value
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """Residues modulo a prime p < 2^31 (so products fit comfortably in
    native machine words on all platforms)."""

    def __init__(self, p):
        if p < 2 or p >= 2**31:
            raise ValueError(f"prime must satisfy 2 <= p < 2^31, got {p}")
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = 0
        self.one = 1 % p

    def coerce(self, x):
        if isinstance(x, Scalar):
            if x.field is not self:
                raise FieldMismatch(f"expected a value over {self.name}, got {x.field.name}")
            return x.value
        if isinstance(x, Fraction):
            return self.mul(x.numerator % self.p, self.inv(x.denominator % self.p))
        return x % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __repr__(self):
        return f"GF({self.p})"


def _is_prime(n):
    if n < 4:
        return n in (2, 3)
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


QQ = RationalField()

_prime_fields: dict[int, PrimeField] = {}


def GF(p) -> PrimeField:
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


class Scalar:
    """An exact field element tagged with its field.

    Rational values are kept in lowest terms with positive denominator
    (guaranteed by `Fraction`); F_p values are residues in [0, p).
    Mixing fields in arithmetic raises FieldMismatch.
    """

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = field.coerce(value)

    def _check(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(self.field, other)
        elif other.field is not self.field:
            raise FieldMismatch(f"cannot mix {self.field.name} and {other.field.name}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._check(other)
        return Scalar(self.field, self.field.mul(self.value, other.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def inverse(self):
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self):
        return self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field is other.field and self.value == other.value
        return self.value == self.field.coerce(other)

    def __hash__(self):
        return hash((id(self.field), self.value))

    def __repr__(self):
        return f"Scalar({self.field.name}, {self.value})"


class SparseMatrix:
    """Immutable sparse matrix in canonically sorted coordinate form.

    Entries are (row, col, value) with no duplicates and no stored
    zeros, sorted by (row, col), so equality of matrices is plain tuple
    equality.
    """

    __slots__ = ("rows", "cols", "field", "entries")

    def __init__(self, rows, cols, entries=(), field=QQ):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative dimensions {rows}x{cols}")
        self.rows = rows
        self.cols = cols
        self.field = field
        cleaned = {}
        for i, j, v in entries:
            if not (0 <= i < rows and 0 <= j < cols):
                raise ShapeError(f"entry ({i},{j}) outside {rows}x{cols}")
            v = field.coerce(v)
            if (i, j) in cleaned:
                raise ShapeError(f"duplicate entry at ({i},{j})")
            if not field.is_zero(v):
                cleaned[(i, j)] = v
        self.entries = tuple(sorted((i, j, v) for (i, j), v in cleaned.items()))

    @classmethod
    def from_dense(cls, dense, field=QQ):
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        entries = [
            (i, j, v) for i, row in enumerate(dense) for j, v in enumerate(row)
        ]
        return cls(rows, cols, entries, field)

    @classmethod
    def from_columns(cls, rows, columns, field=QQ):
        """Build from a list of sparse columns (dicts row -> value)."""
        entries = [
            (i, j, v) for j, col in enumerate(columns) for i, v in col.items()
        ]
        return cls(rows, len(columns), entries, field)

    @classmethod
    def identity(cls, n, field=QQ):
        return cls(n, n, [(i, i, field.one) for i in range(n)], field)

    @classmethod
    def zero(cls, rows, cols, field=QQ):
        return cls(rows, cols, (), field)

    def to_dense(self):
        dense = [[self.field.zero] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries:
            dense[i][j] = v
        return dense

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows, [(j, i, v) for i, j, v in self.entries], self.field
        )

    def is_zero(self):
        return not self.entries

    def columns(self):
        cols = [dict() for _ in range(self.cols)]
        for i, j, v in self.entries:
            cols[j][i] = v
        return cols

    def row_vectors(self):
        rows = [dict() for _ in range(self.rows)]
        for i, j, v in self.entries:
            rows[i][j] = v
        return rows

    def compose(self, other):
        """Exact matrix product self * other."""
        if not isinstance(other, SparseMatrix):
            raise ShapeError("compose expects a SparseMatrix")
        if self.field is not other.field:
            raise FieldMismatch(f"cannot compose {self.field.name} with {other.field.name}")
        if self.cols != other.rows:
            raise ShapeError(f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}")
        f = self.field
        by_row = {}
        for k, j, w in other.entries:
            by_row.setdefault(k, []).append((j, w))
        acc = {}
        for i, k, v in self.entries:
            for j, w in by_row.get(k, ()):
                key = (i, j)
                acc[key] = f.add(acc.get(key, f.zero), f.mul(v, w))
        return SparseMatrix(
            self.rows, other.cols, [(i, j, v) for (i, j), v in acc.items()], f
        )

    def rank(self):
        if not self.entries:
            return 0
        # eliminate along the smaller side; rank(M) = rank(M^T)
        if self.rows <= self.cols:
            vectors = self.row_vectors()
        else:
            vectors = self.columns()
        vectors = [v for v in vectors if v]
        if self.rows <= DENSE_THRESHOLD and self.cols <= DENSE_THRESHOLD:
            if self.field is QQ:
                return bareiss_rank(self.to_dense())
            return _dense_rank_modp(self.to_dense(), self.field)
        return _sparse_rank(vectors, self.field)

    def kernel_dim(self):
        return self.cols - self.rank()

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.field is not other.field:
            raise FieldMismatch("comparing matrices over different fields")
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, {len(self.entries)} entries, {self.field.name})"


def rank(m: SparseMatrix) -> int:
    return m.rank()


def kernel_dim(m: SparseMatrix) -> int:
    return m.kernel_dim()


def compose(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    return a.compose(b)


def bareiss_rank(dense) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    All intermediate values are integers (inputs are scaled row-wise),
    and each step divides exactly by the previous pivot, which keeps
    entries polynomially bounded instead of exponentially.
    """
    m = [[Fraction(v) for v in row] for row in dense]
    rows = len(m)
    if rows == 0:
        return 0
    cols = len(m[0])
    a = []
    for row in m:
        scale = 1
        for v in row:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        a.append([int(v * scale) for v in row])
    rank_ = 0
    prev = 1
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        for i in range(r + 1, rows):
            aic = a[i][c]
            row_i = a[i]
            row_r = a[r]
            for j in range(c + 1, cols):
                row_i[j] = (pv * row_i[j] - aic * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        rank_ += 1
        r += 1
        if r == rows:
            break
    return rank_


def naive_rank(dense) -> int:
    """Rank over Q by plain Gaussian elimination on Fractions.

    Kept as an independent cross-check for bareiss_rank.
    """
    a = [[Fraction(v) for v in row] for row in dense]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank_ = 0
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pv = a[r][c]
        for i in range(r + 1, rows):
            if a[i][c]:
                factor = a[i][c] / pv
                for j in range(c, cols):
                    a[i][j] -= factor * a[r][j]
        rank_ += 1
        r += 1
        if r == rows:
            break
    return rank_


def _dense_rank_modp(dense, field):
    p = field.p
    a = [[v % p for v in row] for row in dense]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank_ = 0
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if a[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = pow(a[r][c], p - 2, p)
        for i in range(r + 1, rows):
            if a[i][c]:
                factor = (a[i][c] * inv) % p
                for j in range(c, cols):
                    a[i][j] = (a[i][j] - factor * a[r][j]) % p
        rank_ += 1
        r += 1
        if r == rows:
            break
    return rank_


def _sparse_rank(vectors, field):
    """Rank of a list of sparse vectors (dicts coord -> value).

    Elimination by leading coordinate.  Over Q the vectors are scaled to
    integers and combined by cross-multiplication with content
    stripping, so no Fraction normalisation happens in the inner loop.
    """
    if field is QQ:
        ints = []
        for vec in vectors:
            scale = 1
            for v in vec.values():
                scale = scale * v.denominator // gcd(scale, v.denominator)
            ivec = {c: int(v * scale) for c, v in vec.items()}
            g = 0
            for v in ivec.values():
                g = gcd(g, v)
            if g > 1:
                ivec = {c: v // g for c, v in ivec.items()}
            ints.append(ivec)
        return _sparse_rank_int(ints)
    return _sparse_rank_modp(vectors, field.p)


def _strip_content(vec):
    g = 0
    for v in vec.values():
        g = gcd(g, v)
        if g == 1:
            return vec
    if g > 1:
        return {c: v // g for c, v in vec.items()}
    return vec


def _sparse_rank_int(vectors):
    pivots = {}
    rank_ = 0
    vectors = sorted(vectors, key=lambda v: (min(v), len(v)))
    for vec in vectors:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            if lead not in pivots:
                pivots[lead] = _strip_content(vec)
                rank_ += 1
                break
            piv = pivots[lead]
            a = piv[lead]
            b = vec[lead]
            g = gcd(a, b)
            a //= g
            b //= g
            new = {}
            for c, v in vec.items():
                new[c] = a * v
            for c, w in piv.items():
                nv = new.get(c, 0) - b * w
                if nv:
                    new[c] = nv
                elif c in new:
                    del new[c]
            vec = _strip_content(new)
    return rank_


def _sparse_rank_modp(vectors, p):
    pivots = {}
    rank_ = 0
    cleaned = []
    for vec in vectors:
        v = {c: x % p for c, x in vec.items() if x % p}
        if v:
            cleaned.append(v)
    cleaned.sort(key=lambda v: (min(v), len(v)))
    for vec in cleaned:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            if lead not in pivots:
                inv = pow(vec[lead], p - 2, p)
                pivots[lead] = {c: (v * inv) % p for c, v in vec.items()}
                rank_ += 1
                break
            piv = pivots[lead]
            b = vec[lead]
            for c, w in piv.items():
                nv = (vec.get(c, 0) - b * w) % p
                if nv:
                    vec[c] = nv
                elif c in vec:
                    del vec[c]
    return rank_


class RowSpace:
    """A row space kept in fully reduced echelon form.

    `reduce` maps any vector to its canonical representative modulo the
    span (supported on non-pivot coordinates only), which is exactly
    what quotient-space constructions need.
    """

    def __init__(self, field=QQ):
        self.field = field
        self.pivot_rows: dict[int, dict] = {}

    @property
    def rank(self):
        return len(self.pivot_rows)

    @property
    def pivots(self):
        return set(self.pivot_rows)

    def reduce(self, vec):
        """Return vec minus its projection onto the span (a dict)."""
        f = self.field
        vec = {c: v for c, v in vec.items() if not f.is_zero(v)}
        for c in sorted(set(vec) & set(self.pivot_rows)):
            coeff = vec.get(c)
            if coeff is None or f.is_zero(coeff):
                continue
            row = self.pivot_rows[c]
            for cc, w in row.items():
                nv = f.sub(vec.get(cc, f.zero), f.mul(coeff, w))
                if f.is_zero(nv):
                    vec.pop(cc, None)
                else:
                    vec[cc] = nv
        return vec

    def add(self, vec) -> bool:
        """Insert vec's class; returns True if the rank grew."""
        f = self.field
        vec = self.reduce(vec)
        if not vec:
            return False
        lead = min(vec)
        inv = f.inv(vec[lead])
        row = {c: f.mul(v, inv) for c, v in vec.items()}
        # keep full reduction: eliminate the new pivot from older rows
        for c, old in self.pivot_rows.items():
            coeff = old.get(lead)
            if coeff is None:
                continue
            for cc, w in row.items():
                nv = f.sub(old.get(cc, f.zero), f.mul(coeff, w))
                if f.is_zero(nv):
                    old.pop(cc, None)
                else:
                    old[cc] = nv
        self.pivot_rows[lead] = row
        return True


def kernel_basis(m: SparseMatrix) -> list[dict]:
    """Basis of the right kernel {x : m x = 0} as sparse column dicts.

    One vector per free column, deterministic: the vector for free
    column j has coordinate 1 at j and back-substituted values on the
    pivot columns.
    """
    space = RowSpace(m.field)
    for row in m.row_vectors():
        space.add(row)
    f = m.field
    pivots = space.pivot_rows
    basis = []
    for j in range(m.cols):
        if j in pivots:
            continue
        vec = {j: f.one}
        for p, row in pivots.items():
            coeff = row.get(j)
            if coeff is not None and not f.is_zero(coeff):
                vec[p] = f.neg(coeff)
        basis.append(vec)
    return basis
