"""Exact rational linear algebra on sparse matrices.

Everything here works over the rationals with ``fractions.Fraction``.  Ranks
are computed by fraction-free elimination on integer rows (each row is scaled
to integers and kept primitive by dividing out the gcd of its entries), which
keeps the numbers small for the boundary matrices met in graph complexes.
"""

from fractions import Fraction
from math import gcd, lcm


class Composability(ValueError):
    """Matrix shapes do not compose."""


class NotAComplex(ValueError):
    """Two consecutive differentials do not compose to zero."""


def _frac(x):
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class SparseMatrix:
    """A rows x cols matrix with rational entries stored in a dict.

    Zero entries are never stored.
    """

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimension")
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (i, j), x in entries.items():
                if not (0 <= i < rows and 0 <= j < cols):
                    raise IndexError(f"entry {(i, j)} outside {rows}x{cols}")
                x = _frac(x)
                if x:
                    self.entries[i, j] = x

    @classmethod
    def from_dense(cls, data, cols=None):
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged dense matrix")
            for j, x in enumerate(row):
                if x:
                    entries[i, j] = x
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, rows, columns):
        """Build a matrix from a list of sparse column vectors (dicts)."""
        entries = {}
        for j, col in enumerate(columns):
            for i, x in col.items():
                if x:
                    entries[i, j] = x
        return cls(rows, len(columns), entries)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zero(cls, rows, cols):
        return cls(rows, cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, key):
        return self.entries.get(key, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"SparseMatrix({self.rows}, {self.cols}, nnz={len(self.entries)})"

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            {(j, i): x for (i, j), x in self.entries.items()})

    def is_zero(self):
        return not self.entries

    def row_dicts(self):
        out = [dict() for _ in range(self.rows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def col_dicts(self):
        out = [dict() for _ in range(self.cols)]
        for (i, j), x in self.entries.items():
            out[j][i] = x
        return out

    def scale_row(self, i, c):
        c = _frac(c)
        entries = dict(self.entries)
        for (r, j), x in self.entries.items():
            if r == i:
                if c:
                    entries[r, j] = x * c
                else:
                    del entries[r, j]
        return SparseMatrix(self.rows, self.cols, entries)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise Composability(f"cannot compose {self.shape} with {other.shape}")
        right = other.row_dicts()
        acc = {}
        for (i, k), x in self.entries.items():
            for j, y in right[k].items():
                acc[i, j] = acc.get((i, j), 0) + x * y
        return SparseMatrix(self.rows, other.cols, acc)

    def apply(self, vec):
        """Multiply a sparse column vector (dict index -> value)."""
        out = {}
        cols = self.col_dicts()
        for j, x in vec.items():
            for i, y in cols[j].items():
                out[i] = out.get(i, 0) + x * y
        return {i: x for i, x in out.items() if x}


def _integer_row(row):
    """Scale a rational row to a primitive integer row."""
    den = 1
    for x in row.values():
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    out = {}
    g = 0
    for j, x in row.items():
        v = int(x * den)
        if v:
            out[j] = v
            g = gcd(g, v)
    if g > 1:
        out = {j: v // g for j, v in out.items()}
    return out


def _rank_of_rows(rows):
    pivots = {}
    rank = 0
    for row in sorted(rows, key=len):
        r = _integer_row(row)
        while r:
            c = min(r)
            p = pivots.get(c)
            if p is None:
                pivots[c] = r
                rank += 1
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {}
            for j, v in r.items():
                new[j] = a * v
            for j, v in p.items():
                w = new.get(j, 0) - b * v
                if w:
                    new[j] = w
                else:
                    new.pop(j, None)
            g = 0
            for v in new.values():
                g = gcd(g, v)
                if g == 1:
                    break
            if g > 1:
                new = {j: v // g for j, v in new.items()}
            r = new
    return rank


def rank(m):
    """Rank of ``m`` over the rationals."""
    if m.rows == 0 or m.cols == 0 or not m.entries:
        return 0
    # eliminate along the shorter side
    if m.cols < m.rows:
        return _rank_of_rows([r for r in m.col_dicts() if r])
    return _rank_of_rows([r for r in m.row_dicts() if r])


def rank_of_vectors(vectors):
    return _rank_of_rows([v for v in vectors if v])


def homology_dim(d_in, d_out):
    """dim ker(d_out) - rank(d_in) at the chain space between the two maps.

    ``d_in`` maps into the chain space and ``d_out`` maps out of it, so the
    chain space has dimension ``d_in.rows == d_out.cols``.
    """
    if d_in.rows != d_out.cols:
        raise Composability(
            f"d_in has {d_in.rows} rows but d_out has {d_out.cols} columns")
    if not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out * d_in is not zero")
    return d_out.cols - rank(d_out) - rank(d_in)


class Reducer:
    """Row echelon basis of a subspace with canonical remainders.

    Vectors are dicts index -> Fraction.  ``reduce`` returns the unique
    representative of ``v`` modulo the span that has no entries in pivot
    columns.
    """

    def __init__(self, vectors=()):
        self.rows = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v):
        r = {j: _frac(x) for j, x in v.items() if x}
        if not self.rows:
            return r
        done = {}
        while r:
            c = min(r)
            p = self.rows.get(c)
            x = r.pop(c)
            if p is None:
                done[c] = x
                continue
            for j, y in p.items():
                if j == c:
                    continue
                w = r.get(j, 0) - x * y
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
        return done

    def add(self, v):
        """Add ``v`` to the span.  Returns True if the span grew."""
        r = self.reduce(v)
        if not r:
            return False
        c = min(r)
        lead = r[c]
        self.rows[c] = {j: x / lead for j, x in r.items()}
        return True

    def contains(self, v):
        return not self.reduce(v)


def _combine(a, p, b, r):
    """a*r - b*p as a primitive integer row."""
    new = {j: a * v for j, v in r.items()}
    for j, v in p.items():
        w = new.get(j, 0) - b * v
        if w:
            new[j] = w
        else:
            new.pop(j, None)
    g = 0
    for v in new.values():
        g = gcd(g, v)
        if g == 1:
            return new
    if g > 1:
        new = {j: v // g for j, v in new.items()}
    return new


def _integer_rref(rows):
    """Fraction-free Gauss-Jordan; returns {pivot column: integer row}."""
    piv = {}
    for row in sorted(rows, key=len):
        r = _integer_row(row)
        while r:
            c = min(r)
            p = piv.get(c)
            if p is None:
                piv[c] = r
                break
            a, b = p[c], r[c]
            g = gcd(a, b)
            r = _combine(a // g, p, b // g, r)
    order = sorted(piv)
    for c in reversed(order):
        p = piv[c]
        for d in order:
            if d >= c:
                break
            r = piv[d]
            x = r.get(c)
            if x:
                a = p[c]
                g = gcd(a, x)
                piv[d] = _combine(a // g, p, x // g, r)
    return piv


def rref(m):
    """Reduced row echelon form as (list of row dicts, pivot columns)."""
    piv = _integer_rref([r for r in m.row_dicts() if r])
    pivots = sorted(piv)
    rows = []
    for c in pivots:
        r = piv[c]
        lead = r[c]
        rows.append({j: Fraction(v, lead) for j, v in r.items()})
    return rows, pivots


def nullspace(m):
    """A basis of the kernel of ``m`` as a list of sparse vectors."""
    rows, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = {free: Fraction(1)}
        for row, p in zip(rows, pivots):
            x = row.get(free)
            if x:
                v[p] = -x
        basis.append(v)
    return basis


def solve(m, b):
    """Some x with m x = b (b a sparse vector over rows), or None."""
    aug = SparseMatrix(m.rows, m.cols + 1, dict(m.entries))
    for i, x in b.items():
        if x:
            aug.entries[i, m.cols] = _frac(x)
    rows, pivots = rref(aug)
    x = {}
    for row, p in zip(rows, pivots):
        if p == m.cols:
            return None
        val = row.get(m.cols, 0)
        if val:
            x[p] = val
    return x
