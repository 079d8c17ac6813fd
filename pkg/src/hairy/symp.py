"""The symplectic space V = k^{2n} and its tensor calculus.

Basis labels are the strings ``p1..pn, q1..qn``.  The involution on the basis
is ``p_i* = q_i``, ``q_i* = -p_i`` and the pairing is ``<p_i, q_i> = 1``,
``<q_i, p_i> = -1``.  Tensor positions are 1-based, as in ``Phi_ij``.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .linalg import SparseMatrix, solve


class UnknownLabel(KeyError):
    pass


class PositionOutOfRange(IndexError):
    pass


class ArityBound(ValueError):
    pass


DEFAULT_ARITY_BOUND = 6


def _split(label):
    if len(label) < 2 or label[0] not in "pq" or not label[1:].isdigit():
        raise UnknownLabel(label)
    return label[0], int(label[1:])


class SymplecticSpace:
    """V with symplectic basis p_1..p_n, q_1..q_n."""

    def __init__(self, n):
        if n < 1:
            raise ValueError("n must be at least 1")
        self.n = n
        self.basis = tuple([f"p{i}" for i in range(1, n + 1)] +
                           [f"q{i}" for i in range(1, n + 1)])
        self._set = frozenset(self.basis)

    @property
    def dim(self):
        return 2 * self.n

    def __eq__(self, other):
        return isinstance(other, SymplecticSpace) and other.n == self.n

    def __hash__(self):
        return hash(("V", self.n))

    def __repr__(self):
        return f"SymplecticSpace(n={self.n})"

    def check(self, label):
        if label not in self._set:
            raise UnknownLabel(label)
        return label

    def dual(self, label):
        """x -> (sign, x*) with p_i* = q_i and q_i* = -p_i."""
        return dual(self.check(label))

    def pairing(self, x, y):
        self.check(x)
        self.check(y)
        return pairing(x, y)

    def omega(self):
        """omega = (1/2n) sum_x x (x) x*."""
        c = Fraction(1, 2 * self.n)
        terms = {}
        for x in self.basis:
            sgn, xs = dual(x)
            terms[(x, xs)] = c * sgn
        return Tensor(self, 2, terms)

    def weight(self, label):
        kind, i = _split(label)
        return (i, 1 if kind == "p" else -1)


def dual(label):
    kind, i = _split(label)
    if kind == "p":
        return 1, f"q{i}"
    return -1, f"p{i}"


def pairing(x, y):
    """<x, y> for basis labels."""
    kx, ix = _split(x)
    ky, iy = _split(y)
    if ix != iy or kx == ky:
        return 0
    return 1 if kx == "p" else -1


class Tensor:
    """An element of V^{(x) l}: dict from label tuples to rationals."""

    __slots__ = ("space", "arity", "terms")

    def __init__(self, space, arity, terms=None):
        self.space = space
        self.arity = arity
        self.terms = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != arity:
                raise ValueError("tensor term of the wrong length")
            for x in key:
                space.check(x)
            c = Fraction(c)
            if c:
                self.terms[key] = self.terms.get(key, 0) + c
        self.terms = {k: c for k, c in self.terms.items() if c}

    @classmethod
    def pure(cls, space, *labels, coeff=1):
        return cls(space, len(labels), {tuple(labels): coeff})

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.space, self.arity, self.terms) == (other.space, other.arity, other.terms)

    def __add__(self, other):
        if other.arity != self.arity:
            raise ValueError("arity mismatch")
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return Tensor(self.space, self.arity, t)

    def __mul__(self, c):
        return Tensor(self.space, self.arity, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def tensor(self, other):
        t = {}
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                t[a + b] = t.get(a + b, 0) + x * y
        return Tensor(self.space, self.arity + other.arity, t)

    def permute(self, perm):
        """Move the factor in position i (0-based) to position perm[i]."""
        t = {}
        for k, c in self.terms.items():
            new = [None] * self.arity
            for i, x in enumerate(k):
                new[perm[i]] = x
            t[tuple(new)] = c
        return Tensor(self.space, self.arity, t)

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{'(x)'.join(k) if k else '1'}"
                          for k, c in sorted(self.terms.items()))


def _check_pair(i, j, ell):
    if not (1 <= i < j <= ell):
        raise PositionOutOfRange(f"need 1 <= i < j <= {ell}, got {(i, j)}")


def contract(t, i, j):
    """Phi_ij: pair positions i and j, delete them."""
    _check_pair(i, j, t.arity)
    out = {}
    for k, c in t.terms.items():
        w = pairing(k[i - 1], k[j - 1])
        if w:
            rest = k[:i - 1] + k[i:j - 1] + k[j:]
            out[rest] = out.get(rest, 0) + c * w
    return Tensor(t.space, t.arity - 2, out)


def insert(t, i, j):
    """Psi_ij: put omega into positions i < j of an (l+2)-tensor."""
    ell = t.arity + 2
    _check_pair(i, j, ell)
    c0 = Fraction(1, t.space.dim)
    out = {}
    for k, c in t.terms.items():
        for x in t.space.basis:
            sgn, xs = dual(x)
            new = list(k[:i - 1]) + [x] + list(k[i - 1:j - 2]) + [xs] + list(k[j - 2:])
            key = tuple(new)
            out[key] = out.get(key, 0) + c * c0 * sgn
    return Tensor(t.space, ell, out)


def insert_many(t, pairs):
    """Psi_{I_1} o ... o Psi_{I_r} (rightmost applied first)."""
    for i, j in reversed(list(pairs)):
        t = insert(t, i, j)
    return t


# -------------------------------------------------------- harmonic projection

def _weight(space, key):
    w = [0] * space.n
    for x in key:
        kind, i = _split(x)
        w[i - 1] += 1 if kind == "p" else -1
    return tuple(w)


@lru_cache(maxsize=None)
def _weight_tuples(n, length, weight):
    space = SymplecticSpace(n)
    return tuple(k for k in product(space.basis, repeat=length)
                 if _weight(space, k) == weight)


def harmonic_project(t, bound=DEFAULT_ARITY_BOUND):
    """Component of t in V^<l> for the splitting V^l = V^<l> + sum Psi_ij(..).

    The projection is found by solving Phi(t - Psi y) = 0 for y, one torus
    weight space at a time.
    """
    ell = t.arity
    if ell > bound:
        raise ArityBound(f"arity {ell} exceeds bound {bound}")
    if ell < 2 or t.is_zero():
        return t
    by_weight = {}
    for k, c in t.terms.items():
        by_weight.setdefault(_weight(t.space, k), {})[k] = c
    result = Tensor(t.space, ell)
    for w, terms in sorted(by_weight.items()):
        part = Tensor(t.space, ell, terms)
        result = result + (part - _psi_component(part, w))
    return result


def _psi_component(t, weight):
    ell = t.arity
    n = t.space.n
    pairs = list(combinations(range(1, ell + 1), 2))
    small = _weight_tuples(n, ell - 2, weight)
    # unknowns: (pair index, small tuple)
    col_index = {}
    for a in range(len(pairs)):
        for s in small:
            col_index[a, s] = len(col_index)
    row_index = dict(col_index)
    # matrix of Phi o Psi on the unknowns
    entries = {}
    for (a, s), col in col_index.items():
        img = insert(Tensor(t.space, ell - 2, {s: 1}), *pairs[a])
        for b, pb in enumerate(pairs):
            for key, c in contract(img, *pb).terms.items():
                r = row_index[b, key]
                entries[r, col] = entries.get((r, col), 0) + c
    m = SparseMatrix(len(row_index), len(col_index), entries)
    rhs = {}
    for b, pb in enumerate(pairs):
        for key, c in contract(t, *pb).terms.items():
            rhs[row_index[b, key]] = c
    y = solve(m, rhs)
    if y is None:
        raise ArithmeticError("no harmonic splitting found")
    inv = {v: k for k, v in col_index.items()}
    comp = Tensor(t.space, ell)
    for col, c in y.items():
        a, s = inv[col]
        comp = comp + insert(Tensor(t.space, ell - 2, {s: c}), *pairs[a])
    return comp


def is_harmonic(t):
    for i, j in combinations(range(1, t.arity + 1), 2):
        if not contract(t, i, j).is_zero():
            return False
    return True


# ------------------------------------------------------ summand dimensions

def _pair_sets(positions, r):
    """Sets of r pairwise disjoint pairs from ``positions``."""
    if r == 0:
        yield ()
        return
    if len(positions) < 2 * r:
        return
    first, rest = positions[0], positions[1:]
    yield from _pair_sets(rest, r)
    for t, other in enumerate(rest):
        for tail in _pair_sets(rest[:t] + rest[t + 1:], r - 1):
            yield ((first, other),) + tail


def _weights(n, length):
    out = set()
    for key in product(range(2 * n), repeat=length):
        w = [0] * n
        for x in key:
            w[x % n] += 1 if x < n else -1
        out.add(tuple(w))
    return sorted(out)


def harmonic_basis(space, ell, weight):
    """Basis (list of Tensors) of the weight space of V^<ell>."""
    from .linalg import nullspace
    keys = _weight_tuples(space.n, ell, weight)
    if ell < 2:
        return [Tensor(space, ell, {k: 1}) for k in keys]
    rows = {}
    entries = {}
    for col, k in enumerate(keys):
        t = Tensor(space, ell, {k: 1})
        for a, (i, j) in enumerate(combinations(range(1, ell + 1), 2)):
            for small, c in contract(t, i, j).terms.items():
                r = rows.setdefault((a, small), len(rows))
                entries[r, col] = c
    m = SparseMatrix(len(rows), len(keys), entries)
    return [Tensor(space, ell, {keys[i]: c for i, c in v.items()}) for v in nullspace(m)]


def summand_dims(space, ell):
    """[dim V^<ell>_{ell-2r} for r = 0 .. ell//2], computed weight by weight.

    The r-th summand is the span of all Psi_I(V^<ell-2r>) over sets I of r
    disjoint pairs of positions.
    """
    from .linalg import rank_of_vectors
    dims = [0] * (ell // 2 + 1)
    for w in _weights(space.n, ell):
        for r in range(ell // 2 + 1):
            small = harmonic_basis(space, ell - 2 * r, w) if ell - 2 * r >= 0 else []
            if not small:
                continue
            keys = {}
            vecs = []
            for pairs in _pair_sets(tuple(range(1, ell + 1)), r):
                # positions in the big tensor, filled from the innermost insertion
                for t in small:
                    big = _insert_at(t, pairs)
                    vecs.append({keys.setdefault(k, len(keys)): c
                                 for k, c in big.terms.items()})
            dims[r] += rank_of_vectors(vecs)
    return dims


def _insert_at(t, pairs):
    """Put omega into each pair of final positions of a tensor of arity
    len(t) + 2 len(pairs), the other positions keeping the order of t."""
    ell = t.arity + 2 * len(pairs)
    taken = {p for pr in pairs for p in pr}
    free = [p for p in range(1, ell + 1) if p not in taken]
    c0 = Fraction(1, t.space.dim)
    out = {}
    for key, c in t.terms.items():
        for choice in product(t.space.basis, repeat=len(pairs)):
            slots = dict(zip(free, key))
            coeff = c
            for (i, j), x in zip(pairs, choice):
                sgn, xs = dual(x)
                slots[i], slots[j] = x, xs
                coeff *= c0 * sgn
            k = tuple(slots[p] for p in range(1, ell + 1))
            out[k] = out.get(k, 0) + coeff
    return Tensor(t.space, ell, out)
