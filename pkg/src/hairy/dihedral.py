"""Hochschild, cyclic and dihedral homology of graded involutive algebras.

Algebra elements are graded by hair count and carry a *content*: the sorted
tuple of V-labels they use.  The Hochschild boundary and the dihedral group
actions preserve the total content of a chain, so every computation splits
into content slices, and a slice only depends on the multiplicity pattern of
its content (labels are never paired here).

Sign conventions on ``C_k(A) = A^{(x)(k+1)}``:

* ``t_k = (-1)^k tau_k`` with ``tau_k(a_0,..,a_k) = (a_k, a_0, .., a_{k-1})``;
* ``y_k = -(-1)^(k(k+1)/2) omega_k`` with
  ``omega_k(a_0,..,a_k) = (bar a_0, bar a_k, .., bar a_1)``.

The sign of ``y_k`` is the orientation sign of reflecting a circle of k + 1
vertices: all k + 1 edges flip, and the vertex order (a_0, a_k, .., a_1) is
a reversal of k entries.  With it ``HD_0`` of the trivial-product algebra on
V vanishes, as the rank one graph complex requires.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement

from .linalg import Reducer, SparseMatrix, homology_dim
from .operad import check_operad

HC, HD, HDPRIME = "HC", "HD", "HDprime"
VARIANTS = (HC, HD, HDPRIME)


class InvolutiveAlgebra:
    """A graded algebra with anti-involution on named basis elements.

    ``elements`` maps a basis element to (grading, content).  ``mul(a, b)``
    and ``bar(a)`` return dicts element -> coefficient.  The unit, if any,
    has grading 0 and empty content.  ``relabel(a, f)`` applies a map of
    labels to a basis element; it is needed only for label actions.
    """

    def __init__(self, name, elements, mul, bar, unit=None, relabel=None):
        self.name = name
        self._relabel = relabel
        self.elements = dict(elements)
        self._mul = mul
        self._bar = bar
        self.unit = unit
        self.order = sorted(self.elements, key=lambda e: (self.elements[e], repr(e)))

    def grading(self, a):
        return self.elements[a][0]

    def content(self, a):
        return self.elements[a][1]

    @lru_cache(maxsize=None)
    def mul(self, a, b):
        if a == self.unit:
            return {b: Fraction(1)}
        if b == self.unit:
            return {a: Fraction(1)}
        out = self._mul(a, b)
        return {x: Fraction(c) for x, c in out.items() if c and x in self.elements}

    @lru_cache(maxsize=None)
    def bar(self, a):
        if a == self.unit:
            return {a: Fraction(1)}
        return {x: Fraction(c) for x, c in self._bar(a).items() if c}

    def relabel(self, a, f):
        if a == self.unit:
            return a
        if self._relabel is None:
            return (a[0],) + tuple(f[x] for x in a[1:])
        return self._relabel(a, f)

    def check(self):
        """Associativity and anti-involution axioms on all basis elements."""
        els = self.order
        for a in els:
            bb = {}
            for x, c in self.bar(a).items():
                for y, e in self.bar(x).items():
                    bb[y] = bb.get(y, 0) + c * e
            if {k: v for k, v in bb.items() if v} != {a: 1}:
                raise AssertionError(f"involution is not of order 2 on {a}")
            for b in els:
                lhs = _lin(self, self.mul(a, b), self.bar)
                rhs = {}
                for x, c in self.bar(b).items():
                    for y, e in self.bar(a).items():
                        for z, f in self.mul(x, y).items():
                            rhs[z] = rhs.get(z, 0) + c * e * f
                if _clean(lhs) != _clean(rhs):
                    raise AssertionError(f"bar is not an anti-automorphism on {a}, {b}")
                for c3 in els:
                    left, right = {}, {}
                    for x, u in self.mul(a, b).items():
                        for z, w in self.mul(x, c3).items():
                            left[z] = left.get(z, 0) + u * w
                    for x, u in self.mul(b, c3).items():
                        for z, w in self.mul(a, x).items():
                            right[z] = right.get(z, 0) + u * w
                    if _clean(left) != _clean(right):
                        raise AssertionError(f"not associative on {a}, {b}, {c3}")
        return True


def _clean(d):
    return {k: v for k, v in d.items() if v}


def _lin(alg, vec, f):
    out = {}
    for x, c in vec.items():
        for y, e in f(x).items():
            out[y] = out.get(y, 0) + c * e
    return out


def _labels_of(space):
    return tuple(space.basis) if hasattr(space, "basis") else tuple(space)


def algebra_comm(space):
    """I Comm_V: a copy of V in grading 1, zero product, trivial involution."""
    labels = _labels_of(space)
    elements = {("v", x): (1, (x,)) for x in labels}
    return InvolutiveAlgebra("IComm", elements, lambda a, b: {}, lambda a: {a: 1})


def algebra_assoc(space):
    """I Assoc_V = V + V + V(x)V.

    A planar star with slots 0 and 1 has two gaps, the one met going from 0
    to 1 and the one from 1 back to 0.  ``("a", v)`` has v in the first gap,
    ``("b", v)`` in the second, and ``("c", u, w)`` has u in the first and w in
    the second.  Composition concatenates gaps, so the only nonzero products
    are a(v) b(w) = b(w) a(v) = c(v, w): the algebra is commutative.  The
    involution exchanges the gaps.
    """
    labels = _labels_of(space)
    elements = {}
    for x in labels:
        elements["a", x] = (1, (x,))
        elements["b", x] = (1, (x,))
    for x in labels:
        for y in labels:
            elements["c", x, y] = (2, tuple(sorted((x, y))))

    def mul(p, q):
        if p[0] == "a" and q[0] == "b":
            return {("c", p[1], q[1]): 1}
        if p[0] == "b" and q[0] == "a":
            return {("c", q[1], p[1]): 1}
        return {}

    def bar(p):
        if p[0] == "a":
            return {("b", p[1]): 1}
        if p[0] == "b":
            return {("a", p[1]): 1}
        return {("c", p[2], p[1]): 1}

    return InvolutiveAlgebra("IAssoc", elements, mul, bar)


def algebra_lie(space, max_grading, unital=True):
    """A Lie_V = S(V) through max_grading; the involution is (-1)^grading.

    Monomials are sorted label tuples; the unit is ``()``.
    """
    labels = _labels_of(space)
    elements = {}
    start = 0 if unital else 1
    for g in range(start, max_grading + 1):
        for mono in combinations_with_replacement(labels, g):
            elements[mono] = (g, mono)

    def mul(p, q):
        return {tuple(sorted(p + q)): 1}

    def bar(p):
        return {p: (-1) ** len(p)}

    def relabel(p, f):
        return tuple(sorted(f[x] for x in p))

    return InvolutiveAlgebra("ALie" if unital else "ILie", elements, mul, bar,
                             unit=() if unital else None, relabel=relabel)


def algebra_for(operad, space, max_grading):
    op = check_operad(operad)
    if op == "comm":
        return algebra_comm(space)
    if op == "assoc":
        return algebra_assoc(space)
    return algebra_lie(space, max_grading, unital=False)


# ------------------------------------------------------------ chain spaces

def _sub(content, part):
    """content minus part as sorted tuples, or None if part is not contained."""
    rest = list(content)
    for x in part:
        try:
            rest.remove(x)
        except ValueError:
            return None
    return tuple(rest)


def chains(A, k, content):
    """Basis tuples of C_k(A) = A^(k+1) with the given total content."""
    content = tuple(sorted(content))
    by_content = {}
    for a in A.order:
        by_content.setdefault(A.content(a), []).append(a)
    contents = sorted(by_content)
    out = []

    def rec(pos, rest, acc):
        if pos == k + 1:
            if not rest:
                out.append(tuple(acc))
            return
        for c in contents:
            r = _sub(rest, c)
            if r is None:
                continue
            for a in by_content[c]:
                acc.append(a)
                rec(pos + 1, r, acc)
                acc.pop()

    rec(0, content, [])
    return out


def _tensor(vectors):
    out = {(): Fraction(1)}
    for v in vectors:
        new = {}
        for key, c in out.items():
            for x, e in v.items():
                new[key + (x,)] = new.get(key + (x,), 0) + c * e
        out = new
    return out


def hochschild(A, x):
    """b on one basis tuple: dict tuple -> coefficient."""
    k = len(x) - 1
    out = {}
    for i in range(k):
        for z, c in A.mul(x[i], x[i + 1]).items():
            key = x[:i] + (z,) + x[i + 2:]
            out[key] = out.get(key, 0) + (-1) ** i * c
    if k >= 1:
        for z, c in A.mul(x[k], x[0]).items():
            key = (z,) + x[1:k]
            out[key] = out.get(key, 0) + (-1) ** k * c
    return _clean(out)


def t_action(x):
    k = len(x) - 1
    return {(x[k],) + x[:k]: (-1) ** k}


def y_sign(k):
    return -(-1) ** (k * (k + 1) // 2)


def y_action(A, x):
    k = len(x) - 1
    rev = (x[0],) + tuple(reversed(x[1:]))
    out = _tensor([A.bar(a) for a in rev])
    return {key: c * y_sign(k) for key, c in out.items()}


def hochschild_boundary(k, content, A):
    """Matrix of b: C_k -> C_{k-1} on a content slice (rows, cols, matrix)."""
    cols = chains(A, k, content)
    rows = chains(A, k - 1, content) if k >= 1 else []
    idx = {x: i for i, x in enumerate(rows)}
    m = SparseMatrix.from_columns(len(rows), [
        {idx[z]: c for z, c in hochschild(A, x).items()} for x in cols])
    return rows, cols, m


class DihedralSlice:
    """The quotient complex C(A)/(relations) on one content slice."""

    def __init__(self, A, variant, content, k_max):
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        self.A = A
        self.variant = variant
        self.content = tuple(sorted(content))
        self.k_max = k_max
        self.quot = {}
        for k in range(0, k_max + 2):
            self.quot[k] = self._quotient(k)
        self.boundaries = {k: self._boundary(k) for k in range(1, k_max + 2)}

    def _quotient(self, k):
        basis = chains(self.A, k, self.content)
        idx = {x: i for i, x in enumerate(basis)}
        red = Reducer()
        for x in basis:
            v = {idx[z]: c for z, c in t_action(x).items()}
            v[idx[x]] = v.get(idx[x], 0) - 1
            red.add(v)
            if self.variant != HC:
                eps = -1 if self.variant == HD else 1
                v = {idx[z]: c for z, c in y_action(self.A, x).items()}
                v[idx[x]] = v.get(idx[x], 0) + eps
                red.add(v)
        keep = [i for i in range(len(basis)) if i not in red.rows]
        return basis, idx, red, keep

    def _boundary(self, k):
        basis, _, _, keep = self.quot[k]
        lbasis, lidx, lred, lkeep = self.quot[k - 1]
        pos = {i: j for j, i in enumerate(lkeep)}
        cols = []
        for i in keep:
            v = {lidx[z]: c for z, c in hochschild(self.A, basis[i]).items()}
            v = lred.reduce(v)
            cols.append({pos[j]: c for j, c in v.items()})
        return SparseMatrix.from_columns(len(lkeep), cols)

    def dim(self, k):
        return len(self.quot[k][3])

    def d(self, k):
        if k == 0:
            return SparseMatrix(0, self.dim(0))
        return self.boundaries[k]

    def homology(self, k):
        return homology_dim(self.d(k + 1), self.d(k))

    def label_action(self, k, f):
        """Matrix of the relabelling f (dict label -> label) on the quotient C_k."""
        basis, idx, red, keep = self.quot[k]
        pos = {i: j for j, i in enumerate(keep)}
        cols = []
        for i in keep:
            x = tuple(self.A.relabel(a, f) for a in basis[i])
            v = red.reduce({idx[x]: 1})
            cols.append({pos[j]: c for j, c in v.items()})
        return SparseMatrix.from_columns(len(keep), cols)

    def representatives(self, k):
        basis, _, _, keep = self.quot[k]
        return [basis[i] for i in keep]

    def coords(self, k, vec):
        """Coordinates of a chain (dict tuple -> coeff) in the quotient."""
        basis, idx, red, keep = self.quot[k]
        pos = {i: j for j, i in enumerate(keep)}
        v = red.reduce({idx[z]: c for z, c in vec.items()})
        return {pos[j]: c for j, c in v.items()}


def _generic(pattern):
    out = []
    for i, m in enumerate(pattern):
        out += [f"x{i + 1}"] * m
    return tuple(out)


def _patterns(g, m):
    from .complex import multiset_count, partitions
    return [(p, multiset_count(p, m)) for p in partitions(g, m)]


def hd_slice_dims(A, variant, content, k_max):
    s = DihedralSlice(A, variant, content, k_max)
    return {k: s.homology(k) for k in range(k_max + 1)}


def hd_decomposition(A_factory, variant, k, g):
    """Sym_g decomposition of the variant homology in degree k and grading g.

    Computed on the multilinear slice x1 .. xg; by Schur-Weyl duality the
    result is the list of Schur functors in the homology functor.
    """
    from .rep import decompose_action, homology_action
    labels = tuple(f"x{i + 1}" for i in range(g))
    A = A_factory(list(labels))
    sl = DihedralSlice(A, variant, labels, k)
    if g == 1:
        return {(1,): sl.homology(k)} if sl.homology(k) else {}
    swap = dict(zip(labels, labels))
    swap[labels[0]], swap[labels[1]] = labels[1], labels[0]
    cyc = {labels[i]: labels[(i + 1) % g] for i in range(g)}
    acts = [sl.label_action(k, swap), sl.label_action(k, cyc)]
    mats = homology_action(sl.d(k + 1), sl.d(k), acts)
    return decompose_action(mats, g)


def hd_dims(A_factory, variant, k_max, g_max, dim_v, reduced=True):
    """Table {(k, g): dim} of HC / HD / HD' over a space of dimension dim_v.

    ``A_factory(labels)`` builds the algebra on a list of generic labels; the
    slices are computed once per multiplicity pattern.  For a unital algebra
    the grading 0 part (the ground field) is left out when ``reduced``.
    """
    table = {}
    for g in range(0, g_max + 1):
        if g == 0:
            if reduced:
                continue
            pats = [((), 1)]
        else:
            pats = _patterns(g, dim_v)
        for pat, mult in pats:
            labels = _generic(pat)
            A = A_factory(sorted(set(labels)))
            if g == 0 and A.unit is None:
                continue
            dims = hd_slice_dims(A, variant, labels, k_max)
            for k, h in dims.items():
                table[k, g] = table.get((k, g), 0) + mult * h
    return dict(sorted(table.items()))


def factory(operad, unital=False, max_grading=None):
    """Algebra builder on generic labels for ``hd_dims``."""
    op = check_operad(operad)

    def build(labels):
        if op == "comm":
            return algebra_comm(labels)
        if op == "assoc":
            return algebra_assoc(labels)
        return algebra_lie(labels, max_grading if max_grading is not None else 8,
                           unital=unital)
    return build


def crosscheck_graph_dihedral(operad, k_max, g_max, dim_v):
    """Rows (k, g, graph dim, dihedral dim, ok) comparing H_{k,1} with HD_{k-1}."""
    from .complex import hairy_homology_dims
    op = check_operad(operad)
    hd = hd_dims(factory(op, max_grading=g_max), HD, max(0, k_max - 1), g_max, dim_v)
    rows = []
    for g in range(1, g_max + 1):
        graph = hairy_homology_dims(op, g, 1, dim_v)
        for k in range(1, k_max + 1):
            a = graph.get(k, 0)
            b = hd.get((k - 1, g), 0)
            rows.append((k, g, a, b, a == b))
    return rows
