"""Chain complexes of hairy graphs, of the tree operad B.O and reduced ones.

Every complex is built on one slice: operad, degree d, rank r and a fixed
multiset of hair labels.  The boundary preserves all of these, so a complex
over a whole space V is a direct sum of label slices.  Since the complex only
sees whether two labels are equal, the homology of a slice depends only on
the multiplicity pattern of its labels; ``hairy_homology_dims`` uses that to
count over V without building every slice.
"""

import json
from itertools import combinations_with_replacement
from math import comb, factorial

from .graph import (HairyGraph, boundary, color_space, coordinates,
                    core_vertices, enumerate_shapes, slice_shapes)
from .linalg import Reducer, SparseMatrix, homology_dim
from .operad import check_operad


class UnsupportedOperad(ValueError):
    pass


class ComplexSlice:
    """A finite chain complex: bases per degree k and boundaries k -> k-1."""

    def __init__(self, params, bases, boundaries, check=True, shapes=None):
        self.params = dict(params)
        self.shapes = dict(shapes or {})
        self.bases = {k: list(b) for k, b in bases.items()}
        self.boundaries = dict(boundaries)
        self.index = {k: {x: i for i, x in enumerate(b)} for k, b in self.bases.items()}
        if check:
            self.check()

    def degrees(self):
        return sorted(self.bases)

    def dim(self, k):
        return len(self.bases.get(k, ()))

    def d(self, k):
        """Boundary from degree k to degree k - 1."""
        m = self.boundaries.get(k)
        if m is None:
            m = SparseMatrix(self.dim(k - 1), self.dim(k))
        return m

    def check(self):
        for k in self.degrees():
            if not (self.d(k) @ self.d(k + 1)).is_zero():
                raise AssertionError(f"boundary squares to a nonzero map at {k}")

    def homology(self, k):
        return homology_dim(self.d(k + 1), self.d(k))

    def euler(self):
        return sum((-1) ** k * self.dim(k) for k in self.degrees())


def homology_dims(c):
    """[(k, dim H_k)] for every degree with chains."""
    return [(k, c.homology(k)) for k in c.degrees()]


def report(c):
    """JSON-ready summary of a slice."""
    return {
        "params": c.params,
        "basis": {str(k): c.dim(k) for k in c.degrees()},
        "homology": {str(k): h for k, h in homology_dims(c)},
    }


def report_json(c):
    return json.dumps(report(c), sort_keys=True)


# ------------------------------------------------------------ assembling

def _assemble(op, shapes_by_k, params, degree_of=lambda k: k):
    """Chains are (shape key, flat) pairs; the boundary contracts edges."""
    bases = {}
    shapes = {}
    for k, shs in shapes_by_k.items():
        deg = degree_of(k)
        for sh in shs:
            shapes[sh.key] = sh
            sp = color_space(op, sh)
            bases.setdefault(deg, []).extend((sh.key, f) for f in sp.basis)
    index = {k: {x: i for i, x in enumerate(b)} for k, b in bases.items()}
    boundaries = {}
    for deg, basis in bases.items():
        if deg - 1 not in bases:
            continue
        rows = index[deg - 1]
        cols = []
        for key, f in basis:
            g = color_space(op, shapes[key]).representative(f)
            cols.append(_column(g, rows))
        boundaries[deg] = SparseMatrix.from_columns(len(rows), cols)
    return ComplexSlice(params, bases, boundaries, shapes=shapes)


def _column(g, rows, coeff=1):
    col = {}
    for c, h in boundary(g, coeff):
        sh, vec = coordinates(h, c)
        for f, x in vec.items():
            i = rows[sh.key, f]
            col[i] = col.get(i, 0) + x
    return {i: x for i, x in col.items() if x}


def build_slice(operad, d, r, labels, connected=True, min_valence=3):
    """The hairy complex on one label multiset."""
    op = check_operad(operad)
    labels = tuple(sorted(labels))
    params = {"operad": op, "degree": d, "rank": r, "labels": list(labels),
              "connected": connected}
    if d < 0 or (d == 0 and r == 0):
        return ComplexSlice(params, {}, {})
    shapes = slice_shapes(d, r, labels, connected, min_valence)
    return _assemble(op, shapes, params)


def build_hairy(operad, d, r, space, connected=True):
    """Direct sum of the label slices with labels in the basis of V."""
    op = check_operad(operad)
    s = d + 2 - 2 * r
    params = {"operad": op, "degree": d, "rank": r, "n": space.n,
              "connected": connected}
    if d <= 0 or s < 0:
        return ComplexSlice(params, {}, {})
    parts = [build_slice(op, d, r, labels, connected)
             for labels in combinations_with_replacement(space.basis, s)]
    return direct_sum(params, parts)


def direct_sum(params, parts):
    bases, blocks = {}, {}
    offsets = []
    for c in parts:
        off = {k: len(bases.get(k, ())) for k in c.degrees()}
        offsets.append(off)
        for k in c.degrees():
            bases.setdefault(k, []).extend(c.bases[k])
    boundaries = {}
    for c, off in zip(parts, offsets):
        for k in c.degrees():
            if k - 1 not in c.bases:
                continue
            m = c.d(k)
            o_col, o_row = off[k], off[k - 1]
            for (i, j), x in m.entries.items():
                blocks.setdefault(k, {})[i + o_row, j + o_col] = x
    for k in bases:
        if k - 1 in bases:
            boundaries[k] = SparseMatrix(len(bases[k - 1]), len(bases[k]),
                                         blocks.get(k, {}))
    shapes = {}
    for c in parts:
        shapes.update(c.shapes)
    return ComplexSlice(params, bases, boundaries, check=False, shapes=shapes)


def generic_labels(pattern):
    """Labels x1^m1 x2^m2 ... for a multiplicity pattern (m1, m2, ...)."""
    out = []
    for i, m in enumerate(pattern):
        out += [f"x{i + 1}"] * m
    return tuple(out)


def partitions(s, max_parts=None):
    """Partitions of s as weakly decreasing tuples."""
    def rec(rest, top, left):
        if rest == 0:
            yield ()
            return
        if left == 0:
            return
        for p in range(min(rest, top), 0, -1):
            for tail in rec(rest - p, p, left - 1):
                yield (p,) + tail
    return list(rec(s, s, s if max_parts is None else max_parts))


def multiset_count(pattern, m):
    """Number of multisets of type ``pattern`` from an m-element set."""
    j = len(pattern)
    if j > m:
        return 0
    count = factorial(m) // factorial(m - j)
    reps = {}
    for p in pattern:
        reps[p] = reps.get(p, 0) + 1
    for x in reps.values():
        count //= factorial(x)
    return count


def hairy_homology_dims(operad, d, r, dim_v, connected=True, reduced=False):
    """{k: dim H_k} of the hairy complex with labels in a space of dim_v."""
    s = d + 2 - 2 * r
    total = {}
    if d <= 0 or s < 0:
        return total
    for pat in partitions(s, dim_v):
        mult = multiset_count(pat, dim_v)
        labels = generic_labels(pat)
        c = build_reduced_slice(operad, d, r, labels) if reduced else \
            build_slice(operad, d, r, labels, connected)
        for k, h in homology_dims(c):
            total[k] = total.get(k, 0) + mult * h
    return dict(sorted(total.items()))


def label_action(c, k, f):
    """Matrix on C_k of a slice of the relabelling f (dict label -> label)."""
    rows = c.index.get(k, {})
    cols = []
    for key, flat in c.bases.get(k, []):
        g = color_space(c.params["operad"], c.shapes[key]).representative(flat)
        h = HairyGraph(g.operad, g.valences, g.colors, g.edges,
                       tuple((x, f[lab]) for x, lab in g.hairs), g.tags)
        sh, vec = coordinates(h)
        cols.append({rows[sh.key, j]: x for j, x in vec.items()})
    return SparseMatrix.from_columns(len(rows), cols)


def hairy_decomposition(operad, d, r, k):
    """Sym_s decomposition of H_k on the multilinear slice x1 .. xs."""
    from .rep import decompose_action, homology_action
    s = d + 2 - 2 * r
    labels = tuple(f"x{i + 1}" for i in range(s))
    c = build_slice(operad, d, r, labels)
    h = c.homology(k)
    if s == 1 or not h:
        return {(1,): h} if h else {}
    swap = dict(zip(labels, labels))
    swap[labels[0]], swap[labels[1]] = labels[1], labels[0]
    cyc = {labels[i]: labels[(i + 1) % s] for i in range(s)}
    mats = homology_action(c.d(k + 1), c.d(k),
                           [label_action(c, k, swap), label_action(c, k, cyc)])
    return decompose_action(mats, s)


# ---------------------------------------------------------------- B.O

def numbered(ell):
    return tuple(f"#{i}" for i in range(ell))


def build_BO(operad, ell, vlabels):
    """Trees with a distinguished vertex holding the numbered leaves.

    Degree k chains are trees with k + 1 internal vertices.
    """
    op = check_operad(operad)
    if ell < 2:
        raise ValueError("need at least two numbered leaves")
    vlabels = tuple(sorted(vlabels))
    labels = numbered(ell) + vlabels
    shapes = {}
    for k in range(1, len(vlabels) + 2):
        shs = enumerate_shapes(k, k - 1, labels, connected=True, min_valence=3,
                               root=True, root_labels=numbered(ell))
        if shs:
            shapes[k] = shs
    params = {"operad": op, "ell": ell, "labels": list(vlabels)}
    return _assemble(op, shapes, params, degree_of=lambda k: k - 1)


def bo_h0_expected(operad, ell, vlabels):
    """dim H_0(B.O_V((ell))) on a label multiset, from the explicit bases."""
    op = check_operad(operad)
    m = len(vlabels)
    if ell + m < 3:
        return 0
    mults = {}
    for x in vlabels:
        mults[x] = mults.get(x, 0) + 1
    if op == "comm":
        return 1 if m <= 1 else 0
    if op == "assoc":
        if m > ell:
            return 0
        count = factorial(ell - 1) * factorial(ell) // factorial(ell - m)
        for x in mults.values():
            count //= factorial(x)
        return count
    count = factorial(ell - 2)
    for x in mults.values():
        count *= comb(x + ell - 2, ell - 2)
    return count


# ------------------------------------------------------------- reduced

def _split_tc(op, c):
    """Sort the chains of a hairy slice by (tree vertices, core vertices)."""
    shapes = c.shapes
    by = {}
    for k, basis in c.bases.items():
        for i, (key, f) in enumerate(basis):
            sh = shapes[key]
            g = HairyGraph(None, sh.valences, None, tuple(sh.edges()),
                           tuple(sh.hairs()), sh.tags)
            cc = len(core_vertices(g))
            by.setdefault((k - cc, cc), []).append(i)
    return by


def build_reduced_slice(operad, d, r, labels):
    """The reduced complex on one label multiset.

    Its degree c term is H_0 of the column of chains whose core has c
    vertices, i.e. the chains without tree vertices modulo the tree-edge
    contractions of chains with one tree vertex; the boundary is induced by
    contracting core edges.
    """
    op = check_operad(operad)
    if r < 1:
        raise ValueError("the reduced complex needs rank at least one")
    full = build_slice(op, d, r, labels)
    by = _split_tc(op, full)
    params = {"operad": op, "degree": d, "rank": r, "labels": list(labels),
              "reduced": True}
    cores = sorted({cc for (_, cc) in by})
    quot = {}
    for cc in cores:
        b0 = by.get((0, cc), [])
        pos0 = {i: j for j, i in enumerate(b0)}
        red = Reducer()
        if (1, cc) in by:
            m = full.d(cc + 1).col_dicts()
            for i in by[1, cc]:
                v = {pos0[row]: x for row, x in m[i].items() if row in pos0}
                red.add(v)
        piv = set(red.rows)
        keep = [j for j in range(len(b0)) if j not in piv]
        quot[cc] = (b0, pos0, red, keep)
    bases = {cc: [full.bases[cc][quot[cc][0][j]] for j in quot[cc][3]] for cc in cores}
    boundaries = {}
    for cc in cores:
        if cc - 1 not in quot:
            continue
        b0, _, _, keep = quot[cc]
        lb0, lpos0, lred, lkeep = quot[cc - 1]
        lidx = {j: t for t, j in enumerate(lkeep)}
        m = full.d(cc).col_dicts()
        cols = []
        for j in keep:
            v = {lpos0[row]: x for row, x in m[b0[j]].items() if row in lpos0}
            v = lred.reduce(v)
            cols.append({lidx[t]: x for t, x in v.items()})
        boundaries[cc] = SparseMatrix.from_columns(len(lkeep), cols)
    return ComplexSlice(params, bases, boundaries)


def build_reduced(operad, d, r, space):
    op = check_operad(operad)
    if op not in ("comm", "assoc", "lie"):
        raise UnsupportedOperad(op)
    s = d + 2 - 2 * r
    params = {"operad": op, "degree": d, "rank": r, "n": space.n, "reduced": True}
    if d <= 0 or s < 0:
        return ComplexSlice(params, {}, {})
    parts = [build_reduced_slice(op, d, r, labels)
             for labels in combinations_with_replacement(space.basis, s)]
    return direct_sum(params, parts)


def build_pg(operad, d, r, connected=True, ks=None):
    """The ordinary (hairless) O-graph complex in degree d and rank r.

    ``ks`` restricts to the given vertex counts (a truncation that keeps
    the boundaries between consecutive kept degrees).
    """
    if ks is None:
        return build_slice(operad, d, r, (), connected)
    op = check_operad(operad)
    shapes = slice_shapes(d, r, (), connected, ks=tuple(ks))
    params = {"operad": op, "degree": d, "rank": r, "labels": [],
              "connected": connected, "vertices": sorted(ks)}
    return _assemble(op, shapes, params)
