"""Spiders, the Chevalley-Eilenberg complex, trace, black-red, split and assembly.

Graph-valued results are lists of ``(coeff, HairyGraph)``; ``chain`` turns
such a list into coordinates ``{(shape key, flat): coeff}`` in the hairy
complex, so two results can be compared exactly.

Sign conventions.  The spider algebra is an ordinary Lie algebra, so a wedge
is antisymmetric in its factors, matching the graph orientation where two
vertices swap with sign -1.  The CE differential is

    d(x_0 ^ .. ^ x_{k-1}) = sum_{i<j} (-1)^(i+j-1) [x_i, x_j] ^ x_0 ^ .. (i, j omitted)

which is exactly what contracting an edge between vertices i and j produces
(the merged vertex goes first).  An edge made by T or by a mating runs from
the leg of the first spider to the leg of the second.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations

from .graph import HairyGraph, boundary, coordinates, perm_sign
from .linalg import nullspace
from .operad import BasisElement, basis, basis_index, check_operad, compose_index
from .symp import Tensor, dual, harmonic_project, pairing


class NotACocycle(ValueError):
    pass


def chain(terms):
    """Coordinates of a formal sum of colored graphs."""
    out = {}
    for c, g in terms:
        if not c:
            continue
        sh, vec = coordinates(g, c)
        for f, x in vec.items():
            key = (sh.key, f)
            out[key] = out.get(key, 0) + x
    return {k: v for k, v in out.items() if v}


def boundary_terms(terms):
    out = []
    for c, g in terms:
        out += boundary(g, c)
    return out


# ---------------------------------------------------------------- spiders

@dataclass(frozen=True)
class Spider:
    """One operad generator with its slots labeled by basis vectors of V."""

    body: BasisElement
    labels: tuple

    def __post_init__(self):
        if self.body.slots < 3:
            raise ValueError("spiders have at least three legs")
        if len(self.labels) != self.body.slots:
            raise ValueError("one label per leg")

    @property
    def degree(self):
        return self.body.slots - 2

    def graph(self):
        return HairyGraph(self.body.operad, (self.body.slots,), (self.body,), (),
                          tuple(((0, j), x) for j, x in enumerate(self.labels)))


def spider(operad, index, labels):
    op = check_operad(operad)
    return Spider(basis(op, len(labels))[index], tuple(labels))


def mate(a, leg_a, b, leg_b):
    """Glue leg_a of a to leg_b of b, weighted by the pairing of their labels."""
    w = pairing(a.labels[leg_a], b.labels[leg_b])
    if not w:
        return []
    op = a.body.operad
    comp = compose_index(op, a.body.slots, basis_index(a.body), leg_a,
                         b.body.slots, basis_index(b.body), leg_b)
    labels = (a.labels[:leg_a] + a.labels[leg_a + 1:] +
              b.labels[:leg_b] + b.labels[leg_b + 1:])
    s = len(labels)
    return [(w * c, Spider(basis(op, s)[i], labels)) for i, c in sorted(comp.items()) if c]


def bracket(x, y):
    """[x, y] as a list of (coeff, Spider): the sum over all matings."""
    out = []
    for i in range(x.body.slots):
        for j in range(y.body.slots):
            out += mate(x, i, y, j)
    return out


def spider_chain(terms):
    return chain([(c, sp.graph()) for c, sp in terms])


# ----------------------------------------------------------------- wedges

@dataclass(frozen=True)
class Wedge:
    """coeff * x_0 ^ x_1 ^ .. ^ x_{k-1}."""

    spiders: tuple
    coeff: Fraction = Fraction(1)

    @property
    def degree(self):
        return sum(x.degree for x in self.spiders)


def wedge_normal(wedges):
    """Normal form of a sum of wedges: {tuple of basis keys: coeff}.

    Each factor is expanded in the canonical spider basis, then factors are
    sorted with the sign of the sorting permutation; repeated factors vanish.
    """
    out = {}
    for w in wedges:
        expansions = [list(spider_chain([(1, sp)]).items()) for sp in w.spiders]
        if any(not e for e in expansions):
            continue
        stack = [((), Fraction(w.coeff))]
        for e in expansions:
            stack = [(keys + (k,), c * x) for keys, c in stack for k, x in e]
        for keys, c in stack:
            if len(set(keys)) < len(keys):
                continue
            order = sorted(range(len(keys)), key=lambda i: keys[i])
            sign = perm_sign(order)
            key = tuple(keys[i] for i in order)
            out[key] = out.get(key, 0) + sign * c
    return {k: v for k, v in out.items() if v}


def ce_boundary(w):
    """CE differential of one wedge, as a list of wedges."""
    xs = w.spiders
    out = []
    for i, j in combinations(range(len(xs)), 2):
        sign = (-1) ** (i + j - 1)
        rest = tuple(x for t, x in enumerate(xs) if t not in (i, j))
        for c, z in bracket(xs[i], xs[j]):
            out.append(Wedge((z,) + rest, w.coeff * sign * c))
    return out


def ce_boundary_all(wedges):
    out = []
    for w in wedges:
        out += ce_boundary(w)
    return out


# ------------------------------------------------------------------ trace

def iota(w):
    """The disjoint union of the spiders of a wedge, in order."""
    xs = w.spiders
    op = xs[0].body.operad
    hairs = []
    for v, x in enumerate(xs):
        hairs += [((v, j), lab) for j, lab in enumerate(x.labels)]
    return HairyGraph(op, tuple(x.body.slots for x in xs), tuple(x.body for x in xs),
                      (), tuple(hairs))


def _matchings(items, weight):
    """All partial matchings of ``items`` with nonzero total weight."""
    if not items:
        yield [], 1
        return
    first, rest = items[0], items[1:]
    for m, c in _matchings(rest, weight):
        yield m, c
    for t, other in enumerate(rest):
        w = weight(first, other)
        if not w:
            continue
        for m, c in _matchings(rest[:t] + rest[t + 1:], weight):
            yield [(first, other)] + m, w * c


def join_hairs(g, pairs):
    """Turn hair pairs (a, b) (indices into g.hairs) into edges a -> b."""
    used = {i for p in pairs for i in p}
    edges = list(g.edges) + [(g.hairs[a][0], g.hairs[b][0]) for a, b in pairs]
    hairs = [h for i, h in enumerate(g.hairs) if i not in used]
    return HairyGraph(g.operad, g.valences, g.colors, tuple(edges), tuple(hairs), g.tags)


def exp_T(g, coeff=1):
    """exp(T) on one graph: the sum over partial matchings of its hairs."""
    idx = list(range(len(g.hairs)))
    out = []
    for m, c in _matchings(idx, lambda a, b: pairing(g.hairs[a][1], g.hairs[b][1])):
        out.append((coeff * c, join_hairs(g, m)))
    return out


def trace(w):
    """Tr = exp(T) o iota on one wedge."""
    if not w.spiders or not w.coeff:
        return []
    return exp_T(iota(w), Fraction(w.coeff))


def trace_all(wedges):
    out = []
    for w in wedges:
        out += trace(w)
    return out


# -------------------------------------------------------------- black-red

def _cut(g, e, x_tail, x_head):
    """Remove internal edge e, putting labels on the two new hairs."""
    (a, b) = g.edges[e]
    edges = tuple(f for i, f in enumerate(g.edges) if i != e)
    hairs = g.hairs + ((a, x_tail), (b, x_head))
    return HairyGraph(g.operad, g.valences, g.colors, edges, hairs, g.tags)


def black_red(g, space):
    """beta(X): every internal edge becomes a copy of omega; a list of wedges.

    Vertex v becomes the spider on its color whose legs carry the hair
    labels and the omega labels of its cut edges.
    """
    ne = len(g.edges)
    c0 = Fraction(1, space.dim)
    out = []
    for choice in _products(space.basis, ne):
        coeff = c0 ** ne
        labels = {h: lab for h, lab in g.hairs}
        for (a, b), x in zip(g.edges, choice):
            sgn, xs = dual(x)
            coeff *= sgn
            labels[a] = x
            labels[b] = xs
        spiders = tuple(Spider(g.colors[v], tuple(labels[v, j] for j in range(g.valences[v])))
                        for v in range(g.num_vertices))
        out.append(Wedge(spiders, coeff))
    return out


def _products(items, n):
    if n == 0:
        yield ()
        return
    for x in items:
        for rest in _products(items, n - 1):
            yield (x,) + rest


def project_hairs(terms, space):
    """pi: harmonic projection of the hair labels of every graph."""
    groups = {}
    for c, g in terms:
        skel = HairyGraph(g.operad, g.valences, g.colors, g.edges,
                          tuple((h, "p1") for h, _ in g.hairs), g.tags)
        t = groups.setdefault(skel, {})
        key = tuple(lab for _, lab in g.hairs)
        t[key] = t.get(key, 0) + c
    out = []
    for skel, terms_ in sorted(groups.items(), key=lambda kv: repr(kv[0])):
        t = harmonic_project(Tensor(space, len(skel.hairs), terms_))
        for key, c in sorted(t.terms.items()):
            hairs = tuple((h, lab) for (h, _), lab in zip(skel.hairs, key))
            out.append((c, HairyGraph(skel.operad, skel.valences, skel.colors,
                                      skel.edges, hairs, skel.tags)))
    return out


# ------------------------------------------------------------------ split

def split(g, space, coeff=1):
    """S(X) = (1/2n) sum over edges e and basis vectors x of X_{e,x}."""
    c0 = Fraction(coeff) / space.dim
    out = []
    for e in range(len(g.edges)):
        for x in space.basis:
            sgn, xs = dual(x)
            out.append((c0 * sgn, _cut(g, e, x, xs)))
    return out


def split_all(terms, space):
    out = []
    for c, g in terms:
        out += split(g, space, c)
    return out


def exp_split(g, space, coeff=1):
    """e^S(X): a sum over subsets of edges, each cut in all labelings."""
    c0 = Fraction(1, space.dim)
    ne = len(g.edges)
    out = []
    for size in range(ne + 1):
        for subset in combinations(range(ne), size):
            for choice in _products(space.basis, size):
                c = Fraction(coeff) * c0 ** size
                edges = [f for i, f in enumerate(g.edges) if i not in subset]
                hairs = list(g.hairs)
                for e, x in zip(subset, choice):
                    sgn, xs = dual(x)
                    c *= sgn
                    a, b = g.edges[e]
                    hairs += [(a, x), (b, xs)]
                out.append((c, HairyGraph(g.operad, g.valences, g.colors, tuple(edges),
                                          tuple(hairs), g.tags)))
    return out


# --------------------------------------------------------------- assembly

@dataclass
class Cocycle:
    """A functional on chain coordinates of connected hairy graphs.

    ``slices`` lists the (operad, d, r, labels, k) pieces it lives on; they
    are used only to check the cocycle condition.
    """

    values: dict
    slices: tuple = ()

    def __call__(self, g):
        sh, vec = coordinates(g)
        return sum((self.values.get((sh.key, f), 0) * c for f, c in vec.items()),
                   Fraction(0))

    def check(self):
        from .complex import build_slice
        for op, d, r, labels, k in self.slices:
            c = build_slice(op, d, r, labels)
            cols = c.d(k + 1).col_dicts()
            idx = c.bases.get(k, [])
            for col in cols:
                if sum((self.values.get(idx[i], 0) * x for i, x in col.items()),
                       Fraction(0)):
                    raise NotACocycle(f"nonzero on a boundary in {(op, d, r, labels, k)}")
        return True


def cocycle_from_slice(operad, d, r, labels, k, graph):
    """The cocycle on a slice with one-dimensional H_k, equal to 1 on ``graph``."""
    from .complex import build_slice
    c = build_slice(operad, d, r, labels)
    basis_k = c.bases.get(k, [])
    cands = nullspace(c.d(k + 1).transpose())
    sh, vec = coordinates(graph)
    pos = {x: i for i, x in enumerate(basis_k)}
    for z in cands:
        val = sum((z.get(pos[sh.key, f], 0) * x for f, x in vec.items()), Fraction(0))
        if val:
            values = {basis_k[i]: x / val for i, x in z.items()}
            return Cocycle(values, ((operad, d, r, tuple(sorted(labels)), k),))
    raise NotACocycle("graph is zero in homology")


def _groups(k, edges):
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for (u, _), (v, _) in edges:
        parent[find(u)] = find(v)
    out = {}
    for v in range(k):
        out.setdefault(find(v), []).append(v)
    return sorted(out.values())


def _components(g):
    """Split g into connected graphs; returns (sign, [graphs]) in vertex order."""
    comps = g.components()
    order = [v for comp in comps for v in comp]
    sign = perm_sign(order)
    out = []
    for comp in comps:
        pos = {v: i for i, v in enumerate(comp)}
        edges = tuple(((pos[u], su), (pos[v], sv)) for (u, su), (v, sv) in g.edges
                      if u in pos)
        hairs = tuple(((pos[v], j), lab) for (v, j), lab in g.hairs if v in pos)
        out.append(HairyGraph(g.operad, tuple(g.valences[v] for v in comp),
                              tuple(g.colors[v] for v in comp), edges, hairs,
                              tuple(g.tags[v] for v in comp)))
    return sign, out


def koszul_sign(degrees, sigma):
    """epsilon with X_0 .. X_{m-1} = epsilon X_sigma(0) .. X_sigma(m-1)."""
    sign = 1
    for i in range(len(sigma)):
        for j in range(i + 1, len(sigma)):
            if sigma[i] > sigma[j] and degrees[sigma[i]] * degrees[sigma[j]] % 2:
                sign = -sign
    return sign


def assembly_value(zetas, terms):
    """The assembled functional on a formal sum of split graphs."""
    m = len(zetas)
    total = Fraction(0)
    for c, g in terms:
        comps = g.components()
        if len(comps) != m or m == 0:
            continue
        sign, xs = _components(g)
        degs = [x.num_vertices for x in xs]
        for sigma in permutations(range(m)):
            val = Fraction(koszul_sign(degs, sigma))
            for i in range(m):
                val *= zetas[i](xs[sigma[i]])
                if not val:
                    break
            total += c * sign * val
    return total


def evaluate_assembly(zetas, g, space):
    """Evaluate zeta_1 .. zeta_m on e^S(G).

    Same value as ``assembly_value(zetas, exp_split(g, space))`` but edge
    subsets leaving the wrong number of components are skipped before any
    labels are chosen, and components whose labels no zeta can see are
    dropped before they are canonicalized.
    """
    m = len(zetas)
    if m == 0:
        return Fraction(0)
    supports = set()
    for z in zetas:
        if z.slices:
            supports |= {tuple(sorted(sl[3])) for sl in z.slices}
        else:
            supports = None
            break
    c0 = Fraction(1, space.dim)
    ne = len(g.edges)
    total = Fraction(0)
    for size in range(ne + 1):
        for subset in combinations(range(ne), size):
            kept = tuple(f for i, f in enumerate(g.edges) if i not in subset)
            comps = _groups(g.num_vertices, kept)
            if len(comps) != m:
                continue
            where = {v: t for t, comp in enumerate(comps) for v in comp}
            for choice in _products(space.basis, size):
                c = c0 ** size
                hairs = list(g.hairs)
                for e, x in zip(subset, choice):
                    sgn, xs = dual(x)
                    c *= sgn
                    a, b = g.edges[e]
                    hairs += [(a, x), (b, xs)]
                if supports is not None:
                    per = [[] for _ in comps]
                    for (v, _), lab in hairs:
                        per[where[v]].append(lab)
                    if any(tuple(sorted(p)) not in supports for p in per):
                        continue
                h = HairyGraph(g.operad, g.valences, g.colors, kept,
                               tuple(hairs), g.tags)
                total += assembly_value(zetas, [(c, h)])
    return total


def assembled_is_cocycle(zetas, pg_slice, space):
    """Whether the assembled functional vanishes on the boundaries of a slice."""
    for z in zetas:
        z.check()
    values = functional_on_slice(lambda g: evaluate_assembly(zetas, g, space), pg_slice)
    return is_cocycle_on(values, pg_slice)


def _representative(c, key, f):
    from .graph import color_space
    return color_space(c.params["operad"], c.shapes[key]).representative(f)


def functional_on_slice(fn, c):
    """Values {(k, i): fn(graph)} of a graph functional on a slice basis."""
    out = {}
    for k in c.degrees():
        for i, (key, f) in enumerate(c.bases[k]):
            v = fn(_representative(c, key, f))
            if v:
                out[k, i] = v
    return out


def is_cocycle_on(values, c):
    for k in c.degrees():
        if k + 1 not in c.bases:
            continue
        for col in c.d(k + 1).col_dicts():
            if sum((values.get((k, i), 0) * x for i, x in col.items()), Fraction(0)):
                return False
    return True


def two_loops_three_edges(index=0):
    """The Lie graph with two looped vertices joined by three edges, and the
    two cocycles dual to its halves with all hairs p1 and all hairs q1.

    Returns (G, [zeta_p, zeta_q]).  Cutting the three joining edges of G
    with labels p1 -> q1 gives exactly the two graphs the cocycles are
    normalized on.
    """
    b = basis("lie", 5)[index]
    loop = (((0, 0), (0, 1)),)

    def half(x):
        return HairyGraph("lie", (5,), (b,), loop, tuple(((0, j), x) for j in (2, 3, 4)))

    zetas = [cocycle_from_slice("lie", 3, 1, (x,) * 3, 1, half(x)) for x in ("p1", "q1")]
    g = HairyGraph("lie", (5, 5), (b, b),
                   (((0, 0), (0, 1)), ((1, 0), (1, 1))) +
                   tuple(((0, j), (1, j)) for j in (2, 3, 4)), ())
    return g, zetas
