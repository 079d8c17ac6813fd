"""Admissible colored oriented hairy graphs.

A ``HairyGraph`` stores its internal vertices in order, each with a color
(a basis element of ``O((s))``) whose slots ``0..s-1`` are the half-edges at
that vertex.  Internal edges are directed pairs of half-edges
``((u, su), (v, sv))`` from tail to head, and hairs are ``((v, slot), label)``.
The orientation is the vertex order together with the edge directions.

Chains are handled through the *underlying shape* of a graph: vertices with
their hair labels, loops and edge multiplicities, but no colors and no slot
numbering.  Every shape gets a canonical vertex order and a canonical order of
the half-edges at each vertex (hairs by label, then loops, then edges by
neighbor).  A colored graph then becomes a vector in
``W = (x)_v O((|v|))`` for its canonical shape, and the chain space of that
shape is the space of coinvariants of ``W`` under the signed automorphisms of
the shape.  Coordinates on the coinvariants are canonical remainders modulo
the relation span, so two graphs are equal in the complex exactly when their
coordinate vectors agree.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .linalg import Reducer
from .operad import (act_index, basis, check_operad,
                     compose_index, dimension, parse, serialize, basis_index)


class LoopEdge(ValueError):
    pass


class GraphError(ValueError):
    pass


class ResourceLimit(RuntimeError):
    pass


ROOT = 1          # tag of the distinguished vertex of a B.O tree
MAX_VERTICES = 9


def perm_sign(seq):
    """Sign of a sequence of distinct sortable items, as a permutation."""
    seq = list(seq)
    sign = 1
    seen = [False] * len(seq)
    rank = {x: i for i, x in enumerate(sorted(seq))}
    p = [rank[x] for x in seq]
    for i in range(len(p)):
        if seen[i]:
            continue
        j, n = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        if n % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class HairyGraph:
    """A hairy graph with vertex colors; ``colors`` may be None (uncolored)."""

    operad: object
    valences: tuple
    colors: object
    edges: tuple
    hairs: tuple
    tags: tuple = None

    def __post_init__(self):
        k = len(self.valences)
        tags = self.tags if self.tags is not None else (0,) * k
        object.__setattr__(self, "tags", tuple(tags))
        if len(self.tags) != k:
            raise GraphError("one tag per vertex")
        if self.colors is not None:
            if len(self.colors) != k:
                raise GraphError("one color per vertex")
            for b, s in zip(self.colors, self.valences):
                if b.slots != s or b.operad != self.operad:
                    raise GraphError("color does not match vertex valence")
        used = set()
        ends = [end for e in self.edges for end in e] + [h for h, _ in self.hairs]
        for v, j in ends:
            if not (0 <= v < k and 0 <= j < self.valences[v]):
                raise GraphError(f"half-edge {(v, j)} out of range")
            if (v, j) in used:
                raise GraphError(f"half-edge {(v, j)} used twice")
            used.add((v, j))
        if len(used) != sum(self.valences):
            raise GraphError("every slot needs a half-edge")

    @classmethod
    def build(cls, operad, colors, edges=(), hairs=(), tags=None):
        """Build from colors given as BasisElements or serialized strings."""
        operad = check_operad(operad)
        cols = []
        for c in colors:
            if isinstance(c, str):
                e = parse(c)
                if len(e.terms) != 1 or next(iter(e.terms.values())) != 1:
                    raise GraphError(f"{c!r} is not a basis element")
                c = next(iter(e.terms))
            cols.append(c)
        edges = tuple((tuple(a), tuple(b)) for a, b in edges)
        hairs = tuple((tuple(h), lab) for h, lab in hairs)
        return cls(operad, tuple(c.slots for c in cols), tuple(cols), edges, hairs, tags)

    @property
    def num_vertices(self):
        return len(self.valences)

    @property
    def degree(self):
        return sum(s - 2 for s in self.valences)

    def components(self):
        k = self.num_vertices
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, _), (v, _) in self.edges:
            parent[find(u)] = find(v)
        groups = {}
        for v in range(k):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    @property
    def rank(self):
        """First Betti number."""
        return len(self.edges) - self.num_vertices + len(self.components())

    def labels(self):
        return tuple(sorted(lab for _, lab in self.hairs))

    def is_loop(self, e):
        (u, _), (v, _) = self.edges[e]
        return u == v


# ------------------------------------------------------------ text format

def dumps(g, coeff=1):
    """Stable text form: one line per vertex, edge and hair."""
    lines = [f"graph {g.operad} {coeff}"]
    for v in range(g.num_vertices):
        col = serialize(g.colors[v]) if g.colors is not None else str(g.valences[v])
        tag = " root" if g.tags[v] == ROOT else ""
        lines.append(f"v {v} {col}{tag}")
    for (u, su), (v, sv) in g.edges:
        lines.append(f"e {u}.{su} {v}.{sv}")
    for (v, j), lab in g.hairs:
        lines.append(f"h {v}.{j} {lab}")
    return "\n".join(lines) + "\n"


def loads(text):
    """Inverse of ``dumps``; returns (coefficient, graph)."""
    colors, edges, hairs, tags = [], [], [], []
    operad, coeff = None, Fraction(1)

    def end(tok):
        a, _, b = tok.partition(".")
        return int(a), int(b)

    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "graph":
            operad = check_operad(parts[1])
            if len(parts) > 2:
                coeff = Fraction(parts[2])
        elif parts[0] == "v":
            if int(parts[1]) != len(colors):
                raise GraphError("vertices must be listed in order")
            body = line.split(maxsplit=2)[2].strip()
            tag = 0
            if body.endswith(" root"):
                body, tag = body[:-5].strip(), ROOT
            colors.append(body)
            tags.append(tag)
        elif parts[0] == "e":
            edges.append((end(parts[1]), end(parts[2])))
        elif parts[0] == "h":
            hairs.append((end(parts[1]), parts[2]))
        else:
            raise GraphError(f"cannot read line {line!r}")
    if operad is None:
        raise GraphError("missing 'graph' header")
    return coeff, HairyGraph.build(operad, colors, edges, hairs, tags)


# ------------------------------------------------------- canonical labeling

def _raw_shape(g):
    k = g.num_vertices
    hl = [[] for _ in range(k)]
    loops = [0] * k
    adj = {}
    for (v, _), lab in g.hairs:
        hl[v].append(lab)
    for (u, _), (v, _) in g.edges:
        if u == v:
            loops[u] += 1
        else:
            key = (min(u, v), max(u, v))
            adj[key] = adj.get(key, 0) + 1
    vinfo = tuple((g.tags[v], g.valences[v], tuple(sorted(hl[v])), loops[v])
                  for v in range(k))
    return vinfo, tuple(sorted(adj.items()))


def _refine(colors, nbrs):
    while True:
        sigs = [(colors[v], tuple(sorted((colors[w], m) for w, m in nbrs[v])))
                for v in range(len(colors))]
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


@lru_cache(maxsize=None)
def _labeling(vinfo, adj):
    """Canonical order of a shape and its vertex automorphism group.

    Returns (order, encoding, autos) where ``order[i]`` is the original vertex
    placed at canonical position ``i`` and ``autos`` are the automorphisms as
    permutations of canonical positions.
    """
    k = len(vinfo)
    if k > MAX_VERTICES:
        raise ResourceLimit(f"{k} vertices exceeds the bound {MAX_VERTICES}")
    amap = {}
    nbrs = [[] for _ in range(k)]
    for (u, v), m in adj:
        amap[u, v] = amap[v, u] = m
        nbrs[u].append((v, m))
        nbrs[v].append((u, m))
    ranks = {x: i for i, x in enumerate(sorted(set(vinfo)))}
    start = [ranks[x] for x in vinfo]

    def encode(order):
        return (tuple(vinfo[v] for v in order),
                tuple(amap.get((order[i], order[j]), 0)
                      for i in range(k) for j in range(i + 1, k)))

    leaves = []

    def search(colors):
        colors = _refine(colors, nbrs)
        if len(set(colors)) == k:
            leaves.append(tuple(sorted(range(k), key=lambda v: colors[v])))
            return
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        cell = min(c for c, n in counts.items() if n > 1)
        for v in range(k):
            if colors[v] == cell:
                new = [2 * c + 1 for c in colors]
                new[v] = 2 * colors[v]
                search(new)

    if k:
        search(start)
    else:
        leaves.append(())
    encs = [encode(o) for o in leaves]
    best_enc = min(encs)
    best = leaves[encs.index(best_enc)]
    pos = {v: i for i, v in enumerate(best)}
    autos = sorted({tuple(pos[o[i]] for i in range(k))
                    for o, e in zip(leaves, encs) if e == best_enc})
    return best, best_enc, tuple(autos)


class Shape:
    """A canonical underlying graph with its canonical half-edge layout."""

    def __init__(self, enc, autos):
        vinfo, flat_adj = enc
        self.vinfo = vinfo
        self.k = len(vinfo)
        self.autos = autos
        self.adj = {}
        it = iter(flat_adj)
        for i in range(self.k):
            for j in range(i + 1, self.k):
                m = next(it)
                if m:
                    self.adj[i, j] = m
        self.slots = []
        for c, (tag, val, hl, nl) in enumerate(vinfo):
            desc = []
            seen = {}
            for lab in hl:
                t = seen.get(lab, 0)
                seen[lab] = t + 1
                desc.append(("h", lab, t))
            for t in range(nl):
                desc += [("l", t, 0), ("l", t, 1)]
            for w in range(self.k):
                if w == c:
                    continue
                m = self.adj.get((min(c, w), max(c, w)), 0)
                for t in range(m):
                    desc.append(("e", w, t, 0 if c < w else 1))
            if len(desc) != val:
                raise GraphError("inconsistent shape")
            self.slots.append(tuple(desc))
        self.slot_pos = [{d: j for j, d in enumerate(ds)} for ds in self.slots]
        self.valences = tuple(v[1] for v in vinfo)
        self.tags = tuple(v[0] for v in vinfo)
        self.key = _shape_key(enc)

    def __repr__(self):
        return f"Shape({self.key})"

    @property
    def degree(self):
        return sum(s - 2 for s in self.valences)

    def edges(self):
        """Canonical directed edges ((c, slot), (w, slot)), loops first."""
        out = []
        for c in range(self.k):
            for t in range(self.vinfo[c][3]):
                out.append(((c, self.slot_pos[c]["l", t, 0]),
                            (c, self.slot_pos[c]["l", t, 1])))
        for (c, w), m in sorted(self.adj.items()):
            for t in range(m):
                out.append(((c, self.slot_pos[c]["e", w, t, 0]),
                            (w, self.slot_pos[w]["e", c, t, 1])))
        return out

    def hairs(self):
        out = []
        for c in range(self.k):
            for j, d in enumerate(self.slots[c]):
                if d[0] == "h":
                    out.append(((c, j), d[1]))
        return out

    def graph(self, operad, colors):
        """The graph on this shape with the given color basis elements."""
        return HairyGraph(operad, self.valences, tuple(colors),
                          tuple(self.edges()), tuple(self.hairs()), self.tags)

    def generators(self):
        """Signed automorphism generators as (vertex perm, slot maps, sign)."""
        gens = []
        ident = tuple(range(self.k))
        for sigma in self.autos:
            if sigma == ident:
                continue
            maps = []
            for c in range(self.k):
                tgt = self.slot_pos[sigma[c]]
                m = []
                for d in self.slots[c]:
                    if d[0] == "e":
                        _, w, t, _ = d
                        end = 0 if sigma[c] < sigma[w] else 1
                        d = ("e", sigma[w], t, end)
                    m.append(tgt[d])
                maps.append(tuple(m))
            rev = sum(m for (c, w), m in self.adj.items() if sigma[c] > sigma[w])
            gens.append((sigma, tuple(maps), perm_sign(sigma) * (-1) ** rev))
        # local symmetries fixing every vertex
        for c in range(self.k):
            ds = self.slots[c]
            for j in range(len(ds) - 1):
                a, b = ds[j], ds[j + 1]
                swap = None
                if a[0] == "h" and b[0] == "h" and a[1] == b[1]:
                    swap = [(j, j + 1)], 1
                elif a[0] == "e" and b[0] == "e" and a[1] == b[1] and a[3] == 0:
                    # parallel edges c -> w; swap both ends
                    w = a[1]
                    pw = self.slot_pos[w]
                    ja, jb = pw["e", c, a[2], 1], pw["e", c, b[2], 1]
                    gens.append(self._local({c: [(j, j + 1)], w: [(ja, jb)]}, 1))
                elif a == ("l", a[1], 0) and b == ("l", a[1], 1):
                    swap = [(j, j + 1)], -1
                elif (a[0] == "l" and b[0] == "l" and a[2] == 1 and b[2] == 0):
                    # adjacent loops t and t+1
                    swap = [(j - 1, j + 1), (j, j + 2)], 1
                if swap is not None:
                    gens.append(self._local({c: swap[0]}, swap[1]))
        return gens

    def _local(self, swaps, sign):
        maps = []
        for c in range(self.k):
            m = list(range(self.valences[c]))
            for i, j in swaps.get(c, ()):
                m[i], m[j] = m[j], m[i]
            maps.append(tuple(m))
        return tuple(range(self.k)), tuple(maps), sign


def _shape_key(enc):
    vinfo, flat = enc
    vs = ";".join(
        f"{'R' if t == ROOT else ''}{val}[{','.join(hl)}]{'o' * nl}"
        for t, val, hl, nl in vinfo)
    return vs + "|" + "".join(str(m) for m in flat)


_SHAPES = {}


def _shape_from_enc(enc, autos):
    s = _SHAPES.get(enc)
    if s is None:
        s = _SHAPES[enc] = Shape(enc, autos)
    return s


def shape_of(g):
    """Canonical shape of g, the canonical position of each vertex and the
    half-edge map (v, slot) -> canonical slot, with orientation sign."""
    vinfo, adj = _raw_shape(g)
    order, enc, autos = _labeling(vinfo, adj)
    shape = _shape_from_enc(enc, autos)
    pos = [0] * g.num_vertices
    for i, v in enumerate(order):
        pos[v] = i
    sign = perm_sign(pos)
    maps = [[None] * s for s in g.valences]
    # hairs: by label then slot
    per_vertex = {}
    for (v, j), lab in g.hairs:
        per_vertex.setdefault(v, []).append((lab, j))
    for v, lst in per_vertex.items():
        seen = {}
        for lab, j in sorted(lst):
            t = seen.get(lab, 0)
            seen[lab] = t + 1
            maps[v][j] = shape.slot_pos[pos[v]]["h", lab, t]
    loop_count = {}
    pair_count = {}
    for (u, su), (v, sv) in g.edges:
        a, b = pos[u], pos[v]
        if u == v:
            t = loop_count.get(u, 0)
            loop_count[u] = t + 1
            maps[u][su] = shape.slot_pos[a]["l", t, 0]
            maps[v][sv] = shape.slot_pos[a]["l", t, 1]
            continue
        key = (min(a, b), max(a, b))
        t = pair_count.get(key, 0)
        pair_count[key] = t + 1
        if a < b:
            maps[u][su] = shape.slot_pos[a]["e", b, t, 0]
            maps[v][sv] = shape.slot_pos[b]["e", a, t, 1]
        else:
            sign = -sign
            maps[u][su] = shape.slot_pos[a]["e", b, t, 1]
            maps[v][sv] = shape.slot_pos[b]["e", a, t, 0]
    return shape, pos, [tuple(m) for m in maps], sign


# ------------------------------------------------------ coinvariant spaces

def _tensor_act(op, shape, flat_tuple, vperm, maps):
    """Apply a slot relabeling to a color tensor; returns {tuple: coeff}."""
    parts = []
    for c, i in enumerate(flat_tuple):
        parts.append(act_index(op, shape.valences[c], i, maps[c]))
    out = {}
    for combo in product(*[list(p.items()) for p in parts]):
        new = [None] * shape.k
        coeff = Fraction(1)
        for c, (j, x) in enumerate(combo):
            new[vperm[c]] = j
            coeff *= x
        out[tuple(new)] = out.get(tuple(new), 0) + coeff
    return out


class ColorSpace:
    """Coinvariants of the color tensors of one shape."""

    def __init__(self, op, shape):
        self.operad = op
        self.shape = shape
        self.dims = tuple(dimension(op, s) for s in shape.valences)
        self.size = 1
        for d in self.dims:
            self.size *= d
        red = Reducer()
        for vperm, maps, sign in shape.generators():
            for flat in range(self.size):
                t = self.unflatten(flat)
                vec = {}
                for t2, c in _tensor_act(op, shape, t, vperm, maps).items():
                    f2 = self.flatten(t2)
                    vec[f2] = vec.get(f2, 0) + sign * c
                vec[flat] = vec.get(flat, 0) - 1
                red.add(vec)
                if len(red) == self.size:
                    break
            if len(red) == self.size:
                break
        self.reducer = red
        piv = set(red.rows)
        self.basis = tuple(f for f in range(self.size) if f not in piv)

    def flatten(self, t):
        f = 0
        for i, d in zip(t, self.dims):
            f = f * d + i
        return f

    def unflatten(self, f):
        out = []
        for d in reversed(self.dims):
            out.append(f % d)
            f //= d
        return tuple(reversed(out))

    def normal(self, vec):
        return self.reducer.reduce(vec)

    def representative(self, flat):
        b = self.unflatten(flat)
        cols = [basis(self.operad, s)[i] for s, i in zip(self.shape.valences, b)]
        return self.shape.graph(self.operad, cols)


_SPACES = {}


def color_space(op, shape):
    key = (op, shape.key)
    sp = _SPACES.get(key)
    if sp is None:
        sp = _SPACES[key] = ColorSpace(op, shape)
    return sp


def coordinates(g, coeff=1):
    """Coordinates of ``coeff * g`` in the chain space: (shape, {flat: c})."""
    if g.colors is None:
        raise GraphError("uncolored graph has no chain coordinates")
    shape, pos, maps, sign = shape_of(g)
    t = [None] * g.num_vertices
    for v in range(g.num_vertices):
        t[v] = basis_index(g.colors[v])
    parts = [None] * g.num_vertices
    for v in range(g.num_vertices):
        parts[pos[v]] = act_index(g.operad, g.valences[v], t[v], maps[v])
    sp = color_space(g.operad, shape)
    vec = {}
    for combo in product(*[list(p.items()) for p in parts]):
        c = Fraction(coeff) * sign
        for _, x in combo:
            c *= x
        f = sp.flatten(tuple(j for j, _ in combo))
        vec[f] = vec.get(f, 0) + c
    return shape, sp.normal(vec)


def canonicalize(g):
    """None if g is zero in the complex, otherwise (key, coefficient).

    The key names the line spanned by g; for Comm and Assoc colors the
    coefficient is the sign relating g to the canonical representative.
    """
    shape, vec = coordinates(g)
    if not vec:
        return None
    lead = vec[min(vec)]
    body = ",".join(f"{f}:{c / lead}" for f, c in sorted(vec.items()))
    return f"{g.operad}|{shape.key}|{body}", lead


# --------------------------------------------------------- contraction

def contract_edge(g, e):
    """Contract internal edge ``e``; returns a list of (coeff, graph).

    The tail vertex u is moved to position 0 and the head v to position 1
    (with the sign of that reordering); they merge into vertex 0, whose slots
    are u's remaining slots followed by v's.
    """
    (u, su), (v, sv) = g.edges[e]
    if u == v:
        raise LoopEdge("cannot contract a loop")
    k = g.num_vertices
    rest = [w for w in range(k) if w not in (u, v)]
    sign = perm_sign([u, v] + rest)
    newpos = {w: i + 1 for i, w in enumerate(rest)}
    su_map = {j: (j if j < su else j - 1) for j in range(g.valences[u]) if j != su}
    off = g.valences[u] - 1
    sv_map = {j: off + (j if j < sv else j - 1) for j in range(g.valences[v]) if j != sv}

    def move(end):
        w, j = end
        if w == u:
            return 0, su_map[j]
        if w == v:
            return 0, sv_map[j]
        return newpos[w], j

    edges = tuple((move(a), move(b)) for i, (a, b) in enumerate(g.edges) if i != e)
    hairs = tuple((move(h), lab) for h, lab in g.hairs)
    s = g.valences[u] + g.valences[v] - 2
    valences = (s,) + tuple(g.valences[w] for w in rest)
    tag = max(g.tags[u], g.tags[v])
    tags = (tag,) + tuple(g.tags[w] for w in rest)
    if g.colors is None:
        return [(sign, HairyGraph(None, valences, None, edges, hairs, tags))]
    a, b = g.colors[u], g.colors[v]
    comp = compose_index(g.operad, a.slots, basis_index(a), su,
                         b.slots, basis_index(b), sv)
    out = []
    blist = basis(g.operad, s)
    rest_cols = tuple(g.colors[w] for w in rest)
    for i, c in sorted(comp.items()):
        out.append((sign * c, HairyGraph(g.operad, valences, (blist[i],) + rest_cols,
                                         edges, hairs, tags)))
    return out


def boundary(g, coeff=1):
    """Sum of contractions over non-loop edges, as a list of (coeff, graph)."""
    out = []
    for e in range(len(g.edges)):
        if not g.is_loop(e):
            for c, h in contract_edge(g, e):
                out.append((coeff * c, h))
    return out


# ------------------------------------------------------------------ core

def core_vertices(g):
    """Vertices of the core: repeatedly delete vertices of valence one."""
    alive = set(range(g.num_vertices))
    deg = {v: 0 for v in alive}
    for (u, _), (v, _) in g.edges:
        deg[u] += 1
        deg[v] += 1
    changed = True
    while changed:
        changed = False
        for w in sorted(alive):
            if deg[w] <= 1:
                alive.discard(w)
                changed = True
                for (u, _), (v, _) in g.edges:
                    if u == w and v in alive:
                        deg[v] -= 1
                    elif v == w and u in alive:
                        deg[u] -= 1
    return sorted(alive)


def core(g):
    """The core of g as an uncolored hairless graph (bivalent vertices kept)."""
    keep = core_vertices(g)
    idx = {v: i for i, v in enumerate(keep)}
    slots = {v: [] for v in keep}
    edges = []
    for (u, su), (v, sv) in g.edges:
        if u in idx and v in idx:
            edges.append(((u, su), (v, sv)))
            slots[u].append(su)
            slots[v].append(sv)
    renum = {}
    for v in keep:
        for j, s in enumerate(sorted(slots[v])):
            renum[v, s] = (idx[v], j)
    new_edges = tuple((renum[a], renum[b]) for a, b in edges)
    valences = tuple(len(slots[v]) for v in keep)
    return HairyGraph(None, valences, None, new_edges, (), tuple(g.tags[v] for v in keep))


# ----------------------------------------------------------- enumeration

def _compositions(m, k):
    if k == 0:
        if m == 0:
            yield ()
        return
    if k == 1:
        yield (m,)
        return
    for i in range(m + 1):
        for rest in _compositions(m - i, k - 1):
            yield (i,) + rest


def _connected(k, adj):
    if k == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for (u, v) in adj:
            for a, b in ((u, v), (v, u)):
                if a == x and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == k


def _distribute(items, caps, lows):
    """Place labeled hairs on vertices within capacities; yields hair lists.

    ``items`` is a list of (label, multiplicity); every vertex v must end up
    with at least ``lows[v]`` and at most ``caps[v]`` hairs.
    """
    k = len(caps)
    left = sum(m for _, m in items)

    def rec(i, room, acc, left):
        if sum(max(0, lows[v] - (caps[v] - room[v])) for v in range(k)) > left:
            return
        if i == len(items):
            yield acc
            return
        lab, m = items[i]
        for counts in _compositions(m, k):
            if any(c > r for c, r in zip(counts, room)):
                continue
            new_room = [r - c for r, c in zip(room, counts)]
            new_acc = [h + [lab] * c for h, c in zip(acc, counts)]
            yield from rec(i + 1, new_room, new_acc, left - m)

    yield from rec(0, list(caps), [[] for _ in range(k)], left)


def enumerate_shapes(k, num_edges, labels, connected=True, min_valence=3,
                     root=False, root_labels=(), max_valence=None):
    """All canonical shapes with k vertices, the given edge count and hairs.

    With ``root`` set, vertex 0 is tagged as distinguished and carries every
    label in ``root_labels``.
    """
    if k == 0 or num_edges < 0:
        return []
    labels = tuple(sorted(labels))
    free = {}
    for lab in labels:
        free[lab] = free.get(lab, 0) + 1
    for lab in root_labels:
        free[lab] -= 1
        if free[lab] == 0:
            del free[lab]
    free_items = sorted(free.items())
    nfree = sum(free.values())
    tags = [0] * k
    fixed = [[] for _ in range(k)]
    if root:
        tags[0] = ROOT
        fixed[0] = sorted(root_labels)
    positions = [(i, j) for i in range(k) for j in range(i, k)]
    bare = {}
    for chosen in combinations_with_replacement(range(len(positions)), num_edges):
        adj = {}
        loops = [0] * k
        for p in chosen:
            i, j = positions[p]
            if i == j:
                loops[i] += 1
            else:
                adj[i, j] = adj.get((i, j), 0) + 1
        if connected and not _connected(k, adj):
            continue
        vinfo = tuple((tags[v], 0, tuple(fixed[v]), loops[v]) for v in range(k))
        adj_t = tuple(sorted(adj.items()))
        enc = _labeling(vinfo, adj_t)[1]
        if enc not in bare:
            bare[enc] = (loops, adj)
    found = {}
    big = max_valence if max_valence is not None else 10 ** 6
    for enc in sorted(bare):
        loops, adj = bare[enc]
        base = [2 * loops[i] + len(fixed[i]) for i in range(k)]
        for (i, j), m in adj.items():
            base[i] += m
            base[j] += m
        lows = [max(0, min_valence - x) for x in base]
        caps = [max(-1, big - x) for x in base]
        if sum(lows) > nfree or min(caps) < 0:
            continue
        adj_t = tuple(sorted(adj.items()))
        for hl in _distribute(free_items, caps, lows):
            val = [base[v] + len(hl[v]) for v in range(k)]
            if min(val) < min_valence:
                continue
            vinfo = tuple((tags[v], val[v], tuple(sorted(hl[v] + fixed[v])), loops[v])
                          for v in range(k))
            order, enc2, autos = _labeling(vinfo, adj_t)
            if enc2 not in found:
                found[enc2] = _shape_from_enc(enc2, autos)
    return [found[e] for e in sorted(found)]


def slice_shapes(d, r, labels, connected=True, min_valence=3, ks=None):
    """Shapes of degree d and rank r with the given hair labels, by k."""
    s = len(labels)
    out = {}
    for k in range(1, d + 3):
        if ks is not None and k not in ks:
            continue
        twice = d - s + 2 * k
        if twice < 0 or twice % 2:
            continue
        num_edges = twice // 2
        shapes = enumerate_shapes(k, num_edges, labels, connected, min_valence)
        shapes = [sh for sh in shapes if _shape_rank(sh) == r]
        if shapes:
            out[k] = shapes
    return out


def _shape_rank(sh):
    g = HairyGraph(None, sh.valences, None, tuple(sh.edges()), tuple(sh.hairs()), sh.tags)
    return g.rank


def label_multisets(space_basis, s):
    return list(combinations_with_replacement(space_basis, s))


def enumerate_graphs(operad, degree, rank, space, connected=True, reduced=False):
    """Chain basis of the hairy complex with hair labels in the basis of V.

    Returns {k: [(shape, flat index), ...]}; ``reduced`` permits bivalent
    vertices.
    """
    op = check_operad(operad)
    s = degree + 2 - 2 * rank
    sizes = range(s, s + 1) if connected else range(0, degree + 1)
    out = {}
    for hs in sizes:
        if hs < 0:
            continue
        for labels in label_multisets(space.basis, hs):
            for k, shapes in slice_shapes(degree, rank, labels, connected,
                                          2 if reduced else 3).items():
                for sh in shapes:
                    sp = color_space(op, sh)
                    out.setdefault(k, []).extend((sh, f) for f in sp.basis)
    return out
