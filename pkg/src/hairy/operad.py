"""The cyclic operads Comm, Assoc and Lie.

``O((s))`` is the space of operations with ``s`` slots numbered ``0..s-1``, all
on equal footing.  Bases:

* Comm: a single star.
* Assoc: cyclic orders of the slots, written starting at slot 0.
* Lie: left-normed combs ``[[..[1,a2],a3]..,a_{s-1}]`` with slot 0 as the
  output, so ``dim Lie((s)) = (s-2)!``.

A Lie element is normalised by expanding its bracket expression in the free
associative algebra and reading off the coefficients of the words that start
with leaf 1; the comb with leaf sequence ``(1, a2, ..)`` is the only basis
element containing the word ``1 a2 ..``.

Composition glues slot ``out_slot`` of ``a`` to slot ``in_slot`` of ``b``.  The
surviving slots of ``a`` come first, in their old order, then the surviving
slots of ``b``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

COMM = "comm"
ASSOC = "assoc"
LIE = "lie"
OPERADS = (COMM, ASSOC, LIE)


class UnsupportedArity(ValueError):
    pass


class SlotOutOfRange(IndexError):
    pass


def check_operad(op):
    op = op.lower()
    if op not in OPERADS:
        raise ValueError(f"unknown operad {op!r}")
    return op


@dataclass(frozen=True, order=True)
class BasisElement:
    operad: str
    slots: int
    shape: tuple

    def __str__(self):
        return serialize(self)


# ---------------------------------------------------------------- Lie trees

def _expand(expr):
    """Associative expansion of a bracket expression: dict word -> int."""
    if isinstance(expr, int):
        return {(expr,): 1}
    a, b = expr
    ea, eb = _expand(a), _expand(b)
    out = {}
    for wa, ca in ea.items():
        for wb, cb in eb.items():
            out[wa + wb] = out.get(wa + wb, 0) + ca * cb
            out[wb + wa] = out.get(wb + wa, 0) - ca * cb
    return out


def _leaves(expr):
    if isinstance(expr, int):
        return (expr,)
    return _leaves(expr[0]) + _leaves(expr[1])


def comb(seq):
    """The left-normed bracket [[..[a1,a2],..],an]."""
    e = seq[0]
    for x in seq[1:]:
        e = (e, x)
    return e


def lie_coefficients(expr):
    """Coordinates of a multilinear bracket expression in the comb basis.

    Returns a dict mapping the comb leaf sequence (starting with the smallest
    leaf) to its coefficient.
    """
    leaves = _leaves(expr)
    if len(set(leaves)) != len(leaves):
        raise ValueError("bracket expression is not multilinear")
    first = min(leaves)
    out = {}
    for w, c in _expand(expr).items():
        if w[0] == first and c:
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


class _Tree:
    """Unrooted planar tree: internal nodes carry a cyclic triple of neighbours.

    Nodes are ``('L', label)`` for leaves and ``('N', i)`` for internal nodes.
    """

    def __init__(self):
        self.adj = {}
        self.count = 0

    def new_node(self):
        n = ("N", self.count)
        self.count += 1
        return n

    @classmethod
    def from_expr(cls, expr, root_label, tree=None, relabel=None):
        t = tree if tree is not None else cls()
        rl = (lambda x: x) if relabel is None else relabel
        root = ("L", rl(root_label))
        t.adj[root] = []

        def build(e, parent):
            if isinstance(e, int):
                leaf = ("L", rl(e))
                t.adj[leaf] = [parent]
                return leaf
            n = t.new_node()
            t.adj[n] = [parent, None, None]
            t.adj[n][1] = build(e[0], n)
            t.adj[n][2] = build(e[1], n)
            return n

        child = build(expr, root)
        t.adj[root] = [child]
        return t

    def to_expr(self, root_label):
        root = ("L", root_label)
        (start,) = self.adj[root]

        def walk(node, came_from):
            if node[0] == "L":
                return node[1]
            nb = self.adj[node]
            k = nb.index(came_from)
            a, b = nb[(k + 1) % 3], nb[(k + 2) % 3]
            return (walk(a, node), walk(b, node))

        return walk(start, root)

    def relabel_leaves(self, f):
        mapping = {}
        for n in self.adj:
            mapping[n] = ("L", f(n[1])) if n[0] == "L" else n
        t = _Tree()
        t.count = self.count
        t.adj = {mapping[n]: [mapping[m] for m in nb] for n, nb in self.adj.items()}
        return t


def _glue_trees(ta, leaf_a, tb, leaf_b):
    """Join two trees by deleting a leaf of each and connecting neighbours."""
    t = _Tree()
    ren_b = {}
    for n in tb.adj:
        if n[0] == "N":
            ren_b[n] = ("N", n[1] + ta.count)
        else:
            ren_b[n] = n
    t.count = ta.count + tb.count
    for n, nb in ta.adj.items():
        t.adj[n] = list(nb)
    for n, nb in tb.adj.items():
        t.adj[ren_b[n]] = [ren_b[m] for m in nb]
    la, lb = ("L", leaf_a), ("L", leaf_b)
    (x,) = t.adj.pop(la)
    (y,) = t.adj.pop(lb)
    t.adj[x] = [y if m == la else m for m in t.adj[x]]
    t.adj[y] = [x if m == lb else m for m in t.adj[y]]
    return t


# ------------------------------------------------------------------ bases

@lru_cache(maxsize=None)
def _basis(op, s):
    if s < 2:
        raise UnsupportedArity(f"arity {s} < 2")
    if op == COMM:
        return (BasisElement(COMM, s, ()),)
    if op == ASSOC:
        return tuple(BasisElement(ASSOC, s, (0,) + p)
                     for p in permutations(range(1, s)))
    if s == 2:
        return (BasisElement(LIE, 2, (1,)),)
    return tuple(BasisElement(LIE, s, (1,) + p)
                 for p in permutations(range(2, s)))


def basis(op, s):
    """Deterministic basis of O((s)) as a list."""
    return list(_basis(check_operad(op), s))


@lru_cache(maxsize=None)
def _index(op, s):
    return {b: i for i, b in enumerate(_basis(op, s))}


def basis_index(b):
    return _index(b.operad, b.slots)[b]


def dimension(op, s):
    return len(_basis(check_operad(op), s))


def lie_expr(b):
    """Bracket expression (rooted at slot 0) of a Lie basis element."""
    if b.slots == 2:
        return 1
    return comb(b.shape)


def _lie_from_expr(expr, s):
    """Normalise a bracket expression rooted at slot 0 into {index: coeff}."""
    if s == 2:
        if expr != 1:
            raise ValueError("bad arity-2 Lie element")
        return {0: Fraction(1)}
    idx = _index(LIE, s)
    out = {}
    for w, c in lie_coefficients(expr).items():
        out[idx[BasisElement(LIE, s, w)]] = Fraction(c)
    return out


def _lie_tree(b, relabel=None):
    return _Tree.from_expr(lie_expr(b), 0, relabel=relabel)


# ---------------------------------------------------- index level operations

def _rotate_to(seq, x):
    k = seq.index(x)
    return seq[k:] + seq[:k]


@lru_cache(maxsize=None)
def act_index(op, s, i, perm):
    """Relabel slot j as perm[j] on basis element i; returns {index: coeff}."""
    b = _basis(op, s)[i]
    if op == COMM:
        return {0: Fraction(1)}
    if op == ASSOC:
        shape = tuple(perm[j] for j in b.shape)
        shape = _rotate_to(shape, 0)
        return {_index(ASSOC, s)[BasisElement(ASSOC, s, shape)]: Fraction(1)}
    if s == 2:
        return {0: Fraction(1)}
    t = _lie_tree(b).relabel_leaves(lambda j: perm[j])
    return _lie_from_expr(t.to_expr(0), s)


@lru_cache(maxsize=None)
def compose_index(op, sa, ia, out_slot, sb, ib, in_slot):
    """Glue slot out_slot of basis element ia to slot in_slot of ib."""
    if not 0 <= out_slot < sa:
        raise SlotOutOfRange(f"slot {out_slot} not in arity {sa}")
    if not 0 <= in_slot < sb:
        raise SlotOutOfRange(f"slot {in_slot} not in arity {sb}")
    s = sa + sb - 2
    new_a = {j: (j if j < out_slot else j - 1) for j in range(sa) if j != out_slot}
    new_b = {j: sa - 1 + (j if j < in_slot else j - 1)
             for j in range(sb) if j != in_slot}
    if op == COMM:
        return {0: Fraction(1)}
    a, b = _basis(op, sa)[ia], _basis(op, sb)[ib]
    if op == ASSOC:
        ra = _rotate_to(a.shape, out_slot)[1:]
        rb = _rotate_to(b.shape, in_slot)[1:]
        shape = tuple(new_a[j] for j in ra) + tuple(new_b[j] for j in rb)
        shape = _rotate_to(shape, 0)
        return {_index(ASSOC, s)[BasisElement(ASSOC, s, shape)]: Fraction(1)}
    # Lie: glue the planar trees along the chosen leaves
    ta = _lie_tree(a, relabel=lambda j: ("a", j))
    tb = _lie_tree(b, relabel=lambda j: ("b", j))
    t = _glue_trees(ta, ("a", out_slot), tb, ("b", in_slot))

    def lab(x):
        side, j = x
        return new_a[j] if side == "a" else new_b[j]

    t = t.relabel_leaves(lab)
    return _lie_from_expr(t.to_expr(0), s)


# ------------------------------------------------------ element interface

class OperadElement:
    """A rational combination of basis elements of one O((s))."""

    __slots__ = ("operad", "slots", "terms")

    def __init__(self, operad, slots, terms=None):
        self.operad = check_operad(operad)
        self.slots = slots
        self.terms = {}
        for b, c in (terms or {}).items():
            if isinstance(b, int):
                b = _basis(self.operad, slots)[b]
            if b.operad != self.operad or b.slots != slots:
                raise ValueError("mixed operads or arities in one element")
            c = Fraction(c)
            if c:
                self.terms[b] = self.terms.get(b, 0) + c
        self.terms = {b: c for b, c in self.terms.items() if c}

    @classmethod
    def basis_element(cls, b, coeff=1):
        return cls(b.operad, b.slots, {b: coeff})

    @classmethod
    def from_indices(cls, op, s, coords):
        return cls(op, s, {_basis(op, s)[i]: c for i, c in coords.items()})

    def indices(self):
        return {basis_index(b): c for b, c in self.terms.items()}

    def __eq__(self, other):
        if not isinstance(other, OperadElement):
            return NotImplemented
        return (self.operad, self.slots, self.terms) == (other.operad, other.slots, other.terms)

    def __add__(self, other):
        terms = dict(self.terms)
        for b, c in other.terms.items():
            terms[b] = terms.get(b, 0) + c
        return OperadElement(self.operad, self.slots, terms)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return OperadElement(self.operad, self.slots,
                             {b: x * c for b, x in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return f"0 in {self.operad}(({self.slots}))"
        return " + ".join(f"{c}*{serialize(b)}" for b, c in sorted(self.terms.items()))


def unit(op):
    """The identity operation, living in arity 2."""
    return OperadElement.basis_element(_basis(check_operad(op), 2)[0])


def symmetric_action(perm, e):
    """Relabel slot j of ``e`` as ``perm[j]``."""
    perm = tuple(perm)
    if sorted(perm) != list(range(e.slots)):
        raise ValueError("not a permutation of the slots")
    out = {}
    for b, c in e.terms.items():
        for j, x in act_index(e.operad, e.slots, basis_index(b), perm).items():
            out[j] = out.get(j, 0) + c * x
    return OperadElement.from_indices(e.operad, e.slots, out)


def compose(a, out_slot, b, in_slot):
    """Operad composition gluing ``out_slot`` of ``a`` to ``in_slot`` of ``b``.

    Slot numbering of the result: surviving slots of ``a`` in order, then
    surviving slots of ``b``.
    """
    if a.operad != b.operad:
        raise ValueError("cannot compose elements of different operads")
    if not 0 <= out_slot < a.slots:
        raise SlotOutOfRange(f"slot {out_slot} not in arity {a.slots}")
    if not 0 <= in_slot < b.slots:
        raise SlotOutOfRange(f"slot {in_slot} not in arity {b.slots}")
    s = a.slots + b.slots - 2
    out = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            res = compose_index(a.operad, a.slots, basis_index(ba), out_slot,
                                b.slots, basis_index(bb), in_slot)
            for j, x in res.items():
                out[j] = out.get(j, 0) + ca * cb * x
    if s < 2:
        raise UnsupportedArity("composition would have fewer than 2 slots")
    return OperadElement.from_indices(a.operad, s, out)


def lie_normalize(trees):
    """Normalise a combination of bracket expressions rooted at slot 0.

    ``trees`` maps nested 2-tuples over the leaves ``1..s-1`` to coefficients.
    """
    out = None
    for expr, c in trees.items():
        s = len(_leaves(expr)) + 1
        if sorted(_leaves(expr)) != list(range(1, s)):
            raise ValueError("leaves must be exactly 1..s-1")
        e = OperadElement.from_indices(LIE, s, _lie_from_expr(expr, s)) * c
        if out is None:
            out = e
        elif out.slots != s:
            raise ValueError("trees with different leaf sets")
        else:
            out = out + e
    if out is None:
        raise ValueError("empty combination")
    return out


# ---------------------------------------------------------- serialization

def _expr_str(e):
    if isinstance(e, int):
        return str(e)
    return f"[{_expr_str(e[0])},{_expr_str(e[1])}]"


def serialize(b):
    if b.operad == COMM:
        return f"comm:{{{' '.join(str(i) for i in range(b.slots))}}}"
    if b.operad == ASSOC:
        return f"assoc:({' '.join(str(i) for i in b.shape)})"
    return f"lie:{_expr_str(lie_expr(b))}"


def _parse_expr(text):
    text = text.strip()
    if not text.startswith("["):
        return int(text)
    depth = 0
    for k, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "," and depth == 1:
            return (_parse_expr(text[1:k]), _parse_expr(text[k + 1:-1]))
    raise ValueError(f"cannot parse {text!r}")


def parse(text):
    """Inverse of ``serialize`` (Lie input may be any bracket expression)."""
    op, _, body = text.partition(":")
    op = check_operad(op)
    if op == COMM:
        s = len(body.strip("{} ").split())
        return OperadElement.basis_element(_basis(COMM, s)[0])
    if op == ASSOC:
        shape = tuple(int(x) for x in body.strip("() ").split())
        s = len(shape)
        if sorted(shape) != list(range(s)):
            raise ValueError("assoc shape must list every slot once")
        return OperadElement.basis_element(BasisElement(ASSOC, s, _rotate_to(shape, 0)))
    expr = _parse_expr(body)
    return lie_normalize({expr: 1})
