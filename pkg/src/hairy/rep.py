"""Symmetric group characters, Schur functor dimensions and decompositions.

A representation of Sym_s is given by the matrices of the transposition
(0 1) and the long cycle (0 1 .. s-1).  Its character on each conjugacy class
is read off from a word in these two generators, and the multiplicities of
the irreducibles P_lambda come from character inner products with the
Murnaghan-Nakayama characters.

By Schur-Weyl duality a polynomial functor F(V) = sum c_lambda S_lambda(V)
has the Sym_s-module sum c_lambda P_lambda as its multilinear part, so the
decomposition of a homology functor can be read off a single slice whose
labels are s distinct basis vectors.
"""

from collections import deque
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .linalg import Reducer, SparseMatrix, nullspace

MAX_S = 8


class NotARepresentation(ValueError):
    pass


# ------------------------------------------------------------ partitions

def partitions(s):
    """All partitions of s, largest first."""
    def rec(rest, top):
        if rest == 0:
            yield ()
            return
        for p in range(min(rest, top), 0, -1):
            for tail in rec(rest - p, p):
                yield (p,) + tail
    return list(rec(s, s))


def check_partition(lam):
    lam = tuple(lam)
    if any(p < 1 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {lam}")
    return lam


def conjugate(lam):
    lam = check_partition(lam)
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0] if lam else 0))


def hooks(lam):
    lam = check_partition(lam)
    lc = conjugate(lam)
    return [[lam[i] - j + lc[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


def specht_dim(lam):
    """dim P_lambda by the hook length formula."""
    prod = 1
    for row in hooks(lam):
        for h in row:
            prod *= h
    return factorial(sum(lam)) // prod


def schur_dim(lam, m):
    """dim S_lambda(k^m) by the hook-content formula."""
    lam = check_partition(lam)
    num, den = 1, 1
    for i, row in enumerate(hooks(lam)):
        for j, h in enumerate(row):
            num *= m + j - i
            den *= h
    return num // den


def parse_partition(text):
    """'[3,1^2]' -> (3, 1, 1)."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(f"bad partition {text!r}")
    out = []
    for part in body[1:-1].split(","):
        part = part.strip()
        if "^" in part:
            a, e = part.split("^")
            out += [int(a)] * int(e)
        elif part:
            out.append(int(part))
    return check_partition(sorted(out, reverse=True))


def format_partition(lam):
    """(3, 1, 1) -> '[3,1^2]'."""
    parts = []
    i = 0
    while i < len(lam):
        j = i
        while j < len(lam) and lam[j] == lam[i]:
            j += 1
        parts.append(str(lam[i]) if j - i == 1 else f"{lam[i]}^{j - i}")
        i = j
    return "[" + ",".join(parts) + "]"


def format_decomposition(dec):
    """{(3,1,1): 2, (4,): 1} -> '[4]+2[3,1^2]', or '0'."""
    if not dec:
        return "0"
    items = sorted(dec.items(), key=lambda kv: kv[0], reverse=True)
    return "+".join((f"{c}" if c > 1 else "") + format_partition(lam) for lam, c in items)


def parse_decomposition(text):
    text = text.replace(" ", "").replace("⊕", "+")
    if text in ("", "0"):
        return {}
    out = {}
    for term in text.split("+"):
        k = term.index("[")
        c = int(term[:k]) if k else 1
        lam = parse_partition(term[k:])
        out[lam] = out.get(lam, 0) + c
    return out


def dims_from_decomposition(dec, m):
    return sum(c * schur_dim(lam, m) for lam, c in dec.items())


# ------------------------------------------------------------ characters

def _beta(lam, n):
    """Beta numbers of lam padded to n parts."""
    lam = tuple(lam) + (0,) * (n - len(lam))
    return tuple(lam[i] + n - 1 - i for i in range(n))


@lru_cache(maxsize=None)
def _mn(beta, mu):
    """Murnaghan-Nakayama on beta numbers: remove rim hooks of sizes mu."""
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    bset = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or b - r in bset:
            continue
        # leg length = number of beta numbers strictly between b - r and b
        leg = sum(1 for x in beta if b - r < x < b)
        new = tuple(sorted((bset - {b}) | {b - r}, reverse=True))
        total += (-1) ** leg * _mn(new, rest)
    return total


def character(lam, mu):
    """chi^lam on the class of cycle type mu."""
    lam = check_partition(lam)
    mu = tuple(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError("sizes differ")
    n = len(lam)
    return _mn(_beta(lam, n), mu)


def class_size(mu):
    s = sum(mu)
    z = 1
    counts = {}
    for p in mu:
        counts[p] = counts.get(p, 0) + 1
    for p, c in counts.items():
        z *= p ** c * factorial(c)
    return factorial(s) // z


# ----------------------------------------------------------- permutations

def cycle_type(perm):
    seen = set()
    out = []
    for i in range(len(perm)):
        if i in seen:
            continue
        j, n = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def _compose(p, q):
    """p after q."""
    return tuple(p[q[i]] for i in range(len(q)))


@lru_cache(maxsize=None)
def class_words(s):
    """For each cycle type, a word in 0 = (0 1) and 1 = the long cycle."""
    if s < 1 or s > MAX_S:
        raise ValueError(f"s must be between 1 and {MAX_S}")
    if s == 1:
        return {(1,): ()}
    gens = (tuple([1, 0] + list(range(2, s))), tuple(list(range(1, s)) + [0]))
    ident = tuple(range(s))
    want = {mu for mu in partitions(s)}
    words = {cycle_type(ident): ()}
    seen = {ident: ()}
    queue = deque([ident])
    while queue and len(words) < len(want):
        p = queue.popleft()
        for g, gen in enumerate(gens):
            q = _compose(gen, p)
            if q in seen:
                continue
            seen[q] = seen[p] + (g,)
            words.setdefault(cycle_type(q), seen[q])
            queue.append(q)
    return words


# -------------------------------------------------------- dense matrices

def _dense(m):
    if isinstance(m, SparseMatrix):
        if m.rows != m.cols:
            raise NotARepresentation("action matrices must be square")
        return [[m[i, j] for j in range(m.cols)] for i in range(m.rows)]
    return [[Fraction(x) for x in row] for row in m]


def _mul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n) if a[i][k]), Fraction(0))
             for j in range(n)] for i in range(n)]


def _eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def _power(a, e):
    out = _eye(len(a))
    for _ in range(e):
        out = _mul(out, a)
    return out


def _word(gens, word, n):
    out = _eye(n)
    for g in word:
        out = _mul(out, gens[g])
    return out


def _check_relations(sigma, tau, s, n):
    """Coxeter-Moser presentation of Sym_s on (0 1) and (0 1 .. s-1)."""
    eye = _eye(n)
    if _mul(sigma, sigma) != eye:
        raise NotARepresentation("transposition does not square to 1")
    if _power(tau, s) != eye:
        raise NotARepresentation("long cycle has the wrong order")
    if s >= 2 and _power(_mul(sigma, tau), s - 1) != eye:
        raise NotARepresentation("(sigma tau)^(s-1) != 1")
    tinv = _power(tau, s - 1)
    if s >= 3 and _power(_mul(_mul(sigma, tinv), _mul(sigma, tau)), 3) != eye:
        raise NotARepresentation("braid relation fails")
    for j in range(2, s - 1):
        a = _mul(_mul(sigma, _power(tinv, j)), _mul(sigma, _power(tau, j)))
        if _mul(a, a) != eye:
            raise NotARepresentation("commuting relation fails")


def characters_of(sigma, tau, s):
    """{cycle type: trace} for the representation given by two generators."""
    a, b = _dense(sigma), _dense(tau)
    n = len(a)
    if len(b) != n:
        raise NotARepresentation("generator sizes differ")
    _check_relations(a, b, s, n)
    out = {}
    for mu, word in class_words(s).items():
        m = _word((a, b), word, n)
        out[mu] = sum((m[i][i] for i in range(n)), Fraction(0))
    return out


def decompose_characters(chars, s):
    dec = {}
    order = factorial(s)
    for lam in partitions(s):
        x = sum(class_size(mu) * chars[mu] * character(lam, mu) for mu in chars)
        x = Fraction(x, order)
        if x.denominator != 1 or x < 0:
            raise NotARepresentation(f"non-integral multiplicity {x} for {lam}")
        if x:
            dec[lam] = int(x)
    return dec


def decompose_action(gens, s):
    """Multiplicities {lambda: c} of the action given by ``gens``.

    ``gens`` are the matrices of (0 1) and (0 1 .. s-1).
    """
    sigma, tau = gens
    if s == 1:
        n = len(_dense(sigma))
        return {(1,): n} if n else {}
    chars = characters_of(sigma, tau, s)
    if not chars[(1,) * s]:
        return {}
    return decompose_characters(chars, s)


# --------------------------------------------------------- on homology

def homology_action(d_in, d_out, actions):
    """Matrices of chain maps acting on H = ker d_out / im d_in.

    ``actions`` are square SparseMatrices on the chain space that commute with
    the differentials.  Returns dense Fraction matrices, one per action.
    """
    n = d_out.cols
    bred = Reducer(d_in.col_dicts()) if d_in.cols else Reducer()
    hred = Reducer()
    for z in nullspace(d_out):
        hred.add(bred.reduce(z))
    pivots = hred.pivots
    pos = {c: i for i, c in enumerate(pivots)}

    def coords(v):
        r = bred.reduce(v)
        out = [Fraction(0)] * len(pivots)
        while r:
            c = min(r)
            x = r.pop(c)
            if c not in pos:
                raise NotARepresentation("action does not preserve cycles")
            out[pos[c]] = x
            for j, y in hred.rows[c].items():
                if j == c:
                    continue
                w = r.get(j, 0) - x * y
                if w:
                    r[j] = w
                else:
                    r.pop(j, None)
        return out

    mats = []
    for a in actions:
        if a.rows != n or a.cols != n:
            raise NotARepresentation("action of the wrong size")
        cols = [coords(a.apply(hred.rows[c])) for c in pivots]
        mats.append([[cols[j][i] for j in range(len(pivots))] for i in range(len(pivots))])
    return mats
