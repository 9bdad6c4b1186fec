"""Independent oracles and topology evidence.

The normal form oracle never touches the greedy machinery of the braid
module: it closes a word under braid relations, reads simple left divisors
off the prefixes of the equivalent words, and peels off the longest one.

The decomposition poset E(g) collects every factorization of g into
nonidentity simples, ordered by refinement.  Connectivity and vanishing of
rational H1 of its order complex are checked from boundary matrix ranks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import braid as br
from .braid import BraidElement
from .coxeter import CoxeterError, CoxeterSystem

DEFAULT_WORD_BOUND = 10
DEFAULT_ATOM_BOUND = 8


class BoundExceeded(CoxeterError):
    pass


# ---------------------------------------------------------------------------
# normal form oracle

def _relations(W: CoxeterSystem) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Both sides of every braid relation s t s ... = t s t ... ."""
    out = []
    for s in range(W.rank):
        for t in range(s + 1, W.rank):
            m = int(W.coxeter_matrix[s, t])
            left = tuple(s if i % 2 == 0 else t for i in range(m))
            right = tuple(t if i % 2 == 0 else s for i in range(m))
            out.append((left, right))
            out.append((right, left))
    return out


def word_class(W: CoxeterSystem, word: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """All positive words equal to ``word`` in the braid monoid."""
    rels = _relations(W)
    start = tuple(word)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for lhs, rhs in rels:
            m = len(lhs)
            for i in range(len(w) - m + 1):
                if w[i:i + m] == lhs:
                    v = w[:i] + rhs + w[i + m:]
                    if v not in seen:
                        seen.add(v)
                        queue.append(v)
    return frozenset(seen)


def _is_reduced_word(W: CoxeterSystem, word: Sequence[int]) -> bytes | None:
    x = W.identity
    for s in word:
        if W.is_right_descent(x, s):
            return None
        x = W.rmul_gen(x, s)
    return x


def oracle_normal_form(W: CoxeterSystem, word: Sequence[int] | str,
                       bound: int = DEFAULT_WORD_BOUND) -> BraidElement:
    """Left greedy normal form by exhaustive rewriting and divisor enumeration."""
    if isinstance(word, str):
        word = W.parse_word(word)
    word = tuple(word)
    if len(word) > bound:
        raise BoundExceeded(f"word length {len(word)} exceeds the oracle bound {bound}")
    factors = []
    cls = word_class(W, word)
    while cls and len(next(iter(cls))) > 0:
        # every simple left divisor shows up as a reduced prefix of some equivalent word
        divisors: dict[bytes, int] = {}
        for w in cls:
            x = W.identity
            for i, s in enumerate(w):
                if W.is_right_descent(x, s):
                    break
                x = W.rmul_gen(x, s)
                divisors[x] = i + 1
        head = max(divisors, key=lambda x: (divisors[x], W.sort_key(x)))
        # the head must be divisible by every divisor: check it is the lcm
        for x in divisors:
            if W.length(W.mul(W.inverse(x), head)) != W.length(head) - W.length(x):
                raise CoxeterError("simple left divisors have no common multiple among them")
        k = divisors[head]
        cls = frozenset(w[k:] for w in cls if _is_reduced_word(W, w[:k]) == head)
        factors.append(head)
    return BraidElement(W, tuple(factors))


# ---------------------------------------------------------------------------
# decomposition poset

@dataclass
class DecompositionPoset:
    braid: BraidElement
    elements: list[tuple[bytes, ...]]
    covers: list[tuple[int, int]] = field(default_factory=list)

    @property
    def system(self) -> CoxeterSystem:
        return self.braid.system

    def words(self) -> list[tuple[str, ...]]:
        W = self.system
        return [tuple(W.word_string(x) for x in e) for e in self.elements]

    def less(self, i: int, j: int) -> bool:
        """elements[j] strictly refines elements[i]."""
        return i != j and refines(self.system, self.elements[j], self.elements[i])

    def maximal(self) -> list[int]:
        W = self.system
        return [i for i, e in enumerate(self.elements) if all(W.length(x) == 1 for x in e)]

    def minimal(self) -> list[int]:
        has_lower = {j for _, j in self.covers}
        return [i for i in range(len(self.elements)) if i not in has_lower]


def refines(W: CoxeterSystem, fine: Sequence[bytes], coarse: Sequence[bytes]) -> bool:
    """Whether ``fine`` groups into consecutive blocks with reduced products ``coarse``."""
    i = 0
    for x in coarse:
        acc = W.identity
        while acc != x:
            if i == len(fine) or not W.is_reduced_product(acc, fine[i]):
                return False
            acc = W.mul(acc, fine[i])
            i += 1
            if W.length(acc) > W.length(x):
                return False
    return i == len(fine)


def _factorizations(b: BraidElement) -> list[tuple[bytes, ...]]:
    W = b.system
    memo: dict[tuple[bytes, ...], list[tuple[bytes, ...]]] = {}

    def rec(c: BraidElement) -> list[tuple[bytes, ...]]:
        if not c.factors:
            return [()]
        if c.factors in memo:
            return memo[c.factors]
        out = []
        for x in br.left_simple_divisors(c):
            if x == W.identity:
                continue
            rest = br._divide_simple_left(W, x, c)
            out.extend((x,) + tail for tail in rec(rest))
        memo[c.factors] = out
        return out

    return rec(b)


def _splits(W: CoxeterSystem, x: bytes) -> list[tuple[bytes, bytes]]:
    return [(y, W.mul(W.inverse(y), x)) for y in br.simple_divisors(W, x)
            if y != W.identity and y != x]


def decomposition_poset(g: BraidElement, bound: int = DEFAULT_ATOM_BOUND) -> DecompositionPoset:
    """Factorizations of g into nonidentity simples, with single-split covers."""
    W = g.system
    if g.atom_length() > bound:
        raise BoundExceeded(f"atom length {g.atom_length()} exceeds the poset bound {bound}")
    elements = sorted(_factorizations(g), key=lambda e: (len(e), [W.sort_key(x) for x in e]))
    index = {e: i for i, e in enumerate(elements)}
    covers = []
    for i, e in enumerate(elements):
        for k, x in enumerate(e):
            for y, z in _splits(W, x):
                j = index[e[:k] + (y, z) + e[k + 1:]]
                covers.append((i, j))
    return DecompositionPoset(g, elements, sorted(set(covers)))


# ---------------------------------------------------------------------------
# homology

def rational_rank(rows: list[dict[int, int]]) -> int:
    """Rank over Q of a sparse integer matrix given by rows."""
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            col = min(r)
            if col not in pivots:
                pivots[col] = r
                rank += 1
                break
            p = pivots[col]
            f = r[col] / p[col]
            for c, v in p.items():
                nv = r.get(c, 0) - f * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
    return rank


def _components(n: int, edges: list[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(a) for a in range(n)})


def check_simply_connected_evidence(poset: DecompositionPoset) -> dict:
    """Connectivity and rank of H1(order complex; Q) from its 2-skeleton."""
    n = len(poset.elements)
    below = {j: set() for j in range(n)}
    for i in range(n):
        for j in range(n):
            if poset.less(i, j):
                below[j].add(i)
    edges = sorted((i, j) for j in range(n) for i in below[j])
    edge_index = {e: k for k, e in enumerate(edges)}
    triangles = [(i, j, k) for k in range(n) for j in below[k] for i in below[j]]
    d1 = [{i: -1, j: 1} for i, j in edges]
    d2 = [{edge_index[(j, k)]: 1, edge_index[(i, k)]: -1, edge_index[(i, j)]: 1} for i, j, k in triangles]
    r1 = rational_rank(d1)
    r2 = rational_rank(d2)
    components = _components(n, edges)
    h1 = len(edges) - r1 - r2
    return {"connected": components == 1, "components": components, "h1_rank": h1,
            "vertices": n, "edges": len(edges), "triangles": len(triangles)}


def braids_up_to(W: CoxeterSystem, max_atoms: int) -> list[BraidElement]:
    """All positive braids of atom length at most max_atoms, canonically sorted."""
    seen = {(): BraidElement.identity(W)}
    layer = [BraidElement.identity(W)]
    for _ in range(max_atoms):
        nxt = []
        for b in layer:
            for s in range(W.rank):
                c = br.product(b, BraidElement.simple(W, W.gens[s]))
                if c.factors not in seen:
                    seen[c.factors] = c
                    nxt.append(c)
        layer = nxt
    return sorted(seen.values(), key=lambda b: (b.atom_length(), b.sort_key()))


def all_words(rank: int, max_length: int) -> list[tuple[int, ...]]:
    return [w for L in range(max_length + 1) for w in product(range(rank), repeat=L)]
