"""Cyclic (twisted) conjugacy categories of positive braids and ribbon morphisms.

An object is a braid w together with a source subset I and a diagram
automorphism sigma, standing for the endomorphism-like datum
I --w--> sigma(I).  A simple conjugator v (a simple left divisor of w with
I^v inside S) moves it to v^-1 w sigma(v).
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import braid as br
from .braid import BraidElement, NotADivisor
from .coxeter import CoxeterSystem
from .ribbon import conjugate_subset, subset_str


@dataclass(frozen=True)
class ConjObject:
    braid: BraidElement
    source: frozenset[int] = frozenset()
    sigma: tuple[int, ...] | None = None

    @property
    def system(self) -> CoxeterSystem:
        return self.braid.system

    @property
    def twist(self) -> tuple[int, ...]:
        return self.sigma if self.sigma is not None else tuple(range(self.system.rank))

    def key(self) -> tuple:
        return (self.source, self.braid.factors)

    def label(self) -> str:
        W = self.system
        word = W.format_word(self.braid.word()) if self.braid.factors else "e"
        return word if not self.source else f"{subset_str(W, self.source)}{word}"


def twist_braid(obj: ConjObject, v: BraidElement) -> BraidElement:
    if obj.sigma is None or list(obj.sigma) == list(range(obj.system.rank)):
        return v
    return br.apply_sigma(v, obj.sigma)


def cyc_step(obj: ConjObject, v: BraidElement) -> ConjObject:
    """The object v^-1 w sigma(v), for v a left divisor of w."""
    W = obj.system
    rest = br.left_quotient(v, obj.braid)
    if rest is None:
        raise NotADivisor(f"{v} does not left-divide {obj.braid}")
    source = obj.source
    for f in v.factors:
        source = conjugate_subset(W, source, f)
        if source is None:
            raise NotADivisor(f"{v} does not conjugate the source into S")
    return ConjObject(br.product(rest, twist_braid(obj, v)), source, obj.sigma)


def simple_conjugators(obj: ConjObject) -> list[BraidElement]:
    """Nonidentity simple left divisors v of w with I^v inside S, canonically ordered."""
    W = obj.system
    out = []
    for x in br.left_simple_divisors(obj.braid):
        if x == W.identity:
            continue
        if obj.source and conjugate_subset(W, obj.source, x) is None:
            continue
        out.append(BraidElement(W, (x,)))
    return out


@dataclass
class CategoryGraph:
    system: CoxeterSystem
    nodes: list[ConjObject]
    edges: list[tuple[int, int, BraidElement, bool]]
    fixed_under: tuple[int, ...] | None = None
    complete: bool = True
    index: dict = field(default_factory=dict, repr=False)

    def node_words(self) -> list[str]:
        return [n.label() for n in self.nodes]

    def edge_relation_holds(self, edge) -> bool:
        """x w' = w sigma(x) at braid level."""
        i, j, x, _ = edge
        a, b = self.nodes[i], self.nodes[j]
        return br.product(x, b.braid) == br.product(a.braid, twist_braid(a, x))


def _is_fixed(v: BraidElement, sigma: Sequence[int] | None) -> bool:
    if sigma is None:
        return True
    return br.apply_sigma(v, sigma) == v


def explore_component(start: ConjObject, fixed_under: Sequence[int] | None = None,
                      max_nodes: int = 10**6) -> CategoryGraph:
    """Breadth-first closure under simple cyclic conjugations.

    With ``fixed_under`` (a permutation of S) only conjugators fixed by that
    diagram automorphism are used.
    """
    W = start.system
    fixed = None if fixed_under is None else tuple(fixed_under)
    nodes = [start]
    index = {start.key(): 0}
    edges = []
    complete = True
    queue = deque([0])
    while queue:
        i = queue.popleft()
        obj = nodes[i]
        for v in simple_conjugators(obj):
            if not _is_fixed(v, fixed):
                continue
            new = cyc_step(obj, v)
            j = index.get(new.key())
            if j is None:
                if len(nodes) >= max_nodes:
                    complete = False
                    continue
                j = len(nodes)
                index[new.key()] = j
                nodes.append(new)
                queue.append(j)
            edges.append((i, j, v, True))
    return CategoryGraph(W, nodes, edges, fixed, complete, index)


def paths_within(graph: CategoryGraph, start: int, max_canonical_length: int) -> dict[tuple, set[tuple]]:
    """All conjugators obtained by composing edges from ``start``.

    Returns a map from node key to the set of conjugator factor tuples whose
    canonical length is at most the bound.  Canonical length never decreases
    along a composite, so pruning by it is exact.
    """
    W = graph.system
    out_edges: dict[int, list] = {}
    for i, j, v, _ in graph.edges:
        out_edges.setdefault(i, []).append((j, v))
    ident = BraidElement.identity(W)
    seen = {(start, ident.factors)}
    queue = deque([(start, ident)])
    while queue:
        i, acc = queue.popleft()
        for j, v in out_edges.get(i, []):
            nxt = br.product(acc, v)
            if len(nxt.factors) > max_canonical_length:
                continue
            state = (j, nxt.factors)
            if state not in seen:
                seen.add(state)
                queue.append((j, nxt))
    result: dict[tuple, set[tuple]] = {}
    for j, factors in seen:
        result.setdefault(graph.nodes[j].key(), set()).add(factors)
    return result


def endo_generators(obj: ConjObject, length_bound: int, fixed_under: Sequence[int] | None = None,
                    max_nodes: int = 10**6) -> list[BraidElement]:
    """Indecomposable endomorphisms of obj of canonical length <= bound.

    Endomorphisms are loops at obj in the explored component; an endomorphism
    is indecomposable when it is not a product of two nonidentity
    endomorphisms.
    """
    graph = explore_component(obj, fixed_under, max_nodes)
    loops = paths_within(graph, 0, length_bound).get(obj.key(), set())
    W = obj.system
    endos = sorted((BraidElement(W, f) for f in loops if f), key=BraidElement.sort_key)
    endo_set = {e.factors for e in endos}
    gens = []
    for e in endos:
        decomposable = False
        for d in endos:
            if d.factors == e.factors:
                continue
            q = br.left_quotient(d, e)
            if q is not None and q.factors and q.factors in endo_set:
                decomposable = True
                break
        if not decomposable:
            gens.append(e)
    return gens


def in_cyc(obj: ConjObject, x: BraidElement) -> bool:
    """Whether x is a composite of simple cyclic conjugations starting at obj.

    Peels off the left gcd with the current braid; cyclic conjugators are
    closed under left gcd and right quotient, so this is a decision
    procedure.
    """
    current = obj
    while x.factors:
        u = br.left_gcd(x, current.braid)
        if not u.factors:
            return False
        source = current.source
        for f in u.factors:
            source = conjugate_subset(current.system, source, f)
            if source is None:
                return False
        current = cyc_step(current, u)
        x = br.quotient(u, x)
    return True


def gcd_in_cyc(x: BraidElement, y: BraidElement) -> BraidElement:
    return br.left_gcd(x, y)


def to_dot(graph: CategoryGraph, name: str = "component") -> str:
    lines = [f"digraph {name} {{"]
    for i, n in enumerate(graph.nodes):
        lines.append(f'  n{i} [label="{n.label()}"];')
    W = graph.system
    for i, j, v, simple in graph.edges:
        style = "" if simple else ", style=dashed"
        lines.append(f'  n{i} -> n{j} [label="{W.format_word(v.word())}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(graph: CategoryGraph) -> dict:
    W = graph.system
    return {
        "nodes": [{"source": [s + 1 for s in sorted(n.source)], "word": W.format_word(n.braid.word())}
                  for n in graph.nodes],
        "edges": [{"from": i, "to": j, "conjugator": W.format_word(v.word()), "simple": simple}
                  for i, j, v, simple in graph.edges],
        "complete": graph.complete,
    }


def emit_json(graph: CategoryGraph) -> str:
    return json.dumps(to_json(graph), sort_keys=True)
