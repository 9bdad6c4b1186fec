"""Ribbon categories: subsets of S conjugated into S by I-reduced positive braids.

Subsets are frozensets of 0-based generator indices.  Conjugation is on the
right: I^b = b^-1 I b.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from . import braid as br
from .braid import BraidElement
from .coxeter import CoxeterError, CoxeterSystem


class NotIReduced(CoxeterError):
    pass


class ConjugatesOutOfS(CoxeterError):
    pass


def subset_str(W: CoxeterSystem, subset: Iterable[int]) -> str:
    return "[" + ",".join(str(s + 1) for s in sorted(subset)) + "]"


def conjugate_subset(W: CoxeterSystem, subset: Iterable[int], x: bytes) -> frozenset[int] | None:
    """I^x = x^-1 I x when every image is a simple reflection, else None."""
    inv = W.inverse(x)
    out = set()
    for s in subset:
        t = inv[s]
        if t >= W.rank:
            return None
        out.add(t)
    return frozenset(out)


def left_conjugate_subset(W: CoxeterSystem, subset: Iterable[int], x: bytes) -> frozenset[int] | None:
    """x I x^-1, or None."""
    out = set()
    for s in subset:
        t = x[s]
        if t >= W.rank:
            return None
        out.add(t)
    return frozenset(out)


def alpha_I(subset: Iterable[int], b: BraidElement) -> tuple[BraidElement, BraidElement]:
    """(alpha_I(b), omega_I(b)): the maximal left divisor of b in B+_I and the rest."""
    W = b.system
    subset = frozenset(subset)
    pieces = []
    rest = b
    while rest.factors:
        u, _ = W.coset_decompose(rest.factors[0], subset, "left")
        if u == W.identity:
            break
        pieces.append(u)
        rest = br._divide_simple_left(W, u, rest)
    return BraidElement.from_factors(W, pieces), rest


def is_I_reduced(subset: Iterable[int], b: BraidElement) -> bool:
    W = b.system
    if not b.factors:
        return True
    return all(not W.is_left_descent(b.factors[0], s) for s in subset)


def braid_conjugate_subset(subset: Iterable[int], b: BraidElement) -> frozenset[int] | None:
    """I^b computed at braid level: for s in I, s*b = b*t with t an atom."""
    W = b.system
    out = set()
    for s in subset:
        sb = br.product(BraidElement.simple(W, W.gens[s]), b)
        t = br.left_quotient(b, sb)
        if t is None or len(t.factors) != 1 or W.length(t.factors[0]) != 1:
            return None
        out.add(W.reduced_word(t.factors[0])[0])
    return frozenset(out)


@dataclass(frozen=True)
class RibbonMorphism:
    source: frozenset[int]
    braid: BraidElement
    target: frozenset[int]

    @property
    def system(self) -> CoxeterSystem:
        return self.braid.system

    def __eq__(self, other):
        return isinstance(other, RibbonMorphism) and (self.source, self.braid) == (other.source, other.braid)

    def __hash__(self):
        return hash((self.source, self.braid))

    def __str__(self):
        W = self.system
        return f"{subset_str(W, self.source)} --{self.braid}--> {subset_str(W, self.target)}"


def make_morphism(subset: Iterable[int], b: BraidElement) -> RibbonMorphism:
    subset = frozenset(subset)
    if not is_I_reduced(subset, b):
        raise NotIReduced(f"braid {b} is not I-reduced")
    target = braid_conjugate_subset(subset, b)
    if target is None:
        raise ConjugatesOutOfS(f"braid {b} does not conjugate I into S")
    return RibbonMorphism(subset, b, target)


def identity_morphism(W: CoxeterSystem, subset: Iterable[int]) -> RibbonMorphism:
    subset = frozenset(subset)
    return RibbonMorphism(subset, BraidElement.identity(W), subset)


def compose(f: RibbonMorphism, g: RibbonMorphism) -> RibbonMorphism:
    if f.target != g.source:
        raise CoxeterError("morphisms are not composable")
    return RibbonMorphism(f.source, br.product(f.braid, g.braid), g.target)


def atom_braid(W: CoxeterSystem, subset: Iterable[int], s: int) -> bytes:
    """w_{K-{s}} w_K for K the component of s in I + {s}."""
    subset = frozenset(subset)
    (K,) = [c for c in W.components(subset | {s}) if s in c]
    rest = [t for t in K if t != s]
    return W.mul(W.longest(rest), W.longest(K))


def atoms_from(W: CoxeterSystem, subset: Iterable[int]) -> list[RibbonMorphism]:
    """Indecomposable morphisms out of I, one for each s outside I."""
    subset = frozenset(subset)
    candidates = []
    for s in range(W.rank):
        if s in subset:
            continue
        v = atom_braid(W, subset, s)
        target = conjugate_subset(W, subset, v)
        candidates.append(RibbonMorphism(subset, BraidElement.simple(W, v), target))
    atoms = []
    for m in candidates:
        v = m.braid.factors[0]
        strictly = any(o is not m and o.braid.factors[0] != v and br.is_prefix(W, o.braid.factors[0], v)
                       for o in candidates)
        if not strictly:
            atoms.append(m)
    return atoms


def garside_map(W: CoxeterSystem, subset: Iterable[int]) -> RibbonMorphism:
    """I --w_I^-1 w0--> I^{w0}."""
    subset = frozenset(subset)
    v = W.mul(W.longest(subset), W.w0)
    return RibbonMorphism(subset, BraidElement.simple(W, v), conjugate_subset(W, subset, v))


def category_normal_form(m: RibbonMorphism) -> list[RibbonMorphism]:
    """Normal form of the braid with each factor annotated by source and target."""
    W = m.system
    chain = []
    current = m.source
    for f in m.braid.factors:
        nxt = conjugate_subset(W, current, f)
        if nxt is None:
            raise ConjugatesOutOfS("normal form factor leaves S")
        chain.append(RibbonMorphism(current, BraidElement(W, (f,)), nxt))
        current = nxt
    return chain


def is_simple_morphism(m: RibbonMorphism) -> bool:
    return len(m.braid.factors) <= 1


def parabolic_split_check(subset: Iterable[int], v: BraidElement, w: RibbonMorphism) -> bool:
    """Check head multiplicativity and the factorwise recovery of the normal form of v.

    v must lie in B+_I and w must be a morphism with source I.
    """
    W = v.system
    subset = frozenset(subset)
    if w.source != subset:
        raise CoxeterError("morphism must start at I")
    if any(not W.in_parabolic(f, subset) for f in v.factors):
        raise CoxeterError("v is not in the parabolic submonoid")
    vw = br.product(v, w.braid)
    if not vw.factors:
        return not v.factors and not w.braid.factors
    # alpha(vw) = alpha(v) alpha(w)
    hv = v.factors[0] if v.factors else W.identity
    hw = w.braid.factors[0] if w.braid.factors else W.identity
    if not W.is_reduced_product(hv, hw) or vw.factors[0] != W.mul(hv, hw):
        return False
    us = list(vw.factors)
    ws = list(w.braid.factors)
    k = max(len(us), len(ws))
    us += [W.identity] * (k - len(us))
    ws += [W.identity] * (k - len(ws))
    recovered = []
    prefix = W.identity
    for u, wi in zip(us, ws):
        vi = W.mul(u, W.inverse(wi))
        if W.length(vi) + W.length(wi) != W.length(u):
            return False
        recovered.append(W.mul(W.mul(prefix, vi), W.inverse(prefix)))
        prefix = W.mul(prefix, wi)
    while recovered and recovered[-1] == W.identity:
        recovered.pop()
    return tuple(recovered) == v.factors


def orbit(W: CoxeterSystem, subset: Iterable[int]) -> list[frozenset[int]]:
    """Objects of the ribbon category containing I: closure under atoms."""
    start = frozenset(subset)
    seen = {start: None}
    queue = [start]
    i = 0
    while i < len(queue):
        J = queue[i]
        i += 1
        for m in atoms_from(W, J):
            if m.target not in seen:
                seen[m.target] = None
                queue.append(m.target)
    return sorted(queue, key=lambda J: sorted(J))
