"""Brute-force helpers shared by the test modules."""

from __future__ import annotations

from garside import braid as br
from garside.braid import BraidElement
from garside.conjcat import ConjObject, twist_braid
from garside.ribbon import conjugate_subset, is_I_reduced


def normal_sequences(W, bound: int) -> list[tuple[bytes, ...]]:
    """Every left normal form with at most ``bound`` factors."""
    simples = [x for x in W.iter_parabolic(range(W.rank)) if x != W.identity]
    out, layer = [()], [()]
    for _ in range(bound):
        layer = [f + (y,) for f in layer for y in simples if not f or br.is_normal_pair(W, f[-1], y)]
        out += layer
    return out


def conjugates_source(W, source, factors) -> bool:
    J = source
    for f in factors:
        J = conjugate_subset(W, J, f)
        if J is None:
            return False
    return True


def ad_conjugators(obj: ConjObject, seqs) -> list[BraidElement]:
    """Braids x with x^-1 w sigma(x) positive (ribbon condition on the source)."""
    W = obj.system
    found = []
    for f in seqs:
        x = BraidElement(W, f)
        if obj.source and not (is_I_reduced(obj.source, x) and conjugates_source(W, obj.source, f)):
            continue
        if br.divides(x, br.product(obj.braid, twist_braid(obj, x))):
            found.append(x)
    return found
