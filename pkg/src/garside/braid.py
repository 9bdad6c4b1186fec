"""Positive braid monoid of a finite Coxeter system in left greedy normal form.

A braid is a tuple of simple elements (root permutations of their images in
W), each nonidentity, such that every consecutive pair (a, b) is normal: each
left descent of b is a right descent of a.  The empty tuple is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .coxeter import CoxeterError, CoxeterSystem, GroupElement


class NotADivisor(CoxeterError):
    pass


def normalize_pair(W: CoxeterSystem, a: bytes, b: bytes) -> tuple[bytes, bytes]:
    """Normal form (a', b') of the product of two simples a*b."""
    N = W.N
    while True:
        for s in range(W.rank):
            # s a left descent of b but not a right descent of a
            if a[s] < N and b.index(s) >= N:
                a = W.rmul_gen(a, s)
                b = W.lmul_gen(s, b)
                break
        else:
            return a, b


def is_normal_pair(W: CoxeterSystem, a: bytes, b: bytes) -> bool:
    N = W.N
    return all(not (b.index(s) >= N and a[s] < N) for s in range(W.rank))


def _append_simple(W: CoxeterSystem, factors: list[bytes], x: bytes) -> None:
    """In place: factors <- normal form of factors * x."""
    ident = W.identity
    if x == ident:
        return
    factors.append(x)
    j = len(factors) - 1
    while j > 0:
        a, b = normalize_pair(W, factors[j - 1], factors[j])
        if a == factors[j - 1]:
            break
        factors[j - 1], factors[j] = a, b
        j -= 1
    while factors and factors[-1] == ident:
        factors.pop()


def _prepend_simple(W: CoxeterSystem, x: bytes, factors: list[bytes]) -> list[bytes]:
    """Normal form of x * factors (left domino pass)."""
    ident = W.identity
    out = []
    carry = x
    for i, f in enumerate(factors):
        if carry == ident:
            out.extend(factors[i:])
            break
        a, b = normalize_pair(W, carry, f)
        out.append(a)
        carry = b
    else:
        if carry != ident:
            out.append(carry)
    return [f for f in out if f != ident]


def weak_meet(W: CoxeterSystem, a: bytes, b: bytes) -> bytes:
    """Greatest common prefix of two elements in the right weak order."""
    u = W.identity
    while True:
        for s in range(W.rank):
            if W.is_left_descent(a, s) and W.is_left_descent(b, s):
                u = W.rmul_gen(u, s)
                a = W.lmul_gen(s, a)
                b = W.lmul_gen(s, b)
                break
        else:
            return u


def is_prefix(W: CoxeterSystem, u: bytes, w: bytes) -> bool:
    """u <= w in the right weak order, i.e. l(u^-1 w) = l(w) - l(u)."""
    return W.length(W.mul(W.inverse(u), w)) == W.length(w) - W.length(u)


@dataclass(frozen=True)
class BraidElement:
    system: CoxeterSystem
    factors: tuple[bytes, ...] = ()

    # -- constructors -------------------------------------------------------
    @classmethod
    def identity(cls, W: CoxeterSystem) -> BraidElement:
        return cls(W, ())

    @classmethod
    def simple(cls, W: CoxeterSystem, x: bytes | GroupElement) -> BraidElement:
        if isinstance(x, GroupElement):
            x = x.perm
        return cls(W, () if x == W.identity else (x,))

    @classmethod
    def from_factors(cls, W: CoxeterSystem, simples: Iterable[bytes]) -> BraidElement:
        """Normal form of a product of simples given in any order."""
        out: list[bytes] = []
        for x in simples:
            _append_simple(W, out, x)
        return cls(W, tuple(out))

    # -- basic data ---------------------------------------------------------
    def __len__(self) -> int:
        return len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    def atom_length(self) -> int:
        return sum(self.system.length(f) for f in self.factors)

    def is_identity(self) -> bool:
        return not self.factors

    def image(self) -> bytes:
        W = self.system
        w = W.identity
        for f in self.factors:
            w = W.mul(w, f)
        return w

    def word(self) -> tuple[int, ...]:
        """0-based word: concatenated lex-least reduced words of the factors."""
        out: list[int] = []
        for f in self.factors:
            out.extend(self.system.reduced_word(f))
        return tuple(out)

    def factor_words(self) -> list[str]:
        return [self.system.word_string(f) for f in self.factors]

    def __str__(self) -> str:
        return " . ".join(self.factor_words()) if self.factors else "e"

    def __repr__(self) -> str:
        return f"BraidElement({self.system.tag}, [{', '.join(self.factor_words())}])"

    def __mul__(self, other: BraidElement) -> BraidElement:
        return product(self, other)

    def sort_key(self) -> tuple:
        return (len(self.factors), tuple(self.system.sort_key(f) for f in self.factors))


# ---------------------------------------------------------------------------
# operations

def from_word(W: CoxeterSystem, word: Sequence[int] | str) -> BraidElement:
    """Braid of a word (0-based indices, or a word string using 1-based labels)."""
    if isinstance(word, str):
        word = W.parse_word(word)
    out: list[bytes] = []
    for s in word:
        if not 0 <= s < W.rank:
            raise CoxeterError(f"generator index {s} out of range")
        _append_simple(W, out, W.gens[s])
    return BraidElement(W, tuple(out))


def _check(a: BraidElement, b: BraidElement) -> CoxeterSystem:
    if a.system is not b.system:
        raise CoxeterError("braids of different systems")
    return a.system


def product(a: BraidElement, b: BraidElement) -> BraidElement:
    W = _check(a, b)
    if not b.factors:
        return a
    out = list(a.factors)
    for x in b.factors:
        _append_simple(W, out, x)
    return BraidElement(W, tuple(out))


def product_many(W: CoxeterSystem, braids: Iterable[BraidElement]) -> BraidElement:
    out: list[bytes] = []
    for b in braids:
        for x in b.factors:
            _append_simple(W, out, x)
    return BraidElement(W, tuple(out))


def head(a: BraidElement) -> GroupElement:
    if not a.factors:
        raise CoxeterError("the identity braid has no head")
    return GroupElement(a.system, a.factors[0])


def tail(a: BraidElement) -> BraidElement:
    if not a.factors:
        raise CoxeterError("the identity braid has no tail")
    return BraidElement(a.system, a.factors[1:])


def _divide_simple_left(W: CoxeterSystem, u: bytes, b: BraidElement) -> BraidElement | None:
    """u^-1 b for a simple u, or None when u does not left-divide b."""
    if u == W.identity:
        return b
    if not b.factors or not is_prefix(W, u, b.factors[0]):
        return None
    rest = W.mul(W.inverse(u), b.factors[0])
    out = [rest] if rest != W.identity else []
    for x in b.factors[1:]:
        _append_simple(W, out, x)
    return BraidElement(W, tuple(out))


def left_quotient(a: BraidElement, b: BraidElement) -> BraidElement | None:
    """c with b = a c, or None."""
    W = _check(a, b)
    current = b
    for u in a.factors:
        current = _divide_simple_left(W, u, current)
        if current is None:
            return None
    return current


def reverse(a: BraidElement) -> BraidElement:
    """Image under the anti-automorphism reversing words."""
    W = a.system
    return BraidElement.from_factors(W, (W.inverse(f) for f in reversed(a.factors)))


def divides(a: BraidElement, b: BraidElement, side: str = "left") -> bool:
    if side == "left":
        return left_quotient(a, b) is not None
    return left_quotient(reverse(a), reverse(b)) is not None


def quotient(a: BraidElement, b: BraidElement, side: str = "left") -> BraidElement:
    """Left: c with b = a c.  Right: c with b = c a."""
    if side == "left":
        c = left_quotient(a, b)
    else:
        c = left_quotient(reverse(a), reverse(b))
        c = None if c is None else reverse(c)
    if c is None:
        raise NotADivisor(f"{a} does not {side}-divide {b}")
    return c


def left_gcd(a: BraidElement, b: BraidElement) -> BraidElement:
    W = _check(a, b)
    pieces = []
    while a.factors and b.factors:
        u = weak_meet(W, a.factors[0], b.factors[0])
        if u == W.identity:
            break
        pieces.append(u)
        a = _divide_simple_left(W, u, a)
        b = _divide_simple_left(W, u, b)
    return BraidElement.from_factors(W, pieces)


def right_gcd(a: BraidElement, b: BraidElement) -> BraidElement:
    return reverse(left_gcd(reverse(a), reverse(b)))


def delta(W: CoxeterSystem, k: int = 1) -> BraidElement:
    return BraidElement(W, (W.w0,) * k)


def right_lcm(a: BraidElement, b: BraidElement) -> BraidElement:
    """Least common right multiple: smallest m with a | m and b | m on the left."""
    W = _check(a, b)
    k = max(len(a), len(b))
    D = delta(W, k)
    g = right_gcd(quotient(a, D), quotient(b, D))
    return quotient(g, D, side="right")


def left_lcm(a: BraidElement, b: BraidElement) -> BraidElement:
    return reverse(right_lcm(reverse(a), reverse(b)))


def power(a: BraidElement, n: int) -> BraidElement:
    if n < 0:
        raise CoxeterError("negative powers are not positive braids")
    out = BraidElement.identity(a.system)
    for _ in range(n):
        out = product(out, a)
    return out


def lift(W: CoxeterSystem, w: bytes | GroupElement) -> BraidElement:
    """Simple lift of a group element."""
    return BraidElement.simple(W, w)


def pi(W: CoxeterSystem, subset: Iterable[int] = None) -> BraidElement:
    """pi_I = w_I^2 lifted (0-based subset; all of S by default)."""
    wI = W.longest(subset)
    return BraidElement.from_factors(W, [wI, wI])


def apply_automorphism_perm(P: bytes, a: BraidElement) -> BraidElement:
    """Apply the automorphism given by a root permutation factor by factor."""
    W = a.system
    Pinv = W.inverse(P)
    return BraidElement(W, tuple(W.mul(W.mul(P, f), Pinv) for f in a.factors))


def apply_phi(a: BraidElement, k: int = 1) -> BraidElement:
    W = a.system
    if k % W.phi_order == 0:
        return a
    return BraidElement(W, tuple(W.apply_phi(f, k) for f in a.factors))


def apply_sigma(a: BraidElement, sigma: Sequence[int]) -> BraidElement:
    """Apply a diagram automorphism given as a permutation of S."""
    W = a.system
    return apply_automorphism_perm(W.automorphism_perm(sigma), a)


def twisted_power(b: BraidElement, d: int, k: int = 1) -> BraidElement:
    """W-part of (b phi^k)^d, namely b phi^k(b) ... phi^{k(d-1)}(b)."""
    W = b.system
    out: list[bytes] = []
    for i in range(d):
        for x in apply_phi(b, k * i).factors:
            _append_simple(W, out, x)
    return BraidElement(W, tuple(out))


def simple_divisors(W: CoxeterSystem, x: bytes) -> list[bytes]:
    """All prefixes of x in the right weak order, canonically ordered."""
    found = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for u in frontier:
            for s in range(W.rank):
                if u[s] < W.N:
                    v = W.rmul_gen(u, s)
                    if v not in found and is_prefix(W, v, x):
                        found.add(v)
                        nxt.append(v)
        frontier = nxt
    return sorted(found, key=W.sort_key)


def left_simple_divisors(b: BraidElement) -> list[bytes]:
    """Simple left divisors of b (the prefixes of its head), identity included."""
    W = b.system
    if not b.factors:
        return [W.identity]
    return simple_divisors(W, b.factors[0])
