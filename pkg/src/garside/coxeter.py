"""Finite Coxeter groups acting on their root systems.

An element of W is stored as the permutation it induces on the signed root
list, packed into a ``bytes`` object of length 2N (N = number of positive
roots).  Indices ``0..N-1`` are the positive roots, simple roots first, and
index ``i + N`` is the negative of root ``i``.  ``perm[i]`` is the index of
``w(root_i)``, so composition is ``(a*b)(x) = a(b(x))``.  Composition is a
single ``bytes.translate`` call, which keeps class enumeration in E6/E7
affordable in pure Python.

Coefficients of roots are exact: integers for crystallographic types and
elements of Z[tau] (tau the golden ratio) for H3, H4 and I2(5).  General
dihedral groups use the angle model, where root ``k`` sits at angle k*pi/m.
"""

from __future__ import annotations

import copy
import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

TAU = (1 + math.sqrt(5)) / 2


class CoxeterError(ValueError):
    """Base class of all domain errors raised by the package."""


class ParseError(CoxeterError):
    pass


class UnknownTypeError(ParseError):
    pass


class EnumerationLimitError(CoxeterError):
    pass


# ---------------------------------------------------------------------------
# exact coefficients for the golden types

@dataclass(frozen=True, slots=True)
class GoldenInt:
    """The number a + b*tau with tau**2 = tau + 1."""

    a: int
    b: int = 0

    @staticmethod
    def coerce(x) -> GoldenInt:
        return x if isinstance(x, GoldenInt) else GoldenInt(int(x), 0)

    def __add__(self, other):
        o = GoldenInt.coerce(other)
        return GoldenInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return GoldenInt(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-GoldenInt.coerce(other))

    def __rsub__(self, other):
        return GoldenInt.coerce(other) - self

    def __mul__(self, other):
        o = GoldenInt.coerce(other)
        bd = self.b * o.b
        return GoldenInt(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def __float__(self):
        return self.a + self.b * TAU

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        return f"{self.a}{self.b:+d}t"


# ---------------------------------------------------------------------------
# descriptors and diagram data

@dataclass(frozen=True)
class TypeTag:
    letter: str
    rank: int
    twist: int = 1
    m: int | None = None

    def __str__(self):
        head = str(self.twist) if self.twist > 1 else ""
        if self.letter == "I":
            return f"{head}I2({self.m})"
        return f"{head}{self.letter}{self.rank}"


_DESCRIPTOR = re.compile(r"^(?P<twist>\d)?(?:I2\((?P<m>\d+)\)|(?P<letter>[A-Z])(?P<rank>\d+))$")
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,), "H": (3, 4)}


def parse_descriptor(text: str) -> TypeTag:
    match = _DESCRIPTOR.match(text.strip())
    if not match:
        raise UnknownTypeError(f"cannot parse type descriptor {text!r}")
    twist = int(match["twist"] or 1)
    if match["m"] is not None:
        m = int(match["m"])
        if m < 2:
            raise UnknownTypeError(f"I2({m}) needs m >= 2")
        tag = TypeTag("I", 2, twist, m)
    else:
        letter, rank = match["letter"], int(match["rank"])
        if letter not in "ABDEFGH":
            raise UnknownTypeError(f"unknown Coxeter type letter {letter!r}")
        if letter in _EXCEPTIONAL and rank not in _EXCEPTIONAL[letter]:
            raise UnknownTypeError(f"no exceptional type {letter}{rank}")
        minimum = {"A": 1, "B": 2, "D": 4}.get(letter, 1)
        if rank < minimum:
            raise UnknownTypeError(f"{letter}{rank}: rank below {minimum}")
        tag = TypeTag(letter, rank, twist)
    if twist not in _twists_available(tag):
        raise UnknownTypeError(f"no diagram automorphism of order {twist} for {text}")
    return tag


def _twists_available(tag: TypeTag) -> tuple[int, ...]:
    letter, n = tag.letter, tag.rank
    if letter == "A":
        return (1, 2) if n >= 2 else (1,)
    if letter == "B":
        return (1, 2) if n == 2 else (1,)
    if letter == "D":
        return (1, 2, 3) if n == 4 else (1, 2)
    if letter == "E":
        return (1, 2) if n == 6 else (1,)
    if letter in "FGI":
        return (1, 2)
    return (1,)


def coxeter_edges(tag: TypeTag) -> list[tuple[int, int, int]]:
    """Edges (i, j, m) of the Coxeter graph, 1-based, with m > 2."""
    letter, n = tag.letter, tag.rank
    if letter == "A":
        return [(i, i + 1, 3) for i in range(1, n)]
    if letter == "B":
        return [(1, 2, 4)] + [(i, i + 1, 3) for i in range(2, n)]
    if letter == "D":
        return [(1, 3, 3), (2, 3, 3)] + [(i, i + 1, 3) for i in range(3, n)]
    if letter == "E":
        chain = [(1, 3, 3)] + [(i, i + 1, 3) for i in range(3, n)]
        return chain + [(2, 4, 3)]
    if letter == "F":
        return [(1, 2, 3), (2, 3, 4), (3, 4, 3)]
    if letter == "G":
        return [(1, 2, 6)]
    if letter == "H":
        return [(1, 2, 5)] + [(i, i + 1, 3) for i in range(2, n)]
    if letter == "I":
        return [(1, 2, tag.m)] if tag.m > 2 else []
    raise UnknownTypeError(letter)


def _squared_lengths(tag: TypeTag) -> list[int]:
    n = tag.rank
    if tag.letter == "B":
        return [1] + [2] * (n - 1)
    if tag.letter == "F":
        return [2, 2, 1, 1]
    if tag.letter == "G":
        return [2, 6]
    return [2] * n if tag.letter in "ADE" else [1] * n


def _twist_permutation(tag: TypeTag) -> tuple[int, ...]:
    n = tag.rank
    ident = list(range(n))
    if tag.twist == 1:
        return tuple(ident)
    letter = tag.letter
    if letter == "A":
        return tuple(n - 1 - i for i in ident)
    if letter == "D" and tag.twist == 2:
        return tuple([1, 0] + ident[2:])
    if letter == "D":
        # s1 -> s2 -> s4 -> s1
        return (1, 3, 2, 0)
    if letter == "E":
        return (5, 1, 4, 3, 2, 0)
    if letter == "F":
        return (3, 2, 1, 0)
    return (1, 0)


def degrees_of(letter: str, rank: int, m: int | None = None) -> list[int]:
    """Reflection degrees.  For D_n the Pfaffian degree n is listed last."""
    n = rank
    if letter == "A":
        return list(range(2, n + 2))
    if letter == "B":
        return list(range(2, 2 * n + 1, 2))
    if letter == "D":
        return list(range(2, 2 * n - 1, 2)) + [n]
    table = {
        ("E", 6): [2, 5, 6, 8, 9, 12],
        ("E", 7): [2, 6, 8, 10, 12, 14, 18],
        ("E", 8): [2, 8, 12, 14, 18, 20, 24, 30],
        ("F", 4): [2, 6, 8, 12],
        ("G", 2): [2, 6],
        ("H", 3): [2, 6, 10],
        ("H", 4): [2, 12, 20, 30],
    }
    if letter == "I":
        return [2, m]
    return list(table[(letter, n)])


def factor_exponents(letter: str, rank: int, order: int, m: int | None = None) -> list[Fraction]:
    """Factors eps_i = exp(2 pi i x_i) of a diagram automorphism of the given order.

    Aligned with ``degrees_of``.  Only the order matters: every finite
    irreducible type has at most one diagram automorphism of each order up to
    conjugacy.
    """
    degs = degrees_of(letter, rank, m)
    zero = [Fraction(0)] * len(degs)
    if order == 1:
        return zero
    half = Fraction(1, 2)
    if letter == "A":
        return [Fraction(d % 2, 2) for d in degs]
    if letter == "D" and order == 2:
        return zero[:-1] + [half]
    if letter == "D" and order == 3:
        # degrees 2, 4, 6, 4 with factors 1, zeta3, 1, zeta3^2
        return [Fraction(0), Fraction(1, 3), Fraction(0), Fraction(2, 3)]
    if letter == "E":
        return [half if d in (5, 9) else Fraction(0) for d in degs]
    if letter == "F":
        return [Fraction(0), half, Fraction(0), half]
    if letter in "BGI":
        return [Fraction(0), half]
    raise UnknownTypeError(f"no automorphism of order {order} on {letter}{rank}")


def classify_component(cmat: np.ndarray) -> tuple[str, int, int | None]:
    """Recognise a connected Coxeter matrix; returns (letter, rank, m)."""
    n = len(cmat)
    if n == 1:
        return ("A", 1, None)
    edges = {(i, j): int(cmat[i][j]) for i in range(n) for j in range(i + 1, n) if cmat[i][j] != 2}
    if n == 2:
        m = edges[(0, 1)]
        return {3: ("A", 2, None), 4: ("B", 2, None), 6: ("G", 2, None)}.get(m, ("I", 2, m))
    degree = [0] * n
    for i, j in edges:
        degree[i] += 1
        degree[j] += 1
    labels = sorted(edges.values())
    if max(degree) <= 2:
        if labels == [3] * (n - 1):
            return ("A", n, None)
        ends = [i for i in range(n) if degree[i] == 1]
        special = [e for e, m in edges.items() if m > 3]
        (e,) = special
        m = edges[e]
        at_end = any(k in ends for k in e)
        if m == 4 and at_end:
            return ("B", n, None)
        if m == 4 and n == 4:
            return ("F", 4, None)
        if m == 5 and at_end and n in (3, 4):
            return ("H", n, None)
        raise UnknownTypeError("not a finite Coxeter graph")
    if labels != [3] * (n - 1):
        raise UnknownTypeError("not a finite Coxeter graph")
    (centre,) = [i for i in range(n) if degree[i] == 3]
    arms = []
    for start in [j for j in range(n) if (min(centre, j), max(centre, j)) in edges]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [k for k in range(n) if k != prev and (min(cur, k), max(cur, k)) in edges]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return ("D", n, None)
    if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
        return ("E", n, None)
    raise UnknownTypeError("not a finite Coxeter graph")


# ---------------------------------------------------------------------------
# root system construction

def _cartan(cmat: np.ndarray, sqlen: Sequence[int], golden: bool):
    n = len(cmat)
    one = GoldenInt(1) if golden else 1
    cartan = [[0 * one for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            m = int(cmat[i][j])
            if i == j:
                cartan[i][j] = 2 * one
            elif m == 2:
                continue
            elif m == 5:
                cartan[i][j] = GoldenInt(0, -1)
            else:
                # A_ij**2 = 4 cos^2(pi/m) L_j / L_i
                sq = round(4 * math.cos(math.pi / m) ** 2 * sqlen[j] / sqlen[i])
                cartan[i][j] = -math.isqrt(sq) * one
    return cartan


def _roots_from_cartan(cartan) -> tuple[list[tuple], list[list[int]]]:
    """Positive roots (ordered by height) and the signed action of each generator."""
    n = len(cartan)
    zero = cartan[0][0] * 0
    simple = [tuple(cartan[0][0] * 0 + (1 if k == i else 0) for k in range(n)) for i in range(n)]
    roots = list(simple)
    index = {r: i for i, r in enumerate(roots)}
    k = 0
    while k < len(roots):
        beta = roots[k]
        for i in range(n):
            if k == i:
                continue
            c = sum((cartan[i][j] * beta[j] for j in range(n)), zero)
            new = beta[:i] + (beta[i] - c,) + beta[i + 1:]
            if new not in index:
                index[new] = len(roots)
                roots.append(new)
        k += 1
    roots.sort(key=lambda r: (round(sum(float(c) for c in r), 9), tuple(-float(c) for c in r)))
    index = {r: i for i, r in enumerate(roots)}
    N = len(roots)
    gens = []
    for i in range(n):
        row = [0] * (2 * N)
        for k, beta in enumerate(roots):
            if k == i:
                row[k] = N + i
            else:
                c = sum((cartan[i][j] * beta[j] for j in range(n)), zero)
                row[k] = index[beta[:i] + (beta[i] - c,) + beta[i + 1:]]
            row[k + N] = (row[k] + N) % (2 * N)
        gens.append(row)
    return roots, gens


def _dihedral_roots(m: int) -> tuple[np.ndarray, list[list[int]]]:
    # angle index of our positive root i
    angles = [0, m - 1] + list(range(1, m - 1))
    where = {a: i for i, a in enumerate(angles)}
    N = m

    def index_of(angle):
        angle %= 2 * m
        return where[angle] if angle < m else where[angle - m] + N

    gens = []
    for j in (0, 1):
        theta = angles[j]
        row = [0] * (2 * N)
        for i, a in enumerate(angles):
            row[i] = index_of(2 * theta + m - a)
            row[i + N] = index_of(2 * theta - a)
        gens.append(row)
    vecs = np.array([[math.cos(a * math.pi / m), math.sin(a * math.pi / m)] for a in angles])
    basis = vecs[:2].T
    coeffs = np.linalg.solve(basis, vecs.T).T
    coeffs[np.abs(coeffs) < 1e-13] = 0.0
    return coeffs, gens


# ---------------------------------------------------------------------------
# the system

class CoxeterSystem:
    """A finite Coxeter system together with a diagram automorphism phi.

    Raw elements are ``bytes`` root permutations (see module docstring).  The
    public wrappers ``GroupElement`` and ``TwistedElement`` are thin views.
    """

    def __init__(self, tag, coxeter_matrix, gram, coeffs, gens, sigma=None,
                 degrees=None, factors=None, exact_roots=None):
        self.tag = tag
        self.coxeter_matrix = np.asarray(coxeter_matrix, dtype=int)
        self.rank = r = len(self.coxeter_matrix)
        self.gram = np.asarray(gram, dtype=float)
        self.coeffs = np.asarray(coeffs, dtype=float)
        self.N = N = len(self.coeffs)
        if 2 * N > 256:
            raise CoxeterError("root system too large for byte permutations")
        self.exact_roots = exact_roots
        self.gens = [bytes(g) for g in gens]
        self.identity = bytes(range(2 * N))
        self._tail = bytes(range(2 * N, 256))
        self._negmask = bytes(0 if i < N else 1 for i in range(256))
        self.sigma = tuple(range(r)) if sigma is None else tuple(sigma)
        self._check_sigma(self.sigma)
        self.degrees = list(degrees) if degrees is not None else None
        self.factors = list(factors) if factors is not None else None
        self._parents = self._root_parents()
        self.phi = self.automorphism_perm(self.sigma)
        self.phi_inv = self.inverse(self.phi)
        self._padded_gens = [g + self._tail for g in self.gens]
        lengths = np.sqrt(np.diag(self.gram))
        self.sqlen = np.diag(self.gram)
        self._euclid = np.linalg.cholesky(self.gram).T  # columns: simple roots
        self._euclid_inv = np.linalg.inv(self._euclid)
        scal = np.array([lengths[j] / lengths[self.sigma[j]] for j in range(r)])
        phimat = np.zeros((r, r))
        for j in range(r):
            phimat[self.sigma[j], j] = scal[j]
        self._phimat = phimat

    # -- construction helpers ------------------------------------------------
    def _check_sigma(self, sigma):
        r = self.rank
        if sorted(sigma) != list(range(r)):
            raise CoxeterError(f"{sigma} is not a permutation of the generators")
        c = self.coxeter_matrix
        for i in range(r):
            for j in range(r):
                if c[sigma[i]][sigma[j]] != c[i][j]:
                    raise CoxeterError(f"{sigma} is not a diagram automorphism")

    def _root_parents(self):
        N, r = self.N, self.rank
        parent = {i: None for i in range(r)}
        queue = deque(range(r))
        while queue:
            j = queue.popleft()
            for i in range(r):
                t = self.gens[i][j]
                if t < N and t not in parent:
                    parent[t] = (i, j)
                    queue.append(t)
        if len(parent) != N:
            raise CoxeterError("root system is not generated by the simple roots")
        order = list(parent)
        return [(k, parent[k]) for k in order]

    def automorphism_perm(self, sigma: Sequence[int]) -> bytes:
        """Root permutation induced by a diagram automorphism of S."""
        N = self.N
        P = [0] * (2 * N)
        for k, par in self._parents:
            if par is None:
                P[k] = sigma[k]
            else:
                i, j = par
                P[k] = self.gens[sigma[i]][P[j]]
        for k in range(N):
            P[k + N] = (P[k] + N) % (2 * N)
        return bytes(P)

    def with_automorphism(self, sigma: Sequence[int], factors=None) -> CoxeterSystem:
        """The same group paired with another diagram automorphism."""
        sigma = tuple(sigma)
        other = copy.copy(self)
        other.__dict__.pop("phi_order", None)
        other._check_sigma(sigma)
        other.sigma = sigma
        other.phi = other.automorphism_perm(sigma)
        other.phi_inv = other.inverse(other.phi)
        lengths = np.sqrt(np.diag(self.gram))
        phimat = np.zeros((self.rank, self.rank))
        for j in range(self.rank):
            phimat[sigma[j], j] = lengths[j] / lengths[sigma[j]]
        other._phimat = phimat
        other.factors = factors if factors is not None else other._infer_factors(sigma)
        if isinstance(self.tag, TypeTag):
            other.tag = TypeTag(self.tag.letter, self.tag.rank, other.phi_order, self.tag.m)
        return other

    def _infer_factors(self, sigma):
        if not isinstance(self.tag, TypeTag):
            return None
        order = 1
        p = list(range(self.rank))
        while True:
            p = [sigma[i] for i in p]
            if p == list(range(self.rank)):
                break
            order += 1
        return factor_exponents(self.tag.letter, self.tag.rank, order, self.tag.m)

    # -- raw element arithmetic ------------------------------------------------
    def mul(self, a: bytes, b: bytes) -> bytes:
        """Composition a*b (b acts first)."""
        return b.translate(a + self._tail)

    def inverse(self, a: bytes) -> bytes:
        return bytes.maketrans(a, self.identity)[: 2 * self.N]

    def length(self, a: bytes) -> int:
        return a[: self.N].translate(self._negmask).count(1)

    def right_descents(self, a: bytes) -> frozenset[int]:
        N = self.N
        return frozenset(s for s in range(self.rank) if a[s] >= N)

    def left_descents(self, a: bytes) -> frozenset[int]:
        N = self.N
        return frozenset(s for s in range(self.rank) if a.index(s) >= N)

    def is_left_descent(self, a: bytes, s: int) -> bool:
        return a.index(s) >= self.N

    def is_right_descent(self, a: bytes, s: int) -> bool:
        return a[s] >= self.N

    def lmul_gen(self, s: int, a: bytes) -> bytes:
        return a.translate(self._padded_gens[s])

    def rmul_gen(self, a: bytes, s: int) -> bytes:
        return self.gens[s].translate(a + self._tail)

    def element(self, word: Iterable[int]) -> bytes:
        """Element of a 0-based word."""
        w = self.identity
        for s in word:
            w = self.rmul_gen(w, s)
        return w

    def reduced_word(self, a: bytes) -> tuple[int, ...]:
        """Lexicographically least reduced word, 0-based."""
        word = []
        inv = self.inverse(a)
        N = self.N
        while True:
            for s in range(self.rank):
                if inv[s] >= N:
                    break
            else:
                return tuple(word)
            word.append(s)
            inv = self.gens[s].translate(inv + self._tail)

    def sort_key(self, a: bytes) -> tuple[int, ...]:
        return self.reduced_word(a)

    def is_reduced_product(self, a: bytes, b: bytes) -> bool:
        return self.length(self.mul(a, b)) == self.length(a) + self.length(b)

    def longest(self, subset: Iterable[int] = None) -> bytes:
        subset = range(self.rank) if subset is None else sorted(set(subset))
        w = self.identity
        grown = True
        while grown:
            grown = False
            for s in subset:
                if w[s] < self.N:
                    w = self.rmul_gen(w, s)
                    grown = True
        return w

    @cached_property
    def w0(self) -> bytes:
        return self.longest()

    @cached_property
    def delta_sigma(self) -> tuple[int, ...]:
        """Conjugation by w0 as a permutation of S."""
        w0 = self.w0
        return tuple(w0[s] - self.N for s in range(self.rank))

    def in_parabolic(self, a: bytes, subset) -> bool:
        """True when a lies in W_I (I given as a set of 0-based generators)."""
        subset = set(subset)
        while True:
            for s in self.left_descents(a):
                if s not in subset:
                    return False
                a = self.lmul_gen(s, a)
                break
            else:
                return a == self.identity

    def coset_decompose(self, w: bytes, subset, side: str = "left") -> tuple[bytes, bytes]:
        """Split w = v*u (left) or w = u*v (right) with v in W_I and u I-reduced."""
        subset = set(subset)
        v = self.identity
        if side == "left":
            u = w
            while True:
                for s in sorted(subset):
                    if self.is_left_descent(u, s):
                        u = self.lmul_gen(s, u)
                        v = self.rmul_gen(v, s)
                        break
                else:
                    return v, u
        u = w
        while True:
            for s in sorted(subset):
                if self.is_right_descent(u, s):
                    u = self.rmul_gen(u, s)
                    v = self.lmul_gen(s, v)
                    break
            else:
                return v, u

    # -- automorphisms -------------------------------------------------------
    def conj_perm(self, P: bytes, a: bytes) -> bytes:
        """P a P^-1 for an automorphism root permutation P."""
        return self.mul(self.mul(P, a), self.inverse(P))

    def apply_phi(self, a: bytes, k: int = 1) -> bytes:
        k %= self.phi_order
        for _ in range(k):
            a = self.mul(self.mul(self.phi, a), self.phi_inv)
        return a

    @cached_property
    def phi_order(self) -> int:
        p, order = self.phi, 1
        while p != self.identity:
            p = self.mul(self.phi, p)
            order += 1
        return order

    def sigma_power(self, k: int) -> tuple[int, ...]:
        p = list(range(self.rank))
        for _ in range(k % self.phi_order):
            p = [self.sigma[i] for i in p]
        return tuple(p)

    # -- twisted arithmetic: pairs (w, k) meaning w phi^k -----------------------
    def twisted_mul(self, x: tuple[bytes, int], y: tuple[bytes, int]) -> tuple[bytes, int]:
        w, k = x
        v, j = y
        return self.mul(w, self.apply_phi(v, k)), (k + j) % self.phi_order

    def twisted_power(self, x: tuple[bytes, int], n: int) -> tuple[bytes, int]:
        result = (self.identity, 0)
        for _ in range(n):
            result = self.twisted_mul(result, x)
        return result

    def twisted_root_action(self, w: bytes, k: int = 1) -> bytes:
        """Root permutation of w phi^k."""
        P = self.identity
        for _ in range(k % self.phi_order):
            P = self.mul(P, self.phi)
        return self.mul(w, P)

    def conjugate_by_gen(self, s: int, w: bytes, k: int = 1) -> bytes:
        """s (w phi^k) s, returned as the new W-part."""
        t = self.sigma_power(k)[s]
        return self.rmul_gen(self.lmul_gen(s, w), t)

    # -- numerics --------------------------------------------------------------
    @cached_property
    def signed_coeffs(self) -> np.ndarray:
        return np.vstack([self.coeffs, -self.coeffs])

    @cached_property
    def euclidean_roots(self) -> np.ndarray:
        """Rows: Euclidean coordinates of all 2N roots."""
        return self.signed_coeffs @ self._euclid.T

    def matrix(self, w: bytes, k: int = 0) -> np.ndarray:
        """Matrix of w phi^k on V in the simple-root basis (columns = images)."""
        m = self.signed_coeffs[list(w[: self.rank])].T
        if k % self.phi_order:
            m = m @ np.linalg.matrix_power(self._phimat, k % self.phi_order)
        return m

    def orthonormal_matrix(self, w: bytes, k: int = 0) -> np.ndarray:
        return self._euclid @ self.matrix(w, k) @ self._euclid_inv

    @cached_property
    def order(self) -> int:
        if self.degrees is not None:
            return math.prod(self.degrees)
        return sum(1 for _ in self.iter_parabolic(range(self.rank)))

    def iter_parabolic(self, subset) -> Iterator[bytes]:
        """All elements of W_I, breadth first."""
        subset = sorted(set(subset))
        seen = {self.identity}
        queue = deque([self.identity])
        while queue:
            w = queue.popleft()
            yield w
            for s in subset:
                v = self.rmul_gen(w, s)
                if v not in seen:
                    seen.add(v)
                    queue.append(v)

    def components(self, subset) -> list[list[int]]:
        """Connected components of the Coxeter graph restricted to subset."""
        rest = sorted(set(subset))
        comps = []
        while rest:
            comp, stack = [], [rest[0]]
            seen = {rest[0]}
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in rest:
                    if j not in seen and self.coxeter_matrix[i][j] > 2:
                        seen.add(j)
                        stack.append(j)
            comp.sort()
            comps.append(comp)
            rest = [i for i in rest if i not in seen]
        return comps

    # -- words -----------------------------------------------------------------
    def parse_word(self, text: str) -> tuple[int, ...]:
        """Parse a word string into 0-based generator indices."""
        text = text.strip()
        if text in ("", "e"):
            return ()
        if "." in text or self.rank > 9:
            parts = [p for p in text.split(".") if p]
        else:
            parts = list(text)
        word = []
        for pos, part in enumerate(parts):
            if not part.isdigit() or not 1 <= int(part) <= self.rank:
                raise ParseError(f"bad generator {part!r} at position {pos + 1} in word {text!r}")
            word.append(int(part) - 1)
        return tuple(word)

    def format_word(self, word: Sequence[int]) -> str:
        if self.rank > 9:
            return ".".join(str(s + 1) for s in word)
        return "".join(str(s + 1) for s in word)

    def word_string(self, a: bytes) -> str:
        return self.format_word(self.reduced_word(a))

    def parse_subset(self, text: str | Iterable[int]) -> frozenset[int]:
        """Subset from "[2,3]", "23", "2,3" (1-based) or an iterable of 0-based ints."""
        if not isinstance(text, str):
            return frozenset(text)
        body = text.strip().strip("[]{}() ")
        if not body:
            return frozenset()
        parts = re.split(r"[,\s]+", body) if ("," in body or " " in body or self.rank > 9) else list(body)
        out = set()
        for p in parts:
            if not p.isdigit() or not 1 <= int(p) <= self.rank:
                raise ParseError(f"bad generator {p!r} in subset {text!r}")
            out.add(int(p) - 1)
        return frozenset(out)

    def __repr__(self):
        return f"CoxeterSystem({self.tag})"

    def __str__(self):
        return str(self.tag)

    # -- wrappers --------------------------------------------------------------
    def __call__(self, word: str | Sequence[int] = ()) -> GroupElement:
        if isinstance(word, str):
            word = self.parse_word(word)
        return GroupElement(self, self.element(word))

    def gen(self, s: int) -> GroupElement:
        return GroupElement(self, self.gens[s])


def _is_golden(cmat) -> bool:
    return any(int(m) == 5 for row in cmat for m in row)


def _gram(cmat, sqlen) -> np.ndarray:
    n = len(cmat)
    g = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == j:
                g[i][j] = sqlen[i]
            elif cmat[i][j] != 2:
                g[i][j] = -math.cos(math.pi / cmat[i][j]) * math.sqrt(sqlen[i] * sqlen[j])
    return g


def coxeter_matrix_from_edges(rank: int, edges) -> np.ndarray:
    c = np.full((rank, rank), 2, dtype=int)
    np.fill_diagonal(c, 1)
    for i, j, m in edges:
        c[i - 1][j - 1] = c[j - 1][i - 1] = m
    return c


_CACHE: dict[tuple, CoxeterSystem] = {}


def build_system(descriptor: str | TypeTag, automorphism: Sequence[int] | None = None) -> CoxeterSystem:
    """Build a (possibly twisted) irreducible finite Coxeter system.

    ``automorphism`` overrides the default diagram automorphism, given as a
    0-based permutation of the generators.
    """
    tag = parse_descriptor(descriptor) if isinstance(descriptor, str) else descriptor
    key = (tag, None if automorphism is None else tuple(automorphism))
    if key in _CACHE:
        return _CACHE[key]
    cmat = coxeter_matrix_from_edges(tag.rank, coxeter_edges(tag))
    sqlen = _squared_lengths(tag)
    exact = None
    if tag.letter == "I" and tag.m != 5:
        coeffs, gens = _dihedral_roots(tag.m)
    else:
        golden = _is_golden(cmat)
        exact, gens = _roots_from_cartan(_cartan(cmat, sqlen, golden))
        coeffs = np.array([[float(c) for c in r] for r in exact])
    sigma = _twist_permutation(tag) if automorphism is None else tuple(automorphism)
    degrees = degrees_of(tag.letter, tag.rank, tag.m)
    system = CoxeterSystem(tag, cmat, _gram(cmat, sqlen), coeffs, gens, sigma, degrees, None, exact)
    system.factors = system._infer_factors(sigma)
    if automorphism is not None:
        system.tag = TypeTag(tag.letter, tag.rank, system.phi_order, tag.m)
    if 2 * system.N != len(gens[0]) or (tag.letter != "I" and system.length(system.w0) != system.N):
        raise CoxeterError("inconsistent root system")
    _CACHE[key] = system
    return system


def product_system(base: CoxeterSystem, n: int) -> CoxeterSystem:
    """The product W^n with the twist sigma(x_0, ..., x_{n-1}) = (x_1, ..., phi(x_0)).

    Generator s of block j has index j*r + s.  As an automorphism of S^n the
    twist sends block j to block j-1 and block 0 to block n-1 through phi.
    """
    r, N = base.rank, base.N
    R, M = r * n, N * n
    cmat = np.full((R, R), 2, dtype=int)
    gram = np.zeros((R, R))
    for b in range(n):
        sl = slice(b * r, (b + 1) * r)
        cmat[sl, sl] = base.coxeter_matrix
        gram[sl, sl] = base.gram
    # positive roots: simple roots of all blocks first, then the others
    order = [(b, k) for b in range(n) for k in range(r)] + [(b, k) for b in range(n) for k in range(r, N)]
    index = {bk: i for i, bk in enumerate(order)}
    coeffs = np.zeros((M, R))
    for i, (b, k) in enumerate(order):
        coeffs[i, b * r:(b + 1) * r] = base.coeffs[k]

    def glob(b, k):
        return index[(b, k)] if k < N else index[(b, k - N)] + M

    gens = []
    for b in range(n):
        for s in range(r):
            row = [0] * (2 * M)
            for i, (bb, k) in enumerate(order):
                if bb == b:
                    row[i] = glob(b, base.gens[s][k])
                    row[i + M] = glob(b, base.gens[s][k + N])
                else:
                    row[i], row[i + M] = i, i + M
            gens.append(row)
    sigma = [0] * R
    for b in range(n):
        for s in range(r):
            sigma[b * r + s] = (b - 1) * r + s if b > 0 else (n - 1) * r + base.sigma[s]
    degrees = [d for d in base.degrees for _ in range(n)] if base.degrees else None
    factors = None
    if base.factors is not None:
        factors = [((e + j) / n) % 1 for e in base.factors for j in range(n)]
    label = f"({base.tag})^{n}"
    system = CoxeterSystem(label, cmat, gram, coeffs, gens, sigma, degrees, factors)
    return system


# ---------------------------------------------------------------------------
# element wrappers

@dataclass(frozen=True)
class GroupElement:
    system: CoxeterSystem
    perm: bytes

    def __mul__(self, other: GroupElement) -> GroupElement:
        if other.system is not self.system:
            raise CoxeterError("elements of different systems")
        return GroupElement(self.system, self.system.mul(self.perm, other.perm))

    def inverse(self) -> GroupElement:
        return GroupElement(self.system, self.system.inverse(self.perm))

    def length(self) -> int:
        return self.system.length(self.perm)

    def descents(self, side: str = "right") -> frozenset[int]:
        if side == "left":
            return self.system.left_descents(self.perm)
        return self.system.right_descents(self.perm)

    def word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (0-based indices)."""
        return self.system.reduced_word(self.perm)

    def is_identity(self) -> bool:
        return self.perm == self.system.identity

    def __str__(self):
        return self.system.word_string(self.perm)


@dataclass(frozen=True)
class TwistedElement:
    element: GroupElement
    twist: int = 1

    @property
    def system(self) -> CoxeterSystem:
        return self.element.system

    def length(self) -> int:
        return self.element.length()

    def __mul__(self, other: TwistedElement) -> TwistedElement:
        W = self.system
        w, k = W.twisted_mul((self.element.perm, self.twist), (other.element.perm, other.twist))
        return TwistedElement(GroupElement(W, w), k)

    def __pow__(self, n: int) -> TwistedElement:
        W = self.system
        w, k = W.twisted_power((self.element.perm, self.twist), n)
        return TwistedElement(GroupElement(W, w), k)

    def __str__(self):
        suffix = "" if self.twist == 0 else ("phi" if self.twist == 1 else f"phi^{self.twist}")
        return f"{self.element}{suffix}"


def multiply(a: GroupElement, b: GroupElement) -> GroupElement:
    return a * b


def invert(a: GroupElement) -> GroupElement:
    return a.inverse()


def length(a: GroupElement) -> int:
    return a.length()


def descents(a: GroupElement, side: str = "right") -> frozenset[int]:
    return a.descents(side)


def longest_element(system: CoxeterSystem, subset: Iterable[int] = None) -> GroupElement:
    """w_I (all of S by default)."""
    return GroupElement(system, system.longest(subset))


def coset_decompose(w: GroupElement, subset: Iterable[int], side: str = "left") -> tuple[GroupElement, GroupElement]:
    """(part in W_I, I-reduced part)."""
    W = w.system
    v, u = W.coset_decompose(w.perm, subset, side)
    return GroupElement(W, v), GroupElement(W, u)


def apply_automorphism(w: GroupElement, k: int = 1) -> GroupElement:
    return GroupElement(w.system, w.system.apply_phi(w.perm, k))


def matrix_of(x: TwistedElement | GroupElement) -> np.ndarray:
    if isinstance(x, GroupElement):
        return x.system.matrix(x.perm)
    return x.system.matrix(x.element.perm, x.twist)


# ---------------------------------------------------------------------------
# twisted conjugacy classes

def minimal_length_conjugate(W: CoxeterSystem, w: bytes, k: int = 1) -> bytes:
    """Descend to a minimal-length element of the twisted class of w phi^k.

    Uses cyclic shifts (equal-length generator conjugations) and length
    decreasing conjugations; for finite Coxeter cosets this reaches the
    minimal length.
    """
    current = w
    while True:
        level = [current]
        seen = {current}
        lowered = None
        i = 0
        while i < len(level) and lowered is None:
            x = level[i]
            lx = W.length(x)
            for s in range(W.rank):
                y = W.conjugate_by_gen(s, x, k)
                ly = W.length(y)
                if ly < lx:
                    lowered = y
                    break
                if ly == lx and y not in seen:
                    seen.add(y)
                    level.append(y)
            i += 1
        if lowered is None:
            return min(level, key=W.sort_key)
        current = lowered


@dataclass
class ClassEnumeration:
    """Breadth-first enumeration of a twisted conjugacy class.

    ``parent`` maps each element to (previous element, generator) so the
    conjugating element of any class member can be rebuilt.
    """

    system: CoxeterSystem
    twist: int
    start: bytes
    elements: list[bytes]
    parent: dict[bytes, tuple[bytes, int] | None]
    complete: bool

    def transversal(self, x: bytes) -> bytes:
        """An element t with t (start phi) t^-1 = x phi."""
        W = self.system
        t = W.identity
        chain = []
        while self.parent[x] is not None:
            prev, s = self.parent[x]
            chain.append(s)
            x = prev
        for s in reversed(chain):
            t = W.lmul_gen(s, t)
        return t

    def at_length(self, L: int) -> list[bytes]:
        W = self.system
        return sorted((x for x in self.elements if W.length(x) == L), key=W.sort_key)


def enumerate_class(W: CoxeterSystem, w: bytes, k: int = 1, *, max_length: int | None = None,
                    cap: int = 2_000_000) -> ClassEnumeration:
    """All class members of w phi^k (optionally only those of length <= max_length)."""
    start = minimal_length_conjugate(W, w, k)
    parent: dict[bytes, tuple[bytes, int] | None] = {start: None}
    elements = [start]
    sig = W.sigma_power(k)
    pads = W._padded_gens
    gens = W.gens
    tail = W._tail
    negmask = W._negmask
    N = W.N
    complete = True
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        for s in range(W.rank):
            y = gens[sig[s]].translate(x.translate(pads[s]) + tail)
            if y in parent:
                continue
            if max_length is not None and y[:N].translate(negmask).count(1) > max_length:
                complete = False
                continue
            parent[y] = (x, s)
            elements.append(y)
            if len(elements) > cap:
                raise EnumerationLimitError(f"class enumeration exceeded {cap} elements")
    return ClassEnumeration(W, k, start, elements, parent, complete)


def enumerate_class_at_length(rep: TwistedElement, target_length: int, cap: int = 2_000_000) -> list[TwistedElement]:
    """Class members of rep with the given length, canonically ordered."""
    W = rep.system
    found = enumerate_class(W, rep.element.perm, rep.twist, cap=cap)
    return [TwistedElement(GroupElement(W, x), rep.twist) for x in found.at_length(target_length)]
