"""Periodic braids, good elements and maximal eigenspaces.

A twisted element w.phi is "good" for d (relative to a subset I of S) when
its simple lift b satisfies (b phi)^d = phi^d pi/pi_I with I stable.  Group
level criteria: wphi stabilizes I and w is I-reduced; the partial powers
have the lengths (2i/d) l(w_I w0); (wphi)^d = phi^d.  It is maximal when no
element of W_I w phi has a zeta_d eigenvector on the span of the roots of I.

Conventions: subsets are frozensets of 0-based generators, phi is the diagram
automorphism carried by the system, and zeta_d = exp(2 pi i / d).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from . import braid as br
from .braid import BraidElement
from .conjcat import ConjObject, cyc_step
from .coxeter import (
    CoxeterError,
    CoxeterSystem,
    EnumerationLimitError,
    GroupElement,
    TwistedElement,
    build_system,
    classify_component,
    degrees_of,
    enumerate_class,
    factor_exponents,
    product_system,
)
from .ribbon import conjugate_subset, left_conjugate_subset

DEFAULT_TOL = 1e-8


class NotPeriodic(CoxeterError):
    pass


class NotGood(CoxeterError):
    pass


class StructureNotFound(CoxeterError):
    pass


class PrecisionError(CoxeterError):
    pass


class NotAdmissible(CoxeterError):
    pass


# ---------------------------------------------------------------------------
# eigenvalues

def _root_of_unity(k: int, d: int) -> complex:
    return complex(np.exp(2j * np.pi * k / d))


def _nullity(M: np.ndarray, z: complex, tol: float | None) -> int:
    if M.size == 0:
        return 0
    tol = DEFAULT_TOL if tol is None else tol
    sv = np.linalg.svd(M - z * np.eye(len(M)), compute_uv=False)
    if np.any((sv >= tol) & (sv < 10 * tol)):
        raise PrecisionError(f"singular value within 10x of the tolerance {tol}")
    return int(np.sum(sv < tol))


def zeta_rank_raw(W: CoxeterSystem, w: bytes, twist: int, k: int, d: int, tol: float | None = None) -> int:
    """Dimension of the exp(2 pi i k/d)-eigenspace of w phi^twist."""
    return _nullity(W.orthonormal_matrix(w, twist), _root_of_unity(k, d), tol)


def zeta_rank(x: TwistedElement | GroupElement, k: int = 1, d: int = 1, tol: float | None = None) -> int:
    if isinstance(x, GroupElement):
        return zeta_rank_raw(x.system, x.perm, 0, k, d, tol)
    return zeta_rank_raw(x.system, x.element.perm, x.twist, k, d, tol)


def coset_zeta_rank(W: CoxeterSystem, k: int, d: int, twist: int = 1) -> int:
    """Maximal eigenspace dimension for exp(2 pi i k/d) on W phi^twist.

    Counts the degrees d_i with zeta^{d_i} = eps_i^twist, exactly.
    """
    if W.degrees is None or W.factors is None:
        raise CoxeterError("degree data unavailable for this system")
    return _count_degrees(W.degrees, [Fraction(e) * twist for e in W.factors], Fraction(k, d))


def _count_degrees(degrees, factors, x: Fraction) -> int:
    return sum(1 for deg, e in zip(degrees, factors) if (x * deg - e).denominator == 1)


def admissible_orders(W: CoxeterSystem) -> list[int]:
    """All d for which zeta_d has a nonzero eigenspace on W phi, decreasing."""
    top = max(W.degrees) * W.phi_order
    return [d for d in range(top, 0, -1) if coset_zeta_rank(W, 1, d) > 0]


def eigenspace(W: CoxeterSystem, w: bytes, twist: int, k: int, d: int, tol: float | None = None) -> np.ndarray:
    """Orthonormal basis (columns, Euclidean coordinates) of the eigenspace."""
    U = W.orthonormal_matrix(w, twist)
    z = _root_of_unity(k, d)
    _, sv, vh = np.linalg.svd(U - z * np.eye(W.rank))
    dim = _nullity(U, z, tol)
    return vh[W.rank - dim:].conj().T


def roots_orthogonal(W: CoxeterSystem, basis: np.ndarray, tol: float = 1e-7) -> frozenset[int]:
    """Indices (among all 2N roots) of roots orthogonal to a complex subspace."""
    if basis.shape[1] == 0:
        return frozenset(range(2 * W.N))
    R = W.euclidean_roots
    proj = np.abs(R @ basis.conj()).max(axis=1) / np.linalg.norm(R, axis=1)
    return frozenset(int(i) for i in np.flatnonzero(proj < tol))


def twisted_order(W: CoxeterSystem, w: bytes, twist: int = 1) -> int:
    """Order of w phi^twist in the group generated by W and phi."""
    x = (w, twist % W.phi_order)
    cur, n = x, 1
    while cur != (W.identity, 0):
        cur = W.twisted_mul(cur, x)
        n += 1
    return n


# ---------------------------------------------------------------------------
# periodicity

def _phi_subset(W: CoxeterSystem, subset: Iterable[int], k: int = 1) -> frozenset[int]:
    sig = W.sigma_power(k)
    return frozenset(sig[s] for s in subset)


def periodic_target(W: CoxeterSystem, subset: Iterable[int]) -> BraidElement:
    """pi/pi_I as a positive braid."""
    return br.quotient(br.pi(W, subset), br.pi(W))


def is_periodic(subset: Iterable[int], b: BraidElement, d: int) -> bool:
    """Whether (b phi)^d = phi^d pi/pi_I.

    When I is phi^d-stable and the identity holds, I^b = phi(I) follows; this
    consequence is asserted.
    """
    W = b.system
    subset = frozenset(subset)
    if d < 1:
        raise CoxeterError("d must be positive")
    ok = br.twisted_power(b, d) == periodic_target(W, subset)
    if ok and _phi_subset(W, subset, d) == subset:
        target = _braid_target(subset, b)
        if target != _phi_subset(W, subset):
            raise CoxeterError("periodic braid with a phi^d-stable I must send I to phi(I)")
    return ok


def _braid_target(subset: frozenset[int], b: BraidElement) -> frozenset[int] | None:
    W = b.system
    current = subset
    for f in b.factors:
        current = conjugate_subset(W, current, f)
        if current is None:
            return None
    return current


def infer_subset(b: BraidElement, d: int) -> frozenset[int] | None:
    """The I with (b phi)^d = phi^d pi/pi_I, if any.  I is pinned by pi_I."""
    W = b.system
    power = br.twisted_power(b, d)
    try:
        pi_I = br.quotient(power, br.pi(W), side="right")
    except br.NotADivisor:
        return None
    subset = frozenset(W.left_descents(pi_I.factors[0])) if pi_I.factors else frozenset()
    return subset if pi_I == br.pi(W, subset) else None


# ---------------------------------------------------------------------------
# certificates

@dataclass
class GoodCertificate:
    system: CoxeterSystem
    d: int
    I: frozenset[int]
    w: GroupElement
    braid_w: BraidElement
    checks: dict[str, bool]
    zeta_rank: int
    relative_order: int | None = None

    @property
    def good(self) -> bool:
        return all(self.checks[k] for k in ("stabilizes", "reduced", "lengths", "power", "braid"))

    @property
    def maximal(self) -> bool:
        return self.checks["maximal"]

    @property
    def length(self) -> int:
        return self.w.length()

    def word(self) -> str:
        return self.w.system.word_string(self.w.perm) or "e"

    def describe(self) -> dict:
        W = self.system
        return {
            "type": str(W.tag),
            "d": self.d,
            "I": [s + 1 for s in sorted(self.I)],
            "w": self.word(),
            "length": self.length,
            "checks": dict(sorted(self.checks.items())),
            "zeta_rank": self.zeta_rank,
            "relative_order": self.relative_order,
        }


def expected_length(W: CoxeterSystem, subset: Iterable[int], d: int, i: int = 1) -> Fraction:
    """(2i/d) l(w_I^-1 w0)."""
    return Fraction(2 * i * (W.N - W.length(W.longest(subset))), d)


def goodness_checks(W: CoxeterSystem, w: bytes, subset: Iterable[int], d: int) -> dict[str, bool]:
    """Conditions (i)-(iii), the braid identity and maximality, each separately."""
    subset = frozenset(subset)
    if d == 1:
        return _checks_d1(W, w, subset)
    checks = {}
    checks["stabilizes"] = conjugate_subset(W, subset, w) == _phi_subset(W, subset)
    checks["reduced"] = not any(W.is_left_descent(w, s) for s in subset)
    ok = True
    for i in range(1, d // 2 + 1):
        part, _ = W.twisted_power((w, 1), i)
        if W.length(part) != expected_length(W, subset, d, i):
            ok = False
            break
    checks["lengths"] = ok
    checks["power"] = W.twisted_power((w, 1), d)[0] == W.identity
    checks["braid"] = br.twisted_power(br.lift(W, w), d) == periodic_target(W, subset)
    stable = checks["stabilizes"] and checks["reduced"]
    checks["maximal"] = bool(stable and is_maximal_raw(W, w, subset, d))
    return checks


def _checks_d1(W: CoxeterSystem, w: bytes, subset: frozenset[int]) -> dict[str, bool]:
    # d = 1: w = 1 with the lift pi/pi_I; only I empty gives an eigenspace
    # (the phi-fixed space) whose centralizer is standard parabolic.
    trivial = w == W.identity
    return {
        "stabilizes": _phi_subset(W, subset) == subset,
        "reduced": True,
        "lengths": True,
        "power": trivial,
        "braid": trivial,
        "maximal": trivial and not subset,
    }


def certify(W: CoxeterSystem, w: bytes | GroupElement | str, subset: Iterable[int], d: int,
            *, require_maximal: bool = False) -> GoodCertificate:
    """Verify goodness and package a certificate; raises NotGood otherwise."""
    if isinstance(w, GroupElement):
        w = w.perm
    elif isinstance(w, str):
        w = W.element(W.parse_word(w))
    subset = frozenset(subset)
    checks = goodness_checks(W, w, subset, d)
    failed = [k for k in ("stabilizes", "reduced", "lengths", "power", "braid") if not checks[k]]
    if require_maximal and not checks["maximal"]:
        failed.append("maximal")
    if failed:
        raise NotGood(f"{W.word_string(w) or 'e'} with I={sorted(s + 1 for s in subset)} "
                      f"fails: {', '.join(failed)}")
    if d == 1:
        lift = periodic_target(W, subset)
    else:
        lift = br.lift(W, w)
    return GoodCertificate(W, d, subset, GroupElement(W, w), lift, checks,
                           zeta_rank_raw(W, w, 1, 1, d))


def certify_braid(subset: Iterable[int], b: BraidElement, d: int, **kwargs) -> GoodCertificate:
    """Certificate for a braid: it must be simple with a good image."""
    W = b.system
    subset = frozenset(subset)
    target = _left_target(W, subset, b)
    if target != subset:
        raise NotGood(f"{b} phi sends I={sorted(s + 1 for s in subset)} to "
                      f"{None if target is None else sorted(s + 1 for s in target)}")
    if len(b.factors) > 1:
        raise NotGood(f"{b} is not the lift of an element of W")
    return certify(W, b.image(), subset, d, **kwargs)


def _left_target(W: CoxeterSystem, subset: frozenset[int], b: BraidElement) -> frozenset[int] | None:
    """(w phi) I (w phi)^-1 for w the image of b, or None when it leaves S."""
    return left_conjugate_subset(W, _phi_subset(W, subset), b.image())


# ---------------------------------------------------------------------------
# maximality

def _parabolic_basis(W: CoxeterSystem, subset: Sequence[int]) -> np.ndarray:
    if not subset:
        return np.zeros((W.rank, 0))
    cols = W._euclid[:, sorted(subset)]
    q, _ = np.linalg.qr(cols)
    return q


def _parabolic_size(W: CoxeterSystem, subset: Iterable[int]) -> int:
    size = 1
    for comp in W.components(subset):
        letter, rank, m = classify_component(W.coxeter_matrix[np.ix_(comp, comp)])
        size *= math.prod(degrees_of(letter, rank, m))
    return size


def maximal_by_enumeration(W: CoxeterSystem, w: bytes, subset: Iterable[int], d: int,
                           tol: float | None = None) -> bool:
    """Brute force over v in W_I: no vw phi has a zeta_d eigenvector on X_I."""
    subset = sorted(set(subset))
    if not subset:
        return True
    Q = _parabolic_basis(W, subset)
    z = _root_of_unity(1, d)
    for v in W.iter_parabolic(subset):
        U = W.orthonormal_matrix(W.mul(v, w), 1)
        if _nullity(Q.T @ U @ Q, z, tol) > 0:
            return False
    return True


def induced_permutation(W: CoxeterSystem, w: bytes, subset: Iterable[int], twist: int = 1) -> dict[int, int]:
    """The permutation of I induced by w phi^twist (which must stabilize I)."""
    P = W.twisted_root_action(w, twist)
    subset = set(subset)
    perm = {}
    for s in subset:
        t = P[s]
        if t not in subset:
            raise CoxeterError("w phi does not stabilize I")
        perm[s] = t
    return perm


def parabolic_coset_rank(W: CoxeterSystem, w: bytes, subset: Iterable[int], k: int, d: int,
                         twist: int = 1) -> int:
    """zeta-rank of the coset W_I w phi on the span of the roots of I, from degrees.

    Each orbit of k' components under the induced automorphism psi contributes
    the (zeta^k')-rank of the component coset W_T psi^k'.
    """
    subset = sorted(set(subset))
    psi = induced_permutation(W, w, subset, twist)
    comps = [tuple(c) for c in W.components(subset)]
    owner = {s: c for c in comps for s in c}
    seen = set()
    total = 0
    x = Fraction(k, d)
    for T in comps:
        if T in seen:
            continue
        orbit = [T]
        cur = owner[psi[T[0]]]
        while cur != T:
            orbit.append(cur)
            cur = owner[psi[cur[0]]]
        seen.update(orbit)
        size = len(orbit)
        tau = {s: s for s in T}
        for _ in range(size):
            tau = {s: psi[t] for s, t in tau.items()}
        order, p = 1, dict(tau)
        while any(p[s] != s for s in T):
            p = {s: tau[t] for s, t in p.items()}
            order += 1
        letter, rank, m = classify_component(W.coxeter_matrix[np.ix_(T, T)])
        degs = degrees_of(letter, rank, m)
        facs = factor_exponents(letter, rank, order, m)
        total += _count_degrees(degs, facs, x * size)
    return total


def is_maximal_raw(W: CoxeterSystem, w: bytes, subset: Iterable[int], d: int, *,
                   bound: int = 20000, method: str = "auto") -> bool:
    subset = frozenset(subset)
    if not subset:
        return True
    if method == "auto":
        method = "enumerate" if _parabolic_size(W, subset) <= bound else "degrees"
    if method == "enumerate":
        return maximal_by_enumeration(W, w, subset, d)
    if method == "degrees":
        return parabolic_coset_rank(W, w, subset, 1, d) == 0
    raise CoxeterError(f"unknown method {method!r}")


def is_maximal(cert: GoodCertificate, *, bound: int = 20000, method: str = "auto") -> bool:
    return is_maximal_raw(cert.system, cert.w.perm, cert.I, cert.d, bound=bound, method=method)


def eigenspace_centralizer_is_parabolic(W: CoxeterSystem, w: bytes, subset: Iterable[int], d: int) -> bool:
    """C_W(V) = W_I, i.e. the roots orthogonal to V are exactly those of I."""
    V = eigenspace(W, w, 1, 1, d)
    orth = roots_orthogonal(W, V)
    return orth == _parabolic_root_indices(W, subset)


def _parabolic_root_indices(W: CoxeterSystem, subset: Iterable[int]) -> frozenset[int]:
    out = set()
    for v in W.iter_parabolic(subset):
        for s in subset:
            out.add(v[s])
    return frozenset(out)


def eigenspace_is_maximal(W: CoxeterSystem, w: bytes, d: int) -> bool:
    return zeta_rank_raw(W, w, 1, 1, d) == coset_zeta_rank(W, 1, d)


# ---------------------------------------------------------------------------
# structure of good elements

def pseudo_orbits_ok(cert: GoodCertificate) -> bool:
    """Each w phi-orbit on roots outside Phi_I splits into runs of d roots with
    exactly floor(d/2) consecutive positive ones."""
    W, d = cert.system, cert.d
    P = W.twisted_root_action(cert.w.perm, 1)
    inside = _parabolic_root_indices(W, cert.I)
    seen = set()
    for a in range(2 * W.N):
        if a in inside or a in seen:
            continue
        orbit = [a]
        b = P[a]
        while b != a:
            orbit.append(b)
            b = P[b]
        seen.update(orbit)
        if len(orbit) % d:
            return False
        signs = [x < W.N for x in orbit]
        # some rotation of the orbit consists of blocks of d with the right pattern
        n = len(orbit)
        found = False
        for shift in range(d):
            rot = signs[shift:] + signs[:shift]
            if all(_block_ok(rot[j:j + d], d) for j in range(0, n, d)):
                found = True
                break
        if not found:
            return False
    return True


def _block_ok(block: list[bool], d: int) -> bool:
    """A cyclic window of d signs with floor(d/2) consecutive positives and
    ceil(d/2) negatives, or the mirror pattern."""
    e = d // 2
    pos = sum(block)
    if pos not in (e, d - e):
        return False
    run = pos
    for start in range(d):
        window = [block[(start + j) % d] for j in range(run)]
        if all(window):
            return True
    return False


def even_odd_structure(cert: GoodCertificate) -> dict:
    """Half-power structure of a good element.

    d even: (b phi)^{d/2} = w_I^-1 w0 phi^{d/2}.  d odd: a simple u fixed by
    phi^d with I^u in S, w phi = u phi . (w0 phi^{d'})u (w0 phi^{d'})^-1 and
    (w phi)^{d'} u = w_I^-1 w0 phi^{d'}.
    """
    W, d, I = cert.system, cert.d, cert.I
    if d == 1:
        return {"d": 1, "half": 0, "u": None}
    half = d // 2
    wIw0 = br.lift(W, W.mul(W.longest(I), W.w0))
    power = br.twisted_power(cert.braid_w, half)
    if d % 2 == 0:
        if power != wIw0:
            raise StructureNotFound("half power is not w_I^-1 w0")
        return {"d": d, "half": half, "u": None}
    rest = br.left_quotient(power, wIw0)
    if rest is None or len(rest.factors) > 1:
        raise StructureNotFound("w_I^-1 w0 is not a simple multiple of the half power")
    u = br.apply_phi(rest, -half % W.phi_order)
    if br.apply_phi(u, d) != u:
        raise StructureNotFound("u is not phi^d-stable")
    if _braid_target(I, u) is None:
        raise StructureNotFound("u does not conjugate I into S")
    conj_w0 = br.apply_sigma(br.apply_phi(u, half), W.delta_sigma)
    if br.product(u, br.apply_phi(conj_w0, 1)) != cert.braid_w:
        raise StructureNotFound("w phi is not u phi . u'")
    return {"d": d, "half": half, "u": u}


# ---------------------------------------------------------------------------
# sliding

def slide_to_good(subset: Iterable[int], b: BraidElement, d: int) -> tuple[BraidElement, ConjObject]:
    """Cyclically conjugate a periodic (I, b) until (b phi)^{floor(d/2)} is simple."""
    W = b.system
    subset = frozenset(subset)
    if not is_periodic(subset, b, d):
        raise NotPeriodic(f"{b} is not a d={d} periodic braid at I={sorted(s + 1 for s in subset)}")
    obj = ConjObject(b, subset, W.sigma)
    conjugator = BraidElement.identity(W)
    i = 0
    while 2 * (i + 1) <= d:
        nxt = br.twisted_power(obj.braid, i + 1)
        if len(nxt.factors) <= 1:
            i += 1
            continue
        if len(nxt.factors) > 2:
            raise NotPeriodic("a partial power has canonical length above 2")
        prev = br.twisted_power(obj.braid, i)
        v = br.left_quotient(prev, BraidElement(W, nxt.factors[:1]))
        v = br.apply_phi(v, -i % W.phi_order)
        obj = cyc_step(obj, v)
        conjugator = br.product(conjugator, v)
    return conjugator, obj


# ---------------------------------------------------------------------------
# finding good elements through a regular eigenvector

def _max_rank_element(W: CoxeterSystem, d: int, target: int, seed: int, max_tries: int) -> bytes:
    cox = W.element(range(W.rank))
    delta = W.phi_order
    for j in range(1, 2 * (W.N // max(W.rank, 1) + 2) * delta + 1):
        if j % delta != 1 % delta:
            continue
        x, _ = W.twisted_power((cox, 1), j)
        if zeta_rank_raw(W, x, 1, 1, d) == target:
            return x
    rng = np.random.default_rng(seed)
    x = W.identity
    for _ in range(max_tries):
        for s in rng.integers(0, W.rank, size=3):
            x = W.rmul_gen(x, int(s))
        if zeta_rank_raw(W, x, 1, 1, d) == target:
            return x
    raise CoxeterError(f"no element of maximal zeta_{d}-rank found in {max_tries} tries")


def good_from_eigenspace(W: CoxeterSystem, x: bytes, d: int, seed: int = 0) -> tuple[bytes, frozenset[int]]:
    """A good maximal (w, I) in the class of x phi, built from its eigenspace.

    A generic vector v of the zeta_d-eigenspace, rotated by a phase so that
    Re<v, a> vanishes only when <v, a> does, defines a positive system; the
    element y carrying the standard one to it conjugates x phi to an element
    whose eigenspace has standard parabolic centralizer W_I.
    """
    if d == 1:
        return W.identity, frozenset()
    rng = np.random.default_rng(seed)
    V = eigenspace(W, x, 1, 1, d)
    R = W.euclidean_roots
    psi = roots_orthogonal(W, V)
    coef = rng.normal(size=V.shape[1]) + 1j * rng.normal(size=V.shape[1])
    vec = V @ coef
    z = R @ vec.conj()
    others = [i for i in range(2 * W.N) if i not in psi]
    angles = np.linspace(0, np.pi, 721)[:-1]
    rot = np.exp(1j * angles)[:, None] * z[others][None, :]
    margins = (np.abs(rot.real) / np.abs(z[others])[None, :]).min(axis=1)
    theta = angles[int(np.argmax(margins))]
    if margins.max() < 1e-6:
        raise PrecisionError("no phase separates the roots from the imaginary axis")
    first = (np.exp(1j * theta) * z).real
    mu = R @ rng.normal(size=W.rank)
    positive = set()
    for i in range(2 * W.N):
        key = 0.0 if i in psi else first[i]
        if key > 0 or (key == 0 and mu[i] > 0):
            positive.add(i)
    y = W.identity
    moved = True
    while moved:
        moved = False
        for s in range(W.rank):
            if y[s] not in positive:
                y = W.rmul_gen(y, s)
                moved = True
                break
    subset = frozenset(s for s in range(W.rank) if y[s] in psi)
    xp = W.mul(W.mul(W.inverse(y), x), W.apply_phi(y, 1))
    _, w = W.coset_decompose(xp, subset, "left")
    return w, subset


def find_good(W: CoxeterSystem, d: int, *, seed: int = 0, max_tries: int = 200000) -> GoodCertificate:
    """Some zeta_d-good maximal element (raises NotAdmissible when the rank is 0)."""
    target = coset_zeta_rank(W, 1, d)
    if target == 0:
        raise NotAdmissible(f"zeta_{d} is not an eigenvalue on {W.tag}")
    if d == 1:
        return certify(W, W.identity, frozenset(), 1)
    x = _max_rank_element(W, d, target, seed, max_tries)
    w, subset = good_from_eigenspace(W, x, d, seed)
    return certify(W, w, subset, d, require_maximal=True)


# ---------------------------------------------------------------------------
# classification tables

@dataclass
class GoodRow:
    I: frozenset[int]
    length: int
    count: int
    representatives: list[str]
    class_size: int
    relative_order: int | None = None
    parabolic_centralizer_order: int | None = None

    def to_dict(self) -> dict:
        return {
            "I": [s + 1 for s in sorted(self.I)],
            "length": self.length,
            "count": self.count,
            "representatives": list(self.representatives),
            "class_size": self.class_size,
            "relative_order": self.relative_order,
            "parabolic_centralizer_order": self.parabolic_centralizer_order,
        }


@dataclass
class GoodTable:
    type: str
    d: int
    rows: list[GoodRow] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(r.count for r in self.rows)

    def to_dict(self) -> dict:
        return {"type": self.type, "d": self.d, "rows": [r.to_dict() for r in self.rows]}


def good_elements_in_class(W: CoxeterSystem, w: bytes, d: int, length: int, *, cap: int = 2_000_000,
                           enumeration=None) -> dict[frozenset[int], list[bytes]]:
    """Class members of w phi of the given length that are good, grouped by I.

    I is read off the braid identity (b phi)^d = phi^d pi/pi_I, then every
    group-level condition is re-checked.
    """
    cls = enumeration or enumerate_class(W, w, 1, cap=cap)
    found: dict[frozenset[int], list[bytes]] = {}
    for x in cls.at_length(length):
        subset = infer_subset(br.lift(W, x), d)
        if subset is None or W.length(W.longest(subset)) != W.N - d * length // 2:
            continue
        checks = goodness_checks(W, x, subset, d)
        if all(checks.values()):
            found.setdefault(subset, []).append(x)
    return found


def classify_good(W: CoxeterSystem, d: int, *, limit: int = 5, cap: int = 2_000_000, seed: int = 0,
                  relative: bool = False, relative_cap: int = 100_000) -> GoodTable:
    """Count zeta_d-good maximal elements, per subset I."""
    table = GoodTable(str(W.tag), d)
    if coset_zeta_rank(W, 1, d) == 0:
        return table
    if d == 1:
        cert = certify(W, W.identity, frozenset(), 1)
        row = GoodRow(frozenset(), 0, 1, ["e"], 1)
        if relative:
            sec = relative_section(cert, cap=relative_cap)
            row.relative_order, row.parabolic_centralizer_order = sec.order, sec.parabolic_order
        table.rows.append(row)
        return table
    base = find_good(W, d, seed=seed)
    length = base.length
    cls = enumerate_class(W, base.w.perm, 1, cap=cap)
    groups = good_elements_in_class(W, base.w.perm, d, length, enumeration=cls)
    for subset in sorted(groups, key=lambda J: sorted(J)):
        elems = sorted(groups[subset], key=W.sort_key)
        row = GoodRow(subset, length, len(elems), [W.word_string(x) or "e" for x in elems[:limit]],
                      len(cls.elements))
        if relative:
            cert = certify(W, elems[0], subset, d)
            sec = relative_section(cert, cap=relative_cap, enumeration=cls)
            row.relative_order, row.parabolic_centralizer_order = sec.order, sec.parabolic_order
        table.rows.append(row)
    return table


# ---------------------------------------------------------------------------
# relative groups

@dataclass
class RelativeSection:
    order: int
    elements: list[bytes] | None
    centralizer_order: int
    parabolic_order: int | None

    @property
    def surjective(self) -> bool | None:
        """Whether C_{W'}(w phi) already has the order of N_W(V)/C_W(V)."""
        return None if self.parabolic_order is None else self.parabolic_order == self.order


def twisted_centralizer(W: CoxeterSystem, w: bytes, *, cap: int = 100_000, enumeration=None,
                        seed: int = 0) -> tuple[int, list[bytes] | None]:
    """|C_W(w phi)| by orbit-stabilizer, and its elements when at most ``cap``.

    Elements come from Schreier generators of the class action, closed until
    the group reaches the predicted order.
    """
    cls = enumeration or enumerate_class(W, w, 1)
    if w not in cls.parent:
        raise CoxeterError("element not in the enumerated class")
    order = W.order // len(cls.elements)
    if order > cap:
        return order, None
    sig = W.sigma
    trans = {}

    def t(x):
        if x not in trans:
            trans[x] = cls.transversal(x)
        return trans[x]

    rng = np.random.default_rng(seed)
    members = list(cls.elements)
    picks = rng.permutation(len(members))
    group = {W.identity}
    gens: list[bytes] = []
    for idx in picks:
        if len(group) == order:
            break
        x = members[int(idx)]
        for s in range(W.rank):
            y = W.mul(W.mul(W.gens[s], x), W.gens[sig[s]])
            g = W.mul(W.mul(W.inverse(t(y)), W.gens[s]), t(x))
            if g not in group:
                gens.append(g)
                group = _closure(W, gens)
            if len(group) == order:
                break
    if len(group) != order:
        raise CoxeterError("Schreier closure did not reach the stabilizer order")
    tw = t(w)
    tw_inv = W.inverse(tw)
    elems = sorted((W.mul(W.mul(tw, g), tw_inv) for g in group), key=W.sort_key)
    return order, elems


def _closure(W: CoxeterSystem, gens: list[bytes]) -> set[bytes]:
    seen = {W.identity}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = W.mul(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


def parabolic_centralizer_order(W: CoxeterSystem, w: bytes, subset: Iterable[int]) -> int:
    """|C_{W_I}(w phi)| by enumeration of W_I."""
    count = 0
    for v in W.iter_parabolic(subset):
        if W.mul(W.mul(v, w), W.apply_phi(W.inverse(v), 1)) == w:
            count += 1
    return count


def fixed_space_on_parabolic(W: CoxeterSystem, w: bytes, subset: Iterable[int]) -> np.ndarray:
    """Orthonormal basis of V1, the fixed points of w phi on the span of Phi_I."""
    Q = _parabolic_basis(W, sorted(subset))
    if Q.shape[1] == 0:
        return Q
    M = Q.T @ W.orthonormal_matrix(w, 1) @ Q
    _, sv, vh = np.linalg.svd(M - np.eye(len(M)))
    dim = int(np.sum(sv < 1e-8))
    return Q @ vh[len(M) - dim:].T


def relative_section(cert: GoodCertificate, *, cap: int = 100_000, enumeration=None) -> RelativeSection:
    """The section {v in C_W(w phi) : v(Pi_I) = Pi_I} of N_W(V)/C_W(V).

    The order is computed twice: as |C_W(w phi)| / |C_{W_I}(w phi)|, and by
    counting the section when C_W(w phi) is small enough to list.  Also
    returns |C_{W'}(w phi)| for W' the centralizer of the fixed space of w
    phi on the span of Phi_I, which injects into the relative group.
    """
    W, w, I = cert.system, cert.w.perm, cert.I
    cls = enumeration
    if cls is None or w not in cls.parent:
        cls = enumerate_class(W, w, 1)
    cent_order, cent = twisted_centralizer(W, w, cap=cap, enumeration=cls)
    inner = parabolic_centralizer_order(W, w, I)
    order = cent_order // inner
    section = None
    parabolic = cent_order if not I else None
    if cent is not None:
        section = [v for v in cent if all(v[s] in I for s in I)]
        if len(section) != order:
            raise CoxeterError("section size disagrees with the orbit-stabilizer count")
        V1 = fixed_space_on_parabolic(W, w, I)
        parabolic = sum(1 for v in cent if _fixes(W, v, V1))
    cert.relative_order = order
    return RelativeSection(order, section, cent_order, parabolic)


def _fixes(W: CoxeterSystem, v: bytes, basis: np.ndarray) -> bool:
    if basis.shape[1] == 0:
        return True
    U = W.orthonormal_matrix(v, 0)
    return bool(np.allclose(U @ basis, basis, atol=1e-8))


# ---------------------------------------------------------------------------
# classical families

def _pw(W: CoxeterSystem, word: Sequence[int], k: int = 1) -> bytes:
    x = W.element([s - 1 for s in word])
    out = W.identity
    for _ in range(k):
        out = W.mul(out, x)
    return out


def _twisted_part(W: CoxeterSystem, x: bytes, k: int) -> bytes:
    """W-part of (x phi)^k."""
    return W.twisted_power((x, 1), k)[0]


def _type_a_data(n: int):
    def v(d):
        return list(range(1, n - d // 2 + 1)) + list(range(n, (d + 1) // 2 - 1, -1))

    def vprime(d):
        return list(range(1, n - d // 2 + 1))

    def J(d):
        return {i for i in range(1, n + 1) if (d + 1) // 2 + 1 <= i <= n - d // 2}

    return v, vprime, J


def _zero_based(subset) -> frozenset[int]:
    return frozenset(s - 1 for s in subset)


def classical_family_system(family: str, n: int) -> CoxeterSystem:
    names = {"A": f"A{n}", "2A": f"2A{n}", "B": f"B{n}", "D": f"D{n}", "2D": f"2D{n}"}
    if family not in names:
        raise CoxeterError(f"unknown classical family {family!r}")
    return build_system(names[family])


def admissible_classical(family: str, n: int) -> list[int]:
    """All d with nonzero zeta_d-rank for the family."""
    W = classical_family_system(family, n)
    top = 2 * (W.N // max(n, 1)) + 2 * W.phi_order + 2
    top = max(top, 2 * n + 2)
    return [d for d in range(1, top + 1) if coset_zeta_rank(W, 1, d) > 0]


def construct_classical(family: str, n: int, d: int) -> GoodCertificate:
    """The explicit good maximal representative for a classical family."""
    W = classical_family_system(family, n)
    if coset_zeta_rank(W, 1, d) == 0:
        raise NotAdmissible(f"zeta_{d} has rank 0 on {W.tag}")
    if d == 1:
        return certify(W, W.identity, frozenset(), 1, require_maximal=True)
    w, I = _classical_word(W, family, n, d)
    return certify(W, w, _zero_based(I), d, require_maximal=True)


def _classical_word(W: CoxeterSystem, family: str, n: int, d: int) -> tuple[bytes, set[int]]:
    if family in ("A", "2A"):
        v, vprime, J = _type_a_data(n)

        def w_of(e):
            k = (n + 1) // e
            return _pw(W, v(k * e), k), J(k * e)

        def wprime_of(e):
            k = (n + 1) // e
            if k % 2:
                return _twisted_part(W, _pw(W, vprime(k * e)), k), J(k * e)
            return _pw(W, v(k * e), k // 2), J(k * e)

        if family == "A":
            return w_of(d)
        if d % 4 == 0:
            return w_of(d)
        if d % 4 == 2:
            return wprime_of(d // 2)
        x, I = w_of(2 * d)
        return W.mul(x, x), I
    if family == "B":
        def v(e):
            return list(range(n + 1 - e // 2, 1, -1)) + list(range(1, n + 1))

        k = (2 * n) // d if d % 2 == 0 else 2 * (n // d)
        return _pw(W, v(k * d), k), set(range(1, n - k * d // 2 + 1))
    if family in ("D", "2D"):
        def v(e):
            return list(range(n + 1 - e // 2, 2, -1)) + [2, 1] + list(range(3, n + 1))

        def J(e):
            return set() if e == 2 * (n - 1) else set(range(1, n - e // 2 + 1))

        if family == "D" and n % d == 0:
            wn = list(range(1, n + 1)) + list(range(2, n))
            return _pw(W, wn, n // d), set()
        if family == "2D" and (2 * n) % d == 0 and ((2 * n) // d) % 2 == 1:
            return _twisted_part(W, _pw(W, [1] + list(range(3, n + 1))), (2 * n) // d), set()
        k = (2 * n - 2) // d if d % 2 == 0 else 2 * ((n - 1) // d)
        return _pw(W, v(k * d), k), J(k * d)
    raise CoxeterError(f"unknown classical family {family!r}")


def classical_lemma_identities(family: str, n: int, d: int) -> dict[str, bool]:
    """The intermediate identities behind the classical constructions."""
    W = classical_family_system(family, n)
    out = {}
    if family in ("A", "2A") and 1 < d <= n + 1:
        v, vprime, J = _type_a_data(n)
        vd = _pw(W, v(d))
        out["length_v"] = W.length(vd) == 2 * n - d + 1
        if d % 2 == 0:
            wJ = W.longest(_zero_based(J(d)))
            out["half_power_v"] = _pw(W, v(d), d // 2) == W.mul(wJ, W.w0)
    if family == "B" and d % 2 == 0 and 2 <= d <= 2 * n:
        word = list(range(n + 1 - d // 2, 1, -1)) + list(range(1, n + 1))
        wJ = W.longest(_zero_based(range(1, n - d // 2 + 1)))
        out["length_v"] = W.length(_pw(W, word)) == 2 * n - d // 2
        out["half_power_v"] = _pw(W, word, d // 2) == W.mul(wJ, W.w0)
    if family in ("D", "2D") and d % 2 == 0 and 2 <= d <= 2 * (n - 1):
        word = list(range(n + 1 - d // 2, 2, -1)) + [2, 1] + list(range(3, n + 1))
        J = set() if d == 2 * (n - 1) else set(range(1, n - d // 2 + 1))
        wJ = W.longest(_zero_based(J))
        out["length_v"] = W.length(_pw(W, word)) == 2 * n - 1 - d // 2
        out["half_power_v"] = _pw(W, word, d // 2) == W.mul(wJ, W.w0)
    return out


# ---------------------------------------------------------------------------
# restriction of scalars and other eigenvalues

def _inverse_mod(a: int, m: int) -> int:
    return pow(a, -1, m) if m > 1 else 0


def restriction_twist(n: int, d: int, delta: int) -> int:
    """An m with m (n/k) = 1 mod d/k and gcd(m, delta) = 1, k = gcd(n, d)."""
    k = math.gcd(n, d)
    dk, nk = d // k, n // k
    m0 = _inverse_mod(nk % dk, dk) if dk > 1 else 1
    step = dk
    for j in range(delta * dk + 1):
        m = m0 + j * step
        if m > 0 and math.gcd(m, delta) == 1:
            return m
    raise CoxeterError("no twist exponent exists")


def restriction_of_scalars(W: CoxeterSystem, n: int, d: int, *, seed: int = 0,
                           base: GoodCertificate | None = None) -> GoodCertificate:
    """A good element of the product coset W^n sigma built from one of W phi^m."""
    if n == 1:
        return base if base is not None else find_good(W, d, seed=seed)
    if d == 1:
        P = product_system(W, n)
        return certify(P, P.identity, frozenset(), 1)
    k = math.gcd(n, d)
    dk = d // k
    m = restriction_twist(n, d, W.phi_order)
    Wm = W.with_automorphism(W.sigma_power(m))
    if base is None:
        base = find_good(Wm, dk, seed=seed)
    v, I = base.w.perm, base.I
    P = product_system(W, n)
    blocks = [W.identity] * n
    if k == 1 or dk % 2 == 0:
        for i in range(n // k):
            blocks[i * k] = W.apply_phi(v, i * m)
    else:
        e = (dk - 1) // 2
        X, _ = Wm.twisted_power((v, 1), e)
        target = W.mul(W.longest(I), W.w0)
        v1 = Wm.apply_phi(W.mul(W.inverse(X), target), -e)
        v2 = Wm.apply_phi(W.mul(W.inverse(v1), v), -1)
        for i in range(n // k):
            blocks[i * k] = W.apply_phi(v2, i * m)
            blocks[i * k + k // 2] = W.apply_phi(v1, (i + 1) * m)
    w = _embed_blocks(W, P, blocks)
    subset = infer_subset(br.lift(P, w), d)
    if subset is None:
        raise NotGood("assembled element is not periodic")
    return certify(P, w, subset, d)


def _embed_blocks(W: CoxeterSystem, P: CoxeterSystem, blocks: Sequence[bytes]) -> bytes:
    word = []
    for j, x in enumerate(blocks):
        word.extend(j * W.rank + s for s in W.reduced_word(x))
    return P.element(word)


def construct_for_power(k: int, d: int, base: GoodCertificate, W: CoxeterSystem | None = None) -> GoodCertificate:
    """From a zeta_d-good w1 phi^{k'} build w with (w1 phi^{k'})^k = w phi^{1+dd'}.

    ``base`` lives on W with phi replaced by phi^{k'}, k k' = 1 mod d.  The
    result satisfies l(w) = (2k/d) l(w0 w_I^-1) and (b phi)^d = phi^d (pi/pi_I)^k.
    """
    if math.gcd(k, d) != 1 or 2 * k > d:
        raise CoxeterError("need gcd(k, d) = 1 and 2k <= d")
    if k == 1:
        return base
    target = W or base.system
    kp = _inverse_mod(k, d)
    if (k * kp - 1) % d:
        raise CoxeterError("k has no inverse modulo d")
    w1, I = base.w.perm, base.I
    # base.system is target with phi^{k'}; compose with the base twist there
    w, _ = base.system.twisted_power((w1, 1), k)
    braid_w = br.lift(target, w)
    checks = {
        "stabilizes": conjugate_subset(target, I, w) == _phi_subset(target, I),
        "reduced": not any(target.is_left_descent(w, s) for s in I),
        "lengths": Fraction(target.length(w)) == expected_length(target, I, d, k),
        "power": target.twisted_power((w, 1), d)[0] == target.identity,
        "braid": br.twisted_power(braid_w, d) == br.power(periodic_target(target, I), k),
    }
    checks["maximal"] = base.checks["maximal"]
    failed = [c for c, ok in checks.items() if not ok]
    if failed:
        raise NotGood(f"power construction fails: {', '.join(failed)}")
    return GoodCertificate(target, d, I, GroupElement(target, w), braid_w, checks,
                           zeta_rank_raw(target, w, 1, k, d))


def power_base_system(W: CoxeterSystem, k: int, d: int) -> CoxeterSystem:
    """W with phi replaced by phi^{k'}, where k k' = 1 mod d."""
    kp = _inverse_mod(k, d)
    return W.with_automorphism(W.sigma_power(kp))
