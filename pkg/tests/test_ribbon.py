from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from garside import braid as br
from garside.braid import BraidElement
from garside.coxeter import CoxeterError
from garside.ribbon import (
    ConjugatesOutOfS,
    NotIReduced,
    RibbonMorphism,
    alpha_I,
    atoms_from,
    braid_conjugate_subset,
    category_normal_form,
    compose,
    conjugate_subset,
    garside_map,
    identity_morphism,
    is_I_reduced,
    make_morphism,
    orbit,
    parabolic_split_check,
)

from conftest import system


def b(name, word):
    return br.from_word(system(name), word)


def test_alpha_examples():
    A2 = system("A2")
    x = b("A2", "2")
    assert alpha_I({1}, x) == (x, BraidElement.identity(A2))
    assert alpha_I({1}, b("A2", "21")) == (b("A2", "2"), b("A2", "1"))
    assert alpha_I({0}, b("A2", "121")) == (b("A2", "1"), b("A2", "21"))


def test_make_morphism_examples():
    A2 = system("A2")
    m = make_morphism(set(), b("A2", "1211"))
    assert m.source == m.target == frozenset()
    m = make_morphism({0}, b("A2", "21"))
    assert m.target == {1}
    with pytest.raises(NotIReduced):
        make_morphism({0}, b("A2", "1"))
    with pytest.raises(ConjugatesOutOfS):
        make_morphism({0}, b("A2", "2"))


def test_atoms_examples():
    A2, A3, A4 = system("A2"), system("A3"), system("A4")
    (m,) = atoms_from(A2, {0})
    assert str(m.braid) == "21" and m.target == {1}
    assert sorted(str(m.braid) for m in atoms_from(A3, set())) == ["1", "2", "3"]
    (m,) = [m for m in atoms_from(A4, {2}) if 1 in A4.left_descents(m.braid.factors[0])]
    assert m.braid.atom_length() == 2
    assert is_I_reduced({2}, m.braid)
    assert m.target == conjugate_subset(A4, {2}, m.braid.image())


def test_garside_map_examples():
    A2, A3 = system("A2"), system("A3")
    assert garside_map(A3, set()).braid == br.delta(A3)
    g = garside_map(A2, {0})
    assert str(g.braid) == "21" and g.target == {1}
    back = garside_map(A2, g.target)
    loop = compose(g, back)
    assert loop.braid == br.quotient(br.pi(A2, {0}), br.pi(A2))
    full = garside_map(A3, range(3))
    assert full.braid.is_identity() and full.target == frozenset(range(3))


def test_category_normal_form_examples():
    A2 = system("A2")
    m = make_morphism({0}, b("A2", "2112"))
    chain = category_normal_form(m)
    assert [(sorted(c.source), str(c.braid), sorted(c.target)) for c in chain] == [
        ([0], "21", [1]), ([1], "12", [0])]
    assert category_normal_form(identity_morphism(A2, {0})) == []
    s = make_morphism({0}, b("A2", "21"))
    assert len(category_normal_form(s)) == 1


def morphisms_up_to(W, subset, max_atoms):
    """Every validated morphism out of I with braid atom length <= bound."""
    subset = frozenset(subset)
    out = {}
    seen = {()}
    layer = [BraidElement.identity(W)]
    for _ in range(max_atoms + 1):
        nxt = []
        for x in layer:
            target = braid_conjugate_subset(subset, x)
            if is_I_reduced(subset, x) and target is not None:
                out[x.factors] = RibbonMorphism(subset, x, target)
            for s in range(W.rank):
                y = br.product(x, br.from_word(W, [s]))
                if y.factors not in seen:
                    seen.add(y.factors)
                    nxt.append(y)
        layer = nxt
    return out


@pytest.mark.parametrize("name,subset", [("A2", {0}), ("A3", {1}), ("A3", {0}), ("A3", {0, 2})])
def test_morphisms_factor_through_atoms(name, subset):
    W = system(name)
    valid = morphisms_up_to(W, subset, 5)
    # close the identities under atom composition, within the same bound
    reached = {}
    frontier = [identity_morphism(W, subset)]
    while frontier:
        nxt = []
        for m in frontier:
            if m.braid.factors in reached:
                continue
            reached[m.braid.factors] = m
            for a in atoms_from(W, m.target):
                c = compose(m, a)
                if c.braid.atom_length() <= 5:
                    nxt.append(c)
        frontier = nxt
    assert set(reached) == set(valid)
    for key, m in reached.items():
        assert m.target == valid[key].target


@pytest.mark.parametrize("name,subset", [("A3", {1}), ("A3", {0}), ("B3", {0}), ("A4", {1, 2})])
def test_quotient_and_lcm_closure(name, subset):
    W = system(name)
    valid = list(morphisms_up_to(W, subset, 4).values())
    rng = random.Random(3)
    for _ in range(300):
        f, g = rng.choice(valid), rng.choice(valid)
        m = br.right_lcm(f.braid, g.braid)
        assert is_I_reduced(subset, m)
        assert braid_conjugate_subset(subset, m) is not None
        if br.divides(g.braid, f.braid):
            h = br.quotient(g.braid, f.braid)
            # the quotient is a morphism from the target of g
            assert is_I_reduced(g.target, h)
            assert braid_conjugate_subset(g.target, h) == f.target
        c = br.left_gcd(f.braid, g.braid)
        assert braid_conjugate_subset(subset, c) is not None


@pytest.mark.parametrize("name,subset", [("A3", {1}), ("A4", {0, 1}), ("B3", {1, 2})])
def test_composites_are_morphisms(name, subset):
    W = system(name)
    valid = morphisms_up_to(W, subset, 3)
    for f in valid.values():
        for g in morphisms_up_to(W, f.target, 2).values():
            c = compose(f, g)
            assert is_I_reduced(subset, c.braid)
            assert braid_conjugate_subset(subset, c.braid) == c.target


def test_composition_needs_matching_ends():
    A2 = system("A2")
    f = make_morphism({0}, b("A2", "21"))
    with pytest.raises(CoxeterError):
        compose(f, f)


def test_parabolic_split_examples():
    A4 = system("A4")
    I = frozenset({0, 1})
    v = BraidElement.simple(A4, A4.longest(I))
    for a in atoms_from(A4, I):
        assert parabolic_split_check(I, v, a)
    assert parabolic_split_check(I, BraidElement.identity(A4), atoms_from(A4, I)[0])


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_parabolic_split_random(name):
    W = system(name)
    rng = random.Random(11)
    subsets = [frozenset(c) for r in (1, 2) for c in itertools.combinations(range(W.rank), r)]
    done = 0
    while done < 100:
        I = rng.choice(subsets)
        v = br.from_word(W, [rng.choice(sorted(I)) for _ in range(rng.randint(0, 6))])
        valid = list(morphisms_up_to(W, I, 4).values())
        w = rng.choice(valid)
        assert parabolic_split_check(I, v, w)
        # alpha multiplicativity
        alpha_vw, _ = alpha_I(I, br.product(v, w.braid))
        assert alpha_vw == v
        done += 1


def test_orbits():
    A3 = system("A3")
    assert orbit(A3, {0}) == [frozenset({0}), frozenset({1}), frozenset({2})]
    assert orbit(A3, {0, 2}) == [frozenset({0, 2})]
    assert orbit(system("A2"), set()) == [frozenset()]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=9), st.sets(st.integers(0, 2), max_size=2))
def test_alpha_decomposition(word, subset):
    W = system("A3")
    x = br.from_word(W, word)
    a, w = alpha_I(subset, x)
    assert br.product(a, w) == x
    assert all(W.in_parabolic(f, subset) for f in a.factors)
    assert is_I_reduced(subset, w)
