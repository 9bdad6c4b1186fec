from __future__ import annotations

import random
import re

import pytest

from garside import braid as br
from garside.braid import BraidElement, NotADivisor
from garside.conjcat import (
    CategoryGraph,
    ConjObject,
    cyc_step,
    emit_json,
    endo_generators,
    explore_component,
    gcd_in_cyc,
    in_cyc,
    paths_within,
    simple_conjugators,
    to_dot,
)
from garside.periodic import construct_classical, periodic_target

from _oracles import ad_conjugators, normal_sequences
from conftest import system

D4_FIGURE = {"123243", "232431", "231431", "314312", "132432", "324312",
             "123143", "131432", "231234", "243123", "131234", "143123"}
A5_FIGURE = set("21435 43543 35432 25432 24543 32145 12143 12343 12324 12132 14354 21325 "
                "34354 23435 23245 32454 12543 13214 34321 24321 21321 13254".split())


def b(name, word):
    return br.from_word(system(name), word)


def test_cyc_step_examples():
    obj = ConjObject(b("A2", "12"))
    assert cyc_step(obj, BraidElement.identity(system("A2"))) == obj
    assert cyc_step(obj, b("A2", "1")).braid == b("A2", "21")
    assert cyc_step(obj, obj.braid).braid == obj.braid
    W = system("A5")
    tw = ConjObject(b("A5", "21325"), frozenset(), tuple(W.delta_sigma))
    assert cyc_step(tw, tw.braid).braid == br.apply_sigma(tw.braid, W.delta_sigma)
    with pytest.raises(NotADivisor):
        cyc_step(obj, b("A2", "2"))


def test_simple_conjugators_examples():
    got = [str(v) for v in simple_conjugators(ConjObject(b("A2", "12")))]
    assert got == ["1", "12"]
    obj = ConjObject(b("A2", "2112"), frozenset({0}))
    assert [str(v) for v in simple_conjugators(obj)] == ["21"]
    x = b("A3", "1232")
    assert len(simple_conjugators(ConjObject(x))) == len(br.left_simple_divisors(x)) - 1


def test_small_component():
    g = explore_component(ConjObject(b("A2", "12")))
    assert g.node_words() == ["12", "21"]
    assert len(g.edges) == 4 and g.complete
    assert {str(v) for _, _, v, _ in g.edges} == {"1", "12", "2", "21"}


def test_d4_figure():
    W = system("D4")
    g = explore_component(ConjObject(b("D4", "123423")), fixed_under=W.delta_sigma)
    assert set(g.node_words()) == D4_FIGURE and len(g.nodes) == 12


def test_a5_figure():
    W = system("A5")
    s = b("A5", "21325")
    w = br.product(s, br.apply_sigma(s, W.delta_sigma))
    assert br.power(w, 3) == br.delta(W, 2)
    g = explore_component(ConjObject(s, frozenset(), tuple(W.delta_sigma)))
    assert set(g.node_words()) == A5_FIGURE


def test_d4_loop_generators():
    gens = {str(x) for x in endo_generators(ConjObject(b("D4", "123423")), 2)}
    assert "24" in gens
    # every generator is a genuine endomorphism
    W = system("D4")
    w = b("D4", "123423")
    for x in endo_generators(ConjObject(w), 2):
        assert br.product(w, x) == br.product(x, w)


def test_endo_examples():
    A2 = system("A2")
    obj = ConjObject(br.pi(A2))
    g = explore_component(obj)
    loops = paths_within(g, 0, 1)[obj.key()]
    assert br.delta(A2).factors in loops
    # Delta^2 is central, so the atoms already generate
    assert [str(x) for x in endo_generators(obj, 2)] == ["1", "2"]


def test_max_nodes_flag():
    g = explore_component(ConjObject(b("D4", "123423")), max_nodes=5)
    assert not g.complete and len(g.nodes) == 5


def sample_graphs():
    A3, B3 = system("A3"), system("B3")
    yield explore_component(ConjObject(b("A3", "1232")))
    yield explore_component(ConjObject(b("B3", "123")))
    yield explore_component(ConjObject(periodic_target(A3, {1}), frozenset({1})))
    yield explore_component(ConjObject(b("2A3", "12"), frozenset(), tuple(system("2A3").sigma)))
    yield explore_component(ConjObject(b("D4", "123423")))


@pytest.mark.parametrize("graph", list(sample_graphs()), ids=["A3", "B3", "A3-ribbon", "2A3", "D4"])
def test_edge_relations(graph):
    for edge in graph.edges:
        i, j, x, simple = edge
        assert graph.edge_relation_holds(edge)
        assert simple and br.divides(x, graph.nodes[i].braid)


@pytest.mark.parametrize("graph", list(sample_graphs())[:2], ids=["A3", "B3"])
def test_left_right_duality(graph):
    edges = {(i, j, x.factors) for i, j, x, _ in graph.edges}
    for i, j, x, _ in graph.edges:
        rest = br.quotient(x, graph.nodes[i].braid)
        if len(rest.factors) == 1:
            assert (j, i, rest.factors) in edges


def test_fixed_point_consistency():
    W = system("A3")
    F = W.delta_sigma
    for word in ["13", "2132", "121321", "1232 . 3".replace(" . ", "")]:
        w = br.from_word(W, word)
        g = explore_component(ConjObject(w), fixed_under=F)
        for _, _, x, _ in g.edges:
            assert br.apply_sigma(x, F) == x
        if br.apply_sigma(w, F) == w:
            assert all(br.apply_sigma(n.braid, F) == n.braid for n in g.nodes)


def periodic_objects():
    for name in ["A2", "A3"]:
        W = system(name)
        for d in range(1, W.rank + 2):
            c = construct_classical("A", W.rank, d)
            w = br.lift(W, c.w) if d > 1 else periodic_target(W, c.I)
            yield name, ConjObject(w, c.I)
    A3 = system("A3")
    yield "A3", ConjObject(periodic_target(A3, {1}), frozenset({1}))
    yield "A3", ConjObject(br.lift(A3, A3.mul(A3.longest({0, 2}), A3.w0)), frozenset({0, 2}))


@pytest.mark.parametrize("name,obj", list(periodic_objects()))
def test_ad_equals_cyc(name, obj):
    seqs = normal_sequences(system(name), 4 if name == "A2" else 3)
    for x in ad_conjugators(obj, seqs):
        assert in_cyc(obj, x)


def test_gcd_stays_in_cyc():
    rng = random.Random(5)
    for name, word in [("A3", "1232"), ("A3", "132"), ("B3", "123")]:
        obj = ConjObject(b(name, word))
        g = explore_component(obj)
        paths = [BraidElement(obj.system, f) for fs in paths_within(g, 0, 3).values() for f in fs]
        for _ in range(150):
            x, y = rng.choice(paths), rng.choice(paths)
            assert in_cyc(obj, x) and in_cyc(obj, y)
            assert in_cyc(obj, gcd_in_cyc(x, y))
        x = paths[-1]
        assert gcd_in_cyc(x, x) == x
        assert gcd_in_cyc(x, BraidElement.identity(obj.system)).is_identity()


def test_not_in_cyc():
    obj = ConjObject(b("A2", "12"))
    assert not in_cyc(obj, b("A2", "2"))


_NODE = re.compile(r'^  n(\d+) \[label="([^"]*)"\];$')
_EDGE = re.compile(r'^  n(\d+) -> n(\d+) \[label="([^"]*)"(, style=dashed)?\];$')


def parse_dot(text):
    lines = text.splitlines()
    assert re.match(r"^digraph \w+ \{$", lines[0]) and lines[-1] == "}"
    nodes, edges = {}, []
    for line in lines[1:-1]:
        if m := _NODE.match(line):
            nodes[int(m[1])] = m[2]
        elif m := _EDGE.match(line):
            edges.append((int(m[1]), int(m[2]), m[3]))
        else:
            raise AssertionError(f"not DOT: {line!r}")
    return nodes, edges


def test_dot_output():
    empty = CategoryGraph(system("A2"), [], [])
    assert parse_dot(to_dot(empty)) == ({}, [])
    g = explore_component(ConjObject(b("A2", "12")))
    nodes, edges = parse_dot(to_dot(g))
    assert nodes == {0: "12", 1: "21"}
    assert {label for _, _, label in edges} >= {"1", "2"}
    D = explore_component(ConjObject(b("D4", "123423")))
    nodes, edges = parse_dot(to_dot(D))
    assert set(nodes.values()) == D4_FIGURE
    assert [(i, j) for i, j, _ in edges] == [(i, j) for i, j, _, _ in D.edges]


def test_json_export():
    import json
    g = explore_component(ConjObject(b("A2", "12")))
    data = json.loads(emit_json(g))
    assert [n["word"] for n in data["nodes"]] == ["12", "21"]
    assert len(data["edges"]) == 4 and data["complete"]
    assert emit_json(g) == emit_json(explore_component(ConjObject(b("A2", "12"))))
