import random

import numpy as np
import pytest

from figures import WRITE_MATRIX
from oracles import random_safe_net
from varorder import (
    PetriNet,
    PnmlError,
    SafetyViolation,
    dependency_graph,
    parse_pnml,
    philosophers,
    read_set,
    to_pnml,
    write_set,
)

EXAMPLE_PNML = """<?xml version="1.0"?>
<pnml xmlns="http://www.pnml.org/version-2009/grammar/pnml">
  <net id="example" type="http://www.pnml.org/version-2009/grammar/ptnet">
    <page id="pg">
      <place id="p1"/><place id="p2"/><place id="p3"/>
      <place id="p4"><initialMarking><text>1</text></initialMarking></place>
      <place id="p5"/>
      <transition id="t1"/><transition id="t2"/><transition id="t3"/>
      <transition id="t4"/><transition id="t5"/><transition id="t6"/>
      <arc id="a1" source="p4" target="t1"/><arc id="a2" source="t1" target="p2"/>
      <arc id="a3" source="t1" target="p5"/>
      <arc id="a4" source="p2" target="t2"/><arc id="a5" source="t2" target="p3"/>
      <arc id="a6" source="p3" target="t3"/><arc id="a7" source="t3" target="p2"/>
      <arc id="a8" source="p5" target="t4"/><arc id="a9" source="t4" target="p1"/>
      <arc id="a10" source="p1" target="t5"/><arc id="a11" source="t5" target="p5"/>
      <arc id="a12" source="p1" target="t6"/><arc id="a13" source="p3" target="t6"/>
      <arc id="a14" source="t6" target="p4"/>
    </page>
  </net>
</pnml>
"""


def test_parse_running_example(net):
    parsed = parse_pnml(EXAMPLE_PNML)
    assert parsed == net
    assert parsed.pre["t6"] == {"p1", "p3"} and parsed.post["t1"] == {"p2", "p5"}
    assert parsed.marking == {"p4"}


def test_parse_without_namespace_and_with_nested_pages():
    doc = """<pnml><net id="n"><page id="a"><page id="b">
        <place id="p"><initialMarking><text>1</text></initialMarking></place>
        <transition id="t"/><arc id="x" source="p" target="t"><inscription><text>1</text></inscription></arc>
        </page></page></net></pnml>"""
    net = parse_pnml(doc)
    assert net.places == ("p",) and net.pre["t"] == {"p"} and net.marking == {"p"}


@pytest.mark.parametrize("doc, message", [
    ("<pnml><net id='n'><place id='p'/><place id='p'/></net></pnml>", "duplicate"),
    ("<pnml><net id='n'><place id='x'/><transition id='x'/></net></pnml>", "duplicate"),
    ("<pnml><net id='n'><place id='p'><initialMarking><text>2</text></initialMarking></place></net></pnml>",
     "not 0 or 1"),
    ("<pnml><net id='n'><place id='p'><initialMarking><text>x</text></initialMarking></place></net></pnml>",
     "bad initial marking"),
    ("<pnml><net id='n'><place id='p'/><transition id='t'/>"
     "<arc id='a' source='p' target='t'><inscription><text>2</text></inscription></arc></net></pnml>",
     "multiplicity"),
    ("<pnml><net id='n'><place id='p'/><place id='q'/><arc id='a' source='p' target='q'/></net></pnml>",
     "not a place/transition pair"),
    ("<pnml><net id='n'><place/></net></pnml>", "without id"),
    ("<pnml><nope/></pnml>", "no <net>"),
    ("<pnml><net", "malformed"),
])
def test_parse_errors(doc, message):
    with pytest.raises(PnmlError, match=message):
        parse_pnml(doc)


def test_pnml_round_trip(net):
    assert parse_pnml(to_pnml(net)) == net


def test_pnml_round_trip_random_nets():
    rng = random.Random(7)
    for _ in range(30):
        places, transitions, pre, post, marking = random_safe_net(rng)
        net = PetriNet(tuple(places), tuple(transitions), pre, post, marking)
        assert parse_pnml(to_pnml(net)) == net


def test_write_and_read_sets(net):
    w, r = write_set(net), read_set(net)
    assert {p for t, p in w if t == "t1"} == {"p2", "p4", "p5"}
    assert {p for t, p in w if t == "t6"} == {"p1", "p3", "p4"}
    assert {p for t, p in r if t == "t1"} == {"p4"}
    assert {p for t, p in r if t == "t6"} == {"p1", "p3"}
    assert r <= w


def test_dependency_graphs(net):
    w = dependency_graph(net, "write")
    assert np.array_equal(w.biadjacency(), WRITE_MATRIX)
    assert len(w.edges) == 14
    assert WRITE_MATRIX.sum(axis=1).tolist() == [3, 2, 2, 2, 2, 3]
    assert dependency_graph(net, "combined") == w
    assert len(dependency_graph(net, "read").edges) == 7
    with pytest.raises(ValueError):
        dependency_graph(net, "other")


def test_self_loop_place_is_written():
    net = PetriNet(("p",), ("t",), {"t": {"p"}}, {"t": {"p"}}, frozenset({"p"}))
    assert write_set(net) == {("t", "p")} and read_set(net) == {("t", "p")}


def test_firing(net):
    assert net.enabled("t1", {"p4"})
    assert net.fire("t1", frozenset({"p4"})) == {"p2", "p5"}
    bad = PetriNet(("p", "q"), ("t",), {"t": {"p"}}, {"t": {"q"}}, frozenset({"p", "q"}))
    with pytest.raises(SafetyViolation):
        bad.fire("t", bad.marking)


def test_net_validation():
    with pytest.raises(PnmlError):
        PetriNet(("p",), ("t",), {"t": {"zz"}}, {}, frozenset())
    with pytest.raises(PnmlError):
        PetriNet(("p",), (), {}, {}, frozenset({"q"}))


def test_philosophers_shape():
    net = philosophers(3)
    assert net.shape == (15, 15)
    assert net.places[:3] == ("think_1", "think_2", "think_3")
    assert net.pre["take_right_3"] == {"think_3", "fork_1"}
    assert len(net.marking) == 6
    with pytest.raises(ValueError):
        philosophers(1)
