"""1-safe place/transition nets and their dependency graphs.

Only a small PNML subset is read: places (with optional initial marking),
transitions, and unit-weight arcs, possibly nested in pages.  Anything outside
the 1-safe P/T scope is rejected with :class:`PnmlError`.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Literal

from .graph import BipartiteGraph

PNML_NS = "http://www.pnml.org/version-2009/grammar/pnml"
PTNET_TYPE = "http://www.pnml.org/version-2009/grammar/ptnet"


class PnmlError(ValueError):
    pass


@dataclass(frozen=True)
class PetriNet:
    places: tuple[str, ...]
    transitions: tuple[str, ...]
    pre: dict  # transition -> frozenset of input places
    post: dict  # transition -> frozenset of output places
    marking: frozenset  # initially marked places
    name: str = "net"

    def __post_init__(self):
        for kind, names in (("place", self.places), ("transition", self.transitions)):
            if len(set(names)) != len(names):
                raise PnmlError(f"duplicate {kind} names")
        if set(self.places) & set(self.transitions):
            raise PnmlError("places and transitions share ids")
        places = set(self.places)
        pre = {t: frozenset(self.pre.get(t, ())) for t in self.transitions}
        post = {t: frozenset(self.post.get(t, ())) for t in self.transitions}
        for t in self.transitions:
            bad = (pre[t] | post[t]) - places
            if bad:
                raise PnmlError(f"transition {t} refers to unknown places {sorted(bad)}")
        if set(self.marking) - places:
            raise PnmlError("marking refers to unknown places")
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "post", post)
        object.__setattr__(self, "marking", frozenset(self.marking))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.transitions), len(self.places)

    def enabled(self, t, marking) -> bool:
        return self.pre[t] <= marking

    def fire(self, t, marking) -> frozenset:
        """Successor marking; raises on a second token in a place."""
        rest = marking - self.pre[t]
        clash = rest & self.post[t]
        if clash:
            raise SafetyViolation(f"firing {t} puts a second token in {sorted(clash)}")
        return rest | self.post[t]


class SafetyViolation(RuntimeError):
    """A place would hold more than one token."""


# ---------------------------------------------------------------------------
# dependencies


def write_set(net: PetriNet) -> frozenset:
    """Pairs ``(t, p)`` where ``t`` consumes or produces a token in ``p``."""
    return frozenset((t, p) for t in net.transitions for p in net.pre[t] | net.post[t])


def read_set(net: PetriNet) -> frozenset:
    """Pairs ``(t, p)`` where ``p`` is an input place of ``t``.

    Producing a token into a place of a 1-safe net needs no test of that
    place, so output-only places are write-only.
    """
    return frozenset((t, p) for t in net.transitions for p in net.pre[t])


def dependency_graph(net: PetriNet, kind: Literal["write", "read", "combined"] = "write") -> BipartiteGraph:
    if kind == "write":
        edges = write_set(net)
    elif kind == "read":
        edges = read_set(net)
    elif kind == "combined":
        edges = write_set(net) | read_set(net)
    else:
        raise ValueError(f"unknown dependency kind {kind!r}")
    return BipartiteGraph(net.transitions, net.places, edges)


# ---------------------------------------------------------------------------
# PNML


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _text_of(elem, child: str):
    for sub in elem:
        if _local(sub.tag) == child:
            for t in sub.iter():
                if _local(t.tag) == "text" and t.text is not None:
                    return t.text.strip()
            return (sub.text or "").strip()
    return None


def parse_pnml(document: bytes | str, name: str | None = None) -> PetriNet:
    """Read a P/T net from PNML; the first ``<net>`` element is used."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise PnmlError(f"malformed XML: {exc}") from None
    nets = [e for e in root.iter() if _local(e.tag) == "net"]
    if not nets:
        raise PnmlError("no <net> element")
    net_elem = nets[0]

    places, transitions, marking, seen = [], [], set(), set()
    arcs = []
    for elem in net_elem.iter():
        tag = _local(elem.tag)
        if tag not in ("place", "transition", "arc"):
            continue
        ident = elem.get("id")
        if not ident:
            raise PnmlError(f"<{tag}> without id")
        if ident in seen:
            raise PnmlError(f"duplicate id {ident!r}")
        seen.add(ident)
        if tag == "place":
            places.append(ident)
            text = _text_of(elem, "initialMarking")
            if text:
                try:
                    tokens = int(text)
                except ValueError:
                    raise PnmlError(f"place {ident}: bad initial marking {text!r}") from None
                if tokens not in (0, 1):
                    raise PnmlError(f"place {ident}: initial marking {tokens} is not 0 or 1")
                if tokens:
                    marking.add(ident)
        elif tag == "transition":
            transitions.append(ident)
        else:
            text = _text_of(elem, "inscription")
            if text and text != "1":
                raise PnmlError(f"arc {ident}: multiplicity {text!r} not supported")
            arcs.append((ident, elem.get("source"), elem.get("target")))

    place_set, trans_set = set(places), set(transitions)
    pre = {t: set() for t in transitions}
    post = {t: set() for t in transitions}
    for ident, src, dst in arcs:
        if src in place_set and dst in trans_set:
            pre[dst].add(src)
        elif src in trans_set and dst in place_set:
            post[src].add(dst)
        else:
            raise PnmlError(f"arc {ident}: endpoints {src!r} -> {dst!r} are not a place/transition pair")
    name = name or net_elem.get("id") or "net"
    return PetriNet(tuple(places), tuple(transitions), pre, post, frozenset(marking), name)


def to_pnml(net: PetriNet) -> bytes:
    ET.register_namespace("", PNML_NS)
    q = lambda tag: f"{{{PNML_NS}}}{tag}"  # noqa: E731
    root = ET.Element(q("pnml"))
    net_elem = ET.SubElement(root, q("net"), id=net.name, type=PTNET_TYPE)
    page = ET.SubElement(net_elem, q("page"), id="page0")
    for p in net.places:
        pe = ET.SubElement(page, q("place"), id=p)
        if p in net.marking:
            ET.SubElement(ET.SubElement(pe, q("initialMarking")), q("text")).text = "1"
    for t in net.transitions:
        ET.SubElement(page, q("transition"), id=t)
    k = 0
    for t in net.transitions:
        for p in (p for p in net.places if p in net.pre[t]):
            ET.SubElement(page, q("arc"), id=f"a{k}", source=p, target=t)
            k += 1
        for p in (p for p in net.places if p in net.post[t]):
            ET.SubElement(page, q("arc"), id=f"a{k}", source=t, target=p)
            k += 1
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)


# ---------------------------------------------------------------------------
# model families


def running_example() -> PetriNet:
    """The six-transition, five-place net used throughout the golden tests."""
    pre = {"t1": {"p4"}, "t2": {"p2"}, "t3": {"p3"}, "t4": {"p5"}, "t5": {"p1"}, "t6": {"p1", "p3"}}
    post = {"t1": {"p2", "p5"}, "t2": {"p3"}, "t3": {"p2"}, "t4": {"p1"}, "t5": {"p5"}, "t6": {"p4"}}
    return PetriNet(
        places=("p1", "p2", "p3", "p4", "p5"),
        transitions=("t1", "t2", "t3", "t4", "t5", "t6"),
        pre=pre, post=post, marking=frozenset({"p4"}), name="example",
    )


def philosophers(n: int) -> PetriNet:
    """Dining philosophers on a ring, declared kind by kind.

    Each philosopher ``i`` thinks, picks up one fork first (left or right),
    then the other, eats, and releases both.  Places and transitions are
    declared grouped by kind (all ``think``, then all ``fork``, ...), which is
    a poor variable order for decision diagrams.
    """
    if n < 2:
        raise ValueError("need at least two philosophers")
    i1 = lambda i: i % n + 1  # noqa: E731
    kinds = ("think", "fork", "left", "right", "eat")
    places = tuple(f"{k}_{i}" for k in kinds for i in range(1, n + 1))
    pre, post, names = {}, {}, {}
    for i in range(1, n + 1):
        j = i1(i)
        names.setdefault("take_left", []).append(t := f"take_left_{i}")
        pre[t], post[t] = {f"think_{i}", f"fork_{i}"}, {f"left_{i}"}
        names.setdefault("take_right", []).append(t := f"take_right_{i}")
        pre[t], post[t] = {f"think_{i}", f"fork_{j}"}, {f"right_{i}"}
        names.setdefault("finish_left", []).append(t := f"finish_left_{i}")
        pre[t], post[t] = {f"left_{i}", f"fork_{j}"}, {f"eat_{i}"}
        names.setdefault("finish_right", []).append(t := f"finish_right_{i}")
        pre[t], post[t] = {f"right_{i}", f"fork_{i}"}, {f"eat_{i}"}
        names.setdefault("release", []).append(t := f"release_{i}")
        pre[t], post[t] = {f"eat_{i}"}, {f"think_{i}", f"fork_{i}", f"fork_{j}"}
    transitions = tuple(t for ts in names.values() for t in ts)
    marking = frozenset(f"think_{i}" for i in range(1, n + 1)) | frozenset(f"fork_{i}" for i in range(1, n + 1))
    return PetriNet(places, transitions, pre, post, marking, name=f"philosophers-{n}")
