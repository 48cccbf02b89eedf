"""Ordering-quality metrics: vertex bandwidth, span and wavefront, their graph
aggregates, and the event-locality scores ES and WES.

Values that are rational (average wavefront, WES and all normalized values)
are computed exactly as :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .graph import BipartiteGraph, GraphError, OrderedGraph, symmetrize


def vertex_bandwidth(g: OrderedGraph, v) -> int:
    """Largest position gap between ``v`` and one of its neighbours (0 if isolated)."""
    pos = g.order.position
    p = pos(v)
    return max((abs(p - pos(w)) for w in g.neighbors(v)), default=0)


def vertex_span(g: OrderedGraph, v) -> int:
    """Distance between the outermost neighbours of ``v``, plus one (0 if isolated)."""
    ps = [g.order.position(w) for w in g.neighbors(v)]
    if not ps:
        return 0
    return max(ps) - min(ps) + 1


def vertex_wavefront(g: OrderedGraph, v) -> int:
    """Literal frontwidth: ``v`` plus every other vertex with a neighbour ``w <= v``.

    Works on partial orders; only ``w`` comparable to ``v`` count.
    """
    order = g.order
    upto = order.parts[order.part_of(v)][: order.position(v)]
    front = {v}
    for w in upto:
        front |= g.neighbors(w)
    return len(front)


def front_width(g: OrderedGraph, v) -> int:
    """Active front at ``v``: ``v`` plus later vertices adjacent to ``v`` or earlier ones.

    Needs a total order.
    """
    if not g.order.is_total:
        raise GraphError("front width needs a total order")
    seq = g.order.sequence()
    k = g.order.position(v)
    later = set(seq[k:])
    front = {v}
    for w in seq[:k]:
        front |= g.neighbors(w) & later
    return len(front)


def _front_widths(g: OrderedGraph) -> list[int]:
    # one left-to-right sweep; equals [front_width(g, v) for v in order]
    seq = g.order.sequence()
    pos = {v: k for k, v in enumerate(seq)}
    enter = [0] * (len(seq) + 1)
    for v in seq:
        ns = g.neighbors(v)
        if not ns:
            continue
        # v sits in the front from its first neighbour until just before itself
        first = min(pos[w] for w in ns)
        if first < pos[v]:
            enter[first] += 1
            enter[pos[v]] -= 1
    widths, active = [], 0
    for k in range(len(seq)):
        active += enter[k]
        widths.append(active + 1)
    return widths


@dataclass(frozen=True)
class MetricsReport:
    """Raw aggregates and their normalized companions for one ordering.

    Graph aggregates (bandwidth, profile, span, avgwf) are ``None`` when the
    report is built without a totally ordered graph.
    """

    bandwidth: int | None
    bandwidth_n: Fraction | None
    profile: int | None
    profile_n: Fraction | None
    span: int | None
    span_n: Fraction | None
    avgwf: Fraction | None
    avgwf_n: Fraction | None
    es: int
    es_n: Fraction
    wes: Fraction
    wes_n: Fraction

    FIELDS = ("bandwidth", "bandwidth_n", "profile", "profile_n", "span", "span_n",
              "avgwf", "avgwf_n", "es", "es_n", "wes", "wes_n")

    def as_dict(self) -> dict:
        return {k: asdict(self)[k] for k in self.FIELDS}

    def format(self) -> str:
        rows = [("bandwidth", self.bandwidth, self.bandwidth_n), ("profile", self.profile, self.profile_n),
                ("span", self.span, self.span_n), ("avg wavefront", self.avgwf, self.avgwf_n),
                ("ES", self.es, self.es_n), ("WES", self.wes, self.wes_n)]
        out = []
        for name, raw, norm in rows:
            if raw is None:
                out.append(f"{name:<14} n/a")
            else:
                out.append(f"{name:<14} {fmt_number(raw)} ({fmt_number(norm)})")
        return "\n".join(out) + "\n"


def fmt_number(x) -> str:
    """Three significant digits for rationals, plain digits for integers."""
    if x is None:
        return ""
    if isinstance(x, int) or (isinstance(x, Fraction) and x.denominator == 1):
        return str(int(x))
    return f"{float(x):.3g}"


def graph_metrics(g: OrderedGraph) -> dict:
    """Bandwidth, profile, span and average wavefront of a totally ordered graph.

    Profile counts one diagonal entry per vertex on top of the vertex
    bandwidths.  Normalizers are ``n``, ``n**2``, ``n**2`` and ``n`` for ``n``
    vertices.
    """
    if not g.order.is_total:
        raise GraphError("graph metrics need a total order")
    n = len(g)
    bws = [vertex_bandwidth(g, v) for v in g.vertices]
    bandwidth = max(bws, default=0)
    profile = sum(bws) + n
    span = sum(vertex_span(g, v) for v in g.vertices)
    avgwf = Fraction(sum(_front_widths(g)), n) if n else Fraction(0)
    if n == 0:
        zero = Fraction(0)
        return dict(bandwidth=0, bandwidth_n=zero, profile=0, profile_n=zero,
                    span=0, span_n=zero, avgwf=zero, avgwf_n=zero)
    return dict(
        bandwidth=bandwidth, bandwidth_n=Fraction(bandwidth, n),
        profile=profile, profile_n=Fraction(profile, n * n),
        span=span, span_n=Fraction(span, n * n),
        avgwf=avgwf, avgwf_n=avgwf / n,
    )


def _transition_spans(bg: BipartiteGraph):
    pos = {c: k for k, c in enumerate(bg.cols)}  # zero-based
    adj = {r: [] for r in bg.rows}
    for r, c in bg.edges:
        adj[r].append(pos[c])
    for r in bg.rows:
        ps = adj[r]
        if ps:
            yield max(ps) - min(ps) + 1, min(ps)


def event_span(bg: BipartiteGraph) -> int:
    """Sum of transition spans over the column order."""
    return sum(s for s, _ in _transition_spans(bg))


def weighted_event_span(bg: BipartiteGraph) -> Fraction:
    """Event span with each transition weighted by ``(N - first) / (N / 2)``.

    ``first`` is the zero-based position of the transition's first column, so
    the weight ranges over ``(0, 2]`` and favours transitions near the bottom.
    """
    n = len(bg.cols)
    if n == 0:
        return Fraction(0)
    return sum((Fraction(s * (n - first) * 2, n) for s, first in _transition_spans(bg)), Fraction(0))


def metrics_report(bg: BipartiteGraph, g: OrderedGraph | None = None) -> MetricsReport:
    """Full report for the (already permuted) dependency graph ``bg``.

    ``g`` is the totally ordered graph the four matrix metrics are read from;
    when omitted the symmetrized form of ``bg`` is used.  Pass ``False`` to
    skip the graph metrics.
    """
    m, n = bg.shape
    if g is None:
        g = symmetrize(bg)
    gm = graph_metrics(g) if g is not False else dict.fromkeys(MetricsReport.FIELDS[:8])
    es = event_span(bg)
    wes = weighted_event_span(bg)
    mn = m * n
    return MetricsReport(
        **gm,
        es=es, es_n=Fraction(es, mn) if mn else Fraction(0),
        wes=wes, wes_n=wes / mn if mn else Fraction(0),
    )
