"""Benchmark plumbing: categories, run records, CSV/JSON-lines output, PBM
rendering and the Mean Standard Score."""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .graph import BipartiteGraph, SplitPermutation, parse_matrix
from .metrics import MetricsReport, metrics_report
from .ordering import SHORT_NAMES, OrderingConfig, reorder
from .petri import PetriNet, dependency_graph, parse_pnml
from .reach import NodeLimitExceeded, ReachConfig, ReachResult, reach

CSV_HEADER = (
    "model", "category", "bandwidth", "bandwidth_n", "profile", "profile_n", "span", "span_n",
    "avgwf", "avgwf_n", "es", "es_n", "wes", "wes_n", "states", "final_nodes", "peak_nodes",
    "reorder_ms", "reach_ms",
)
MATRIX_METRICS = ("bandwidth", "profile", "span", "avgwf")


# ---------------------------------------------------------------------------
# models


@dataclass(frozen=True)
class Model:
    """A loaded model; ``net`` is ``None`` for bare dependency matrices."""

    name: str
    graph: BipartiteGraph
    net: PetriNet | None = None


def load_model(path) -> Model:
    """Load PNML (anything starting with ``<``) or the ``M N`` matrix text format."""
    path = Path(path)
    data = path.read_bytes()
    name = path.stem
    if data.lstrip().startswith(b"<"):
        net = parse_pnml(data, name=name)
        return Model(name, dependency_graph(net, "write"), net)
    a = parse_matrix(data.decode("ascii"))
    return Model(name, BipartiteGraph.from_matrix(a))


# ---------------------------------------------------------------------------
# categories


@dataclass(frozen=True)
class Category:
    """``none`` or ``[bi|tot],<alg>[,hf|,vf]``."""

    graph: str | None = None
    algorithm: str | None = None
    flip: str = "none"

    @classmethod
    def parse(cls, label: str) -> Category:
        label = label.strip()
        if label == "none":
            return cls()
        parts = label.split(",")
        if len(parts) not in (2, 3) or parts[0] not in ("bi", "tot") or parts[1] not in SHORT_NAMES.values():
            raise ValueError(f"bad category label {label!r}")
        flip = "none"
        if len(parts) == 3:
            if parts[2] not in ("hf", "vf"):
                raise ValueError(f"bad flip in category label {label!r}")
            flip = {"hf": "horizontal", "vf": "vertical"}[parts[2]]
        return cls(parts[0], parts[1], flip)

    def __str__(self):
        if self.graph is None:
            return "none"
        suffix = {"none": "", "horizontal": ",hf", "vertical": ",vf"}[self.flip]
        return f"{self.graph},{self.algorithm}{suffix}"

    @property
    def is_none(self) -> bool:
        return self.graph is None

    def config(self) -> OrderingConfig:
        return OrderingConfig(self.algorithm, use_total_graph=self.graph == "tot")


# ---------------------------------------------------------------------------
# runs


@dataclass(frozen=True)
class RunRecord:
    model: str
    category: str
    metrics: MetricsReport
    reach: ReachResult | None
    reorder_ms: float
    reach_ms: float
    error: str | None = None
    timing_trusted: bool = True

    def row(self) -> dict:
        m = self.metrics.as_dict()
        r = self.reach
        row = {"model": self.model, "category": self.category}
        row.update({k: _plain(v) for k, v in m.items()})
        row.update(
            states=r.state_count if r else None,
            final_nodes=r.final_node_count if r else None,
            peak_nodes=r.peak_node_count if r else None,
            reorder_ms=round(self.reorder_ms, 3),
            reach_ms=round(self.reach_ms, 3) if r else None,
        )
        return row

    def log_line(self) -> str:
        rec = dict(self.row())
        rec["error"] = self.error
        rec["timing_trusted"] = self.timing_trusted
        return json.dumps(rec, sort_keys=False)


def _plain(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    return v


def run_cell(model: Model, category: Category, strategy: str = "sat-like", granularity: int = 10,
             max_nodes: int | None = None, do_reach: bool = True) -> RunRecord:
    """Reorder, score and (for Petri nets) explore one model under one category."""
    bg = model.graph
    t0 = time.perf_counter()
    if category.is_none:
        sp = SplitPermutation.identity(*bg.shape)
        graph = False
        permuted = bg
    else:
        r = reorder(bg, category.config(), category.flip)
        sp, graph = r.split, r.graph
        permuted = bg.permuted(sp)
    reorder_ms = (time.perf_counter() - t0) * 1e3
    report = metrics_report(permuted, graph)
    result, error, reach_ms = None, None, 0.0
    if do_reach and model.net is not None:
        cfg = ReachConfig(strategy, granularity, variable_order=sp.cols, transition_order=sp.rows, max_nodes=max_nodes)
        t0 = time.perf_counter()
        try:
            result = reach(model.net, cfg)
            result = ReachResult(result.state_count, result.final_node_count, result.peak_node_count,
                                 result.iterations)
        except NodeLimitExceeded as exc:
            error = f"node limit: {exc.peak}"
        reach_ms = (time.perf_counter() - t0) * 1e3
    return RunRecord(model.name, str(category), report, result, reorder_ms, reach_ms, error)


def _run_cell_safe(args) -> RunRecord:
    path, label, strategy, granularity, max_nodes, trusted = args
    try:
        rec = run_cell(load_model(path), Category.parse(label), strategy, granularity, max_nodes)
    except Exception as exc:  # recorded per cell, the grid keeps going
        empty = MetricsReport(*([None] * 8), es=None, es_n=None, wes=None, wes_n=None)
        return RunRecord(Path(path).stem, label, empty, None, 0.0, 0.0, f"{type(exc).__name__}: {exc}", trusted)
    return RunRecord(rec.model, rec.category, rec.metrics, rec.reach, rec.reorder_ms, rec.reach_ms,
                     rec.error, trusted)


def run_grid(models, categories, strategy="sat-like", granularity=10, max_nodes=None, jobs=1) -> list[RunRecord]:
    trusted = jobs <= 1
    stems = [Path(m).stem for m in models]
    if len(set(stems)) != len(stems):
        raise ValueError("model file names must be unique without their extension")
    cells = [(str(m), str(c), strategy, granularity, max_nodes, trusted) for m in models for c in categories]
    if jobs <= 1:
        return [_run_cell_safe(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell_safe, cells))


def records_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_HEADER, lineterminator="\n")
    w.writeheader()
    for rec in records:
        w.writerow({k: ("" if v is None else v) for k, v in rec.row().items()})
    return buf.getvalue()


def write_atomic(path, data: str | bytes) -> None:
    """Write to a temporary file next to ``path``, then rename over it."""
    path = Path(path)
    mode = "wb" if isinstance(data, bytes) else "w"
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, mode) as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# mean standard score


def mean_standard_score(table: dict) -> dict:
    """Per-category mean over models of the category's z-score within a model.

    ``table`` maps ``(model, category)`` to a value.  The standard deviation
    is the population one over categories; a model whose categories all tie
    contributes 0 to every category.
    """
    if not table:
        raise ValueError("empty table")
    models = sorted({p for p, _ in table}, key=str)
    categories = list(dict.fromkeys(c for _, c in table))
    if len(categories) < 2:
        raise ValueError("need at least two categories")
    missing = [(p, c) for p in models for c in categories if (p, c) not in table]
    if missing:
        raise ValueError(f"missing cells: {missing[:5]}")
    scores = dict.fromkeys(categories, 0.0)
    for p in models:
        row = np.array([float(table[p, c]) for c in categories])
        sigma = row.std()
        if sigma == 0:
            continue
        z = (row - row.mean()) / sigma
        for c, zc in zip(categories, z):
            scores[c] += zc
    return {c: s / len(models) for c, s in scores.items()}


def mss_summary(records, group_by_kind: bool = True) -> dict:
    """MSS per metric and category over the models every category completed.

    With ``group_by_kind`` the four matrix metrics are standardized within
    bipartite and total-graph categories separately; ``none`` has no matrix
    metrics and is left out of those.
    """
    fields = [f for f in CSV_HEADER[2:] if not f.endswith("_n")]
    ok = [r for r in records if r.error is None]
    by_cat = {}
    for r in ok:
        by_cat.setdefault(r.category, {})[r.model] = r.row()
    if not by_cat:
        return {}
    out = {}
    for f in fields:
        groups = [list(by_cat)]
        if f in MATRIX_METRICS:
            cats = [c for c in by_cat if c != "none"]
            groups = ([[c for c in cats if c.startswith("bi,")], [c for c in cats if c.startswith("tot,")]]
                      if group_by_kind else [cats])
        for group in groups:
            if len(group) < 2:
                continue
            # models with a value for this field in every category of the group
            models = set.intersection(*({p for p, row in by_cat[c].items() if row[f] is not None} for c in group))
            if not models:
                continue
            table = {(p, c): by_cat[c][p][f] for c in group for p in models}
            for c, s in mean_standard_score(table).items():
                out.setdefault(c, {})[f] = s
    return out


def format_mss(summary: dict) -> str:
    """CSV with one row per category; blank where a metric was not scored."""
    fields = sorted({f for v in summary.values() for f in v}, key=CSV_HEADER.index)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["category", *fields])
    for c, vals in summary.items():
        w.writerow([c, *("" if f not in vals else f"{vals[f]:.4f}" for f in fields)])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# rendering


def render_matrix(bg: BipartiteGraph, sp: SplitPermutation | None = None) -> bytes:
    """Plain PBM (P1) image of the permuted dependency matrix, one pixel per entry."""
    if sp is not None:
        bg = bg.permuted(sp)
    a = bg.biadjacency()
    m, n = a.shape
    lines = ["P1", f"{n} {m}"] + ["".join("1" if x else "0" for x in row) for row in a]
    return ("\n".join(lines) + "\n").encode("ascii")
