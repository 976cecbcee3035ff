"""Edge-list ingestion and real-data preprocessing.

Turns raw interaction logs (call/text records, follower edges) into
adjacency matrices ready for equilibrium analysis: parsing with row-level
diagnostics, by-max weight normalization, convex layer merging, attention
weighting, and seeded community extraction.
"""

from __future__ import annotations

import csv
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleError, InvalidParameterError, ParseError
from .games import AdjacencyMatrix, as_matrix


@dataclass
class EdgeList:
    """Directed weighted edges over nodes indexed by first appearance."""

    node_ids: list
    src: np.ndarray
    dst: np.ndarray
    weight: np.ndarray

    @property
    def n(self) -> int:
        return len(self.node_ids)

    @property
    def n_edges(self) -> int:
        return int(self.src.shape[0])

    def to_matrix(self) -> AdjacencyMatrix:
        a = np.zeros((self.n, self.n))
        a[self.src, self.dst] = self.weight
        return AdjacencyMatrix(a)

    def out_degree(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        np.add.at(deg, self.src, 1)
        return deg


@dataclass
class IngestReport:
    nodes: int
    edges: int
    self_loops_dropped: int
    duplicates_merged: int
    bad_rows: list = field(default_factory=list)
    max_weight: float = 0.0

    def summary(self) -> str:
        parts = [
            f"{self.nodes} nodes",
            f"{self.edges} edges",
            f"{self.self_loops_dropped} self-loops dropped",
            f"{self.duplicates_merged} duplicates merged",
            f"max weight {self.max_weight:g}",
        ]
        if self.bad_rows:
            parts.append(f"{len(self.bad_rows)} bad rows skipped")
        return ", ".join(parts)


#: Tolerated fraction of malformed data rows before the whole file fails.
BAD_ROW_LIMIT = 0.01


def parse_edge_list(path, src="src", dst="dst", weight="weight"):
    """Read a headed CSV of directed edges; returns (EdgeList, IngestReport).

    Extra columns are ignored.  ``weight=None`` treats every edge as 1.
    Duplicate (src, dst) rows are summed, self-edges dropped and counted.
    Malformed rows are skipped with their line numbers recorded; more than
    1% malformed fails the file.
    """
    node_index = {}
    node_ids = []
    agg = {}
    self_loops = 0
    duplicates = 0
    bad = []
    total = 0

    def index_of(label):
        if label not in node_index:
            node_index[label] = len(node_ids)
            node_ids.append(label)
        return node_index[label]

    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(f"{path}: empty file (no header)")
        missing = [c for c in (src, dst, weight) if c and c not in reader.fieldnames]
        if missing:
            raise ParseError(f"{path}: header lacks column(s) {missing}")
        for row in reader:
            total += 1
            line_no = reader.line_num
            s_label = row.get(src)
            d_label = row.get(dst)
            if not s_label or not d_label:
                bad.append((line_no, "missing endpoint"))
                continue
            if weight is None:
                w = 1.0
            else:
                try:
                    w = float(row[weight])
                except (TypeError, ValueError):
                    bad.append((line_no, f"bad weight {row.get(weight)!r}"))
                    continue
            if not np.isfinite(w):
                bad.append((line_no, "non-finite weight"))
                continue
            if s_label == d_label:
                self_loops += 1
                continue
            key = (index_of(s_label), index_of(d_label))
            if key in agg:
                agg[key] += w
                duplicates += 1
            else:
                agg[key] = w

    if total and len(bad) / total > BAD_ROW_LIMIT:
        raise ParseError(
            f"{path}: {len(bad)} of {total} rows malformed "
            f"(first offenders: {bad[:5]})",
            bad_rows=tuple(bad),
        )

    if agg:
        keys = list(agg.keys())
        src_idx = np.array([k[0] for k in keys], dtype=np.int64)
        dst_idx = np.array([k[1] for k in keys], dtype=np.int64)
        weights = np.array([agg[k] for k in keys], dtype=np.float64)
    else:
        src_idx = np.zeros(0, dtype=np.int64)
        dst_idx = np.zeros(0, dtype=np.int64)
        weights = np.zeros(0, dtype=np.float64)
    edges = EdgeList(node_ids=node_ids, src=src_idx, dst=dst_idx, weight=weights)
    report = IngestReport(
        nodes=edges.n,
        edges=edges.n_edges,
        self_loops_dropped=self_loops,
        duplicates_merged=duplicates,
        bad_rows=bad,
        max_weight=float(weights.max()) if weights.size else 0.0,
    )
    return edges, report


def normalize_interactions(e: EdgeList, mode: str = "by-max") -> AdjacencyMatrix:
    """Scale all weights by the global maximum so they land in (0, 1]."""
    if mode != "by-max":
        raise InvalidParameterError(f"unknown normalization mode {mode!r}")
    if e.n_edges == 0:
        raise InvalidParameterError("cannot normalize an empty edge list")
    top = float(e.weight.max())
    if not top > 0.0:
        raise InvalidParameterError(
            "normalization needs at least one positive weight"
        )
    a = np.zeros((e.n, e.n))
    a[e.src, e.dst] = e.weight / top
    return AdjacencyMatrix(a)


def merge_layers(a, b, alpha: float = 2.0 / 3.0) -> AdjacencyMatrix:
    """Convex blend alpha*a + (1-alpha)*b, zero-padding to the union size."""
    if not 0.0 < alpha <= 1.0:
        raise InvalidParameterError("alpha must lie in (0, 1]")
    ma = as_matrix(a)
    mb = as_matrix(b)
    n = max(ma.shape[0], mb.shape[0])
    pa = np.zeros((n, n))
    pa[: ma.shape[0], : ma.shape[0]] = ma
    pb = np.zeros((n, n))
    pb[: mb.shape[0], : mb.shape[0]] = mb
    return AdjacencyMatrix(alpha * pa + (1.0 - alpha) * pb)


def attention_weights(e: EdgeList, mode: str = "inverse-degree", c: float = None):
    """Reweight edges by attention; returns (AdjacencyMatrix, dominance report).

    ``inverse-degree`` gives each out-edge of node i the weight
    1/outdegree(i) — the literal attention rule, whose rows then sum to
    exactly 1 (not strictly less), so the dominance report flags it as
    non-strict rather than silently adjusting the rule.  ``constant``
    assigns ``c`` uniformly.  Isolated nodes keep zero rows.
    """
    a = np.zeros((e.n, e.n))
    if mode == "inverse-degree":
        deg = e.out_degree()
        if e.n_edges:
            a[e.src, e.dst] = 1.0 / deg[e.src]
    elif mode == "constant":
        if c is None or not c > 0.0:
            raise InvalidParameterError("constant mode needs c > 0")
        if e.n_edges:
            a[e.src, e.dst] = c
    else:
        raise InvalidParameterError(f"unknown attention mode {mode!r}")
    row_sums = np.abs(a).sum(axis=1)
    report = {
        "max_row_sum": float(row_sums.max()) if e.n else 0.0,
        "strictly_dominant": bool(np.all(row_sums < 1.0)),
    }
    return AdjacencyMatrix(a), report


def as_undirected(g, mode: str = "max") -> np.ndarray:
    """Symmetrized copy of a matrix (entrywise max with its transpose)."""
    if mode != "max":
        raise InvalidParameterError(f"unknown symmetrization mode {mode!r}")
    m = as_matrix(g)
    return np.maximum(m, m.T)


def restrict_to(g, nodes) -> AdjacencyMatrix:
    """Induced submatrix on the given node indices (order preserved)."""
    m = as_matrix(g)
    idx = np.asarray(list(nodes), dtype=np.int64)
    if idx.size == 0:
        raise InvalidParameterError("cannot restrict to an empty node set")
    if idx.min() < 0 or idx.max() >= m.shape[0]:
        raise InvalidParameterError("community indices out of range")
    return AdjacencyMatrix(m[np.ix_(idx, idx)])


#: Community extraction restarts before giving up.
MAX_RESTARTS = 1000


def extract_community(g, target_n: int, stream: np.random.Generator):
    """Seeded breadth-first community of exactly ``target_n`` nodes.

    Grows over the undirected support from a random start, visiting
    neighbors in index order; restarts from a fresh random node when the
    reachable component is too small.
    """
    m = as_matrix(g)
    n = m.shape[0]
    if target_n < 1 or target_n > n:
        raise InfeasibleError(f"cannot extract {target_n} nodes from {n}")
    support = as_undirected(m) != 0.0
    for _ in range(MAX_RESTARTS):
        start = int(stream.integers(n))
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue and len(order) < target_n:
            u = queue.popleft()
            for v in np.flatnonzero(support[u]):
                v = int(v)
                if v not in seen:
                    seen.add(v)
                    order.append(v)
                    queue.append(v)
                    if len(order) == target_n:
                        break
        if len(order) >= target_n:
            return order[:target_n]
    raise InfeasibleError(
        f"no connected community of {target_n} nodes found in {MAX_RESTARTS} restarts"
    )
