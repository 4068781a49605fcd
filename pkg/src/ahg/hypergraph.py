"""The associating hypergraph of a loop.

Three distinct elements ``x, y, z`` form a directed hyperedge when
``x (y z) == (x y) z``.  Counting (edge totals, vertex degrees) uses the
directed edges; set-based questions (independence, matchings, colourings)
use the *support*, where each directed edge collapses to its 3-set.
"""

from collections import deque
import csv
from dataclasses import dataclass
import io
import json
import re
from typing import NamedTuple, Optional

import numpy as np

from . import kernels
from .algebra import Loop
from .errors import DomainError

EXPORT_FORMATS = ("edge-json", "incidence-csv", "support-list")

EDGE_SEMANTICS = "counts use directed (ordered) edges; invariants use the unordered support"


@dataclass(frozen=True, eq=False)
class AssociatingHypergraph:
    vertex_count: int
    directed_edges: np.ndarray  # (E, 3), lexicographic
    support_edges: np.ndarray  # (S, 3), rows ascending, lexicographic
    multiplicity: np.ndarray  # (S,), orderings of each support edge present
    names: tuple
    loop: Optional[Loop] = None

    def __post_init__(self):
        for name in ("directed_edges", "support_edges", "multiplicity"):
            arr = getattr(self, name)
            arr.setflags(write=False)

    @property
    def n(self):
        """``n`` when built from M(D_n, 2), else ``None``."""
        if self.loop is None:
            return None
        m = re.fullmatch(r"moufang_extension\(D_(\d+)\)", self.loop.provenance)
        return int(m.group(1)) if m else None

    @property
    def support_masks(self):
        """Support edges as Python int bitmasks, in support order."""
        masks = getattr(self, "_masks", None)
        if masks is None:
            masks = tuple((1 << int(a)) | (1 << int(b)) | (1 << int(c)) for a, b, c in self.support_edges)
            object.__setattr__(self, "_masks", masks)
        return masks

    def cooccurrence(self):
        return kernels.cooccurrence(self.support_edges, self.vertex_count)


def _support(directed):
    if len(directed) == 0:
        return np.zeros((0, 3), dtype=np.int64), np.zeros(0, dtype=np.int64)
    sets = np.sort(directed, axis=1)
    support, counts = np.unique(sets, axis=0, return_counts=True)
    return support.astype(np.int64), counts.astype(np.int64)


def build(loop):
    """Associating hypergraph of ``loop``."""
    directed = kernels.associating_triples(loop.table)
    support, mult = _support(directed)
    return AssociatingHypergraph(
        vertex_count=loop.order,
        directed_edges=directed,
        support_edges=support,
        multiplicity=mult,
        names=tuple(loop.names),
        loop=loop,
    )


def from_edges(vertex_count, edges, names=None):
    """Hypergraph on ``0..vertex_count-1`` from explicit 3-vertex edges.

    The edges are taken as directed edges in the given orientation; the
    support is derived as usual.  Used for synthetic inputs and oracles.
    """
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 3)
    if len(arr):
        if arr.min() < 0 or arr.max() >= vertex_count:
            raise DomainError("edge vertex out of range")
        if np.any((arr[:, 0] == arr[:, 1]) | (arr[:, 0] == arr[:, 2]) | (arr[:, 1] == arr[:, 2])):
            raise DomainError("edge vertices must be pairwise distinct")
        arr = np.unique(arr, axis=0)
    support, mult = _support(arr)
    if names is None:
        names = tuple(str(v) for v in range(vertex_count))
    return AssociatingHypergraph(
        vertex_count=int(vertex_count),
        directed_edges=arr,
        support_edges=support,
        multiplicity=mult,
        names=tuple(names),
    )


class DegreeData(NamedTuple):
    directed_degree: np.ndarray
    support_degree: np.ndarray
    edge_sizes: np.ndarray


def degrees(h):
    """Vertex degrees (directed and support) and edge sizes.

    These are the diagonals of the vertex-degree and edge-degree matrices.
    """
    m = h.vertex_count
    directed = np.bincount(h.directed_edges.ravel(), minlength=m)
    support = np.bincount(h.support_edges.ravel(), minlength=m)
    sizes = np.full(len(h.support_edges), 3, dtype=np.int64)
    return DegreeData(directed.astype(np.int64), support.astype(np.int64), sizes)


def _adjacency_lists(h):
    adj = h.cooccurrence()
    return [np.flatnonzero(row).tolist() for row in adj]


def distance(h, u, v):
    """Hop distance between distinct vertices ``u`` and ``v``; ``None`` if unreachable."""
    m = h.vertex_count
    if not (0 <= u < m and 0 <= v < m):
        raise DomainError(f"vertex out of range for |V| = {m}")
    if u == v:
        raise DomainError("distance is only defined here for distinct vertices")
    return _bfs(_adjacency_lists(h), u)[v]


def _bfs(adj, source):
    dist = [None] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if dist[b] is None:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def all_pairs_distances(h):
    """Distance between every ordered pair, ``-1`` where unreachable, 0 on the diagonal."""
    adj = _adjacency_lists(h)
    m = h.vertex_count
    out = np.full((m, m), -1, dtype=np.int64)
    for u in range(m):
        for v, d in enumerate(_bfs(adj, u)):
            if d is not None:
                out[u, v] = d
    return out


def export(h, fmt):
    """Serialise ``h`` as bytes in one of :data:`EXPORT_FORMATS`."""
    if fmt == "edge-json":
        doc = {
            "n": h.n,
            "provenance": h.loop.provenance if h.loop is not None else "edges",
            "edge_semantics": EDGE_SEMANTICS,
            "vertex_count": h.vertex_count,
            "vertices": list(h.names),
            "directed_edge_count": int(len(h.directed_edges)),
            "support_edge_count": int(len(h.support_edges)),
            "directed_edges": h.directed_edges.tolist(),
        }
        return (json.dumps(doc) + "\n").encode()
    if fmt == "incidence-csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        s = len(h.support_edges)
        writer.writerow(["vertex"] + [f"e{k}" for k in range(s)])
        inc = np.zeros((h.vertex_count, s), dtype=np.int64)
        if s:
            inc[h.support_edges.T, np.arange(s)] = 1
        for v in range(h.vertex_count):
            writer.writerow([h.names[v]] + inc[v].tolist())
        return buf.getvalue().encode()
    if fmt == "support-list":
        lines = [f"{a} {b} {c} {m}\n" for (a, b, c), m in zip(h.support_edges.tolist(), h.multiplicity.tolist())]
        return "".join(lines).encode()
    raise DomainError(f"unknown export format {fmt!r}; choose from {', '.join(EXPORT_FORMATS)}")
