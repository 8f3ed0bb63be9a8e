"""Weighted graphs, edge-list I/O, metric closure and bridge contraction."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

#: Absolute tolerance used for every floating point comparison in the package.
TOL = 1e-9

Edge = tuple[int, int, float]


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected simple graph with positive edge weights.

    Edges are stored as ``(u, v, w)`` with ``u < v``. Vertices are dense
    indices ``0..n-1``; ``labels[i]`` is the external name of vertex ``i``.
    """

    labels: tuple[str, ...]
    edges: tuple[Edge, ...]
    _index: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.labels)
        index: dict[tuple[int, int], int] = {}
        normalized = []
        for k, (u, v, w) in enumerate(self.edges):
            u, v, w = int(u), int(v), float(w)
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
            if u == v:
                raise InputError(f"self-loop at {self.labels[u]!r}")
            if not (w > 0 and math.isfinite(w)):
                raise InputError(
                    f"non-positive weight {w!r} on edge {self.labels[u]!r}-{self.labels[v]!r}"
                )
            if u > v:
                u, v = v, u
            if (u, v) in index:
                raise InputError(
                    f"duplicate undirected edge {self.labels[u]!r}-{self.labels[v]!r}"
                )
            index[(u, v)] = k
            normalized.append((u, v, w))
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[float]]) -> WeightedGraph:
        """Build a graph on ``n`` vertices labelled ``"0".."n-1"``."""
        return cls(tuple(str(i) for i in range(n)), tuple((int(u), int(v), float(w)) for u, v, w in edges))

    def edge_index(self, u: int, v: int) -> int | None:
        if u > v:
            u, v = v, u
        return self._index.get((u, v))

    def weight(self, u: int, v: int) -> float | None:
        k = self.edge_index(u, v)
        return None if k is None else self.edges[k][2]

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex ``(neighbour, edge index)`` lists sorted by neighbour."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for k, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, k))
            adj[v].append((u, k))
        for row in adj:
            row.sort()
        return adj

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def total_weight(self) -> float:
        return math.fsum(w for _, _, w in self.edges)

    def weight_matrix(self) -> np.ndarray:
        """Dense matrix with ``inf`` for missing pairs and 0 on the diagonal."""
        mat = np.full((self.n, self.n), np.inf)
        np.fill_diagonal(mat, 0.0)
        for u, v, w in self.edges:
            mat[u, v] = mat[v, u] = w
        return mat

    def components(self) -> list[list[int]]:
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y, _ in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric ``n x n`` distance matrix. The array is read-only."""

    d: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        arr = np.array(self.d, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InputError(f"distance matrix must be square, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "d", arr)
        labels = tuple(self.labels) or tuple(str(i) for i in range(arr.shape[0]))
        if len(labels) != arr.shape[0]:
            raise InputError("label count does not match matrix size")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __getitem__(self, ij: tuple[int, int]) -> float:
        return float(self.d[ij])

    def restrict(self, vertices: Sequence[int]) -> DistanceMatrix:
        idx = list(vertices)
        return DistanceMatrix(self.d[np.ix_(idx, idx)], tuple(self.labels[i] for i in idx))

    def scaled(self, factor: float) -> DistanceMatrix:
        return DistanceMatrix(self.d * factor, self.labels)

    def as_graph(self) -> WeightedGraph:
        """The complete graph whose edge weights are the matrix entries."""
        n = self.n
        edges = [(i, j, float(self.d[i, j])) for i in range(n) for j in range(i + 1, n)]
        return WeightedGraph(self.labels, tuple(edges))

    @classmethod
    def from_points(cls, xs: Sequence[float] | np.ndarray) -> DistanceMatrix:
        """Euclidean distances between points (1-D values or rows of a 2-D array)."""
        pts = np.asarray(xs, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        diff = pts[:, None, :] - pts[None, :, :]
        return cls(np.sqrt((diff**2).sum(axis=-1)))


@dataclass(frozen=True)
class Violation:
    """One failed metric axiom. ``vertices`` is ``(i, k, j)`` for a triangle
    ``d[i][j] > d[i][k] + d[k][j]``, ``(i, j)`` for pairwise failures and
    ``(i,)`` for a non-zero diagonal entry."""

    kind: str
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class BridgeContraction:
    contracted: WeightedGraph
    bridge_weight: float
    bridges: tuple[int, ...]
    vertex_map: tuple[int, ...]


# ---------------------------------------------------------------- edge lists


def _parse_records(text: str) -> Iterable[tuple[int, str, str, str]]:
    header_allowed = True
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if header_allowed and [p.lower() for p in parts] == ["u", "v", "w"]:
            header_allowed = False
            continue
        header_allowed = False
        if len(parts) != 3 or not parts[0] or not parts[1]:
            raise InputError(f"expected 'label,label,weight', got {line!r}", lineno)
        yield lineno, parts[0], parts[1], parts[2]


def _build(records: Iterable[tuple[int, str, str, float]]) -> WeightedGraph:
    labels: dict[str, int] = {}
    seen: set[tuple[int, int]] = set()
    edges: list[Edge] = []
    for lineno, a, b, w in records:
        if a == b:
            raise InputError(f"self-loop at {a!r}", lineno)
        if not (w > 0 and math.isfinite(w)):
            raise InputError(f"non-positive weight {w!r}", lineno)
        u = labels.setdefault(a, len(labels))
        v = labels.setdefault(b, len(labels))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate undirected edge {a!r}-{b!r}", lineno)
        seen.add(key)
        edges.append((u, v, w))
    return WeightedGraph(tuple(labels), tuple(edges))


def load_edge_list(text: str) -> WeightedGraph:
    """Parse ``label,label,weight`` records.

    Labels are interned in first-appearance order. Blank lines and lines
    starting with ``#`` are skipped, and a leading ``u,v,w`` header is
    accepted. Connectivity is not checked.
    """

    def records():
        for lineno, a, b, raw in _parse_records(text):
            try:
                w = float(raw)
            except ValueError:
                raise InputError(f"weight {raw!r} is not a number", lineno) from None
            yield lineno, a, b, w

    return _build(records())


def load_similarity_list(text: str) -> WeightedGraph:
    """Parse ``label,label,count`` records and convert counts to distances."""
    counts = []
    for lineno, a, b, raw in _parse_records(text):
        try:
            c = int(raw)
        except ValueError:
            raise InputError(f"count {raw!r} is not an integer", lineno) from None
        if c < 0:
            raise InputError(f"negative count {c}", lineno)
        counts.append((a, b, c))
    return similarity_to_distance(counts)


def format_weight(w: float) -> str:
    """Shortest text that parses back to exactly ``w``."""
    return str(int(w)) if float(w).is_integer() and abs(w) < 2**53 else repr(float(w))


def dump_edge_list(g: WeightedGraph, header: bool = True) -> str:
    """Serialize ``g``. Isolated vertices cannot be represented and are dropped."""
    lines = ["u,v,w"] if header else []
    for u, v, w in g.edges:
        lines.append(f"{g.labels[u]},{g.labels[v]},{format_weight(w)}")
    return "\n".join(lines) + "\n"


def similarity_to_distance(counts: Iterable[tuple[str, str, int]]) -> WeightedGraph:
    """Turn co-occurrence counts into distances ``1 / (c + 1)``.

    Only listed pairs become edges; a count of zero gives weight 1.
    """

    def records():
        for pos, (a, b, c) in enumerate(counts, start=1):
            if int(c) != c or c < 0:
                raise InputError(f"count must be a nonnegative integer, got {c!r}", pos)
            yield pos, str(a), str(b), 1.0 / (int(c) + 1)

    return _build(records())


# ------------------------------------------------------------------ metrics


def metric_closure(g: WeightedGraph) -> DistanceMatrix:
    """All-pairs shortest path distances (Floyd-Warshall)."""
    d = g.weight_matrix()
    for k in range(g.n):
        np.minimum(d, d[:, k, None] + d[None, k, :], out=d)
    if g.n and not np.isfinite(d).all():
        i, j = map(int, np.argwhere(~np.isfinite(d))[0])
        raise InputError(f"graph is disconnected: {g.labels[i]!r} cannot reach {g.labels[j]!r}")
    return DistanceMatrix(d, g.labels)


def verify_metric(dm: DistanceMatrix | np.ndarray, tol: float = TOL) -> list[Violation]:
    """Return every violated metric axiom; an empty list means ``dm`` is a metric."""
    d = dm.d if isinstance(dm, DistanceMatrix) else np.asarray(dm, dtype=float)
    n = d.shape[0]
    out: list[Violation] = []
    for i in range(n):
        if abs(d[i, i]) > tol:
            out.append(Violation("diagonal", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(d[i, j] - d[j, i]) > tol:
                out.append(Violation("symmetry", (i, j)))
            if not d[i, j] > 0 or not d[j, i] > 0:
                out.append(Violation("positivity", (i, j)))
    triangles = []
    for k in range(n):
        bad = d > d[:, k, None] + d[None, k, :] + tol
        for i, j in np.argwhere(bad):
            if i != j and k != i and k != j:
                triangles.append((int(i), k, int(j)))
    out.extend(Violation("triangle", t) for t in sorted(triangles))
    return out


# ------------------------------------------------------------------ bridges


def find_bridges(g: WeightedGraph) -> list[int]:
    """Indices of bridge edges, found with an iterative lowpoint DFS."""
    adj = g.adjacency()
    pre = [-1] * g.n
    low = [0] * g.n
    bridges: list[int] = []
    counter = 0
    for root in range(g.n):
        if pre[root] != -1:
            continue
        pre[root] = low[root] = counter
        counter += 1
        # frames: (vertex, edge index used to enter it, neighbour cursor)
        stack = [(root, -1, 0)]
        while stack:
            v, via, pos = stack[-1]
            if pos < len(adj[v]):
                stack[-1] = (v, via, pos + 1)
                w, k = adj[v][pos]
                if k == via:
                    continue
                if pre[w] == -1:
                    pre[w] = low[w] = counter
                    counter += 1
                    stack.append((w, k, 0))
                else:
                    low[v] = min(low[v], pre[w])
            else:
                stack.pop()
                if stack:
                    parent = stack[-1][0]
                    low[parent] = min(low[parent], low[v])
                    if low[v] > pre[parent]:
                        bridges.append(via)
    return sorted(bridges)


def contract_bridges(g: WeightedGraph) -> BridgeContraction:
    """Merge the endpoints of every bridge.

    Parallel edges produced by merging keep the minimum weight and merged
    self-loops are dropped. Contracted vertices are numbered in order of their
    smallest original vertex; their label joins the original labels with ``+``.
    """
    if not g.is_connected():
        comps = g.components()
        raise InputError(
            f"graph is disconnected: {g.labels[comps[0][0]]!r} cannot reach {g.labels[comps[1][0]]!r}"
        )
    bridges = find_bridges(g)
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k in bridges:
        u, v, _ = g.edges[k]
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)

    new_index: dict[int, int] = {}
    members: list[list[int]] = []
    vertex_map = []
    for x in range(g.n):
        r = find(x)
        if r not in new_index:
            new_index[r] = len(members)
            members.append([])
        members[new_index[r]].append(x)
        vertex_map.append(new_index[r])

    bridge_set = set(bridges)
    best: dict[tuple[int, int], float] = {}
    for k, (u, v, w) in enumerate(g.edges):
        if k in bridge_set:
            continue
        a, b = vertex_map[u], vertex_map[v]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        best[key] = min(w, best.get(key, math.inf))
    labels = tuple("+".join(g.labels[x] for x in group) for group in members)
    contracted = WeightedGraph(labels, tuple((a, b, w) for (a, b), w in sorted(best.items())))
    return BridgeContraction(
        contracted=contracted,
        bridge_weight=math.fsum(g.edges[k][2] for k in bridges),
        bridges=tuple(bridges),
        vertex_map=tuple(vertex_map),
    )
