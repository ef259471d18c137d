"""Weighted undirected networks and robustness metrics.

Edges carry a success probability p in (0, 1]. All weights are in bits,
w = -log2 p, so that 2**(-w) recovers the probability exactly. A pair of
nodes is considered task-connected at threshold p_star when some path has
product probability >= p_star, compared strictly with no epsilon.
"""

from __future__ import annotations

import csv
import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import dijkstra as _sp_dijkstra
from scipy.sparse.csgraph import shortest_path as _sp_shortest_path

NodeId = Union[int, str]


def _edge_key(a: NodeId, b: NodeId) -> Tuple[NodeId, NodeId]:
    return (a, b) if a <= b else (b, a)


class Network:
    """Undirected graph with per-edge success probabilities.

    Nodes keep their insertion order; metrics that need a total order on
    node ids (tie-breaking) compare the ids directly, so a single network
    should use one orderable id type throughout.
    """

    def __init__(
        self,
        nodes: Iterable[NodeId],
        edges: Dict[Tuple[NodeId, NodeId], float] | Iterable[Tuple[NodeId, NodeId, float]],
        coords: Optional[Dict[NodeId, Tuple[float, float]]] = None,
    ):
        self.nodes: List[NodeId] = list(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError("duplicate node ids")
        self.index = {v: i for i, v in enumerate(self.nodes)}
        self.edges: Dict[Tuple[NodeId, NodeId], float] = {}
        self._adj: Dict[NodeId, Dict[NodeId, float]] = {v: {} for v in self.nodes}
        items = edges.items() if isinstance(edges, dict) else ((a, b, p) for a, b, p in edges)
        for entry in items:
            if isinstance(edges, dict):
                (a, b), p = entry
            else:
                a, b, p = entry
            if a == b:
                raise ValueError(f"self-loop on node {a!r}")
            if a not in self.index or b not in self.index:
                raise ValueError(f"edge references unknown node: {a!r}-{b!r}")
            if not 0.0 < p <= 1.0:
                raise ValueError(f"edge probability must be in (0, 1], got {p}")
            self.edges[_edge_key(a, b)] = p
            self._adj[a][b] = p
            self._adj[b][a] = p
        self.coords = dict(coords) if coords else None

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_p(self, a: NodeId, b: NodeId) -> Optional[float]:
        return self.edges.get(_edge_key(a, b))

    def neighbors(self, v: NodeId, p_star: float = 0.0) -> List[NodeId]:
        return [u for u, p in self._adj[v].items() if p >= p_star]

    def adjacency_prob(self) -> np.ndarray:
        """Dense matrix of edge probabilities, 0 where no edge."""
        n = self.n_nodes
        m = np.zeros((n, n))
        for (a, b), p in self.edges.items():
            i, j = self.index[a], self.index[b]
            m[i, j] = m[j, i] = p
        return m

    def relabeled(self, mapping: Dict[NodeId, NodeId]) -> "Network":
        nodes = [mapping[v] for v in self.nodes]
        edges = {_edge_key(mapping[a], mapping[b]): p for (a, b), p in self.edges.items()}
        coords = {mapping[v]: c for v, c in self.coords.items()} if self.coords else None
        return Network(nodes, edges, coords)


class StrategyKind(str, Enum):
    NON_COOPERATIVE = "non-cooperative"
    COOPERATIVE = "cooperative"


def effective_weight(p: float, p_star: float) -> float:
    """-log2 p in bits when p >= p_star, else +inf."""
    if not 0.0 < p <= 1.0:
        raise ValueError("p must be in (0, 1]")
    if not 0.0 < p_star < 1.0:
        raise ValueError("p_star must be in (0, 1)")
    if p < p_star:
        return math.inf
    return -math.log2(p)


@dataclass(frozen=True)
class EffectiveMatrices:
    """Weight matrix A, thresholded A_star, effective success matrix f_star."""

    A: np.ndarray
    A_star: np.ndarray
    f_star: np.ndarray


def _weight_matrix(net: Network, p_star: float = 0.0) -> np.ndarray:
    """Dense -log2 p matrix; +inf off-diagonal where no qualifying edge."""
    n = net.n_nodes
    m = np.full((n, n), math.inf)
    np.fill_diagonal(m, 0.0)
    for (a, b), p in net.edges.items():
        if p >= p_star:
            i, j = net.index[a], net.index[b]
            m[i, j] = m[j, i] = -math.log2(p)
    return m


def _sparse_weights(net: Network, p_star: float = 0.0) -> csr_matrix:
    rows, cols, vals = [], [], []
    for (a, b), p in net.edges.items():
        if p >= p_star:
            i, j = net.index[a], net.index[b]
            w = -math.log2(p)
            # zero-weight edges (p = 1) need an explicit epsilon-free entry;
            # csr drops stored zeros on some ops, so nudge to a tiny float
            w = w if w > 0.0 else 5e-324
            rows += [i, j]
            cols += [j, i]
            vals += [w, w]
    n = net.n_nodes
    return csr_matrix((vals, (rows, cols)), shape=(n, n))


def matrices(net: Network, p_star: float) -> EffectiveMatrices:
    """A, A_star and the all-pairs best-path success matrix f_star.

    f_star entries are the maximum path product when that product is at
    least p_star, else 0; the diagonal is 0 by definition.
    """
    a = _weight_matrix(net)
    a_star = _weight_matrix(net, p_star)
    dist = _sp_shortest_path(_sparse_weights(net, p_star), method="D", directed=False)
    f = np.power(2.0, -dist)
    f[dist == math.inf] = 0.0
    f[f < p_star] = 0.0
    np.fill_diagonal(f, 0.0)
    return EffectiveMatrices(a, a_star, f)


class PathStatus(str, Enum):
    FOUND = "found"
    DISCONNECTED = "disconnected"


@dataclass(frozen=True)
class PathResult:
    nodes: Tuple[NodeId, ...]
    total_weight: float
    probability: float
    status: PathStatus


def _lex_dijkstra(net: Network, source: NodeId) -> Dict[NodeId, Tuple[float, Tuple[NodeId, ...]]]:
    """Single-source shortest paths with deterministic tie-breaking.

    Among weight-minimal paths the lexicographically smallest node-id
    sequence wins; heap entries carry the path so equal-weight pops come
    out in lexicographic order.
    """
    best: Dict[NodeId, Tuple[float, Tuple[NodeId, ...]]] = {}
    heap = [(0.0, (source,))]
    while heap:
        d, path = heapq.heappop(heap)
        v = path[-1]
        if v in best:
            continue
        best[v] = (d, path)
        for u in net.neighbors(v):
            if u not in best:
                heapq.heappush(heap, (d - math.log2(net.edges[_edge_key(v, u)]), path + (u,)))
    return best


def shortest_path(net: Network, source: NodeId, target: NodeId, p_star: float) -> PathResult:
    """Minimum-weight path, Found only when its product probability >= p_star."""
    for v in (source, target):
        if v not in net.index:
            raise KeyError(f"unknown node {v!r}")
    if source == target:
        return PathResult((source,), 0.0, 1.0, PathStatus.FOUND)
    reached = _lex_dijkstra(net, source)
    budget = -math.log2(p_star)
    if target not in reached or reached[target][0] > budget:
        return PathResult((), math.inf, 0.0, PathStatus.DISCONNECTED)
    d, path = reached[target]
    return PathResult(path, d, 2.0**-d, PathStatus.FOUND)


def link_sparsity(net: Network, p_star: float, strategy: StrategyKind) -> float:
    """1 - n*/N^2 with n* the off-diagonal connected-pair count."""
    n = net.n_nodes
    if n == 0:
        raise ValueError("empty network")
    if strategy is StrategyKind.NON_COOPERATIVE:
        n_star = 2 * sum(1 for p in net.edges.values() if p >= p_star)
    else:
        f = matrices(net, p_star).f_star
        n_star = int(np.count_nonzero(f))
    return 1.0 - n_star / n**2


def connection_strength(
    net: Network,
    v: NodeId,
    strategy: StrategyKind,
    p_star: float,
    include_self: bool = False,
) -> float:
    """Average success probability from v to the other nodes.

    Non-cooperative uses direct edges only; cooperative uses best paths.
    include_self adds a unit self term, matching the closed forms that
    count p_ii = 1.
    """
    if v not in net.index:
        raise KeyError(f"unknown node {v!r}")
    if strategy is StrategyKind.NON_COOPERATIVE:
        total = sum(p for u in net.neighbors(v, p_star) for p in [net.edges[_edge_key(v, u)]])
    else:
        total = float(matrices(net, p_star).f_star[net.index[v]].sum())
    if include_self:
        total += 1.0
    return total / net.n_nodes


def _all_strengths(net: Network, strategy: StrategyKind, p_star: float) -> np.ndarray:
    if strategy is StrategyKind.NON_COOPERATIVE:
        sums = [
            sum(p for p in net._adj[v].values() if p >= p_star) for v in net.nodes
        ]
        return np.asarray(sums) / net.n_nodes
    f = matrices(net, p_star).f_star
    return f.sum(axis=1) / net.n_nodes


def total_connection_strength(net: Network, strategy: StrategyKind, p_star: float) -> float:
    return float(_all_strengths(net, strategy, p_star).sum())


def sparsity_index(net: Network, strategy: StrategyKind, p_star: float) -> float:
    """Lorenz-curve area ratio of the per-node strengths.

    Nodes are sorted by ascending strength, the cumulative-share curve is
    integrated by the trapezoid rule from the origin, and the area is
    divided by 1/2 so that perfectly uniform strengths give 1.
    """
    z = np.sort(_all_strengths(net, strategy, p_star))
    total = z.sum()
    if total == 0.0:
        return 1.0
    y = np.concatenate([[0.0], np.cumsum(z) / total])
    area = float(np.trapezoid(y, dx=1.0 / len(z)))
    return area / 0.5


def clustering_coefficient(net: Network, v: NodeId, p_star: float) -> float:
    """2 e_i / (n_i (n_i - 1)) over the neighbor subgraph at threshold p_star."""
    if v not in net.index:
        raise KeyError(f"unknown node {v!r}")
    nbrs = set(net.neighbors(v, p_star))
    n_i = len(nbrs)
    if n_i < 2:
        return 0.0
    e_i = sum(
        1
        for a in nbrs
        for b, p in net._adj[a].items()
        if b in nbrs and a < b and p >= p_star
    )
    return 2.0 * e_i / (n_i * (n_i - 1))


def average_effective_weight(net: Network, p_star: float) -> float:
    """Mean shortest-path weight over ordered node pairs; +inf if any pair fails."""
    n = net.n_nodes
    if n < 2:
        raise ValueError("need at least 2 nodes")
    dist = _sp_shortest_path(_sparse_weights(net, p_star), method="D", directed=False)
    off = dist[~np.eye(n, dtype=bool)]
    if np.isinf(off).any():
        return math.inf
    mean = float(off.mean())
    # denormal placeholders for zero-weight edges collapse back to zero
    return 0.0 if mean < 1e-300 else mean


def _deterministic_pair_paths(net: Network, p_star: float) -> List[Tuple[NodeId, ...]]:
    """One canonical feasible shortest path per unordered pair.

    The pair is traversed from its smaller to its larger id; paths whose
    weight exceeds the -log2 p_star budget are dropped.
    """
    budget = -math.log2(p_star)
    order = sorted(net.nodes)
    paths = []
    for i, s in enumerate(order):
        reached = _lex_dijkstra(net, s)
        for t in order[i + 1:]:
            hit = reached.get(t)
            if hit is not None and hit[0] <= budget:
                paths.append(hit[1])
    return paths


def centrality(net: Network, v: NodeId, p_star: float) -> int:
    """Number of canonical pair paths with v strictly interior."""
    if v not in net.index:
        raise KeyError(f"unknown node {v!r}")
    return sum(1 for path in _deterministic_pair_paths(net, p_star) if v in path[1:-1])


def centrality_all(net: Network, p_star: float) -> Dict[NodeId, int]:
    tau = {v: 0 for v in net.nodes}
    for path in _deterministic_pair_paths(net, p_star):
        for u in path[1:-1]:
            tau[u] += 1
    return tau


def centrality_all_fast(net: Network, p_star: float) -> Dict[NodeId, int]:
    """Predecessor-tree estimate of centrality for large graphs.

    Counts, per source, how many shortest-path targets route through each
    node using subtree sizes of the scipy predecessor tree, then halves
    the double count. Ties are resolved by whatever tree scipy returns,
    so on graphs with exactly degenerate weights prefer centrality_all.
    """
    budget = -math.log2(p_star)
    w = _sparse_weights(net)
    n = net.n_nodes
    tau = np.zeros(n, dtype=np.int64)
    dist, pred = _sp_dijkstra(w, directed=False, return_predecessors=True, limit=budget)
    for s in range(n):
        d = dist[s]
        reach = np.flatnonzero(np.isfinite(d))
        reach = reach[reach != s]
        if reach.size == 0:
            continue
        acc = np.zeros(n, dtype=np.int64)
        acc[reach] = 1
        for v_idx in reach[np.argsort(-d[reach], kind="stable")]:
            p_idx = pred[s, v_idx]
            if p_idx >= 0 and p_idx != s:
                acc[p_idx] += acc[v_idx]
        tau[reach] += acc[reach] - 1
    return {net.nodes[i]: int(tau[i] // 2) for i in range(n)}


class Undefined:
    """Sentinel for an undefined critical parameter."""

    def __repr__(self):
        return "Undefined"

    def __eq__(self, other):
        return isinstance(other, Undefined)

    def __hash__(self):
        return hash("Undefined")


@dataclass(frozen=True)
class NodeReport:
    node: NodeId
    clustering: float
    centrality: int
    strength: float
    critical_parameter: Union[float, Undefined]


def _neighbor_subgraph(net: Network, v: NodeId) -> Network:
    nbrs = set(net.neighbors(v))
    nodes = [u for u in net.nodes if u in nbrs]
    edges = {
        _edge_key(a, b): p
        for a in nbrs
        for b, p in net._adj[a].items()
        if b in nbrs and a < b
    }
    return Network(nodes, edges)


def critical_parameters(
    net: Network,
    p_star: float,
    strategy: StrategyKind = StrategyKind.COOPERATIVE,
    fast_centrality: bool = False,
) -> List[NodeReport]:
    """Per-node criticality nu = tau / (C * w_avg) ranked descending.

    w_avg is the average effective weight of the neighbor subgraph, with
    paths confined to that subgraph. Nodes where the ratio degenerates
    (C = 0, or w_avg zero or infinite) are flagged Undefined and sort
    last, by centrality.
    """
    tau = centrality_all_fast(net, p_star) if fast_centrality else centrality_all(net, p_star)
    strengths = _all_strengths(net, strategy, p_star)
    reports = []
    for v in net.nodes:
        c = clustering_coefficient(net, v, p_star)
        sub = _neighbor_subgraph(net, v)
        if c == 0.0 or sub.n_nodes < 2:
            nu: Union[float, Undefined] = Undefined()
        else:
            w_avg = average_effective_weight(sub, p_star)
            if w_avg == 0.0 or math.isinf(w_avg):
                nu = Undefined()
            else:
                nu = tau[v] / (c * w_avg)
        reports.append(
            NodeReport(v, c, tau[v], float(strengths[net.index[v]]), nu)
        )
    defined = [r for r in reports if not isinstance(r.critical_parameter, Undefined)]
    undefined = [r for r in reports if isinstance(r.critical_parameter, Undefined)]
    defined.sort(key=lambda r: (-r.critical_parameter, -r.centrality))
    undefined.sort(key=lambda r: -r.centrality)
    return defined + undefined


# ---------------------------------------------------------------------------
# Topologies
# ---------------------------------------------------------------------------


class CellKind(str, Enum):
    SQUARE = "square"
    OCTAGONAL = "octagonal"
    HEAVY_HEXAGONAL = "heavy-hexagonal"


_CELL_SIZES = {
    CellKind.SQUARE: 4,
    CellKind.OCTAGONAL: 8,
    CellKind.HEAVY_HEXAGONAL: 12,
}


@dataclass(frozen=True)
class Star:
    n: int
    p: float


@dataclass(frozen=True)
class FullMesh:
    n: int
    p: float


@dataclass(frozen=True)
class PartialMesh:
    n: int
    edge_list: Tuple[Tuple[int, int], ...]
    p: float


@dataclass(frozen=True)
class Circulant:
    n: int
    d: int
    p: float


@dataclass(frozen=True)
class Grid:
    width: int
    height: int
    p: float


@dataclass(frozen=True)
class ProcessorCell:
    kind: CellKind
    p: float


@dataclass(frozen=True)
class Square1024:
    p: float


TopologySpec = Union[Star, FullMesh, PartialMesh, Circulant, Grid, ProcessorCell, Square1024]


def build_topology(spec: TopologySpec) -> Network:
    """Construct one of the named reference topologies.

    Star(n, p) has hub node 0. Circulant(n, d, p) gives every node degree
    d: ring offsets m carry probability p**m; an odd d adds the antipodal
    edge at probability p**((d+1)/2) and needs even n.
    """
    if isinstance(spec, Star):
        if spec.n < 2:
            raise ValueError("star needs n >= 2")
        return Network(range(spec.n), [(0, i, spec.p) for i in range(1, spec.n)])
    if isinstance(spec, FullMesh):
        if spec.n < 2:
            raise ValueError("mesh needs n >= 2")
        edges = [(i, j, spec.p) for i in range(spec.n) for j in range(i + 1, spec.n)]
        return Network(range(spec.n), edges)
    if isinstance(spec, PartialMesh):
        return Network(range(spec.n), [(a, b, spec.p) for a, b in spec.edge_list])
    if isinstance(spec, Circulant):
        n, d, p = spec.n, spec.d, spec.p
        if d < 1 or d >= n:
            raise ValueError("circulant needs 1 <= d < n")
        if d % 2 == 1 and n % 2 != 0:
            raise ValueError("odd-degree circulant needs an even node count")
        edges = {}
        half = d // 2
        for i in range(n):
            for m in range(1, half + 1):
                edges[_edge_key(i, (i + m) % n)] = p**m
            if d % 2 == 1:
                edges[_edge_key(i, (i + n // 2) % n)] = p ** ((d + 1) // 2)
        return Network(range(n), edges)
    if isinstance(spec, Grid):
        w, h, p = spec.width, spec.height, spec.p
        if w < 1 or h < 1:
            raise ValueError("grid needs positive dimensions")
        idx = lambda x, y: y * w + x
        edges = []
        for y in range(h):
            for x in range(w):
                if x + 1 < w:
                    edges.append((idx(x, y), idx(x + 1, y), p))
                if y + 1 < h:
                    edges.append((idx(x, y), idx(x, y + 1), p))
        return Network(range(w * h), edges)
    if isinstance(spec, ProcessorCell):
        n = _CELL_SIZES[CellKind(spec.kind)]
        return Network(range(n), [(i, (i + 1) % n, spec.p) for i in range(n)])
    if isinstance(spec, Square1024):
        return build_topology(Grid(32, 32, spec.p))
    raise TypeError(f"unknown topology spec {spec!r}")


@dataclass(frozen=True)
class ConstructionCertificate:
    disjoint_paths: int
    disjoint_ok: bool
    all_pairs_connected: bool


def construct_network(
    n_a: int,
    n_b: int,
    mesh_p: Union[float, Dict[Tuple[int, int], float]] = 0.9,
    attach_p: Union[float, Dict[str, float]] = 0.9,
) -> Tuple[Network, ConstructionCertificate]:
    """Complete core mesh with distinct attachment points for two parties.

    Core nodes are "c0".."c<n_a+n_b-1>"; external nodes are "a0..",
    "b0..", each attached to its own core node. The certificate verifies
    vertex-disjoint A-to-B paths (unit node capacities, max-flow) and
    pairwise connectivity.
    """
    import networkx as nx

    if n_a < 1 or n_b < 1:
        raise ValueError("party sizes must be >= 1")
    n_core = n_a + n_b
    core = [f"c{i}" for i in range(n_core)]
    a_nodes = [f"a{i}" for i in range(n_a)]
    b_nodes = [f"b{i}" for i in range(n_b)]
    nodes: List[NodeId] = core + a_nodes + b_nodes

    def mesh_prob(i, j):
        if isinstance(mesh_p, dict):
            return mesh_p[(i, j)]
        return mesh_p

    def attach_prob(name):
        if isinstance(attach_p, dict):
            return attach_p[name]
        return attach_p

    edges = [
        (core[i], core[j], mesh_prob(i, j))
        for i in range(n_core)
        for j in range(i + 1, n_core)
    ]
    edges += [(a_nodes[i], core[i], attach_prob(a_nodes[i])) for i in range(n_a)]
    edges += [(b_nodes[i], core[n_a + i], attach_prob(b_nodes[i])) for i in range(n_b)]
    net = Network(nodes, edges)

    g = nx.Graph()
    g.add_nodes_from(nodes)
    g.add_edges_from((a, b) for a, b, _ in edges)
    # node-capacity max flow via node splitting
    dg = nx.DiGraph()
    for v in g.nodes:
        dg.add_edge(("in", v), ("out", v), capacity=1)
    for a, b in g.edges:
        dg.add_edge(("out", a), ("in", b), capacity=1)
        dg.add_edge(("out", b), ("in", a), capacity=1)
    dg.add_node("S")
    dg.add_node("T")
    for a in a_nodes:
        dg.add_edge("S", ("in", a), capacity=1)
        dg[("in", a)][("out", a)]["capacity"] = 1
    for b in b_nodes:
        dg.add_edge(("out", b), "T", capacity=1)
    flow = nx.maximum_flow_value(dg, "S", "T")
    want = min(n_a, n_b)
    connected = all(
        nx.has_path(g, a, b) for a in a_nodes for b in b_nodes
    )
    return net, ConstructionCertificate(flow, flow >= want, connected)


# ---------------------------------------------------------------------------
# Percolation-style checks and evolution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalSizeResult:
    is_critically_large: bool
    n0: int
    required_distance: int
    witness_pair: Optional[Tuple[NodeId, NodeId]]


def _hop_distances(net: Network) -> np.ndarray:
    rows, cols = [], []
    for a, b in net.edges:
        i, j = net.index[a], net.index[b]
        rows += [i, j]
        cols += [j, i]
    m = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(net.n_nodes, net.n_nodes))
    return _sp_shortest_path(m, method="D", directed=False, unweighted=True)


def critically_large_check(net: Network, p_star: float, c: float) -> CriticalSizeResult:
    """Whether some node pair is too far apart to ever reach p_star.

    c must upper-bound every edge probability. n0 is the smallest hop
    count with c**n0 < p_star; a pair at graph distance of at least
    ceil(log p_star / log c) + 1 certifies the network critically large.
    """
    if not 0.0 < c < 1.0:
        raise ValueError("c must be in (0, 1)")
    if any(p > c for p in net.edges.values()):
        raise ValueError("some edge probability exceeds c")
    if not 0.0 < p_star < 1.0:
        raise ValueError("p_star must be in (0, 1)")
    n0 = 1
    while c**n0 >= p_star:
        n0 += 1
    required = math.ceil(math.log(p_star) / math.log(c)) + 1
    dist = _hop_distances(net)
    witness = None
    n = net.n_nodes
    for i in range(n):
        far = np.flatnonzero(dist[i, i + 1:] >= required)
        if far.size:
            witness = (net.nodes[i], net.nodes[i + 1 + int(far[0])])
            break
    return CriticalSizeResult(witness is not None, n0, required, witness)


@dataclass(frozen=True)
class ReachabilityReport:
    counts: Dict[NodeId, int]
    max_fraction: float


def task_reachability(net: Network, p_star: float) -> ReachabilityReport:
    """Per-node size of the ball reachable at product probability >= p_star.

    Counts include the node itself; connectivity at threshold is not
    transitive, so these balls are the honest analogue of components.
    """
    dist = _sp_shortest_path(_sparse_weights(net), method="D", directed=False)
    prob = np.power(2.0, -dist)
    counts = {
        net.nodes[i]: int(np.count_nonzero(prob[i] >= p_star)) for i in range(net.n_nodes)
    }
    return ReachabilityReport(counts, max(counts.values()) / net.n_nodes)


def evolve(
    net: Network, w: float, k: float, p_star: float, steps: int
) -> List[Tuple[Network, float]]:
    """Discrete-time decay p(t+1) = w exp(-k t) p(t), edges closing at p_star.

    An edge whose updated probability would not stay above p_star closes
    permanently (probability 0, removed). Returns the network and its
    cooperative link sparsity for t = 1 .. steps, starting from the given
    network at t = 1.
    """
    if not 0.0 < w <= 1.0:
        raise ValueError("w must be in (0, 1]")
    if k < 0:
        raise ValueError("k must be nonnegative")
    current = net
    out = [(current, link_sparsity(current, p_star, StrategyKind.COOPERATIVE))]
    for t in range(1, steps):
        factor = w * math.exp(-k * t)
        new_edges = {}
        for key, p in current.edges.items():
            p_next = factor * p
            if p_next > p_star:
                new_edges[key] = p_next
        current = Network(current.nodes, new_edges, current.coords)
        out.append((current, link_sparsity(current, p_star, StrategyKind.COOPERATIVE)))
    return out


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def load_edge_list(path) -> Network:
    """Read `node_a,node_b,p` records; `#` starts a comment line."""
    nodes: List[NodeId] = []
    seen = set()
    edges = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            a, b, p = line.split(",")
            a, b = a.strip(), b.strip()
            for v in (a, b):
                if v not in seen:
                    seen.add(v)
                    nodes.append(v)
            edges.append((a, b, float(p)))
    return Network(nodes, edges)


def save_edge_list(net: Network, path) -> None:
    with open(path, "w") as fh:
        fh.write("# node_a,node_b,p\n")
        for (a, b), p in sorted(net.edges.items()):
            fh.write(f"{a},{b},{p}\n")


def export_matrix_csv(m: np.ndarray, node_ids: Sequence[NodeId], path) -> None:
    """CSV with a header row of node ids; +inf written as the literal `inf`."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(list(node_ids))
        for row in m:
            writer.writerow(["inf" if math.isinf(x) else repr(float(x)) for x in row])
