"""Random geometric networks and their stream contention graphs.

Pipeline: place nodes uniformly in the unit square, connect pairs within the
transmission radius (unit-disk graph), prune with the relative-neighborhood
rule to get a sparse link set, then expand every link into ``q`` stream
vertices of a :class:`~ibds.graph.ContentionGraph`.

Everything here is a pure function of its arguments, so the whole pipeline is
reproducible from ``(n, seed, tx_radius, interference_radius, q)``.
"""

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

from .graph import ContentionGraph

__all__ = [
    "GeoNode",
    "GeoNetwork",
    "StreamLabel",
    "generate_nodes",
    "default_tx_radius",
    "build_udg",
    "rng_prune",
    "build_network",
    "build_stream_graph",
]


class GeoNode(NamedTuple):
    id: int
    x: float
    y: float


class StreamLabel(NamedTuple):
    """Identity of one stream vertex: its link (= family id), its index
    within the link, and the link's physical endpoints."""

    link_id: int
    stream_index: int
    endpoints: tuple[int, int]


@dataclass(frozen=True)
class GeoNetwork:
    """Placed nodes plus the pruned link set used for stream expansion."""

    nodes: tuple[GeoNode, ...]
    tx_radius: float
    interference_radius: float
    links: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.interference_radius < self.tx_radius:
            raise ValueError("interference_radius must be >= tx_radius")
        for u, v in self.links:
            if _dist(self.nodes[u], self.nodes[v]) > self.tx_radius:
                raise ValueError(f"link {u}-{v} exceeds the transmission radius")


def _dist(a: GeoNode, b: GeoNode) -> float:
    return math.dist((a.x, a.y), (b.x, b.y))


def generate_nodes(n: int, seed: int) -> list[GeoNode]:
    """Place ``n`` nodes i.i.d. uniform on the unit square, deterministically
    for a fixed seed."""
    if n < 1:
        raise ValueError("need at least one node")
    rng = random.Random(seed)
    return [GeoNode(i, rng.random(), rng.random()) for i in range(n)]


def default_tx_radius(n: int) -> float:
    """Connectivity-threshold radius sqrt(2 ln n / (pi n)) for uniform random
    placements; keeps the network connected with high probability as n grows."""
    if n < 2:
        return 1.0
    return math.sqrt(2.0 * math.log(n) / (math.pi * n))


def build_udg(nodes: list[GeoNode], tx_radius: float) -> frozenset[tuple[int, int]]:
    """Unit-disk edges: all pairs within ``tx_radius`` (inclusive)."""
    if tx_radius <= 0:
        raise ValueError("tx_radius must be positive")
    r2 = tx_radius * tx_radius
    edges = set()
    for i, a in enumerate(nodes):
        ax, ay = a.x, a.y
        for b in nodes[i + 1 :]:
            dx = ax - b.x
            dy = ay - b.y
            if dx * dx + dy * dy <= r2:
                edges.add((a.id, b.id))
    return frozenset(edges)


def rng_prune(nodes: list[GeoNode], udg_edges) -> frozenset[tuple[int, int]]:
    """Relative-neighborhood pruning of a unit-disk edge set.

    An edge (u, v) is dropped exactly when some witness w is connected to both
    endpoints and max(d(u,w), d(w,v)) < d(u,v); with a uniform radius this is
    the symmetric lune test. The output is a subset of the input and pruning
    is idempotent.
    """
    adj: dict[int, set[int]] = {nd.id: set() for nd in nodes}
    for u, v in udg_edges:
        adj[u].add(v)
        adj[v].add(u)
    by_id = {nd.id: nd for nd in nodes}
    kept = set()
    for u, v in udg_edges:
        duv = _dist(by_id[u], by_id[v])
        pruned = False
        for w in adj[u] & adj[v]:
            if max(_dist(by_id[u], by_id[w]), _dist(by_id[w], by_id[v])) < duv:
                pruned = True
                break
        if not pruned:
            kept.add((min(u, v), max(u, v)))
    return frozenset(kept)


def build_network(
    n: int,
    seed: int,
    tx_radius: float | None = None,
    interference_radius: float | None = None,
) -> GeoNetwork:
    """Compose placement, unit-disk connectivity and pruning into a network."""
    nodes = generate_nodes(n, seed)
    r = tx_radius if tx_radius is not None else default_tx_radius(n)
    ri = interference_radius if interference_radius is not None else r
    udg = build_udg(nodes, r)
    links = tuple(sorted(rng_prune(nodes, udg)))
    return GeoNetwork(nodes=tuple(nodes), tx_radius=r, interference_radius=ri, links=links)


def build_stream_graph(
    network: GeoNetwork, q: int
) -> tuple[ContentionGraph, tuple[StreamLabel, ...]]:
    """Expand each link into ``q`` stream vertices.

    The q streams of one link form a clique and one family. Streams of two
    distinct links are all pairwise adjacent when the links interfere, i.e.
    they share a physical node or any endpoint of one lies within the
    interference radius of any endpoint of the other. Superfamily groups
    collect, per physical node, every stream of a link incident to it.
    """
    if q < 1:
        raise ValueError("need at least one stream per link")
    links = list(network.links)
    nodes = network.nodes
    ri = network.interference_radius

    def streams(link_idx: int) -> range:
        return range(link_idx * q, link_idx * q + q)

    edges: list[tuple[int, int]] = []
    for i in range(len(links)):
        vs = list(streams(i))
        for a in range(q):
            for b in range(a + 1, q):
                edges.append((vs[a], vs[b]))

    for i in range(len(links)):
        a, b = links[i]
        na, nb = nodes[a], nodes[b]
        for j in range(i + 1, len(links)):
            c, d = links[j]
            if a == c or a == d or b == c or b == d:
                interferes = True
            else:
                nc, nd = nodes[c], nodes[d]
                interferes = (
                    _dist(na, nc) <= ri
                    or _dist(na, nd) <= ri
                    or _dist(nb, nc) <= ri
                    or _dist(nb, nd) <= ri
                )
            if interferes:
                for u in streams(i):
                    for v in streams(j):
                        edges.append((u, v))

    families = {i: list(streams(i)) for i in range(len(links))}

    incident: dict[int, list[int]] = {}
    for i, (a, b) in enumerate(links):
        incident.setdefault(a, []).append(i)
        incident.setdefault(b, []).append(i)
    superfamilies = {
        node_id: [v for i in link_ids for v in streams(i)]
        for node_id, link_ids in incident.items()
    }

    graph = ContentionGraph(
        q * len(links), edges, families=families, superfamilies=superfamilies
    )
    labels = tuple(
        StreamLabel(link_id=i, stream_index=s, endpoints=links[i])
        for i in range(len(links))
        for s in range(q)
    )
    return graph, labels
