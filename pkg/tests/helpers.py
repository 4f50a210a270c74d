"""Shared test utilities: deterministic graph generators and seed search."""

import random

from ibds import ContentionGraph, RunConfig, init_states


def random_graph(n: int, p: float, seed: int) -> ContentionGraph:
    """Plain G(n, p) graph, deterministic per seed."""
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return ContentionGraph(n, edges)


def random_bounded_degree_graph(n: int, max_degree: int, seed: int) -> ContentionGraph:
    """Random graph with a hard per-vertex degree cap, by pair sampling."""
    rng = random.Random(seed)
    target = n * max_degree // 3
    deg = [0] * n
    edges: set[tuple[int, int]] = set()
    for _ in range(8 * target):
        if len(edges) >= target:
            break
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        if u > v:
            u, v = v, u
        if (u, v) in edges or deg[u] >= max_degree or deg[v] >= max_degree:
            continue
        edges.add((u, v))
        deg[u] += 1
        deg[v] += 1
    return ContentionGraph(n, sorted(edges))


def complete_graph(m: int) -> ContentionGraph:
    return ContentionGraph(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def path_graph(n: int) -> ContentionGraph:
    return ContentionGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> ContentionGraph:
    return ContentionGraph(n, [(i, (i + 1) % n) for i in range(n)])


def seed_with_rank_order(g: ContentionGraph, order: list[int], k: int = 0, limit: int = 50_000) -> int:
    """Find a seed whose initial ranks sort the given vertices ascending."""
    for seed in range(limit):
        states = init_states(g, RunConfig(k=k, seed=seed))
        ranks = [states[v].rank for v in order]
        if all(a < b for a, b in zip(ranks, ranks[1:])):
            return seed
    raise AssertionError(f"no seed under {limit} orders vertices {order}")


def shared_node_graph() -> ContentionGraph:
    """Two single-stream links meeting at one physical node: two families,
    one shared superfamily group."""
    return ContentionGraph(
        2,
        [(0, 1)],
        families={0: [0], 1: [1]},
        superfamilies={0: [0], 1: [0, 1], 2: [1]},
    )
