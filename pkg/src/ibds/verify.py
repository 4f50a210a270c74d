"""Independent checkers and brute-force oracles for selection outputs.

These never share code paths with the round engine: the checkers re-derive
feasibility from the graph alone, the exact solver is a branch-and-bound
search, and the enumerator scans all vertex subsets. They exist to catch the
engine lying, so keep them dumb.
"""

from dataclasses import dataclass

from .graph import ContentionGraph

__all__ = [
    "Violation",
    "check_degree_bound",
    "check_maximal",
    "check_restrictions",
    "exact_max_ibds",
    "enumerate_maximal",
]

EXACT_MAX_VERTICES = 24
ENUMERATE_MAX_VERTICES = 15


@dataclass(frozen=True)
class Violation:
    """A concrete counterexample; ``witness`` (plus ``other`` for pair kinds)
    re-verifies as genuine when checked against the graph."""

    kind: str  # degree_exceeded | not_maximal | superfamily_mix | family_cap_exceeded
    witness: int
    other: int | None = None


def _as_set(g: ContentionGraph, chosen) -> frozenset[int]:
    s = frozenset(chosen)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"chosen vertex {v} out of range [0, {g.n})")
    return s


def _selected_counts(g: ContentionGraph, chosen: frozenset[int]) -> list[int]:
    counts = [0] * g.n
    for v in chosen:
        for u in g.adjacency[v]:
            counts[u] += 1
    return counts


def check_degree_bound(g: ContentionGraph, chosen, k: int) -> Violation | None:
    """None when every chosen vertex has at most k chosen neighbors."""
    s = _as_set(g, chosen)
    counts = _selected_counts(g, s)
    for v in sorted(s):
        if counts[v] > k:
            return Violation("degree_exceeded", witness=v)
    return None


def check_maximal(
    g: ContentionGraph,
    chosen,
    k: int,
    variant: str = "plain",
    g_cap: int | None = None,
) -> Violation | None:
    """None when no outside vertex could still be added.

    A vertex w is addable when its own chosen-neighbor count stays within k,
    no chosen neighbor of w would be pushed past k, and (for the restricted
    variants) w neither mixes superfamilies nor overfills its family cap.
    Assumes the degree bound already holds for ``chosen``.
    """
    s = _as_set(g, chosen)
    restricted = variant in ("r", "rg")
    if restricted and not (g.has_families and g.has_superfamilies):
        raise ValueError(f"variant {variant!r} requires family and superfamily metadata")
    if variant == "rg" and (g_cap is None or g_cap < 1):
        raise ValueError("variant 'rg' requires a family cap g_cap >= 1")
    counts = _selected_counts(g, s)
    fam_counts: dict[int, int] = {}
    if variant == "rg":
        for v in s:
            fid = g.family_of(v)
            if fid is not None:
                fam_counts[fid] = fam_counts.get(fid, 0) + 1
    for w in range(g.n):
        if w in s:
            continue
        if counts[w] > k:
            continue
        if any(counts[u] + 1 > k for u in g.adjacency[w] if u in s):
            continue
        if restricted:
            if any(u in s and not g.same_family(w, u) for u in g.superfamily_mates(w)):
                continue
            if variant == "rg":
                fid = g.family_of(w)
                if fid is not None and fam_counts.get(fid, 0) + 1 > g_cap:
                    continue
        return Violation("not_maximal", witness=w)
    return None


def check_restrictions(
    g: ContentionGraph,
    chosen,
    variant: str,
    g_cap: int | None = None,
) -> Violation | None:
    """Variant-specific feasibility of a chosen set.

    "r": chosen superfamily mates must share a family. "rg": additionally no
    family contributes more than ``g_cap`` chosen vertices.
    """
    if variant not in ("r", "rg"):
        raise ValueError(f"no restrictions to check for variant {variant!r}")
    if not (g.has_families and g.has_superfamilies):
        raise ValueError("family and superfamily metadata required")
    if variant == "rg" and (g_cap is None or g_cap < 1):
        raise ValueError("variant 'rg' requires a family cap g_cap >= 1")
    s = _as_set(g, chosen)
    for v in sorted(s):
        for u in sorted(g.superfamily_mates(v)):
            if u > v and u in s and not g.same_family(v, u):
                return Violation("superfamily_mix", witness=v, other=u)
    if variant == "rg":
        for fid in sorted(g.families):
            members = [v for v in g.families[fid] if v in s]
            if len(members) > g_cap:
                return Violation("family_cap_exceeded", witness=members[0])
    return None


def exact_max_ibds(g: ContentionGraph, k: int) -> tuple[int, frozenset[int]]:
    """Maximum-cardinality set whose members each keep at most k chosen
    neighbors, by branch and bound. Guarded to small graphs."""
    if g.n > EXACT_MAX_VERTICES:
        raise ValueError(
            f"refusing exact search on {g.n} vertices (limit {EXACT_MAX_VERTICES})"
        )
    adj = g.adjacency
    order = sorted(range(g.n), key=lambda v: (-len(adj[v]), v))
    total = len(order)
    counts = [0] * g.n
    picked = bytearray(g.n)
    chosen: list[int] = []
    best_size = 0
    best: tuple[int, ...] = ()

    def walk(i: int) -> None:
        nonlocal best_size, best
        if len(chosen) + (total - i) <= best_size:
            return
        if i == total:
            return
        v = order[i]
        if counts[v] <= k and all(counts[u] < k for u in adj[v] if picked[u]):
            picked[v] = 1
            chosen.append(v)
            for u in adj[v]:
                counts[u] += 1
            if len(chosen) > best_size:
                best_size = len(chosen)
                best = tuple(chosen)
            walk(i + 1)
            for u in adj[v]:
                counts[u] -= 1
            chosen.pop()
            picked[v] = 0
        walk(i + 1)

    walk(0)
    return best_size, frozenset(best)


def enumerate_maximal(g: ContentionGraph, k: int) -> list[frozenset[int]]:
    """All maximal degree-bounded sets, by scanning every vertex subset.

    Uses bitmask arithmetic internally; the definition of feasible/addable is
    the same one :func:`check_degree_bound` and :func:`check_maximal` apply,
    which the test suite cross-validates.
    """
    if g.n > ENUMERATE_MAX_VERTICES:
        raise ValueError(
            f"refusing subset scan on {g.n} vertices (limit {ENUMERATE_MAX_VERTICES})"
        )
    n = g.n
    nbr = [0] * n
    for v in range(n):
        for u in g.adjacency[v]:
            nbr[v] |= 1 << u
    full = (1 << n) - 1
    out: list[frozenset[int]] = []
    for mask in range(1 << n):
        feasible = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            if (nbr[v] & mask).bit_count() > k:
                feasible = False
                break
        if not feasible:
            continue
        maximal = True
        m = full & ~mask
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            inside = nbr[w] & mask
            if inside.bit_count() > k:
                continue
            addable = True
            mm = inside
            while mm:
                u = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                if (nbr[u] & mask).bit_count() + 1 > k:
                    addable = False
                    break
            if addable:
                maximal = False
                break
        if maximal:
            out.append(frozenset(v for v in range(n) if mask >> v & 1))
    return out
