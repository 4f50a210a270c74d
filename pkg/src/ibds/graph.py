"""Contention graphs over dense integer vertices.

A :class:`ContentionGraph` is an immutable undirected graph whose vertices
stand for data streams and whose edges join streams that interfere with each
other. Two optional layers of metadata group vertices:

* families: the streams carried by one link. A family must form a clique.
* superfamily groups: all streams touching one physical node. Two vertices
  are superfamily mates when at least one group contains both; the relation
  is symmetric but not transitive, which is why groups are stored rather
  than a partition.

Text format (line oriented, ``#`` starts a comment line)::

    <n> <m>
    <u> <v>                        (m edge lines, 0 <= u < v < n)
    family <fid> : <v1> <v2> ...
    superfamily <sid> : <v1> ...

``parse_graph(serialize_graph(g))`` is structurally equal to ``g`` and
``serialize_graph(parse_graph(text))`` is the canonical form of ``text``.
"""

from pathlib import Path
from types import MappingProxyType

__all__ = [
    "ContentionGraph",
    "GraphFormatError",
    "parse_graph",
    "serialize_graph",
    "load_graph",
]


class GraphFormatError(ValueError):
    """Malformed graph text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ContentionGraph:
    """Undirected graph with optional family / superfamily metadata.

    Instances are immutable after construction and safe to share across
    threads. Neighbor lists are kept sorted so that iteration order, and
    therefore everything derived from it, is deterministic.
    """

    __slots__ = ("n", "_adj", "_edges", "_family_of", "_families", "_superfamilies", "_mates")

    def __init__(
        self,
        n: int,
        edges,
        families=None,
        superfamilies=None,
    ):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self.n = n

        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = e
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {u} {v}")
            seen.add((u, v))
            adj[u].append(v)
            adj[v].append(u)
        self._edges = frozenset(seen)
        self._adj = tuple(tuple(sorted(ns)) for ns in adj)

        family_of: list[int | None] = [None] * n
        fam_groups: dict[int, tuple[int, ...]] = {}
        if families is not None:
            for fid in sorted(families):
                members = sorted(families[fid])
                if not members:
                    raise ValueError(f"family {fid} is empty")
                if len(set(members)) != len(members):
                    raise ValueError(f"duplicate vertex in family {fid}")
                for v in members:
                    self._check_vertex(v)
                    if family_of[v] is not None:
                        raise ValueError(
                            f"vertex {v} appears in families {family_of[v]} and {fid}"
                        )
                    family_of[v] = fid
                for i, u in enumerate(members):
                    for v in members[i + 1 :]:
                        if (u, v) not in self._edges:
                            raise ValueError(f"family {fid} is not a clique")
                fam_groups[fid] = tuple(members)
        self._family_of = tuple(family_of)
        self._families = fam_groups if families is not None else None

        sf_groups: dict[int, tuple[int, ...]] = {}
        mates: list[set[int]] = [set() for _ in range(n)]
        if superfamilies is not None:
            for sid in sorted(superfamilies):
                members = sorted(superfamilies[sid])
                if not members:
                    raise ValueError(f"superfamily {sid} is empty")
                if len(set(members)) != len(members):
                    raise ValueError(f"duplicate vertex in superfamily {sid}")
                for v in members:
                    self._check_vertex(v)
                for v in members:
                    mates[v].update(members)
            for v in range(n):
                mates[v].discard(v)
            for sid in sorted(superfamilies):
                sf_groups[sid] = tuple(sorted(superfamilies[sid]))
        self._superfamilies = sf_groups if superfamilies is not None else None
        self._mates = tuple(frozenset(m) for m in mates)

        if self._families is not None and self._superfamilies is not None:
            for fid, members in self._families.items():
                for i, u in enumerate(members):
                    for v in members[i + 1 :]:
                        if v not in self._mates[u]:
                            raise ValueError(
                                f"family {fid} members {u} and {v} do not share a superfamily"
                            )

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    # -- structure -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v."""
        return self._edges

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-vertex sorted neighbor tuples."""
        return self._adj

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def induced_degree(self, chosen, v: int) -> int:
        """Number of neighbors of ``v`` inside the set ``chosen``."""
        self._check_vertex(v)
        if not isinstance(chosen, (set, frozenset)):
            chosen = frozenset(chosen)
        return sum(1 for u in self._adj[v] if u in chosen)

    # -- metadata ------------------------------------------------------

    @property
    def has_families(self) -> bool:
        return self._families is not None

    @property
    def has_superfamilies(self) -> bool:
        return self._superfamilies is not None

    @property
    def families(self):
        """Read-only mapping of family id to sorted member tuple."""
        return MappingProxyType(self._families or {})

    @property
    def superfamilies(self):
        """Read-only mapping of superfamily id to sorted member tuple."""
        return MappingProxyType(self._superfamilies or {})

    def family_of(self, v: int) -> int | None:
        self._check_vertex(v)
        return self._family_of[v]

    def family_members(self, fid: int) -> tuple[int, ...]:
        if self._families is None or fid not in self._families:
            raise ValueError(f"unknown family {fid}")
        return self._families[fid]

    def superfamily_mates(self, v: int) -> frozenset[int]:
        """Vertices sharing at least one superfamily group with ``v``."""
        self._check_vertex(v)
        return self._mates[v]

    def same_family(self, u: int, v: int) -> bool:
        """True when both vertices carry the same (non-absent) family id."""
        fu = self.family_of(u)
        return fu is not None and fu == self.family_of(v)

    # -- misc ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, ContentionGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self._edges == other._edges
            and self._families == other._families
            and self._superfamilies == other._superfamilies
        )

    def __repr__(self) -> str:
        fams = len(self._families) if self._families is not None else "none"
        sfs = len(self._superfamilies) if self._superfamilies is not None else "none"
        return f"ContentionGraph(n={self.n}, m={self.m}, families={fams}, superfamilies={sfs})"


def _parse_group_line(parts: list[str], kind: str, lineno: int) -> tuple[int, list[int]]:
    # parts[0] == kind; expect "<kind> <id> : <members...>"
    if len(parts) < 4 or parts[2] != ":":
        raise GraphFormatError(f"malformed {kind} line", lineno)
    try:
        gid = int(parts[1])
        members = [int(tok) for tok in parts[3:]]
    except ValueError:
        raise GraphFormatError(f"malformed {kind} line", lineno) from None
    return gid, members


def parse_graph(text: str) -> ContentionGraph:
    """Parse the text graph format; raises :class:`GraphFormatError`."""
    lines = [
        (i + 1, stripped)
        for i, raw in enumerate(text.splitlines())
        if (stripped := raw.strip()) and not stripped.startswith("#")
    ]
    if not lines:
        raise GraphFormatError("missing header line")

    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise GraphFormatError("header must be '<n> <m>'", lineno)
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise GraphFormatError("header must be '<n> <m>'", lineno) from None
    if n < 0 or m < 0:
        raise GraphFormatError("header counts must be non-negative", lineno)

    if len(lines) - 1 < m:
        raise GraphFormatError(f"expected {m} edge lines, found {len(lines) - 1}")

    edges: list[tuple[int, int]] = []
    edge_set: set[tuple[int, int]] = set()
    for lineno, line in lines[1 : 1 + m]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError("edge line must be '<u> <v>'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError("edge line must be '<u> <v>'", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range [0, {n})", lineno)
        if u >= v:
            raise GraphFormatError(f"edge {u} {v} must be declared with u < v", lineno)
        if (u, v) in edge_set:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        edge_set.add((u, v))
        edges.append((u, v))

    families: dict[int, list[int]] = {}
    superfamilies: dict[int, list[int]] = {}
    family_of: dict[int, int] = {}
    for lineno, line in lines[1 + m :]:
        parts = line.split()
        if parts[0] == "family":
            fid, members = _parse_group_line(parts, "family", lineno)
            if fid in families:
                raise GraphFormatError(f"duplicate family id {fid}", lineno)
            if len(set(members)) != len(members):
                raise GraphFormatError(f"duplicate vertex in family {fid}", lineno)
            for v in members:
                if not 0 <= v < n:
                    raise GraphFormatError(f"vertex {v} out of range [0, {n})", lineno)
                if v in family_of:
                    raise GraphFormatError(
                        f"vertex {v} appears in families {family_of[v]} and {fid}", lineno
                    )
                family_of[v] = fid
            ms = sorted(members)
            for i, u in enumerate(ms):
                for v in ms[i + 1 :]:
                    if (u, v) not in edge_set:
                        raise GraphFormatError(f"family {fid} is not a clique", lineno)
            families[fid] = members
        elif parts[0] == "superfamily":
            sid, members = _parse_group_line(parts, "superfamily", lineno)
            if sid in superfamilies:
                raise GraphFormatError(f"duplicate superfamily id {sid}", lineno)
            if len(set(members)) != len(members):
                raise GraphFormatError(f"duplicate vertex in superfamily {sid}", lineno)
            for v in members:
                if not 0 <= v < n:
                    raise GraphFormatError(f"vertex {v} out of range [0, {n})", lineno)
            superfamilies[sid] = members
        else:
            raise GraphFormatError(f"unrecognized directive '{parts[0]}'", lineno)

    try:
        return ContentionGraph(
            n,
            edges,
            families=families or None,
            superfamilies=superfamilies or None,
        )
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from exc


def serialize_graph(g: ContentionGraph) -> str:
    """Canonical text form: sorted edges, then families, then superfamilies."""
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in sorted(g.edges))
    if g.has_families:
        for fid in sorted(g.families):
            members = " ".join(str(v) for v in g.families[fid])
            out.append(f"family {fid} : {members}")
    if g.has_superfamilies:
        for sid in sorted(g.superfamilies):
            members = " ".join(str(v) for v in g.superfamilies[sid])
            out.append(f"superfamily {sid} : {members}")
    return "\n".join(out) + "\n"


def load_graph(path: str | Path) -> ContentionGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))
