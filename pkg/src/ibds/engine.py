"""Synchronous round engine for distributed maximal bounded-degree selection.

Every vertex runs the same state machine. It holds a random rank (made unique
by appending the vertex id as a tiebreaker), a sticky ``qualified`` flag, a
three-valued ``decision`` (undecided / excluded / selected) and a ``budget``
initialized to k+1 that counts how many selections its closed neighborhood
may still absorb.

A round has four phases, each computed against the state at the start of the
phase and committed at the phase boundary, so results are independent of any
per-vertex execution order:

* qualify: a vertex whose rank is no larger than every participating
  neighbor's rank raises its qualified flag (vacuously with no neighbors).
* rank shift: a qualified vertex with no equal-rank unqualified neighbor
  adopts the smallest participating-neighbor rank above its own (unchanged
  when there is none). This keeps an already selected vertex's rank tied to
  its smallest undecided neighbor, so at most one of its neighbors can
  qualify per round and its budget can never be driven below zero.
* select: every qualified undecided vertex becomes selected, spends one
  budget unit and announces; all participating neighbors decrement their
  budget per announcement received. Under the restricted variants the
  announcement also eliminates undecided superfamily mates outside the
  announcer's family ("r" and "rg") and, once a family has g selected
  members, the family's remaining undecided members ("rg"). A selected
  vertex then retires as soon as every participating neighbor is qualified.
* saturate: every vertex whose budget is exhausted halts; a selected one
  first eliminates its remaining undecided neighbors, whose presence could
  otherwise overfill its neighborhood.

Vertices halted in any phase send nothing afterwards, and all neighbor
quantifiers range over still-participating vertices only.
"""

import random
from dataclasses import dataclass
from typing import NamedTuple

from .graph import ContentionGraph

__all__ = [
    "UNDECIDED",
    "EXCLUDED",
    "SELECTED",
    "VARIANTS",
    "Rank",
    "VertexState",
    "RunConfig",
    "RoundEvents",
    "RunResult",
    "InvariantError",
    "init_states",
    "run_round",
    "run_to_completion",
]

UNDECIDED = -1
EXCLUDED = 0
SELECTED = 1

VARIANTS = ("plain", "r", "rg")


class InvariantError(RuntimeError):
    """An internal guarantee was violated (round limit or stalled progress)."""


class Rank(NamedTuple):
    """Random token ordered by (value, origin); origins make initial ranks
    pairwise distinct even when the random values collide."""

    value: int
    origin: int


@dataclass(slots=True)
class VertexState:
    rank: Rank
    qualified: bool
    decision: int
    budget: int
    halted: bool


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one run.

    ``g`` is the per-family selection cap and is required (and only allowed)
    for the "rg" variant. ``max_rounds`` defaults to the vertex count, which
    the algorithm is guaranteed never to exceed.
    """

    k: int
    variant: str = "plain"
    g: int | None = None
    seed: int = 0
    max_rounds: int | None = None

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("degree bound k must be >= 0")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        if self.variant == "rg":
            if self.g is None or self.g < 1:
                raise ValueError("variant 'rg' requires a family cap g >= 1")
        elif self.g is not None:
            raise ValueError(f"variant {self.variant!r} takes no family cap")
        if self.max_rounds is not None and self.max_rounds < 0:
            raise ValueError("max_rounds must be >= 0")


class RoundEvents(NamedTuple):
    chosen: tuple[int, ...]
    eliminated: tuple[int, ...]


@dataclass(frozen=True)
class RunResult:
    """Outcome of a completed run: the selected set, the per-vertex final
    (decision, budget) pairs and the per-round trace."""

    chosen: frozenset[int]
    rounds: int
    messages: int
    final_states: tuple[tuple[int, int], ...]
    trace: tuple[RoundEvents, ...]


@dataclass
class _Tally:
    messages: int = 0


def _require_metadata(g: ContentionGraph, cfg: RunConfig) -> None:
    if cfg.variant in ("r", "rg") and not (g.has_families and g.has_superfamilies):
        raise ValueError(
            f"variant {cfg.variant!r} requires family and superfamily metadata"
        )


def init_states(g: ContentionGraph, cfg: RunConfig) -> list[VertexState]:
    """Fresh per-vertex states; ranks are deterministic in (seed, vertex id)."""
    rng = random.Random(cfg.seed)
    return [
        VertexState(
            rank=Rank(rng.getrandbits(31), v),
            qualified=False,
            decision=UNDECIDED,
            budget=cfg.k + 1,
            halted=False,
        )
        for v in range(g.n)
    ]


def run_round(
    g: ContentionGraph,
    states: list[VertexState],
    cfg: RunConfig,
    tally: _Tally | None = None,
):
    """Execute one synchronous round in place.

    Returns ``(states, newly_chosen, newly_eliminated)`` where the two tuples
    are the vertices selected this round and the vertices decided against
    this round (eliminated or retired undecided), in ascending id order.
    A round on an all-halted state is a no-op.
    """
    _require_metadata(g, cfg)
    adj = g.adjacency
    n = g.n
    part = [v for v in range(n) if not states[v].halted and states[v].budget > 0]
    if not part:
        return states, (), ()

    in_part = bytearray(n)
    for v in part:
        in_part[v] = 1
    rank = [s.rank for s in states]

    # qualify: rank no larger than every participating neighbor's
    act_deg = [0] * n
    newly_qualified = []
    for v in part:
        c = 0
        if states[v].qualified:
            for u in adj[v]:
                if in_part[u]:
                    c += 1
        else:
            rv = rank[v]
            lowest = True
            for u in adj[v]:
                if in_part[u]:
                    c += 1
                    if rank[u] < rv:
                        lowest = False
            if lowest:
                newly_qualified.append(v)
        act_deg[v] = c
    for v in newly_qualified:
        states[v].qualified = True
    if tally is not None:
        # rank exchange plus flag exchange
        tally.messages += 2 * sum(act_deg[v] for v in part)

    qual = bytearray(n)
    for v in part:
        if states[v].qualified:
            qual[v] = 1

    # rank shift: adopt the smallest larger participating rank, unless an
    # equal-rank unqualified neighbor is still unresolved
    updates = []
    for v in part:
        if not qual[v]:
            continue
        rv = rank[v]
        blocked = False
        best = None
        for u in adj[v]:
            if not in_part[u]:
                continue
            ru = rank[u]
            if ru == rv:
                if not qual[u]:
                    blocked = True
                    break
            elif ru > rv and (best is None or ru < best):
                best = ru
        if not blocked and best is not None:
            updates.append((v, best))
    for v, r_new in updates:
        states[v].rank = r_new

    # select: qualified undecided vertices join and announce
    newly_chosen = [v for v in part if states[v].decision == UNDECIDED and qual[v]]
    eliminated: set[int] = set()
    if newly_chosen:
        for v in newly_chosen:
            states[v].decision = SELECTED
        sent = 0
        for v in newly_chosen:
            states[v].budget -= 1
            sent += act_deg[v]
            for u in adj[v]:
                if in_part[u]:
                    states[u].budget -= 1
        if tally is not None:
            tally.messages += sent
        if cfg.variant != "plain":
            for v in newly_chosen:
                fam = g.family_of(v)
                for u in g.superfamily_mates(v):
                    su = states[u]
                    if su.halted or su.decision != UNDECIDED:
                        continue
                    if fam is None or g.family_of(u) != fam:
                        su.decision = EXCLUDED
                        su.budget = 0
                        su.halted = True
                        eliminated.add(u)
            if cfg.variant == "rg":
                checked: set[int] = set()
                for v in newly_chosen:
                    fid = g.family_of(v)
                    if fid is None or fid in checked:
                        continue
                    checked.add(fid)
                    members = g.family_members(fid)
                    selected = sum(1 for u in members if states[u].decision == SELECTED)
                    if selected >= cfg.g:
                        for u in members:
                            su = states[u]
                            if not su.halted and su.decision == UNDECIDED:
                                su.decision = EXCLUDED
                                su.budget = 0
                                su.halted = True
                                eliminated.add(u)

    # a selected vertex retires once every participating neighbor qualified
    for v in part:
        s = states[v]
        if s.decision == SELECTED and not s.halted:
            done = True
            for u in adj[v]:
                if in_part[u] and not qual[u]:
                    done = False
                    break
            if done:
                s.halted = True

    # saturate: exhausted budgets halt; selected ones clear their remaining
    # undecided neighbors first
    pend = [v for v in part if not states[v].halted and states[v].budget <= 0]
    if pend:
        halted_now = bytearray(n)
        for v in range(n):
            if states[v].halted:
                halted_now[v] = 1
        sent = 0
        for v in pend:
            if states[v].decision != SELECTED:
                continue
            for u in adj[v]:
                if halted_now[u]:
                    continue
                sent += 1
                su = states[u]
                if su.decision == UNDECIDED and not su.halted:
                    su.decision = EXCLUDED
                    su.budget = 0
                    su.halted = True
                    eliminated.add(u)
        if tally is not None:
            tally.messages += sent
        for v in pend:
            s = states[v]
            s.halted = True
            if s.decision == UNDECIDED:
                eliminated.add(v)

    return states, tuple(newly_chosen), tuple(sorted(eliminated))


def run_to_completion(g: ContentionGraph, cfg: RunConfig) -> RunResult:
    """Iterate rounds until every vertex halts.

    Raises :class:`InvariantError` if the run would exceed the round limit or
    a round makes no progress; neither can happen for well-formed inputs.
    """
    _require_metadata(g, cfg)
    states = init_states(g, cfg)
    limit = cfg.max_rounds if cfg.max_rounds is not None else g.n
    tally = _Tally()
    trace: list[RoundEvents] = []
    active = g.n
    rounds = 0
    while active:
        if rounds >= limit:
            raise InvariantError(f"selection did not finish within {limit} rounds")
        ranks_before = [s.rank for s in states]
        _, chosen, elim = run_round(g, states, cfg, tally)
        rounds += 1
        trace.append(RoundEvents(chosen=chosen, eliminated=elim))
        now_active = sum(1 for s in states if not s.halted)
        # a round may legitimately only shift ranks (selected vertices catching
        # up past ranks of vertices that halted); identical state would repeat
        # forever, so that is the deadlock to trap
        if (
            not chosen
            and now_active >= active
            and all(s.rank == r for s, r in zip(states, ranks_before))
        ):
            raise InvariantError(f"round {rounds} made no progress")
        active = now_active
    return RunResult(
        chosen=frozenset(v for v, s in enumerate(states) if s.decision == SELECTED),
        rounds=rounds,
        messages=tally.messages,
        final_states=tuple((s.decision, s.budget) for s in states),
        trace=tuple(trace),
    )
