"""Zero forcing: color-change closure, forcing traces, and maximality checks.

A black node with exactly one white neighbor forces that neighbor black.
A set whose closure is the whole vertex set is a zero forcing set (ZFS);
for leader-follower consensus dynamics this is exactly strong structural
controllability of the pair (graph, leaders).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, LeaderSet


@dataclass(frozen=True)
class ForcingTrace:
    """A full record of one forcing process.

    steps is the chronological (forcer, forced) sequence; derived is the
    closure reached from initial_black.
    """

    initial_black: frozenset[int]
    steps: tuple[tuple[int, int], ...]
    derived: frozenset[int]

    @property
    def forced_sequence(self) -> tuple[int, ...]:
        return tuple(u for _, u in self.steps)

    def to_text(self) -> str:
        """One 'FORCE forcer forced' line per step (golden-file friendly)."""
        return "".join(f"FORCE {v} {u}\n" for v, u in self.steps)


def _as_black_set(g: Graph, black: Iterable[int]) -> set[int]:
    s = set(black)
    for v in s:
        if not 0 <= v < g.n:
            raise ValueError(f"black vertex {v} out of range for graph on {g.n} nodes")
    return s


def forcing_candidates(g: Graph, black: Iterable[int]) -> list[tuple[int, int]]:
    """All (forcer, forced) moves available right now, sorted by forcer id.

    A forcer is a black node with exactly one white neighbor, so each forcer
    appears at most once.
    """
    black_set = _as_black_set(g, black)
    out: list[tuple[int, int]] = []
    for v in sorted(black_set):
        white = [u for u in g.neighbors(v) if u not in black_set]
        if len(white) == 1:
            out.append((v, white[0]))
    return out


def derived_set(g: Graph, black: Iterable[int]) -> ForcingTrace:
    """Run the forcing process to exhaustion and record a trace.

    At each step the candidate with the smallest forcer id is applied, which
    makes the trace deterministic.  The closure itself is order-independent.
    """
    black_set = _as_black_set(g, black)
    initial = frozenset(black_set)
    steps: list[tuple[int, int]] = []
    while True:
        cands = forcing_candidates(g, black_set)
        if not cands:
            break
        v, u = cands[0]
        steps.append((v, u))
        black_set.add(u)
    return ForcingTrace(initial, tuple(steps), frozenset(black_set))


def closure(g: Graph, black: Iterable[int]) -> frozenset[int]:
    """The derived set alone, via a linear-time white-neighbor-count worklist."""
    black_set = _as_black_set(g, black)
    white_count = [0] * g.n
    for v in range(g.n):
        white_count[v] = sum(1 for u in g.neighbors(v) if u not in black_set)
    queue = deque(v for v in black_set if white_count[v] == 1)
    while queue:
        v = queue.popleft()
        if v not in black_set or white_count[v] != 1:
            continue
        u = next(w for w in g.neighbors(v) if w not in black_set)
        black_set.add(u)
        for w in g.neighbors(u):
            white_count[w] -= 1
            if w in black_set and white_count[w] == 1:
                queue.append(w)
        if white_count[u] == 1:
            queue.append(u)
    return frozenset(black_set)


def is_zfs(g: Graph, leaders: LeaderSet) -> bool:
    """True iff the leaders force the entire vertex set black."""
    leaders.validate_for(g)
    return len(closure(g, leaders)) == g.n


def is_unique_process(g: Graph, black: Iterable[int]) -> bool:
    """True iff at every step exactly one *node* can be forced next.

    Several black nodes may be able to force the same white node; that still
    counts as a single available move.  Returns True vacuously once no move
    is available, so the result is meaningful mainly for forcing sets.
    """
    black_set = _as_black_set(g, black)
    while True:
        cands = forcing_candidates(g, black_set)
        if not cands:
            return True
        forced = {u for _, u in cands}
        if len(forced) > 1:
            return False
        black_set.add(next(iter(forced)))


def validate_trace(g: Graph, trace: ForcingTrace) -> None:
    """Replay a trace, raising ValueError at the first illegal step."""
    black_set = set(trace.initial_black)
    for idx, (v, u) in enumerate(trace.steps):
        if v not in black_set:
            raise ValueError(f"step {idx}: forcer {v} is not black")
        if u in black_set:
            raise ValueError(f"step {idx}: node {u} is already black")
        white = [w for w in g.neighbors(v) if w not in black_set]
        if white != [u]:
            raise ValueError(
                f"step {idx}: {v} cannot force {u} (white neighbors {sorted(white)})"
            )
        black_set.add(u)
    if black_set != set(trace.derived):
        raise ValueError("trace does not reach its recorded derived set")


def is_maximal_for_zfs(
    g: Graph, leaders: LeaderSet
) -> tuple[bool, list[tuple[int, int]]]:
    """Check that no edge can be added while the leaders stay a ZFS.

    Returns (maximal, violations) where violations lists every non-edge whose
    addition would preserve the ZFS property.  Raises ValueError when the
    leaders are not a ZFS of g in the first place.
    """
    if not is_zfs(g, leaders):
        raise ValueError("leaders are not a zero forcing set of the given graph")
    violations: list[tuple[int, int]] = []
    work = g.copy()
    for u, v in g.non_edges():
        work.add_edge(u, v)
        if len(closure(work, leaders)) == work.n:
            violations.append((u, v))
        work.remove_edge(u, v)
    return (not violations, violations)
