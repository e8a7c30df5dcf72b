"""Distributed graph-grammar engine: labeled nodes, local rewrite rules,
random serial scheduling, fixpoint detection, and convergence certification.

Two rule sets are provided.  R1 grows the maximal layered family (leader
clique, k follower chains, fan-in/diagonal/layer-clique fill) and R2 grows
the diameter-2 family (leader clique, one follower chain off the first
leader, full leader fan-out).  Rules are data: a pair of label patterns, an
index guard, and an action (connect and/or relabel), so the rule tables are
readable in one place and the engine stays generic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .constructions import ConstructedNetwork
from .graph import Graph

ALPHA = "alpha"
SEED = "seed"
LEADER = "leader"
BETA = "beta"
GAMMA = "gamma"

PI1 = "pi1"
PI2 = "pi2"


class NonConvergenceError(RuntimeError):
    """A run exceeded its step budget or left pre-final labels behind."""


@dataclass(frozen=True)
class Label:
    """Node label: a kind plus up to two integer indices.

    ALPHA carries no indices, SEED/LEADER carry i, chain labels carry i and
    (only in R1) a layer index j.
    """

    kind: str
    i: int | None = None
    j: int | None = None

    def __str__(self) -> str:
        if self.kind == ALPHA:
            return "a"
        head = {SEED: "S", LEADER: "L", BETA: "b", GAMMA: "g"}[self.kind]
        text = f"{head}{self.i}"
        if self.j is not None:
            text += f",{self.j}"
        return text


class LabeledGraph:
    """A graph plus one label per node."""

    __slots__ = ("graph", "labels")

    def __init__(self, graph: Graph, labels: list[Label]):
        if len(labels) != graph.n:
            raise ValueError("need exactly one label per node")
        self.graph = graph
        self.labels = labels

    def copy(self) -> "LabeledGraph":
        return LabeledGraph(self.graph.copy(), list(self.labels))

    def nodes_with_kind(self, kind: str) -> list[int]:
        return [v for v, lab in enumerate(self.labels) if lab.kind == kind]

    def label_texts(self) -> dict[int, str]:
        return {v: str(lab) for v, lab in enumerate(self.labels)}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.graph == other.graph and self.labels == other.labels

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.graph.n}, m={self.graph.edge_count()})"


Guard = Callable[[Label, Optional[Label]], bool]
Relabel = Callable[[Label, Optional[Label]], Label]


@dataclass(frozen=True)
class Rule:
    """One rewrite rule.

    Binds one node of kind `left` (and, if `right` is set, a second node of
    that kind); `guard` sees both labels.  The action adds the edge between
    the bound nodes (when `connect`) and applies the relabel functions.
    `forbid_near_left` lists labels that must not already occur among the
    left node's neighbors — the local fire-once guard for recruitment rules,
    without which a leader could start arbitrarily many chains.
    """

    name: str
    phase: str
    left: str
    right: str | None = None
    guard: Guard = lambda a, b: True
    connect: bool = False
    relabel_left: Relabel | None = None
    relabel_right: Relabel | None = None
    forbid_near_left: Callable[[Label, Optional[Label]], tuple[Label, ...]] | None = None


@dataclass(frozen=True)
class Match:
    rule: Rule
    nodes: tuple[int, ...]

    @property
    def rule_id(self) -> str:
        return self.rule.name


@dataclass(frozen=True)
class Schedule:
    """Reproducible record of one run: the seed and the applied steps."""

    seed: int
    steps: tuple[tuple[str, tuple[int, ...]], ...]

    def to_text(self) -> str:
        lines = []
        for idx, (name, nodes) in enumerate(self.steps, start=1):
            lines.append(f"STEP {idx} RULE {name} NODES {','.join(map(str, nodes))}")
        return "\n".join(lines) + ("\n" if lines else "")


def initial_state(n: int, seed_node: int = 0) -> LabeledGraph:
    """Edgeless start state: every node alpha except one seed labeled S_1."""
    if n < 1:
        raise ValueError("need at least one node")
    labels = [Label(ALPHA)] * n
    labels[seed_node] = Label(SEED, 1)
    return LabeledGraph(Graph(n), labels)


def grammar_r1(n_leaders: int, d: int) -> list[Rule]:
    """Rule set producing the maximal layered family on n = n_leaders*d nodes."""
    if n_leaders < 1:
        raise ValueError(f"need n_leaders >= 1, got {n_leaders}")
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    k, last = n_leaders, d - 1
    return [
        Rule("r0", PI1, SEED, ALPHA,
             guard=lambda a, b: 1 <= a.i < k,
             connect=True,
             relabel_left=lambda a, b: Label(LEADER, a.i),
             relabel_right=lambda a, b: Label(SEED, a.i + 1)),
        Rule("r1", PI1, SEED,
             guard=lambda a, b: a.i == k,
             relabel_left=lambda a, b: Label(LEADER, a.i)),
        Rule("r2", PI1, LEADER, ALPHA,
             connect=True,
             relabel_right=lambda a, b: Label(GAMMA, a.i, 1),
             forbid_near_left=lambda a, b: (Label(GAMMA, a.i, 1), Label(BETA, a.i, 1))),
        Rule("r3", PI1, GAMMA, ALPHA,
             guard=lambda a, b: 1 <= a.j < last,
             connect=True,
             relabel_left=lambda a, b: Label(BETA, a.i, a.j),
             relabel_right=lambda a, b: Label(GAMMA, a.i, a.j + 1)),
        Rule("r4", PI1, GAMMA,
             guard=lambda a, b: a.j == last,
             relabel_left=lambda a, b: Label(BETA, a.i, a.j)),
        Rule("r5", PI1, LEADER, LEADER, connect=True),
        Rule("r6", PI2, LEADER, BETA,
             guard=lambda a, b: b.j == 1 and b.i <= a.i,
             connect=True),
        Rule("r7", PI2, BETA, BETA,
             guard=lambda a, b: b.j == a.j + 1 and b.i < a.i,
             connect=True),
        Rule("r8", PI2, BETA, BETA,
             guard=lambda a, b: b.j == a.j and b.i != a.i,
             connect=True),
    ]


def grammar_r2(n: int, n_leaders: int, r6_same_index_only: bool = False) -> list[Rule]:
    """Rule set producing the diameter-2 family on n nodes.

    The final fan-out rule connects every non-first leader to every chain
    node.  Set r6_same_index_only=True for the narrower matching-subscript
    variant (adds only n_leaders-1 fan-out edges; kept for comparison).
    """
    if n_leaders < 2:
        raise ValueError(f"need n_leaders >= 2, got {n_leaders}")
    if n <= n_leaders:
        raise ValueError(f"need n > n_leaders, got n={n}, n_leaders={n_leaders}")
    k, nf = n_leaders, n - n_leaders
    if r6_same_index_only:
        r6_guard: Guard = lambda a, b: a.i != 1 and b.i == a.i
    else:
        r6_guard = lambda a, b: a.i != 1
    return [
        Rule("r0", PI1, SEED, ALPHA,
             guard=lambda a, b: 1 <= a.i < k,
             connect=True,
             relabel_left=lambda a, b: Label(LEADER, a.i),
             relabel_right=lambda a, b: Label(SEED, a.i + 1)),
        Rule("r1", PI1, SEED,
             guard=lambda a, b: a.i == k,
             relabel_left=lambda a, b: Label(LEADER, a.i)),
        Rule("r2", PI1, LEADER, ALPHA,
             guard=lambda a, b: a.i == 1,
             connect=True,
             relabel_right=lambda a, b: Label(BETA, 1),
             forbid_near_left=lambda a, b: (Label(BETA, 1), Label(GAMMA, 1))),
        Rule("r3", PI1, BETA, ALPHA,
             guard=lambda a, b: 1 <= a.i < nf,
             connect=True,
             relabel_left=lambda a, b: Label(GAMMA, a.i),
             relabel_right=lambda a, b: Label(BETA, a.i + 1)),
        Rule("r4", PI1, BETA,
             guard=lambda a, b: a.i == nf,
             relabel_left=lambda a, b: Label(GAMMA, a.i)),
        Rule("r5", PI1, LEADER, LEADER, connect=True),
        Rule("r6", PI2, LEADER, GAMMA, guard=r6_guard, connect=True),
    ]


def _match_effect(state: LabeledGraph, rule: Rule, nodes: tuple[int, ...]):
    """Canonical description of what applying the match would change."""
    edge = None
    if rule.connect:
        u, v = nodes
        edge = (min(u, v), max(u, v))
    relabels = []
    la = state.labels[nodes[0]]
    lb = state.labels[nodes[1]] if len(nodes) == 2 else None
    if rule.relabel_left is not None:
        relabels.append((nodes[0], rule.relabel_left(la, lb)))
    if rule.relabel_right is not None:
        relabels.append((nodes[1], rule.relabel_right(la, lb)))
    return edge, tuple(sorted(relabels, key=lambda t: t[0], reverse=False))


def _binding_ok(state: LabeledGraph, rule: Rule, nodes: tuple[int, ...]) -> bool:
    la = state.labels[nodes[0]]
    if la.kind != rule.left:
        return False
    lb: Label | None = None
    if rule.right is None:
        if len(nodes) != 1:
            return False
    else:
        if len(nodes) != 2 or nodes[0] == nodes[1]:
            return False
        lb = state.labels[nodes[1]]
        if lb.kind != rule.right:
            return False
    if not rule.guard(la, lb):
        return False
    if rule.connect and state.graph.has_edge(nodes[0], nodes[1]):
        return False
    if rule.forbid_near_left is not None:
        forbidden = rule.forbid_near_left(la, lb)
        if any(state.labels[w] in forbidden for w in state.graph.neighbors(nodes[0])):
            return False
    return True


def applicable_matches(state: LabeledGraph, rules: Iterable[Rule]) -> list[Match]:
    """Every currently applicable, effective match in deterministic order.

    Edge-adding matches whose edge already exists are excluded.  Symmetric
    two-node rules would yield both orientations of the same edge; only the
    first(equal-effect) binding is listed so random scheduling stays unbiased.
    """
    by_kind: dict[str, list[int]] = {}
    for v, lab in enumerate(state.labels):
        by_kind.setdefault(lab.kind, []).append(v)
    out: list[Match] = []
    seen: set = set()
    for rule in rules:
        lefts = by_kind.get(rule.left, [])
        if rule.right is None:
            candidates = [(v,) for v in lefts]
        else:
            rights = by_kind.get(rule.right, [])
            candidates = [
                (v, u) for v in lefts for u in rights if u != v
            ]
        for nodes in candidates:
            if not _binding_ok(state, rule, nodes):
                continue
            key = (rule.name, _match_effect(state, rule, nodes))
            if key in seen:
                continue
            seen.add(key)
            out.append(Match(rule, nodes))
    return out


def _apply_inplace(state: LabeledGraph, match: Match) -> None:
    edge, relabels = _match_effect(state, match.rule, match.nodes)
    if edge is not None:
        state.graph.add_edge(*edge)
    for v, lab in relabels:
        state.labels[v] = lab


def step(state: LabeledGraph, match: Match) -> LabeledGraph:
    """Apply one match, returning the successor state; stale matches raise."""
    if not _binding_ok(state, match.rule, match.nodes):
        raise ValueError(
            f"stale or invalid binding: rule {match.rule.name} on nodes {match.nodes}"
        )
    nxt = state.copy()
    _apply_inplace(nxt, match)
    return nxt


def _step_budget(n: int) -> int:
    return 4 * n * n + 8 * n + 32


def run_to_fixpoint(
    initial: LabeledGraph,
    rules: list[Rule],
    seed: int = 0,
    prefer_phase: str | None = None,
    max_steps: int | None = None,
    on_step: Callable[[int, LabeledGraph, Match], None] | None = None,
) -> tuple[LabeledGraph, Schedule]:
    """Repeatedly apply a uniformly random applicable match until none remain.

    prefer_phase biases scheduling: matches of that phase are taken whenever
    any is available (still uniformly among them).  The step budget guards
    against rule-encoding bugs; both grammars are monotone, so legitimate
    runs stay well under it.
    """
    state = initial.copy()
    rng = np.random.default_rng(seed)
    budget = _step_budget(state.graph.n) if max_steps is None else max_steps
    trace: list[tuple[str, tuple[int, ...]]] = []
    while True:
        matches = applicable_matches(state, rules)
        if not matches:
            break
        pool = matches
        if prefer_phase is not None:
            preferred = [m for m in matches if m.rule.phase == prefer_phase]
            if preferred:
                pool = preferred
        match = pool[int(rng.integers(len(pool)))]
        _apply_inplace(state, match)
        trace.append((match.rule.name, match.nodes))
        if on_step is not None:
            on_step(len(trace), state, match)
        if len(trace) > budget:
            raise NonConvergenceError(
                f"no fixpoint after {budget} steps (n={state.graph.n})"
            )
    return state, Schedule(seed=seed, steps=tuple(trace))


def replay(initial: LabeledGraph, rules: Iterable[Rule], schedule: Schedule) -> LabeledGraph:
    """Re-run a recorded schedule; returns the (identical) final state."""
    by_name = {r.name: r for r in rules}
    state = initial.copy()
    for idx, (name, nodes) in enumerate(schedule.steps, start=1):
        rule = by_name.get(name)
        if rule is None:
            raise ValueError(f"step {idx}: unknown rule {name!r}")
        match = Match(rule, nodes)
        if not _binding_ok(state, rule, nodes):
            raise ValueError(f"step {idx}: binding {nodes} for {name} is not applicable")
        _apply_inplace(state, match)
    return state


def _role_tag(lab: Label) -> str | None:
    if lab.kind == LEADER:
        return f"L{lab.i}"
    if lab.kind == BETA and lab.j is not None:
        return f"u_{lab.i},{lab.j}"
    if lab.kind == GAMMA and lab.j is None:
        return f"u_{lab.i}"
    return None


def label_isomorphic(state: LabeledGraph, target: ConstructedNetwork) -> bool:
    """True iff the final labels map the state's edges exactly onto target's.

    Chain labels carry their intended position, so the comparison is a direct
    role-tag lookup — no isomorphism search.  Raises NonConvergenceError if
    alpha or seed labels remain.
    """
    stuck = [v for v, lab in enumerate(state.labels) if lab.kind in (ALPHA, SEED)]
    if stuck:
        raise NonConvergenceError(
            f"state is not converged: nodes {stuck} still labeled alpha/seed"
        )
    if state.graph.n != target.graph.n:
        return False
    mapping: dict[int, str] = {}
    for v, lab in enumerate(state.labels):
        role = _role_tag(lab)
        if role is None:
            return False
        mapping[v] = role
    target_ids = {role: v for v, role in target.layout.items()}
    if sorted(mapping.values()) != sorted(target_ids):
        return False
    to_target = {v: target_ids[role] for v, role in mapping.items()}
    mapped = {
        (min(to_target[u], to_target[v]), max(to_target[u], to_target[v]))
        for u, v in state.graph.edges()
    }
    return mapped == set(target.graph.edges())
