"""Greedy loop-cutset heuristics.

``A1`` considers only nodes with at most one parent; ``A2`` rejects only
nodes with two parents on a common loop, and additionally strips every node
that lies on no loop before each pick.  Both repeat "prune, then take the
best candidate" until nothing multiply connected is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from .cutset import Cutset, Selection
from .errors import InvalidCutsetError, NoEligibleNodeError
from .exact import is_valid_cutset
from .graph import (
    Network,
    biconnected_blocks,
    has_same_loop_parents,
    loop_nodes,
    prune_degree_one,
    remove_non_loop_nodes,
    remove_nodes,
    same_loop_parent_nodes,
)

Eligibility = Callable[[Network, int], bool]

VALUES_DESCENDING = "values-descending"
VALUES_ASCENDING = "values-ascending"


@dataclass(frozen=True)
class SelectionPolicy:
    """Ordering used to rank candidates; the maximum wins.

    By default: higher degree, then more values, then lower id.  Setting
    ``weights=(w_degree, w_values)`` replaces the lexicographic keys with the
    score ``w_degree*degree + w_values*values`` (ties still go to lower id).
    """

    secondary: str = VALUES_DESCENDING
    weights: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.secondary not in (VALUES_DESCENDING, VALUES_ASCENDING):
            raise ValueError(f"unknown secondary key {self.secondary!r}")
        if self.weights is not None:
            if len(self.weights) != 2 or min(self.weights) < 0:
                raise ValueError("weights must be two non-negative numbers")

    def key(self, net: Network, v: int):
        deg, val = net.degree(v), net.values(v)
        if self.weights is not None:
            wd, wv = self.weights
            return (wd * deg + wv * val, -v)
        return (deg, val if self.secondary == VALUES_DESCENDING else -val, -v)


DEFAULT_POLICY = SelectionPolicy()


def eligible_a1(net: Network, v: int) -> bool:
    return len(net.parents(v)) <= 1


def eligible_a2(net: Network, v: int) -> bool:
    return not has_same_loop_parents(net, v)


def select_next(net: Network, policy: SelectionPolicy, eligibility: Eligibility) -> Optional[int]:
    candidates = [v for v in net.nodes if eligibility(net, v)]
    if not candidates:
        return None
    return max(candidates, key=lambda v: policy.key(net, v))


def _membership(nodes) -> Eligibility:
    return lambda net, v: v in nodes


def _safe_candidates(net: Network):
    """Nodes on some loop that are a sink of none of them; never empty while loops remain.

    The topologically first loop node has no parent inside any nontrivial block.
    """
    return loop_nodes(net) - same_loop_parent_nodes(net)


def _reduce(net: Network, variant: str) -> Network:
    return remove_non_loop_nodes(net) if variant == "A2" else prune_degree_one(net)


def _greedy(net: Network, variant: str, choose: Callable[[Network], Tuple[Optional[int], bool]]) -> Cutset:
    members: List[int] = []
    trace: List[Selection] = []
    current = _reduce(net, variant)
    while len(current):
        v, fallback = choose(current)
        if v is None:
            raise NoEligibleNodeError(current)
        after = _reduce(remove_nodes(current, [v]), variant)
        gone = set(current.nodes) - set(after.nodes) - {v}
        trace.append(Selection(v, current.degree(v), current.values(v), tuple(sorted(gone)), fallback))
        members.append(v)
        current = after
    tag = "RANDOM" if variant == "RANDOM" else variant
    cutset = Cutset(tuple(members), tag, tuple(trace))
    if not is_valid_cutset(net, members):
        raise InvalidCutsetError(f"{tag} produced an invalid cutset {members}", members)
    return cutset


def run_heuristic(net: Network, variant: str = "A2", policy: SelectionPolicy = DEFAULT_POLICY) -> Cutset:
    variant = variant.upper()
    if variant not in ("A1", "A2"):
        raise ValueError(f"unknown heuristic variant {variant!r}")

    def choose(current: Network):
        if variant == "A1":
            v = select_next(current, policy, eligible_a1)
        else:
            v = select_next(current, policy, _membership(set(current.nodes) - same_loop_parent_nodes(current)))
        if v is not None:
            return v, False
        # Defensive: the topologically first remaining node satisfies both rules.
        return select_next(current, policy, _membership(_safe_candidates(current))), True

    return _greedy(net, variant, choose)


def run_random_baseline(net: Network, seed: int) -> Cutset:
    """Pick uniformly among A2-eligible remaining nodes until no loop is left."""
    rng = np.random.Generator(np.random.PCG64(seed))

    def choose(current: Network):
        pool = sorted(set(current.nodes) - same_loop_parent_nodes(current))
        if not pool:
            return None, False
        return pool[int(rng.integers(len(pool)))], False

    return _greedy(net, "RANDOM", choose)


def decompose(net: Network) -> List[Network]:
    """Loop-relevant biconnected blocks, each as its own network (cut vertices are shared)."""
    core = remove_non_loop_nodes(net)
    parts = []
    for block in biconnected_blocks(core):
        if len(block) < 2:
            continue
        edges = set(block)
        nodes = {v for e in edges for v in e}
        arcs = [(t, h) for t, h in core.arcs if (min(t, h), max(t, h)) in edges]
        parts.append(Network({v: core.values(v) for v in nodes}, arcs, validate=False))
    return sorted(parts, key=lambda p: p.nodes)
