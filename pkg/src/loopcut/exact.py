"""Cutset validity (cycle-catalog oracle and split-graph test) and the exact minimum solver.

A node set C is a loop cutset when every loop has a member of C that is not a
sink of that loop.  A sink (head-to-head node) does not block the loop when
instantiated, so it does not count.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .cutset import Cutset
from .errors import BudgetExceeded, CycleBudgetExceeded, UnknownNodeError
from .graph import Network, connected_components, remove_non_loop_nodes

DEFAULT_CYCLE_CAP = 100_000
DEFAULT_BUDGET = 2_000_000

IN_IN, IN_OUT, OUT_OUT = "in/in", "in/out", "out/out"


@dataclass(frozen=True)
class Loop:
    nodes: Tuple[int, ...]
    orientations: Tuple[str, ...]

    def sinks(self) -> Set[int]:
        return {v for v, o in zip(self.nodes, self.orientations) if o == IN_IN}

    def non_sinks(self) -> List[int]:
        return [v for v, o in zip(self.nodes, self.orientations) if o != IN_IN]


@dataclass(frozen=True)
class LoopCatalog:
    cycles: Tuple[Loop, ...]

    def __len__(self) -> int:
        return len(self.cycles)

    def __iter__(self):
        return iter(self.cycles)


def orient(net: Network, cycle: Sequence[int]) -> Loop:
    """Annotate a cyclic node sequence with the direction of each node's two loop edges."""
    k = len(cycle)
    ors = []
    for i, v in enumerate(cycle):
        ins = sum(net.has_arc(w, v) for w in (cycle[i - 1], cycle[(i + 1) % k]))
        ors.append(IN_IN if ins == 2 else IN_OUT if ins == 1 else OUT_OUT)
    return Loop(tuple(cycle), tuple(ors))


def enumerate_loops(net: Network, cap: int = DEFAULT_CYCLE_CAP) -> LoopCatalog:
    """Every simple cycle of the underlying undirected graph, by brute-force path extension.

    Each cycle is reported once, starting at its smallest node and walking
    toward the smaller of that node's two loop neighbours.
    """
    adj = {v: sorted(n) for v, n in net.adjacency().items()}
    found: List[Loop] = []
    for s in net.nodes:
        path = [s]
        on_path = {s}
        stack = [iter([w for w in adj[s] if w > s])]
        while stack:
            for w in stack[-1]:
                if w == s:
                    continue
                if w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                for x in adj[w]:
                    if x == s and len(path) >= 3 and path[1] < w:
                        found.append(orient(net, path))
                        if len(found) > cap:
                            raise CycleBudgetExceeded(f"more than {cap} loops")
                stack.append(iter([x for x in adj[w] if x > s]))
                break
            else:
                stack.pop()
                on_path.discard(path.pop())
    return LoopCatalog(tuple(found))


def _check_members(net: Network, members: Iterable[int]) -> FrozenSet[int]:
    members = frozenset(members)
    for v in members:
        if v not in net:
            raise UnknownNodeError(v)
    return members


def is_valid_cutset_oracle(net: Network, members: Iterable[int], cap: int = DEFAULT_CYCLE_CAP,
                           catalog: Optional[LoopCatalog] = None) -> bool:
    """Check every loop of the catalog (built here unless one is passed in) for a non-sink member."""
    members = _check_members(net, members)
    if catalog is None:
        catalog = enumerate_loops(net, cap)
    for loop in catalog:
        if not any(v in members and o != IN_IN for v, o in zip(loop.nodes, loop.orientations)):
            return False
    return True


@dataclass(frozen=True)
class SplitGraph:
    """Each node v becomes ``(v, 'in')`` and ``(v, 'out')``.

    Arc p->v becomes (p,out)-(v,in); non-members get an internal (v,in)-(v,out)
    edge.  Members keep their in-side only: their out-arcs are dropped, since a
    loop leaving a member through a child arc is blocked there.
    """

    vertices: Tuple[Tuple[int, str], ...]
    edges: Tuple[Tuple[Tuple[int, str], Tuple[int, str]], ...]

    def is_forest(self) -> bool:
        parent = {x: x for x in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            parent[ra] = rb
        return True


def split_graph(net: Network, members: Iterable[int]) -> SplitGraph:
    members = _check_members(net, members)
    vertices = tuple((v, side) for v in net.nodes for side in ("in", "out"))
    edges = [((p, "out"), (v, "in")) for p, v in net.arcs if p not in members]
    edges += [((v, "in"), (v, "out")) for v in net.nodes if v not in members]
    return SplitGraph(vertices, tuple(edges))


def is_valid_cutset(net: Network, members: Iterable[int]) -> bool:
    return split_graph(net, members).is_forest()


def cutset_weight(net: Network, members: Iterable[int]) -> int:
    """Number of joint instantiations of the members (Python ints never overflow)."""
    return math.prod(net.values(v) for v in set(members))


# ---------------------------------------------------------------------------
# Exact search
# ---------------------------------------------------------------------------


def _short_loop(adj: Dict[int, Set[int]]) -> Optional[List[int]]:
    """A shortest simple cycle in an undirected adjacency map, or None."""
    best = None
    for root in sorted(adj):
        if not adj[root]:
            continue
        dist = {root: 0}
        pred = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * dist[u] + 1 >= len(best):
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    pred[w] = u
                    queue.append(w)
                elif w != pred[u] and pred[w] != u and dist[w] >= dist[u]:
                    pu, pw = [u], [w]
                    while pu[-1] is not None:
                        pu.append(pred[pu[-1]])
                    while pw[-1] is not None:
                        pw.append(pred[pw[-1]])
                    pu, pw = pu[-2::-1], pw[-2::-1]
                    i = 0
                    while i + 1 < min(len(pu), len(pw)) and pu[i + 1] == pw[i + 1]:
                        i += 1
                    cyc = pu[i:] + pw[:i:-1]
                    if best is None or len(cyc) < len(best):
                        best = cyc
        if best is not None and len(best) == 3:
            break
    return best


def _surviving_adjacency(net: Network, members: FrozenSet[int]) -> Dict[int, Set[int]]:
    adj: Dict[int, Set[int]] = {v: set() for v in net.nodes}
    for t, h in net.arcs:
        if t not in members:
            adj[t].add(h)
            adj[h].add(t)
    return adj


def _prune_adj(adj: Dict[int, Set[int]]) -> Dict[int, Set[int]]:
    adj = {v: set(n) for v, n in adj.items()}
    queue = deque(v for v in adj if len(adj[v]) <= 1)
    while queue:
        v = queue.popleft()
        if v not in adj:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1:
                queue.append(w)
    return adj


def disjoint_loop_bound(net: Network) -> int:
    """Greedy packing of vertex-disjoint loops; each needs its own cutset member."""
    adj = _prune_adj(net.adjacency())
    count = 0
    while adj:
        cyc = _short_loop(adj)
        if cyc is None:
            break
        count += 1
        for v in cyc:
            for w in adj.pop(v):
                if w in adj:
                    adj[w].discard(v)
        adj = _prune_adj(adj)
    return count


class _Search:
    def __init__(self, net: Network, budget: int, spent: int = 0):
        self.net = net
        self.budget = budget
        self.spent = spent

    def uncut_loop(self, members: FrozenSet[int]):
        adj = _prune_adj(_surviving_adjacency(self.net, members))
        cyc = _short_loop(adj)
        return None if cyc is None else orient(self.net, cyc)

    def minimum(self) -> FrozenSet[int]:
        depth = disjoint_loop_bound(self.net)
        while True:
            sols: Set[FrozenSet[int]] = set()
            self._dfs(frozenset(), depth, sols, set())
            if sols:
                return min(sols, key=lambda s: (cutset_weight(self.net, s), sorted(s)))
            depth += 1

    def _dfs(self, members, remaining, sols, seen):
        if members in seen:
            return
        seen.add(members)
        self.spent += 1
        if self.spent > self.budget:
            raise _OutOfBudget
        loop = self.uncut_loop(members)
        if loop is None:
            sols.add(members)
            return
        if remaining == 0:
            return
        for v in loop.non_sinks():
            self._dfs(members | {v}, remaining - 1, sols, seen)


class _OutOfBudget(Exception):
    pass


def exact_min_cutset(net: Network, budget: int = DEFAULT_BUDGET) -> Cutset:
    """Minimum-cardinality loop cutset; ties go to lower weight, then lexicographic order.

    Connected components of the loop-relevant core are solved separately.  In
    each, iterative deepening branches on the non-sink nodes of a shortest
    loop left uncut, starting from a disjoint-loop lower bound.  ``budget``
    caps the total number of search nodes; on exhaustion :class:`BudgetExceeded`
    is raised carrying a valid cutset patched from a greedy run.
    """
    core = remove_non_loop_nodes(net)
    members: List[int] = []
    spent = 0
    comps = connected_components(core)
    for i, comp in enumerate(comps):
        sub = core.subgraph(comp)
        search = _Search(sub, budget, spent)
        try:
            members.extend(sorted(search.minimum()))
        except _OutOfBudget:
            from .heuristics import run_heuristic

            for rest in comps[i:]:
                members.extend(sorted(run_heuristic(core.subgraph(rest), "A2").members))
            raise BudgetExceeded(Cutset(tuple(members), "EXACT", optimal=False)) from None
        spent = search.spent
    return Cutset(tuple(members), "EXACT", optimal=True)
