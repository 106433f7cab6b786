"""Immutable DAG container and the undirected-graph analyses the cutset algorithms use.

A :class:`Network` is a directed acyclic graph whose nodes carry a value count
(the cardinality of the random variable they stand for).  Every structural
question asked by the heuristics (degree, loops, bridges, blocks) is about the
*underlying* undirected graph, where an arc may be walked in either direction.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Set, Tuple

from .errors import ParseError, UnknownNodeError, ValidationError

Arc = Tuple[int, int]
Edge = Tuple[int, int]  # undirected, stored with the smaller id first


class NodeView(NamedTuple):
    id: int
    parents: FrozenSet[int]
    children: FrozenSet[int]
    degree: int


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Network:
    """A validated, immutable directed acyclic graph with per-node value counts."""

    __slots__ = ("_values", "_parents", "_children", "_hash")

    def __init__(self, values: Mapping[int, int], arcs: Iterable[Arc] = (), *, validate: bool = True):
        values = dict(values)
        arcs = [tuple(a) for a in arcs]
        if validate:
            _check(values, arcs)
        parents: Dict[int, Set[int]] = {v: set() for v in values}
        children: Dict[int, Set[int]] = {v: set() for v in values}
        for t, h in arcs:
            children[t].add(h)
            parents[h].add(t)
        self._values = values
        self._parents = {v: frozenset(s) for v, s in parents.items()}
        self._children = {v: frozenset(s) for v, s in children.items()}
        self._hash = None

    # -- basic accessors -------------------------------------------------

    @property
    def nodes(self) -> Tuple[int, ...]:
        return tuple(sorted(self._values))

    @property
    def arcs(self) -> Tuple[Arc, ...]:
        return tuple(sorted((t, h) for t, hs in self._children.items() for h in hs))

    def edges(self) -> List[Edge]:
        """Underlying undirected edges, sorted."""
        return sorted(_edge(t, h) for t, h in self.arcs)

    @property
    def num_arcs(self) -> int:
        return sum(len(c) for c in self._children.values())

    def values(self, v: int) -> int:
        self._require(v)
        return self._values[v]

    def value_map(self) -> Dict[int, int]:
        return dict(self._values)

    def parents(self, v: int) -> FrozenSet[int]:
        self._require(v)
        return self._parents[v]

    def children(self, v: int) -> FrozenSet[int]:
        self._require(v)
        return self._children[v]

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._require(v)
        return self._parents[v] | self._children[v]

    def degree(self, v: int) -> int:
        self._require(v)
        return len(self._parents[v]) + len(self._children[v])

    def view(self, v: int) -> NodeView:
        return NodeView(v, self.parents(v), self.children(v), self.degree(v))

    def has_arc(self, tail: int, head: int) -> bool:
        return tail in self._values and head in self._children[tail]

    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        return {v: self._parents[v] | self._children[v] for v in self._values}

    def _require(self, v: int) -> None:
        if v not in self._values:
            raise UnknownNodeError(v)

    # -- dunder ----------------------------------------------------------

    def __contains__(self, v) -> bool:
        return v in self._values

    def __len__(self) -> int:
        return len(self._values)

    def __iter__(self):
        return iter(self.nodes)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return self._values == other._values and self._children == other._children

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(sorted(self._values.items())), self.arcs))
        return self._hash

    def __repr__(self) -> str:
        return f"Network(nodes={len(self)}, arcs={self.num_arcs})"

    # -- derived networks --------------------------------------------------

    def subgraph(self, keep: Iterable[int]) -> "Network":
        keep = set(keep)
        for v in keep:
            self._require(v)
        arcs = [(t, h) for t in keep for h in self._children[t] if h in keep]
        return Network({v: self._values[v] for v in keep}, arcs, validate=False)

    def with_values(self, values: Mapping[int, int]) -> "Network":
        new = dict(self._values)
        new.update(values)
        return Network(new, self.arcs)

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "nodes": [{"id": v, "values": self._values[v]} for v in self.nodes],
            "arcs": [[t, h] for t, h in self.arcs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def _check(values: Dict[int, int], arcs: List[Arc]) -> None:
    for v, d in values.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValidationError(f"node id {v!r} is not an integer")
        if isinstance(d, bool) or not isinstance(d, int) or d < 2:
            raise ValidationError(f"node {v} has values={d!r}; need an integer >= 2")
    seen = set()
    for arc in arcs:
        if len(arc) != 2:
            raise ValidationError(f"arc {list(arc)} is not a (tail, head) pair")
        t, h = arc
        for end in (t, h):
            if end not in values:
                raise ValidationError(f"arc {t}->{h} references undeclared node {end}")
        if t == h:
            raise ValidationError(f"self-arc on node {t}")
        if (t, h) in seen:
            raise ValidationError(f"duplicate arc {t}->{h}")
        seen.add((t, h))
    cycle = find_directed_cycle(values, arcs)
    if cycle:
        raise ValidationError("directed cycle via nodes " + ",".join(map(str, cycle)))


def find_directed_cycle(nodes: Iterable[int], arcs: Iterable[Arc]) -> List[int]:
    """Return one directed cycle as ``[v0, v1, ..., v0]``, or ``[]`` if acyclic."""
    succ: Dict[int, List[int]] = {v: [] for v in nodes}
    for t, h in arcs:
        succ[t].append(h)
    color = dict.fromkeys(succ, 0)
    for root in sorted(succ):
        if color[root]:
            continue
        path = [root]
        stack = [iter(sorted(succ[root]))]
        color[root] = 1
        while stack:
            for w in stack[-1]:
                if color[w] == 1:
                    return path[path.index(w):] + [w]
                if color[w] == 0:
                    color[w] = 1
                    path.append(w)
                    stack.append(iter(sorted(succ[w])))
                    break
            else:
                color[path.pop()] = 2
                stack.pop()
    return []


def load_network(text) -> Network:
    """Parse a network file (bytes or str) and validate it."""
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"network file is not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list) or not isinstance(doc.get("arcs"), list):
        raise ParseError('expected an object with "nodes" and "arcs" lists')
    values: Dict[int, int] = {}
    for entry in doc["nodes"]:
        if not isinstance(entry, dict) or "id" not in entry or "values" not in entry:
            raise ParseError(f"bad node entry {entry!r}")
        if entry["id"] in values:
            raise ValidationError(f"duplicate node id {entry['id']}")
        values[entry["id"]] = entry["values"]
    arcs = []
    for arc in doc["arcs"]:
        if not isinstance(arc, list) or len(arc) != 2:
            raise ParseError(f"bad arc entry {arc!r}")
        arcs.append((arc[0], arc[1]))
    return Network(values, arcs)


def dump_network(net: Network) -> str:
    return net.to_json()


# ---------------------------------------------------------------------------
# Undirected analyses
# ---------------------------------------------------------------------------


def remove_nodes(net: Network, nodes: Iterable[int]) -> Network:
    drop = set(nodes)
    for v in drop:
        if v not in net:
            raise UnknownNodeError(v)
    if not drop:
        return net
    return net.subgraph(v for v in net.nodes if v not in drop)


def prune_degree_one(net: Network) -> Network:
    """Iteratively delete nodes of underlying degree <= 1 until none remain."""
    adj = {v: set(n) for v, n in net.adjacency().items()}
    queue = deque(v for v in adj if len(adj[v]) <= 1)
    removed = set()
    while queue:
        v = queue.popleft()
        if v in removed:
            continue
        removed.add(v)
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1 and w not in removed:
                queue.append(w)
    if not removed:
        return net
    return net.subgraph(adj)


def connected_components(net: Network) -> List[List[int]]:
    adj = net.adjacency()
    seen: Set[int] = set()
    comps = []
    for root in net.nodes:
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_singly_connected(net: Network) -> bool:
    return net.num_arcs == len(net) - len(connected_components(net))


def biconnected_blocks(net: Network) -> List[List[Edge]]:
    """Edge sets of the biconnected components of the underlying graph.

    Iterative Hopcroft-Tarjan; a block with a single edge is a bridge.
    """
    adj = {v: sorted(n) for v, n in net.adjacency().items()}
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    blocks: List[List[Edge]] = []
    counter = 0
    for root in sorted(adj):
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        stack = [(root, None, iter(adj[root]))]
        edge_stack: List[Edge] = []
        while stack:
            u, parent, it = stack[-1]
            descended = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((u, w))
                    stack.append((w, u, iter(adj[w])))
                    descended = True
                    break
                if disc[w] < disc[u]:
                    low[u] = min(low[u], disc[w])
                    edge_stack.append((u, w))
            if descended:
                continue
            stack.pop()
            if not stack:
                continue
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                block = []
                while True:
                    e = edge_stack.pop()
                    block.append(_edge(*e))
                    if e == (p, u):
                        break
                blocks.append(sorted(block))
    return blocks


def bridges(net: Network) -> List[Edge]:
    return sorted(b[0] for b in biconnected_blocks(net) if len(b) == 1)


def edge_block_index(net: Network) -> Dict[Edge, int]:
    return {e: i for i, block in enumerate(biconnected_blocks(net)) for e in block}


def loop_nodes(net: Network) -> Set[int]:
    """Nodes lying on at least one undirected cycle (endpoints of non-bridge edges)."""
    out: Set[int] = set()
    for block in biconnected_blocks(net):
        if len(block) > 1:
            for u, v in block:
                out.add(u)
                out.add(v)
    return out


def is_on_some_loop(net: Network, v: int) -> bool:
    if v not in net:
        raise UnknownNodeError(v)
    return v in loop_nodes(net)


def same_loop_parent_nodes(net: Network) -> Set[int]:
    """All nodes having two parents whose in-arcs share a biconnected block."""
    index = edge_block_index(net)
    out = set()
    for v in net.nodes:
        blocks = [index[_edge(p, v)] for p in net.parents(v)]
        if len(blocks) != len(set(blocks)):
            out.add(v)
    return out


def has_same_loop_parents(net: Network, v: int) -> bool:
    if v not in net:
        raise UnknownNodeError(v)
    parents = net.parents(v)
    if len(parents) < 2:
        return False
    index = edge_block_index(net)
    blocks = [index[_edge(p, v)] for p in parents]
    return len(blocks) != len(set(blocks))


def has_same_loop_parents_by_connectivity(net: Network, v: int) -> bool:
    """Same question as :func:`has_same_loop_parents`, answered by reachability in G - v."""
    parents = net.parents(v)
    if len(parents) < 2:
        return False
    rest = remove_nodes(net, [v])
    label = {}
    for i, comp in enumerate(connected_components(rest)):
        for u in comp:
            label[u] = i
    labels = [label[p] for p in parents]
    return len(labels) != len(set(labels))


def remove_non_loop_nodes(net: Network) -> Network:
    """Step-1 pruning followed by deletion of every node on no loop."""
    net = prune_degree_one(net)
    keep = loop_nodes(net)
    if len(keep) == len(net):
        return net
    return net.subgraph(keep)
