"""Random DAG generators G1 and G2, value-count assignment, and the adversarial family.

All randomness goes through numpy's PCG64 bit generator seeded with a plain
integer, so a (generator, parameters, seed) triple always yields the same
network.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from .graph import Network


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class ValuesAssignment:
    """Per-node value counts drawn uniformly from ``[lo, hi]``; the default is all binary."""

    lo: int = 2
    hi: int = 2

    def __post_init__(self):
        if self.lo < 2 or self.lo > self.hi:
            raise ValueError(f"bad value range [{self.lo}, {self.hi}]")

    @classmethod
    def parse(cls, text: str) -> "ValuesAssignment":
        """``all-2`` or ``uniform:LO,HI``."""
        if text in ("all-2", "all2"):
            return cls()
        if text.startswith("uniform:"):
            lo, hi = text[len("uniform:"):].split(",")
            return cls(int(lo), int(hi))
        raise ValueError(f"unrecognized values assignment {text!r}")

    def __str__(self):
        return "all-2" if (self.lo, self.hi) == (2, 2) else f"uniform:{self.lo},{self.hi}"


ALL_2 = ValuesAssignment()


def assign_values(net: Network, assignment: ValuesAssignment = ALL_2, seed=0) -> Network:
    if (assignment.lo, assignment.hi) == (2, 2):
        return net.with_values({v: 2 for v in net.nodes})
    rng = make_rng(seed)
    draws = rng.integers(assignment.lo, assignment.hi + 1, size=len(net))
    return net.with_values({v: int(d) for v, d in zip(net.nodes, draws)})


def gen_g1(n: int, p: float, values: ValuesAssignment = ALL_2, seed=0) -> Network:
    """Each pair i<j gets the arc i->j independently with probability p."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"arc probability {p} outside [0, 1]")
    rng = make_rng(seed)
    arcs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < p]
    net = Network({v: 2 for v in range(1, n + 1)}, arcs)
    return assign_values(net, values, rng)


def _still_connected(adj, u, v) -> bool:
    """Whether u and v stay connected once edge u-v is gone (adj already lacks it)."""
    seen = {u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y == v:
                return True
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return False


def gen_g2(n: int, m: int, keep_connected: bool = False, values: ValuesAssignment = ALL_2, seed=0) -> Network:
    """Start from the complete DAG on 1..n and delete random arcs until m remain.

    With ``keep_connected`` a deletion that would disconnect the underlying
    graph is rejected and another arc is drawn in its place.
    """
    total = n * (n - 1) // 2
    if n < 0 or not 0 <= m <= total:
        raise ValueError(f"need 0 <= m <= n(n-1)/2 = {total}, got m={m}")
    if keep_connected and n > 0 and m < n - 1:
        raise ValueError(f"a connected graph on {n} nodes needs at least {n - 1} arcs")
    rng = make_rng(seed)
    arcs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    adj: Dict[int, set] = {v: set() for v in range(1, n + 1)}
    for i, j in arcs:
        adj[i].add(j)
        adj[j].add(i)
    while len(arcs) > m:
        pool = list(range(len(arcs)))
        while True:
            if not pool:
                raise ValueError(f"cannot reach {m} arcs while keeping the graph connected")
            k = pool.pop(int(rng.integers(len(pool))))
            i, j = arcs[k]
            adj[i].discard(j)
            adj[j].discard(i)
            if not keep_connected or _still_connected(adj, i, j):
                break
            adj[i].add(j)
            adj[j].add(i)
        arcs[k] = arcs[-1]
        arcs.pop()
    net = Network({v: 2 for v in range(1, n + 1)}, arcs)
    return assign_values(net, values, rng)


def adv_roles(k: int) -> Dict[str, int]:
    """Node ids of the hub and gadget in :func:`gen_adv`; chain nodes are 1..4k+1."""
    base = 4 * k + 1
    return {"V": base + 1, "A": base + 2, "B": base + 3, "C": base + 4}


def gen_adv(k: int) -> Network:
    """Adversarial instance with k chained segments: optimum 2, greedy cutsets of size k+1.

    A path 1..4k+1 alternates sources (odd ids) and sinks (even ids).  The hub
    V has an arc to every odd chain node, so {V} breaks every chain loop.  The
    gadget A->B->V, A->C->V gives V two parents on one loop, which keeps both
    greedy rules away from V while the chain still offers degree-3 nodes.
    """
    if k < 2:
        raise ValueError("ADV needs k >= 2")
    last = 4 * k + 1
    roles = adv_roles(k)
    hub, a, b, c = roles["V"], roles["A"], roles["B"], roles["C"]
    arcs = []
    for i in range(1, last, 2):
        arcs += [(i, i + 1), (i + 2, i + 1)]
    arcs += [(hub, i) for i in range(1, last + 1, 2)]
    arcs += [(a, b), (a, c), (b, hub), (c, hub)]
    return Network({v: 2 for v in range(1, c + 1)}, arcs)


KINDS = ("G1", "G2", "ADV")


@dataclass(frozen=True)
class GenSpec:
    kind: str
    n: int = 0
    p: float = 0.0
    m: int = 0
    keep_connected: bool = False
    k: int = 2
    values: ValuesAssignment = field(default=ALL_2)
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == "G1" and not 0.0 <= self.p <= 1.0:
            raise ValueError(f"arc probability {self.p} outside [0, 1]")
        if self.kind == "G2":
            if self.m > self.n * (self.n - 1) // 2:
                raise ValueError("m exceeds n(n-1)/2")
            if self.keep_connected and self.m < self.n - 1:
                raise ValueError("keep-connected needs m >= n-1")
        if self.kind == "ADV" and self.k < 2:
            raise ValueError("ADV needs k >= 2")

    def params(self) -> dict:
        if self.kind == "G1":
            return {"n": self.n, "p": self.p, "values": str(self.values)}
        if self.kind == "G2":
            return {"n": self.n, "m": self.m, "keep_connected": self.keep_connected, "values": str(self.values)}
        return {"k": self.k}

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.params(), "seed": self.seed}

    @classmethod
    def from_dict(cls, d: dict) -> "GenSpec":
        d = dict(d)
        known = {f for f in cls.__dataclass_fields__}
        extra = set(d) - known
        if extra:
            raise ValueError(f"unknown GenSpec fields {sorted(extra)}")
        if isinstance(d.get("values"), str):
            d["values"] = ValuesAssignment.parse(d["values"])
        elif isinstance(d.get("values"), (list, tuple)):
            d["values"] = ValuesAssignment(*d["values"])
        return cls(**d)

    def provenance(self, seed: Optional[int] = None) -> dict:
        return {"kind": self.kind, "params": self.params(), "seed": self.seed if seed is None else seed}


def generate(spec: GenSpec, seed: Optional[int] = None) -> Network:
    seed = spec.seed if seed is None else seed
    if spec.kind == "G1":
        return gen_g1(spec.n, spec.p, spec.values, seed)
    if spec.kind == "G2":
        return gen_g2(spec.n, spec.m, spec.keep_connected, spec.values, seed)
    return gen_adv(spec.k)
