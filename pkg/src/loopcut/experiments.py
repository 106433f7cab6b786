"""Benchmark harness: seeded trials comparing A1, A2, the random baseline and the exact optimum."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import __version__
from .errors import BudgetExceeded, InvalidCutsetError
from .exact import DEFAULT_BUDGET, cutset_weight, exact_min_cutset, is_valid_cutset
from .generators import GenSpec, generate
from .graph import Network, is_singly_connected, remove_non_loop_nodes, remove_nodes
from .heuristics import run_heuristic, run_random_baseline

ALL_ALGORITHMS = ("A1", "A2", "RANDOM", "EXACT")
DEFAULT_EXACT_THRESHOLD = 20

CSV_COLUMNS = (
    "trial", "seed", "n", "arcs", "a1_size", "a2_size", "random_size",
    "exact_size", "a1_weight", "a2_weight", "exact_optimal_flag",
)

# Parameter rows of the two published comparison tables.
TABLE1_ROWS = ((15, 0.2), (20, 0.1), (25, 0.1), (50, 0.05), (50, 0.1), (100, 0.02))
TABLE2_ROWS = ((25, 25), (25, 50), (25, 75), (50, 50), (50, 100), (100, 100))


def derive_seed(master: int, index) -> int:
    """64-bit seed from sha256 of ``"<master>:<index>"``."""
    digest = hashlib.sha256(f"{master}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass
class TrialRecord:
    trial: int
    seed: int
    spec: dict
    n: int
    arcs: int
    sizes: Dict[str, int] = field(default_factory=dict)
    weights: Dict[str, int] = field(default_factory=dict)
    times: Dict[str, float] = field(default_factory=dict)
    exact_size: Optional[int] = None
    exact_optimal: Optional[bool] = None
    exact_skipped: bool = False
    fallback_used: bool = False

    def size(self, alg: str) -> Optional[int]:
        if alg == "EXACT":
            return self.exact_size
        return self.sizes.get(alg)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SummaryTable:
    row: dict
    trials: int = 0
    equal: int = 0
    a1_smaller: int = 0
    a2_smaller: int = 0
    optimal_comparison: List[Tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def a2_win_rate(self) -> Optional[float]:
        differing = self.a1_smaller + self.a2_smaller
        return None if differing == 0 else self.a2_smaller / differing

    def to_dict(self) -> dict:
        d = asdict(self)
        d["optimal_comparison"] = [
            {"trial": t, "a1": a1, "a2": a2, "optimal": opt} for t, a1, a2, opt in self.optimal_comparison
        ]
        return d


def summarize(row: dict, records: Sequence[TrialRecord]) -> SummaryTable:
    table = SummaryTable(dict(row), trials=len(records))
    for r in records:
        a1, a2 = r.sizes.get("A1"), r.sizes.get("A2")
        if a1 is not None and a2 is not None:
            if a1 == a2:
                table.equal += 1
            elif a1 < a2:
                table.a1_smaller += 1
            else:
                table.a2_smaller += 1
        if r.exact_optimal and a1 is not None and a2 is not None and max(a1, a2) > r.exact_size:
            table.optimal_comparison.append((r.trial, a1, a2, r.exact_size))
    return table


def evaluate(
    net: Network,
    trial: int = 0,
    seed: int = 0,
    spec: Optional[dict] = None,
    algorithms: Iterable[str] = ALL_ALGORITHMS,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
    exact_budget: int = DEFAULT_BUDGET,
) -> TrialRecord:
    """Run the requested algorithms on one network and validate every cutset they return."""
    rec = TrialRecord(trial, seed, dict(spec or {}), len(net), net.num_arcs)
    algorithms = set(algorithms)

    def check(alg, members):
        if not is_valid_cutset(net, members) or not is_singly_connected(remove_nodes(net, members)):
            raise InvalidCutsetError(f"{alg} returned an invalid cutset on trial {trial} (seed {seed})", members, seed)

    for alg in ("A1", "A2", "RANDOM"):
        if alg not in algorithms:
            continue
        start = time.perf_counter()
        if alg == "RANDOM":
            cut = run_random_baseline(net, derive_seed(seed, "random"))
        else:
            cut = run_heuristic(net, alg)
        rec.times[alg] = time.perf_counter() - start
        check(alg, cut.members)
        rec.sizes[alg] = len(cut)
        rec.weights[alg] = cutset_weight(net, cut.members)
        rec.fallback_used |= cut.used_fallback

    if "EXACT" in algorithms:
        if len(remove_non_loop_nodes(net)) > exact_threshold:
            rec.exact_skipped = True
        else:
            start = time.perf_counter()
            try:
                cut = exact_min_cutset(net, exact_budget)
            except BudgetExceeded as exc:
                check("EXACT", exc.best.members)
                rec.exact_skipped = True
            else:
                check("EXACT", cut.members)
                rec.exact_size = len(cut)
                rec.exact_optimal = True
                rec.weights["EXACT"] = cutset_weight(net, cut.members)
            rec.times["EXACT"] = time.perf_counter() - start
    return rec


def run_trial(
    spec: GenSpec,
    trial: int,
    master_seed: int = 0,
    algorithms: Iterable[str] = ALL_ALGORITHMS,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
    exact_budget: int = DEFAULT_BUDGET,
) -> TrialRecord:
    seed = derive_seed(master_seed, trial)
    net = generate(spec, seed)
    return evaluate(net, trial, seed, spec.to_dict(), algorithms, exact_threshold, exact_budget)


def _run_one(args):
    return run_trial(*args)


def run_comparison(
    spec: GenSpec,
    trials: int,
    algorithms: Iterable[str] = ALL_ALGORITHMS,
    master_seed: int = 0,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
    exact_budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> Tuple[SummaryTable, List[TrialRecord]]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    algorithms = tuple(a.upper() for a in algorithms)
    unknown = set(algorithms) - set(ALL_ALGORITHMS)
    if unknown:
        raise ValueError(f"unknown algorithms {sorted(unknown)}")
    work = [(spec, i, master_seed, algorithms, exact_threshold, exact_budget) for i in range(trials)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_one, work, chunksize=max(1, trials // (4 * jobs))))
    else:
        records = [_run_one(w) for w in work]
    records.sort(key=lambda r: r.trial)
    return summarize(spec.to_dict(), records), records


def _cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def emit_report(table: Optional[SummaryTable], records: Sequence[TrialRecord], fmt: str = "csv",
                master_seed: Optional[int] = None) -> bytes:
    """Serialize trial records.  CSV carries one row per trial; JSON adds the summary and metadata."""
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in records:
            w.writerow([_cell(x) for x in (
                r.trial, r.seed, r.n, r.arcs, r.sizes.get("A1"), r.sizes.get("A2"), r.sizes.get("RANDOM"),
                r.exact_size, r.weights.get("A1"), r.weights.get("A2"), r.exact_optimal,
            )])
        return buf.getvalue().encode("utf-8")
    if fmt == "json":
        doc = {
            "version": __version__,
            "master_seed": master_seed,
            "summary": table.to_dict() if table is not None else None,
            "records": [r.to_dict() for r in records],
        }
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def run_table(rows, kind: str = "G1", trials: int = 100, master_seed: int = 0,
              algorithms=("A1", "A2", "RANDOM"), **kwargs) -> List[Tuple[SummaryTable, List[TrialRecord]]]:
    """One :func:`run_comparison` per parameter row, each with its own derived master seed."""
    out = []
    for i, (n, x) in enumerate(rows):
        spec = GenSpec("G1", n=n, p=x) if kind == "G1" else GenSpec("G2", n=n, m=x)
        out.append(run_comparison(spec, trials, algorithms, derive_seed(master_seed, f"row{i}"), **kwargs))
    return out
