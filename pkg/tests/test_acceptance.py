"""Exit criteria for the package, one test per criterion.

A PASS/FAIL line per criterion is printed in the terminal summary.
"""

import itertools
import time

import numpy as np
import pytest

from loopcut import (
    GenSpec,
    eligible_a1,
    eligible_a2,
    enumerate_loops,
    exact_min_cutset,
    gen_adv,
    gen_g1,
    gen_g2,
    generate,
    is_singly_connected,
    is_valid_cutset,
    is_valid_cutset_oracle,
    remove_nodes,
    run_heuristic,
    run_random_baseline,
)
from loopcut.cli import main
from loopcut.experiments import TABLE1_ROWS, evaluate, run_table
from loopcut.graph import connected_components, find_directed_cycle, loop_nodes, remove_non_loop_nodes

from conftest import BOWTIE_ARCS, all_dags, net

criterion = pytest.mark.criterion


def sampled_small_graphs(count, seed):
    """Graphs of 3..8 nodes drawn alternately from G1 and G2 with random parameters."""
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(3, 9))
        if i % 2 == 0:
            yield gen_g1(n, float(rng.uniform(0.2, 0.9)), seed=int(rng.integers(2**32)))
        else:
            m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
            yield gen_g2(n, m, keep_connected=bool(rng.integers(2)), seed=int(rng.integers(2**32)))


@criterion(1, "adversarial gap: exact = 2, greedy >= floor(k/2) and strictly increasing, k = 2..8")
def test_adversarial_gap():
    start = time.perf_counter()
    sizes = {"A1": [], "A2": []}
    for k in range(2, 9):
        g = gen_adv(k)
        assert len(exact_min_cutset(g)) == 2, k
        for variant in sizes:
            size = len(run_heuristic(g, variant))
            assert size >= k // 2, (variant, k, size)
            sizes[variant].append(size)
    for variant, seq in sizes.items():
        assert all(a < b for a, b in zip(seq, seq[1:])), (variant, seq)
    elapsed = time.perf_counter() - start
    print(f"\nADV sizes A1={sizes['A1']} A2={sizes['A2']} exact=2 in {elapsed:.2f}s")
    assert elapsed < 10


@criterion(2, "split-graph validity test agrees with the loop-catalog oracle")
def test_validity_oracle_equivalence():
    start = time.perf_counter()
    exhaustive = [g for n in range(1, 6) for g in all_dags(n)]
    graphs = exhaustive + list(sampled_small_graphs(2000, seed=2024))
    checked = disagreements = 0
    for g in graphs:
        catalog = enumerate_loops(g)
        cands = sorted(loop_nodes(g))
        for size in range(4):
            for c in itertools.combinations(cands, size):
                checked += 1
                if is_valid_cutset(g, c) != is_valid_cutset_oracle(g, c, catalog=catalog):
                    disagreements += 1
    elapsed = time.perf_counter() - start
    print(f"\n{len(graphs)} graphs ({len(exhaustive)} exhaustive), {checked} candidate sets, "
          f"{disagreements} disagreements, {elapsed:.1f}s")
    assert len(graphs) - len(exhaustive) >= 2000
    assert disagreements == 0
    assert elapsed < 60


@criterion(3, "A1/A2/random cutsets are valid on 1000 G1(25,.1) and 1000 G2(25,50) graphs")
def test_heuristic_soundness():
    start = time.perf_counter()
    failures = 0
    for maker in (lambda s: gen_g1(25, 0.1, seed=s), lambda s: gen_g2(25, 50, seed=s)):
        for s in range(1000):
            g = maker(s)
            for cut in (run_heuristic(g, "A1"), run_heuristic(g, "A2"), run_random_baseline(g, s)):
                if not is_valid_cutset(g, cut.members) or not is_singly_connected(remove_nodes(g, cut.members)):
                    failures += 1
    elapsed = time.perf_counter() - start
    print(f"\n6000 cutsets, {failures} failures, {elapsed:.1f}s")
    assert failures == 0
    assert elapsed < 60


@criterion(4, "exact never beaten by a heuristic on 500 small graphs; some strict gap")
def test_optimality_dominance():
    rng = np.random.default_rng(4)
    records = [evaluate(gen_adv(k), trial=k) for k in (2, 3)]
    specs = [GenSpec("G1", n=15, p=0.2), GenSpec("G1", n=20, p=0.1), GenSpec("G1", n=25, p=0.1),
             GenSpec("G2", n=25, m=25), GenSpec("G2", n=20, m=35)]
    i = 0
    while len(records) < 500:
        spec = specs[i % len(specs)]
        seed = int(rng.integers(2**63))
        i += 1
        g = generate(spec, seed)
        if len(remove_non_loop_nodes(g)) > 20:
            continue
        records.append(evaluate(g, trial=i, seed=seed))
    assert all(r.exact_optimal for r in records)
    dominated = sum(min(r.sizes["A1"], r.sizes["A2"], r.sizes["RANDOM"]) >= r.exact_size for r in records)
    strict = sum(max(r.sizes["A1"], r.sizes["A2"]) > r.exact_size for r in records)
    print(f"\n{len(records)} trials, dominance {dominated}/{len(records)}, strict gaps {strict}")
    assert dominated == len(records)
    assert strict >= 1


@criterion(5, "table-1 rows: A2 smaller in >= 70% of differing trials; equal >= 60% per row")
def test_statistical_reproduction():
    start = time.perf_counter()
    results = run_table(TABLE1_ROWS, trials=100, master_seed=1990)
    a1_wins = sum(t.a1_smaller for t, _ in results)
    a2_wins = sum(t.a2_smaller for t, _ in results)
    print()
    for t, _ in results:
        print(f"  n={t.row['n']:<4} p={t.row['p']:<5} equal={t.equal:<3} A1<A2={t.a1_smaller:<3} A1>A2={t.a2_smaller}")
    share = a2_wins / (a1_wins + a2_wins)
    elapsed = time.perf_counter() - start
    print(f"  A2 smaller in {a2_wins}/{a1_wins + a2_wins} differing trials ({share:.0%}), {elapsed:.1f}s")
    assert sum(t.trials for t, _ in results) >= 600
    assert share >= 0.70
    assert all(t.equal >= 0.60 * t.trials for t, _ in results)
    assert elapsed < 300


@criterion(6, "A2 candidates are a strict superset of A1 candidates")
def test_eligibility_strictness():
    count = 0
    for g in itertools.chain(sampled_small_graphs(500, seed=6), (gen_g1(25, 0.1, seed=s) for s in range(100))):
        for v in g.nodes:
            if eligible_a1(g, v):
                assert eligible_a2(g, v)
            count += 1
    witness = net(BOWTIE_ARCS)
    assert eligible_a2(witness, 3) and not eligible_a1(witness, 3)
    print(f"\n{count} node checks, witness node 3 of the bowtie")


@criterion(7, "bench reports are byte-identical for the same master seed")
def test_determinism(tmp_path, capsys):
    reports = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        argv = ["bench", "--kind", "G1", "--n", "20", "--p", "0.1", "--trials", "50", "--seed", "11", "-o", str(out)]
        assert main(argv) == 0
        reports.append(out.read_bytes())
    capsys.readouterr()
    assert reports[0] == reports[1]
    assert reports[0].count(b"\n") == 51


@criterion(8, "generator sanity: G1 arc mean, G2 connectivity, acyclicity")
def test_generator_sanity():
    counts = []
    for s in range(1000):
        g = gen_g1(25, 0.1, seed=s)
        assert not find_directed_cycle(g.nodes, g.arcs)
        counts.append(g.num_arcs)
    se = np.sqrt(300 * 0.1 * 0.9 / 1000)
    mean = float(np.mean(counts))
    disconnected = 0
    for s in range(300):
        m = (24, 30, 50, 75)[s % 4]
        g = gen_g2(25, m, keep_connected=True, seed=s)
        assert g.num_arcs == m
        assert not find_directed_cycle(g.nodes, g.arcs)
        disconnected += len(connected_components(g)) != 1
    print(f"\nG1(25,.1) mean arcs {mean:.3f} (3 SE = {3 * se:.3f}); G2 keep-connected disconnected: {disconnected}/300")
    assert abs(mean - 30) <= 3 * se
    assert disconnected == 0
