"""Acceptance criteria 1-9, each recorded as one PASS/FAIL line."""

import random
import time

import pytest

from oracles import chi_by_enumeration
from recolor_lab.coloring import Coloring, chromatic_number, optimal_coloring
from recolor_lab.graph import cycle_graph
from recolor_lab.lifting import plan_recoloring
from recolor_lab.modules import clique_skeleton, is_prime_eligible, maximal_module_partition, maximal_modules_by_scan
from recolor_lab.patterns import NAMED_CLASSES, P5_DIAMOND_FREE
from recolor_lab.reconfig import bfs_component_labels, build_reconfiguration_graph, census
from recolor_lab.verify import (
    campaign_class_recolorable,
    campaign_sibling,
    campaign_skeleton_equivalence,
    campaign_structure_theorems,
    default_jobs,
    exhaustive_corpus,
    figure2_reproduction,
    graphs_up_to,
    random_class_corpus,
)

pytestmark = pytest.mark.acceptance


def _same_partition(a: dict, b: dict) -> bool:
    def groups(labels):
        out = {}
        for key, lab in labels.items():
            out.setdefault(lab, set()).add(key)
        return sorted(sorted(s) for s in out.values())

    return groups(a) == groups(b)


def test_criterion_1_figure2(record_criterion):
    start = time.perf_counter()
    report = figure2_reproduction()
    elapsed = time.perf_counter() - start
    failed = [v["check"] for v in report.verdicts if not v["ok"]]
    ok = not failed and elapsed < 600
    record_criterion(1, ok, f"{elapsed:.0f}s; failed checks: {failed or 'none'}; {report.notes[0]}")
    assert not failed, failed
    assert elapsed < 600


def test_criterion_2_c6(record_criterion):
    start = time.perf_counter()
    rep = census(cycle_graph(6), 3)
    elapsed = time.perf_counter() - start
    ok = not rep.connected and Coloring((1, 2, 3, 1, 2, 3), 3) in rep.frozen and elapsed < 1
    record_criterion(2, ok, f"{rep.num_components} components, {len(rep.frozen)} frozen, {elapsed:.3f}s")
    assert ok


def test_criterion_3_theorem_classes(record_criterion):
    start = time.perf_counter()
    details, ok = [], True
    for key in ("p5-diamond", "p5-house-bull", "semi-p4-sparse"):
        report = campaign_class_recolorable(NAMED_CLASSES[key], n_max=6, ell_extra=2, jobs=default_jobs())
        details.append(f"{key}: {report.corpus['size']} graphs, {len(report.counterexamples)} failures")
        ok &= report.passed and report.skipped == 0
    elapsed = time.perf_counter() - start
    ok &= elapsed < 900
    record_criterion(3, ok, "; ".join(details) + f"; {elapsed:.0f}s")
    assert ok


def test_criterion_4_skeleton_equivalence(record_criterion):
    start = time.perf_counter()
    report = campaign_skeleton_equivalence(n_max=6, ell_extra=2, jobs=default_jobs())
    elapsed = time.perf_counter() - start
    ok = report.passed and elapsed < 900
    record_criterion(4, ok, f"{len(report.verdicts)} graphs, {report.excluded} excluded, "
                            f"{len(report.counterexamples)} violations, {elapsed:.0f}s")
    assert ok


def test_criterion_5_sibling(record_criterion):
    start = time.perf_counter()
    report = campaign_sibling(n_max=5, k=4, equiv_n_max=4, jobs=default_jobs())
    elapsed = time.perf_counter() - start
    ok = report.passed and elapsed < 600
    record_criterion(5, ok, f"{len(report.verdicts)} graphs, {len(report.counterexamples)} failures, {elapsed:.0f}s")
    assert ok


def test_criterion_6_oracle_equivalences(record_criterion):
    mismatches = {"partition": 0, "chi": 0, "census": 0}
    for g in graphs_up_to(6):
        if is_prime_eligible(g) and g.n >= 2:
            a = sorted(sorted(b) for b in maximal_module_partition(g).blocks)
            b = sorted(sorted(b) for b in maximal_modules_by_scan(g).blocks)
            mismatches["partition"] += a != b
        mismatches["chi"] += chromatic_number(g) != chi_by_enumeration(g)
    eligible7 = [g for g in exhaustive_corpus(7).graphs if is_prime_eligible(g)]
    for g in random.Random(2024).sample(eligible7, 150):
        a = sorted(sorted(b) for b in maximal_module_partition(g).blocks)
        b = sorted(sorted(b) for b in maximal_modules_by_scan(g).blocks)
        mismatches["partition"] += a != b
    for g in graphs_up_to(5):
        for k in range(1, 5):
            rg = build_reconfiguration_graph(g, k)
            uf = {tuple(int(x) for x in row): int(lab) for row, lab in zip(rg.rows, rg.labels)}
            mismatches["census"] += not _same_partition(uf, bfs_component_labels(g, k))
    ok = not any(mismatches.values())
    record_criterion(6, ok, f"mismatches {mismatches}")
    assert ok


def test_criterion_7_structure_theorems(record_criterion):
    start = time.perf_counter()
    report = campaign_structure_theorems(n_max=8)
    elapsed = time.perf_counter() - start
    by_statement = {}
    for c in report.counterexamples:
        by_statement[c["statement"]] = by_statement.get(c["statement"], 0) + 1
    checked = report.corpus["prime_graphs_checked"]
    ok = report.passed and elapsed < 1200
    record_criterion(7, ok, f"checked {checked}; violations {by_statement or 'none'}; {elapsed:.0f}s")
    assert report.passed, by_statement


def _random_coloring(g, k, rng):
    for _ in range(50):
        cur = [None] * g.n
        for v in rng.sample(range(g.n), g.n):
            used = {cur[u] for u in g.neighbors(v)}
            free = [c for c in range(1, k + 1) if c not in used]
            if not free:
                break
            cur[v] = rng.choice(free)
        else:
            return Coloring(tuple(cur), k)
    perm = list(range(1, k + 1))
    rng.shuffle(perm)
    return Coloring(tuple(perm[c - 1] for c in optimal_coloring(g).assignment), k)


def test_criterion_8_planner_soundness(record_criterion):
    start = time.perf_counter()
    rng = random.Random(8)
    graphs = []
    for i, n in enumerate(range(6, 13)):
        graphs += random_class_corpus(P5_DIAMOND_FREE, n, 29, seed=1000 + i).graphs
    graphs = graphs[:200]
    found = valid = 0
    for g in graphs:
        ell = chromatic_number(g) + 1
        a, b = _random_coloring(g, ell, rng), _random_coloring(g, ell, rng)
        sched, _ = plan_recoloring(g, ell, a, b, certify=False)
        found += 1
        valid += sched.is_valid(g) and sched.end.assignment == b.assignment
    elapsed = time.perf_counter() - start
    ok = len(graphs) == 200 and found == valid == 200 and elapsed < 600
    record_criterion(8, ok, f"{len(graphs)} instances, {found} planned, {valid} replay-valid, {elapsed:.1f}s")
    assert ok


def test_criterion_9_chi_preservation(record_criterion):
    checked = bad = 0
    for g in graphs_up_to(7, 2):
        if not is_prime_eligible(g):
            continue
        checked += 1
        bad += chromatic_number(g) != chromatic_number(clique_skeleton(g).host)
    ok = bad == 0 and checked > 0
    record_criterion(9, ok, f"{checked} eligible graphs, {bad} mismatches")
    assert ok
