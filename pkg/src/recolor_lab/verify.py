"""Desk-scale verification campaigns over small graph corpora.

Every campaign returns a ``CampaignReport``. Counterexamples carry enough data
(graph, palette, colorings) to be re-checked with ``revalidate``.
"""

from __future__ import annotations

import logging
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Sequence

import numpy as np

from .coloring import Coloring, chromatic_number, count_colorings, is_proper
from .errors import StateSpaceTooLarge, TooLarge
from .graph import (
    Graph,
    all_subsets,
    are_isomorphic,
    blowup,
    cycle_graph,
    emit_edge_list,
    emit_graph6,
    graph_invariant,
    induced_subgraph,
    is_connected,
    parse_edge_list,
    sibling,
)
from .lifting import sibling_lift
from .modules import clique_skeleton, is_prime, is_prime_eligible, maximal_module_partition
from .patterns import (
    P5_DIAMOND_FREE,
    P5_HOUSE_BULL_FREE,
    SEMI_P4_SPARSE,
    TWO_K2_FREE,
    DIAMOND_FREE,
    ClassSpec,
    check_p5free_bipartite_staircase,
    contains_induced,
    has_universal_vertex,
    in_class,
    is_bipartite,
    is_co_bipartite,
    is_matched_co_bipartite,
    is_thin_spider,
    pattern,
)
from .reconfig import build_reconfiguration_graph, census, find_path, is_frozen, memory_budget

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX = 7
CLASSICAL_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}


# -- corpora ----------------------------------------------------------------------

@dataclass(frozen=True)
class Corpus:
    source: str
    graphs: tuple[Graph, ...]
    params: dict = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.graphs)

    def summary(self) -> dict:
        return {"source": self.source, "size": len(self.graphs), **self.params}


def _key(g: Graph) -> tuple:
    return (g.n, g.m, emit_graph6(g))


class _IsoBuckets:
    """Keeps one representative per isomorphism class."""

    def __init__(self):
        self.buckets: dict[tuple, list[Graph]] = {}

    def add(self, g: Graph) -> bool:
        bucket = self.buckets.setdefault(graph_invariant(g), [])
        if any(are_isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        return True

    def graphs(self) -> list[Graph]:
        return sorted((g for b in self.buckets.values() for g in b), key=_key)


def _extend(g: Graph, nbrs: int) -> Graph:
    adj = list(g.adj)
    for u in range(g.n):
        if nbrs >> u & 1:
            adj[u] |= 1 << g.n
    return Graph(g.n + 1, tuple(adj) + (nbrs,))


def augment(level: Iterable[Graph], keep: Callable[[Graph], bool] = lambda h: True) -> list[Graph]:
    """Every graph (up to isomorphism) obtained by adding one vertex, filtered by ``keep``.

    ``keep`` is called with the new vertex last, so hereditary-class filters may
    restrict their search to embeddings through it.
    """
    seen = _IsoBuckets()
    for g in level:
        for nbrs in range(1 << g.n):
            h = _extend(g, nbrs)
            if keep(h):
                seen.add(h)
    return seen.graphs()


@lru_cache(maxsize=None)
def _all_graphs(n: int) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0, ()),)
    return tuple(augment(_all_graphs(n - 1)))


def exhaustive_corpus(n: int) -> Corpus:
    """One graph per isomorphism class on ``n`` vertices."""
    if n > EXHAUSTIVE_MAX:
        raise TooLarge(f"exhaustive corpora stop at {EXHAUSTIVE_MAX} vertices")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Corpus(f"exhaustive({n})", _all_graphs(n), {"n": n})


def graphs_up_to(n_max: int, n_min: int = 1) -> list[Graph]:
    return [g for n in range(n_min, n_max + 1) for g in exhaustive_corpus(n).graphs]


def class_corpus(spec: ClassSpec, n_max: int, n_min: int = 1) -> Corpus:
    """Exhaustive corpus of a hereditary class; beyond seven vertices it grows by augmentation."""
    graphs = []
    level = [g for g in exhaustive_corpus(min(n_max, EXHAUSTIVE_MAX)).graphs if in_class(g, spec)]
    for n in range(n_min, min(n_max, EXHAUSTIVE_MAX) + 1):
        graphs += [g for g in exhaustive_corpus(n).graphs if in_class(g, spec)]
    for n in range(EXHAUSTIVE_MAX + 1, n_max + 1):
        level = augment(level, lambda h: in_class(h, spec, must_include=h.n - 1))
        graphs += level
    return Corpus(f"class({spec.label}, n<={n_max})", tuple(graphs), {"class": spec.label, "n_max": n_max})


def prime_class_graphs(spec: ClassSpec, n: int) -> list[Graph]:
    """Prime members of a hereditary class on exactly ``n`` vertices."""
    if n <= EXHAUSTIVE_MAX:
        return [g for g in exhaustive_corpus(n).graphs if in_class(g, spec) and is_prime(g)]
    below = class_corpus(spec, n - 1, n_min=n - 1).graphs
    return augment(below, lambda h: is_prime(h) and in_class(h, spec, must_include=h.n - 1))


def random_class_corpus(spec: ClassSpec, n: int, count: int, seed: int, tries: int = 200) -> Corpus:
    """Seeded random members of a hereditary class grown one vertex at a time with rejection.

    A graph whose growth stalls for ``tries`` proposals is kept at its current
    size, so members have at most ``n`` vertices.
    """
    rng = random.Random(seed)
    graphs, proposed, accepted = [], 0, 0
    for _ in range(count):
        g = Graph(1, (0,))
        while g.n < n:
            density = rng.choice((0.2, 0.5, 0.8))
            for _ in range(tries):
                nbrs = sum(1 << u for u in range(g.n) if rng.random() < density)
                h = _extend(g, nbrs)
                proposed += 1
                if in_class(h, spec, must_include=h.n - 1):
                    accepted += 1
                    g = h
                    break
            else:
                break
        graphs.append(g)
    rate = accepted / proposed if proposed else 1.0
    log.info("random %s corpus: acceptance rate %.3f over %d proposals", spec.label, rate, proposed)
    params = {"class": spec.label, "n": n, "count": count, "seed": seed, "acceptance_rate": round(rate, 6)}
    return Corpus(f"random({spec.label}, n={n}, count={count}, seed={seed})", tuple(graphs), params)


# -- reports ----------------------------------------------------------------------

@dataclass
class CampaignReport:
    theorem: str
    must_pass: bool
    corpus: dict
    verdicts: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    skipped: int = 0
    excluded: int = 0
    notes: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    @property
    def failed_gate(self) -> bool:
        return self.must_pass and not self.passed

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "must_pass": self.must_pass,
            "passed": self.passed,
            "corpus": self.corpus,
            "checked": len(self.verdicts),
            "skipped": self.skipped,
            "excluded": self.excluded,
            "counterexamples": self.counterexamples,
            "verdicts": self.verdicts,
            "notes": self.notes,
        }


def _parallel_map(fn, items: Sequence, jobs: int | None):
    jobs = 1 if jobs is None else jobs
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def default_jobs() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else os.cpu_count() or 1


@lru_cache(maxsize=1 << 16)
def mixing(g: Graph, k: int) -> bool | None:
    """Census verdict for R_k(g); None when the memory guard trips."""
    try:
        return census(g, k).connected
    except StateSpaceTooLarge:
        return None


def disconnection_certificate(g: Graph, k: int) -> dict:
    """A frozen coloring if one exists, otherwise two colorings in different components."""
    rg = build_reconfiguration_graph(g, k)
    cert = {"graph": emit_edge_list(g), "k": k}
    sizes = np.bincount(rg.labels)
    singles = np.flatnonzero(sizes == 1)
    for root in singles:
        c = rg.coloring(int(root))
        if is_frozen(g, c):
            cert["frozen"] = c.to_json()
            return cert
    roots = np.unique(rg.labels)
    cert["pair"] = [rg.coloring(int(roots[0])).to_json(), rg.coloring(int(roots[1])).to_json()]
    return cert


def revalidate(cert: dict) -> bool:
    """Re-check a counterexample certificate from its raw data."""
    g = parse_edge_list(cert["graph"])
    k = cert["k"]
    if "frozen" in cert:
        c = Coloring(tuple(cert["frozen"]), k)
        return is_proper(g, c) and is_frozen(g, c)
    if "pair" in cert:
        a, b = (Coloring(tuple(x), k) for x in cert["pair"])
        if not (is_proper(g, a) and is_proper(g, b)):
            return False
        rg = build_reconfiguration_graph(g, k)
        return rg.component_of(a) != rg.component_of(b)
    return False


def _ell_range(g: Graph, extra: int) -> range:
    chi = chromatic_number(g)
    return range(chi + 1, chi + extra + 1)


# -- recolorability of theorem classes -----------------------------------------------------

def _class_item(args):
    g, extra = args
    out = {"graph": emit_graph6(g), "n": g.n, "chi": chromatic_number(g), "mixing": {}}
    certs, skipped = [], 0
    for ell in _ell_range(g, extra):
        verdict = mixing(g, ell)
        out["mixing"][ell] = verdict
        if verdict is None:
            skipped += 1
        elif not verdict:
            certs.append(disconnection_certificate(g, ell))
    return out, certs, skipped


THEOREM_CLASSES = {
    P5_DIAMOND_FREE.label: "every (P5, diamond)-free graph is recolorable",
    P5_HOUSE_BULL_FREE.label: "every (P5, house, bull)-free graph is recolorable",
    SEMI_P4_SPARSE.label: "every semi-P4-sparse graph is recolorable",
}


def campaign_class_recolorable(
    spec: ClassSpec, n_max: int = 6, ell_extra: int = 2, jobs: int | None = None, corpus: Corpus | None = None
) -> CampaignReport:
    """Check l-mixing for l in [chi+1, chi+ell_extra] over every class member up to n_max."""
    start = time.perf_counter()
    if corpus is None:
        if n_max > EXHAUSTIVE_MAX:
            raise TooLarge("use a random corpus beyond seven vertices")
        corpus = class_corpus(spec, n_max)
    report = CampaignReport(
        theorem=THEOREM_CLASSES.get(spec.label, f"{spec.label} recolorability (evidence)"),
        must_pass=spec.label in THEOREM_CLASSES,
        corpus=corpus.summary() | {"ell_extra": ell_extra},
    )
    members = [g for g in corpus.graphs if in_class(g, spec)]
    for verdict, certs, skipped in _parallel_map(_class_item, [(g, ell_extra) for g in members], jobs):
        report.verdicts.append(verdict)
        report.counterexamples += certs
        report.skipped += skipped
    report.elapsed = time.perf_counter() - start
    return report


# -- skeleton equivalence --------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def bounded_recolorable(g: Graph, ell_max: int) -> bool | None:
    """l-mixing for every l in [chi+1, ell_max]; None if any census is skipped."""
    result: bool | None = True
    for ell in range(chromatic_number(g) + 1, ell_max + 1):
        verdict = mixing(g, ell)
        if verdict is False:
            return False
        if verdict is None:
            result = None
    return result


def _subgraphs_recolorable(g: Graph, ell: int) -> bool | None:
    result: bool | None = True
    for s in all_subsets(g.n, 1):
        if len(s) == g.n:
            continue
        verdict = bounded_recolorable(induced_subgraph(g, s)[0], ell)
        if verdict is False:
            return False
        if verdict is None:
            result = None
    return result


def _skeleton_item(args):
    g, extra = args
    host = clique_skeleton(g).host
    out = {"graph": emit_graph6(g), "host": emit_graph6(host), "checks": []}
    certs, skipped, excluded = [], 0, 0
    for ell in _ell_range(g, extra):
        hyp = _subgraphs_recolorable(g, ell)
        if hyp is not True:
            excluded += hyp is False
            skipped += hyp is None
            out["checks"].append({"ell": ell, "hypothesis": hyp})
            continue
        left, right = mixing(g, ell), mixing(host, ell)
        if left is None or right is None:
            skipped += 1
            continue
        out["checks"].append({"ell": ell, "hypothesis": True, "G": left, "H": right})
        if left != right:
            certs.append({"graph": emit_edge_list(g), "host": emit_edge_list(host), "k": ell, "G": left, "H": right})
    return out, certs, skipped, excluded


def campaign_skeleton_equivalence(n_max: int = 6, ell_extra: int = 2, jobs: int | None = None) -> CampaignReport:
    """Compare connectivity of R_l(G) and R_l(H) on graphs with a nontrivial module."""
    if n_max > 6:
        raise TooLarge("skeleton campaign is limited to 6 vertices")
    start = time.perf_counter()
    eligible, primes = [], 0
    for g in graphs_up_to(n_max, 3):
        if not is_prime_eligible(g):
            continue
        if maximal_module_partition(g).m == g.n:
            primes += 1
            continue
        eligible.append(g)
    report = CampaignReport(
        theorem="R_l(G) connected iff R_l(clique skeleton) connected",
        must_pass=True,
        corpus={"source": f"exhaustive(3..{n_max})", "eligible": len(eligible), "prime_skipped": primes,
                "ell_extra": ell_extra},
    )
    for verdict, certs, skipped, excluded in _parallel_map(_skeleton_item, [(g, ell_extra) for g in eligible], jobs):
        report.verdicts.append(verdict)
        report.counterexamples += certs
        report.skipped += skipped
        report.excluded += excluded
    report.notes.append("instances whose proper induced subgraphs fail bounded recolorability are excluded")
    report.elapsed = time.perf_counter() - start
    return report


# -- sibling -------------------------------------------------------------------------------

def sibling_component_match(g: Graph, k: int) -> bool:
    """Components of R_k(sibling(g)) correspond one-to-one with those of R_k(g) under restriction."""
    rg = build_reconfiguration_graph(g, k)
    rh = build_reconfiguration_graph(sibling(g), k)
    idx = rg.index_of_rows(rh.rows[:, : g.n])
    lg = rg.labels[idx]
    pairs = np.unique(np.stack([lg, rh.labels]), axis=1)
    return len(np.unique(pairs[0])) == pairs.shape[1] == len(np.unique(pairs[1]))


def _random_sibling_coloring(g: Graph, base: Coloring, k: int, rng: random.Random) -> Coloring:
    pend = [rng.choice([c for c in range(1, k + 1) if c != base[x]]) for x in range(g.n)]
    return Coloring(base.assignment + tuple(pend), k)


def _sibling_item(args):
    g, k, equiv, samples, seed = args
    out = {"graph": emit_graph6(g), "sibling_prime": is_prime(sibling(g))}
    certs = []
    if not out["sibling_prime"]:
        certs.append({"graph": emit_edge_list(g), "kind": "sibling not prime"})
    if equiv:
        out["component_match"] = sibling_component_match(g, k)
        if not out["component_match"] and k >= 4:
            certs.append({"graph": emit_edge_list(g), "k": k, "kind": "path equivalence"})
    if k >= 4 and samples:
        rng = random.Random(seed)
        rg = build_reconfiguration_graph(g, k)
        replay_ok = 0
        for _ in range(samples if rg.size else 0):
            i = rng.randrange(rg.size)
            same = np.flatnonzero(rg.labels == rg.labels[i])
            j = int(same[rng.randrange(len(same))])
            a, b = rg.coloring(i), rg.coloring(j)
            path = find_path(g, k, a, b)
            start = _random_sibling_coloring(g, a, k, rng)
            end = _random_sibling_coloring(g, b, k, rng)
            lifted = sibling_lift(g, k, path, start, end.assignment[g.n:])
            if lifted.is_valid(sibling(g)) and lifted.end.assignment == end.assignment:
                replay_ok += 1
            else:
                certs.append({"graph": emit_edge_list(g), "k": k, "kind": "sibling lift replay"})
        out["lift_replays"] = replay_ok
    return out, certs


def campaign_sibling(
    n_max: int = 5, k: int = 4, equiv_n_max: int = 4, samples: int = 3, seed: int = 0, jobs: int | None = None
) -> CampaignReport:
    """Sibling primality, path-existence equivalence and lift replay on connected graphs."""
    if n_max > 5:
        raise TooLarge("sibling campaign is limited to 5 base vertices")
    start = time.perf_counter()
    graphs = [g for g in graphs_up_to(n_max) if is_connected(g)]
    report = CampaignReport(
        theorem="sibling of a connected graph is prime; R_k paths correspond for k >= 4",
        must_pass=k >= 4,
        corpus={"source": f"connected exhaustive(1..{n_max})", "size": len(graphs), "k": k,
                "equiv_n_max": equiv_n_max, "samples": samples, "seed": seed},
    )
    if k < 4:
        report.notes.append("k < 4: equivalence is reported only, not asserted")
    items = [(g, k, g.n <= equiv_n_max, samples, seed + i) for i, g in enumerate(graphs)]
    for verdict, certs in _parallel_map(_sibling_item, items, jobs):
        report.verdicts.append(verdict)
        if k < 4:
            certs = [c for c in certs if c["kind"] == "sibling not prime"]
        report.counterexamples += certs
    report.elapsed = time.perf_counter() - start
    return report


# -- hereditary reduction ------------------------------------------------------------------

HEREDITARY_CLASSES = {"2K2": TWO_K2_FREE, "diamond": DIAMOND_FREE}


def _hereditary_item(args):
    g, extra = args
    top = chromatic_number(g) + extra
    failing = [ell for ell in _ell_range(g, extra) if mixing(g, ell) is False]
    out = {"graph": emit_graph6(g), "failing": failing}
    if not failing:
        return out, []
    for s in all_subsets(g.n, 1):
        sub = induced_subgraph(g, s)[0]
        if is_prime(sub) and bounded_recolorable(sub, top) is False:
            out["prime_witness"] = list(s)
            return out, []
    return out, [{"graph": emit_edge_list(g), "k": failing[0], "kind": "no failing prime induced subgraph"}]


def campaign_hereditary_reduction(
    kind: str = "diamond", n_max: int = 6, ell_extra: int = 2, jobs: int | None = None
) -> CampaignReport:
    """Every non-mixing class member must contain a prime induced subgraph that is not mixing."""
    if n_max > 6:
        raise TooLarge("hereditary campaign is limited to 6 vertices")
    start = time.perf_counter()
    spec = HEREDITARY_CLASSES.get(kind)
    corpus = class_corpus(spec, n_max) if spec is not None else Corpus(
        f"exhaustive(1..{n_max})", tuple(graphs_up_to(n_max)))
    report = CampaignReport(
        theorem=f"non-recolorable {kind}-free graphs have a non-recolorable prime induced subgraph",
        must_pass=spec is not None,
        corpus=corpus.summary() | {"ell_extra": ell_extra},
    )
    if spec is None:
        report.notes.append("class is not covered by a reduction theorem; informational only")
    for verdict, certs in _parallel_map(_hereditary_item, [(g, ell_extra) for g in corpus.graphs], jobs):
        report.verdicts.append(verdict)
        report.counterexamples += certs
    report.elapsed = time.perf_counter() - start
    return report


# -- conjecture evidence --------------------------------------------------------------------

def conjecture_evidence(g: Graph, mult_max: int = 2, ell_extra: int = 1) -> dict:
    """Bounded comparison of 'all blowups recolorable' with 'all induced subgraphs recolorable'.

    Both sides stop at the first failure found. Blowups are tried in order of
    total size; ``None`` marks a side that was inconclusive because a census
    was skipped by the memory guard.
    """
    right: bool | None = True
    right_witness = None
    for s in sorted(all_subsets(g.n, 1), key=len):
        sub = induced_subgraph(g, s)[0]
        verdict = bounded_recolorable(sub, chromatic_number(sub) + ell_extra)
        if verdict is False:
            right, right_witness = False, list(s)
            break
        if verdict is None:
            right = None
    left: bool | None = True
    left_witness = None
    sizes_list = sorted(product(range(1, mult_max + 1), repeat=g.n), key=lambda m: (sum(m), m))
    for sizes in sizes_list:
        b = blowup(g, sizes)
        verdict = None
        if count_colorings(b, chromatic_number(b) + ell_extra) <= memory_budget():
            verdict = bounded_recolorable(b, chromatic_number(b) + ell_extra)
        if verdict is False:
            left, left_witness = False, list(sizes)
            break
        if verdict is None:
            left = None
    consistent = None if left is None or right is None else left == right
    return {
        "graph": emit_graph6(g),
        "blowups_recolorable": left,
        "blowup_witness": left_witness,
        "subgraphs_recolorable": right,
        "subgraph_witness": right_witness,
        "consistent": consistent,
    }


def _conjecture_item(args):
    g, mult_max, extra = args
    out = conjecture_evidence(g, mult_max, extra)
    certs = [] if out["consistent"] is not False else [{"graph": emit_edge_list(g), "kind": "discrepancy", **out}]
    return out, certs


def campaign_conjecture(
    n_prime_max: int = 5, mult_max: int = 2, ell_extra: int = 1, jobs: int | None = None
) -> CampaignReport:
    """Evidence only: prime graphs whose bounded blowup and subgraph verdicts disagree."""
    if n_prime_max > 6 or mult_max > 3:
        raise TooLarge("conjecture campaign needs n_prime_max <= 6 and mult_max <= 3")
    start = time.perf_counter()
    primes = [g for g in graphs_up_to(n_prime_max, 4) if is_prime(g)]
    report = CampaignReport(
        theorem="EVIDENCE: blowups recolorable iff induced subgraphs recolorable (bounded proxies)",
        must_pass=False,
        corpus={"source": f"prime exhaustive(4..{n_prime_max})", "size": len(primes), "mult_max": mult_max,
                "ell_extra": ell_extra},
    )
    for verdict, certs in _parallel_map(_conjecture_item, [(g, mult_max, ell_extra) for g in primes], jobs):
        report.verdicts.append(verdict)
        report.counterexamples += certs
        report.skipped += verdict["consistent"] is None
    report.notes.append("bounded evidence, not proof")
    report.elapsed = time.perf_counter() - start
    return report


# -- structure theorems ----------------------------------------------------------------------

def structure_statements() -> dict[str, tuple[ClassSpec, Callable[[Graph], bool], Callable[[Graph], bool]]]:
    """name -> (class, applicability filter, claimed property) for prime class members."""
    two_k2 = pattern("2K2")
    c5 = pattern("C5")
    return {
        "matched-co-bipartite": (
            P5_DIAMOND_FREE,
            lambda g: contains_induced(g, two_k2) is not None,
            is_matched_co_bipartite,
        ),
        "bipartite-or-co-bipartite": (
            P5_HOUSE_BULL_FREE,
            lambda g: g.n >= 6 and has_universal_vertex(g) is None,
            lambda g: is_bipartite(g) is not None or is_co_bipartite(g),
        ),
        "C5-or-C5-free": (
            ClassSpec(("P5", "house")),
            lambda g: True,
            lambda g: (g.n == 5 and are_isomorphic(g, c5)) or contains_induced(g, c5) is None,
        ),
        "thin-spider": (
            SEMI_P4_SPARSE,
            lambda g: True,
            _bipartite_or_spider_either_side,
        ),
    }


def _bipartite_or_spider_either_side(g: Graph) -> bool:
    from .graph import complement

    return any(is_bipartite(x) is not None or is_thin_spider(x) for x in (g, complement(g)))


def _p5_free_levels(n_max: int) -> dict[int, list[Graph]]:
    p5 = ClassSpec(("P5",))
    levels = {n: [g for g in exhaustive_corpus(n).graphs if in_class(g, p5)] for n in range(1, min(n_max, 7) + 1)}
    return levels


def campaign_structure_theorems(n_max: int = 8) -> CampaignReport:
    """Structure statements over every prime graph of each class up to n_max vertices."""
    start = time.perf_counter()
    statements = structure_statements()
    report = CampaignReport(theorem="structure of prime graphs in the theorem classes", must_pass=True,
                            corpus={"n_max": n_max})
    levels = _p5_free_levels(n_max)
    for n in range(EXHAUSTIVE_MAX + 1, n_max + 1):
        p5 = ClassSpec(("P5",))
        if n < n_max:
            levels[n] = augment(levels[n - 1], lambda h: in_class(h, p5, must_include=h.n - 1))
        else:
            levels[n] = augment(levels[n - 1], lambda h: is_prime(h) and in_class(h, p5, must_include=h.n - 1))
    counts = {}
    for name, (spec, applies, claim) in statements.items():
        checked = 0
        for n in range(1, n_max + 1):
            for g in levels[n]:
                if not (is_prime(g) and in_class(g, spec) and applies(g)):
                    continue
                checked += 1
                if not claim(g):
                    report.counterexamples.append({"graph": emit_edge_list(g), "statement": name})
        counts[name] = checked
        report.verdicts.append({"statement": name, "checked": checked})
    report.corpus["prime_graphs_checked"] = counts
    report.elapsed = time.perf_counter() - start
    return report


def campaign_staircase(n_max: int = 10) -> CampaignReport:
    """Prime P5-free bipartite graphs on 3..n_max vertices have nested (staircase) neighborhoods."""
    start = time.perf_counter()
    p5 = ClassSpec(("P5",))
    report = CampaignReport(theorem="prime P5-free bipartite graphs are staircases", must_pass=True,
                            corpus={"n_max": n_max})
    level, checked = [Graph(1, (0,))], 0
    for n in range(2, n_max + 1):
        level = augment(level, lambda h: is_bipartite(h) is not None and in_class(h, p5, must_include=h.n - 1))
        for g in level:
            if g.n >= 3 and is_prime(g):
                checked += 1
                if not check_p5free_bipartite_staircase(g):
                    report.counterexamples.append({"graph": emit_edge_list(g)})
    report.verdicts.append({"checked": checked})
    report.elapsed = time.perf_counter() - start
    return report


# -- worked examples ---------------------------------------------------------------------

HEXAGON_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]
OUTER_LABELS = (1, 3, 5, 1, 3, 5)
INNER_LABELS = (2, 4, 6, 2, 4, 6)
APEX_LABEL = 1


def figure2_graphs() -> tuple[Graph, Graph, Coloring]:
    """G (hexagon 0..5 plus vertex 6 on hexagon vertices 1 and 2), its blowup G', and the drawn 6-coloring.

    In G' hexagon vertex i becomes the edge {2i, 2i+1} (outer copy first) and
    vertex 6 becomes vertex 12.
    """
    g = Graph.from_edges(7, HEXAGON_EDGES + [(1, 6), (2, 6)])
    gp = blowup(g, [2] * 6 + [1])
    labels = []
    for i in range(6):
        labels += [OUTER_LABELS[i], INNER_LABELS[i]]
    labels.append(APEX_LABEL)
    return g, gp, Coloring(tuple(labels), 6)


def figure3_graph() -> Graph:
    """a1 a2 b1 b2 c1 d1 e1..e5 as vertices 0..10."""
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (4, 2), (3, 4), (5, 2), (5, 3), (4, 5)]
    edges += [(5, e) for e in range(6, 11)]
    edges += [(6, 7), (7, 8), (8, 9), (9, 10), (10, 6)]
    return Graph.from_edges(11, edges)


FIGURE3_BLOCKS = {"A": (0, 1), "B": (2, 3), "C": (4,), "D": (5,), "E": (6, 7, 8, 9, 10)}


def figure2_reproduction() -> CampaignReport:
    start = time.perf_counter()
    g, gp, labeling = figure2_graphs()
    report = CampaignReport(theorem="recolorable prime G with a non-recolorable blowup G'",
                            must_pass=True, corpus={"G": emit_edge_list(g), "G'": emit_edge_list(gp)})
    checks: dict[str, object] = {}
    checks["G prime"] = is_prime(g)
    checks["chi(G) = 3"] = chromatic_number(g) == 3
    for ell in (4, 5, 6):
        checks[f"G is {ell}-mixing"] = census(g, ell).connected
    checks["chi(G') = 5"] = chromatic_number(gp) == 5
    rg = build_reconfiguration_graph(gp, 6)
    big = census(gp, 6, rg=rg)
    checks["R_6(G') disconnected"] = not big.connected
    checks["labeling proper"] = is_proper(gp, labeling)
    checks["labeling frozen"] = is_frozen(gp, labeling)
    checks["G contains induced C6"] = contains_induced(g, cycle_graph(6)) is not None
    checks["R_3(C6) disconnected"] = not census(cycle_graph(6), 3).connected
    for name, ok in checks.items():
        report.verdicts.append({"check": name, "ok": bool(ok)})
        if not ok:
            report.counterexamples.append({"check": name})
    comp = int(rg.labels[rg.index_of(labeling)])
    report.notes.append(
        f"R_6(G') has {big.num_colorings} colorings in {big.num_components} components, "
        f"{len(big.frozen)} frozen; the labeling's component has {int(np.sum(rg.labels == comp))} colorings"
    )
    report.elapsed = time.perf_counter() - start
    return report
