import json

import pytest

from recolor_lab.errors import TooLarge
from recolor_lab.graph import Graph, are_isomorphic, cycle_graph, emit_edge_list, parse_edge_list, path_graph
from recolor_lab.patterns import ALL_GRAPHS, P5_DIAMOND_FREE, P5_HOUSE_BULL_FREE, in_class
from recolor_lab.verify import (
    CLASSICAL_COUNTS,
    augment,
    campaign_class_recolorable,
    campaign_conjecture,
    campaign_hereditary_reduction,
    campaign_sibling,
    campaign_skeleton_equivalence,
    class_corpus,
    conjecture_evidence,
    disconnection_certificate,
    exhaustive_corpus,
    figure2_graphs,
    random_class_corpus,
    revalidate,
)


@pytest.mark.parametrize("n", range(0, 7))
def test_exhaustive_counts_match_classical_values(n):
    assert len(exhaustive_corpus(n).graphs) == CLASSICAL_COUNTS[n]


def test_exhaustive_corpus_cap():
    with pytest.raises(TooLarge):
        exhaustive_corpus(8)


def test_augment_with_filter_stays_in_class():
    level = class_corpus(P5_DIAMOND_FREE, 5, 5).graphs
    grown = augment(level, lambda h: in_class(h, P5_DIAMOND_FREE))
    assert grown and all(g.n == 6 and in_class(g, P5_DIAMOND_FREE) for g in grown)
    full = class_corpus(P5_DIAMOND_FREE, 6, 6).graphs
    assert len(grown) <= len(full)


def test_random_class_corpus_is_seeded():
    a = random_class_corpus(P5_DIAMOND_FREE, 9, 5, seed=4)
    b = random_class_corpus(P5_DIAMOND_FREE, 9, 5, seed=4)
    assert a.graphs == b.graphs
    assert all(in_class(g, P5_DIAMOND_FREE) for g in a.graphs)


def test_certificates_revalidate():
    cert = disconnection_certificate(cycle_graph(6), 3)
    assert cert["frozen"] and revalidate(cert)
    forged = dict(cert, frozen=[1, 2, 1, 2, 1, 2])
    assert not revalidate(forged)
    triangle_plus_point = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2)])
    pair = disconnection_certificate(triangle_plus_point, 3)
    assert "pair" in pair and revalidate(pair)
    assert not revalidate({"graph": emit_edge_list(path_graph(2)), "k": 2})


def test_class_campaign_theorem_class_passes():
    report = campaign_class_recolorable(P5_HOUSE_BULL_FREE, n_max=5)
    assert report.must_pass and report.passed and not report.failed_gate


def test_all_graphs_campaign_finds_c6():
    report = campaign_class_recolorable(ALL_GRAPHS, n_max=6, ell_extra=1)
    assert not report.must_pass and not report.passed
    assert all(revalidate(c) for c in report.counterexamples)
    c6 = [c for c in report.counterexamples if are_isomorphic(parse_edge_list(c["graph"]), cycle_graph(6))]
    assert len(c6) == 1 and c6[0]["k"] == 3 and "frozen" in c6[0]


def test_campaigns_are_deterministic_across_jobs():
    one = campaign_class_recolorable(P5_DIAMOND_FREE, n_max=5, jobs=1).to_json()
    two = campaign_class_recolorable(P5_DIAMOND_FREE, n_max=5, jobs=2).to_json()
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)


def test_skeleton_equivalence_small():
    report = campaign_skeleton_equivalence(n_max=5)
    assert report.passed and report.verdicts


def test_sibling_campaign_small():
    report = campaign_sibling(n_max=4, equiv_n_max=3, samples=2)
    assert report.passed


@pytest.mark.parametrize("kind", ["diamond", "2K2"])
def test_hereditary_reduction_small(kind):
    assert campaign_hereditary_reduction(kind, n_max=5).passed


def test_hereditary_reduction_unknown_class_is_informational():
    report = campaign_hereditary_reduction("P4", n_max=4)
    assert not report.must_pass


def test_conjecture_evidence_examples():
    g, _, _ = figure2_graphs()
    out = conjecture_evidence(g, mult_max=2, ell_extra=1)
    assert out["subgraphs_recolorable"] is False
    assert out["blowups_recolorable"] is False
    assert out["consistent"] is True
    c5 = conjecture_evidence(cycle_graph(5))
    assert c5["blowups_recolorable"] and c5["subgraphs_recolorable"]


def test_conjecture_campaign_caps():
    with pytest.raises(TooLarge):
        campaign_conjecture(n_prime_max=7)
    report = campaign_conjecture(n_prime_max=4)
    assert not report.must_pass and report.passed
