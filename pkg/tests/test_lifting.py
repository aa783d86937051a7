import random

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from recolor_lab.coloring import Coloring, chromatic_number, enumerate_colorings, movable, optimal_coloring
from recolor_lab.errors import NoPath, PaletteTooSmall, PreconditionViolated
from recolor_lab.graph import Graph, complete_graph, cycle_graph, join, path_graph, sibling
from recolor_lab.lifting import (
    LiftContext,
    lift_path_from_skeleton,
    lift_path_to_skeleton,
    plan_recoloring,
    retarget_within_modules,
    sibling_lift,
    transfer_from_skeleton,
    transfer_to_skeleton,
)
from recolor_lab.reconfig import RecoloringSchedule, build_reconfiguration_graph
from recolor_lab.verify import figure2_graphs, figure3_graph

FIG3 = figure3_graph()
FIG3_COLORINGS = list(enumerate_colorings(FIG3, 4))


def random_walk(g, start, k, length, rng):
    cur = list(start.assignment)
    steps = []
    for _ in range(length):
        options = [(v, c) for v in range(g.n) for c in movable(g, cur, v, k)]
        if not options:
            break
        v, c = rng.choice(options)
        steps.append((v, c))
        cur[v] = c
    return RecoloringSchedule(start.with_palette(k), tuple(steps))


def contained(ctx, gcol, hcol):
    return all(
        {hcol[x] for x in q} <= {gcol[v] for v in blk} for blk, q in zip(ctx.blocks(), ctx.cliques())
    )


def equal_sets(ctx, gcol, hcol):
    return all(
        {hcol[x] for x in q} == {gcol[v] for v in blk} for blk, q in zip(ctx.blocks(), ctx.cliques())
    )


def test_context_of_figure3():
    ctx = LiftContext.build(FIG3, 4)
    assert ctx.host.n == 8
    assert ctx.cliques() == [[0, 1], [2], [3], [4], [5, 6, 7]]
    with pytest.raises(PreconditionViolated):
        LiftContext.build(FIG3, 3)


def test_transfers_on_prime_graph_are_identity():
    ctx = LiftContext.build(cycle_graph(5), 4)
    a = Coloring((1, 2, 1, 2, 3), 4)
    assert transfer_to_skeleton(ctx, a) == a
    assert transfer_from_skeleton(ctx, a) == a


def test_transfer_to_skeleton_on_every_figure3_coloring():
    ctx = LiftContext.build(FIG3, 4)
    for a in FIG3_COLORINGS:
        h = transfer_to_skeleton(ctx, a)
        assert contained(ctx, a, h)
        assert len({h[x] for x in ctx.cliques()[4]}) == 3
        back = transfer_from_skeleton(ctx, h)
        assert equal_sets(ctx, back, h)
        assert equal_sets(ctx, back, transfer_to_skeleton(ctx, back))


def test_transfer_from_skeleton_colors_c5_with_exactly_three():
    ctx = LiftContext.build(FIG3, 4)
    h = Coloring((1, 2, 3, 1, 4, 1, 2, 3), 4)
    g = transfer_from_skeleton(ctx, h)
    assert {g[v] for v in range(6, 11)} == {1, 2, 3}


def test_lift_to_skeleton_keeps_containment_along_random_walks():
    ctx = LiftContext.build(FIG3, 4)
    rng = random.Random(3)
    for _ in range(40):
        a = rng.choice(FIG3_COLORINGS)
        walk = random_walk(FIG3, a, 4, 30, rng)
        start_h = transfer_to_skeleton(ctx, a)
        lifted = lift_path_to_skeleton(ctx, walk, start_h)
        assert lifted.is_valid(ctx.host)
        assert len(lifted) <= len(walk)
        # replay both walks in lockstep and check containment at every G position
        h_walk = lifted.walk()
        hi = 0
        for i, gcol in enumerate(walk.walk()):
            while hi + 1 < len(h_walk) and not contained(ctx, gcol, h_walk[hi]):
                hi += 1
            assert contained(ctx, gcol, h_walk[hi])
        assert contained(ctx, walk.end, lifted.end)


def test_lift_to_skeleton_with_retarget():
    ctx = LiftContext.build(FIG3, 5)
    rng = random.Random(5)
    for _ in range(20):
        a = rng.choice(FIG3_COLORINGS).with_palette(5)
        walk = random_walk(FIG3, a, 5, 20, rng)
        if len(walk.end.used()) == 5:
            continue
        target = transfer_to_skeleton(ctx, walk.end)
        target = Coloring(target.assignment, 5)
        lifted = lift_path_to_skeleton(ctx, walk, transfer_to_skeleton(ctx, a), target_h=target)
        assert lifted.end.assignment == target.assignment
        assert lifted.is_valid(ctx.host)


def test_lift_to_skeleton_rejects_uncontained_start():
    ctx = LiftContext.build(FIG3, 4)
    h = transfer_to_skeleton(ctx, FIG3_COLORINGS[0])
    other = next(a for a in FIG3_COLORINGS if not contained(ctx, a, h))
    with pytest.raises(PreconditionViolated):
        lift_path_to_skeleton(ctx, RecoloringSchedule(other, ()), h)


def test_lift_from_skeleton_along_random_walks():
    ctx = LiftContext.build(FIG3, 4)
    host_colorings = list(enumerate_colorings(ctx.host, 4))
    rng = random.Random(7)
    for _ in range(40):
        h = rng.choice(host_colorings)
        walk = random_walk(ctx.host, h, 4, 30, rng)
        g0 = transfer_from_skeleton(ctx, h)
        lifted = lift_path_from_skeleton(ctx, walk, g0)
        assert lifted.is_valid(FIG3)
        assert equal_sets(ctx, lifted.end, walk.end)


def test_lift_from_skeleton_expands_to_one_step_per_holder():
    ctx = LiftContext.build(FIG3, 5)
    g0 = Coloring((1, 2, 3, 3, 1, 5, 1, 2, 1, 2, 3), 5)
    h0 = Coloring((1, 2, 3, 1, 5, 1, 2, 3), 5)
    path = RecoloringSchedule(h0, ((6, 4),))
    lifted = lift_path_from_skeleton(ctx, path, g0)
    assert lifted.steps == ((7, 4), (9, 4))


def test_retarget_within_modules_on_figure3():
    ctx = LiftContext.build(FIG3, 5)
    rng = random.Random(9)
    done = 0
    for _ in range(400):
        a, b = rng.sample(FIG3_COLORINGS, 2)
        if any({a[v] for v in blk} - {b[v] for v in blk} for blk in ctx.blocks()):
            continue
        a5, b5 = a.with_palette(5), b.with_palette(5)
        sched = retarget_within_modules(ctx, a5, b5)
        assert sched.is_valid(FIG3) and sched.end.assignment == b.assignment
        done += 1
    assert done > 0
    a = FIG3_COLORINGS[0].with_palette(5)
    assert len(retarget_within_modules(ctx, a, a)) == 0


def test_retarget_within_modules_rejects_bad_pairs():
    ctx = LiftContext.build(FIG3, 5)
    a = FIG3_COLORINGS[0].with_palette(5)
    b = Coloring(tuple(5 if c == a[0] else c for c in a.assignment), 5)
    with pytest.raises(PreconditionViolated):
        retarget_within_modules(ctx, b, a)
    tight = LiftContext.build(FIG3, 4)
    with pytest.raises(PreconditionViolated):
        retarget_within_modules(tight, FIG3_COLORINGS[0], FIG3_COLORINGS[0])


def test_sibling_lift_on_triangle():
    g = complete_graph(3)
    start = Coloring((1, 2, 3), 4)
    path = RecoloringSchedule(start, ((0, 4), (1, 1)))
    path.validate(g)
    sib_start = Coloring((1, 2, 3, 4, 1, 1), 4)
    lifted = sibling_lift(g, 4, path, sib_start, final_pendants=(1, 2, 2))
    lifted.validate(sibling(g))
    assert lifted.end.assignment[:3] == path.end.assignment
    assert lifted.end.assignment[3:] == (1, 2, 2)
    assert len(lifted) <= 2 * 2 + 3


def test_sibling_lift_errors():
    g = path_graph(2)
    path = RecoloringSchedule(Coloring((1, 2), 3), ())
    with pytest.raises(PaletteTooSmall):
        sibling_lift(g, 3, path, Coloring((1, 2, 2, 1), 3))
    path4 = RecoloringSchedule(Coloring((1, 2), 4), ())
    assert len(sibling_lift(g, 4, path4, Coloring((1, 2, 2, 1), 4))) == 0
    with pytest.raises(PreconditionViolated):
        sibling_lift(g, 4, path4, Coloring((1, 2, 2, 1), 4), final_pendants=(1, 3))


@given(graphs(min_n=1, max_n=6), st.randoms(use_true_random=False))
def test_planner_agrees_with_census(g, rnd):
    ell = chromatic_number(g) + 1
    rg = build_reconfiguration_graph(g, ell)
    a = rg.coloring(rnd.randrange(rg.size))
    b = rg.coloring(rnd.randrange(rg.size))
    if rg.component_of(a) == rg.component_of(b):
        sched, trace = plan_recoloring(g, ell, a, b)
        assert sched.is_valid(g) and sched.end.assignment == b.assignment
        assert trace.rules()
    else:
        with pytest.raises(NoPath) as info:
            plan_recoloring(g, ell, a, b)
        assert info.value.certified


def test_planner_trivial_and_rules():
    g = cycle_graph(5)
    a = Coloring((1, 2, 1, 2, 3), 4)
    sched, trace = plan_recoloring(g, 4, a, a)
    assert len(sched) == 0 and trace.rule == "identity"
    wheel = join(Graph(1, (0,)), g)
    a = Coloring((4, 1, 2, 1, 2, 3), 5)
    b = Coloring((1, 2, 3, 2, 3, 4), 5)
    sched, trace = plan_recoloring(wheel, 5, a, b)
    assert sched.end.assignment == b.assignment
    assert trace.rule == "join"
    sched, trace = plan_recoloring(FIG3, 5, FIG3_COLORINGS[0].with_palette(5), FIG3_COLORINGS[-1].with_palette(5))
    assert sched.is_valid(FIG3)
    assert trace.to_json()["rule"] in {"dominated", "low-degree", "modules", "search"}


def test_planner_preconditions():
    with pytest.raises(PreconditionViolated):
        plan_recoloring(cycle_graph(5), 3, Coloring((1, 2, 1, 2, 3), 3), Coloring((1, 2, 1, 2, 3), 3))
    with pytest.raises(PreconditionViolated):
        plan_recoloring(cycle_graph(5), 4, Coloring((1, 1, 2, 1, 3), 4), Coloring((1, 2, 1, 2, 3), 4))


def test_c6_frozen_is_certified_unreachable():
    a = Coloring((1, 2, 3, 1, 2, 3), 3)
    b = Coloring((1, 2, 1, 2, 1, 2), 3)
    with pytest.raises(NoPath) as info:
        plan_recoloring(cycle_graph(6), 3, a, b)
    assert info.value.certified


@pytest.mark.slow
def test_blowup_labeling_is_certified_unreachable_from_optimal_coloring():
    _, gp, labeling = figure2_graphs()
    b = optimal_coloring(gp).with_palette(6)
    with pytest.raises(NoPath) as info:
        plan_recoloring(gp, 6, labeling, b)
    assert info.value.certified
