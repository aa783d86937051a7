"""Constructive schedule transformations and a recursive recoloring planner.

The transfer and lift operations move colorings and walks between a graph G
and its clique skeleton H, block by block. The planner combines them with the
usual reductions (components, joins, dominated vertices, low-degree vertices)
and falls back to a best-first search on whatever cannot be reduced. Every
schedule is replayed before it is returned.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import count
from typing import Sequence

from .coloring import Coloring, chromatic_number, coloring_with_colors, count_colorings, is_proper
from .errors import (
    BudgetExhausted,
    NoPath,
    PaletteTooSmall,
    PreconditionViolated,
    SubgraphNotMixing,
)
from .graph import Graph, bits, component_masks, complement, induced_subgraph, mask_of, sibling
from .modules import CliqueSkeletonMap, ModulePartition, clique_skeleton, is_prime_eligible
from .patterns import find_tight_clique_cutset
from .reconfig import DEFAULT_PATH_BUDGET, RecoloringSchedule, build_reconfiguration_graph, memory_budget

Steps = list[tuple[int, int]]


@dataclass(frozen=True)
class LiftContext:
    base: Graph
    partition: ModulePartition
    skeleton_map: CliqueSkeletonMap
    palette: int

    @classmethod
    def build(cls, g: Graph, ell: int) -> "LiftContext":
        chi = chromatic_number(g)
        if ell < chi:
            raise PreconditionViolated(f"palette {ell} is below chi = {chi}")
        cs = clique_skeleton(g)
        return cls(g, cs.source_blocks, cs, ell)

    @property
    def host(self) -> Graph:
        return self.skeleton_map.host

    def blocks(self) -> list[list[int]]:
        return [sorted(b) for b in self.partition.blocks]

    def cliques(self) -> list[list[int]]:
        return [sorted(q) for q in self.skeleton_map.cliques]


def _apply(cur: list[int], steps: Steps) -> None:
    for v, c in steps:
        cur[v] = c


def _outside_colors(g: Graph, cur: Sequence[int], smask: int) -> set[int]:
    around = 0
    for v in bits(smask):
        around |= g.adj[v]
    return {cur[u] for u in bits(around & ~smask)}


def _require_proper(g: Graph, c: Coloring, what: str) -> None:
    if len(c) != g.n or not is_proper(g, c):
        raise PreconditionViolated(f"{what} is not a proper coloring")


# -- transfers --------------------------------------------------------------------

def transfer_to_skeleton(ctx: LiftContext, a: Coloring) -> Coloring:
    """Color each Q_p with the k_p smallest colors that ``a`` uses on S_p."""
    _require_proper(ctx.base, a, "coloring of G")
    out = [0] * ctx.host.n
    for blk, q, kp in zip(ctx.blocks(), ctx.cliques(), ctx.skeleton_map.sizes):
        cols = sorted({a[v] for v in blk})[:kp]
        assert len(cols) == kp, "block uses fewer colors than its chromatic number"
        for x, c in zip(q, cols):
            out[x] = c
    res = Coloring(tuple(out), a.k)
    assert is_proper(ctx.host, res)
    return res


def transfer_from_skeleton(ctx: LiftContext, b: Coloring) -> Coloring:
    """Color each S_p optimally with exactly the colors of Q_p."""
    _require_proper(ctx.host, b, "coloring of H")
    out = [0] * ctx.base.n
    for blk, q in zip(ctx.blocks(), ctx.cliques()):
        sub, verts = induced_subgraph(ctx.base, blk)
        local = coloring_with_colors(sub, [b[x] for x in q])
        for i, v in enumerate(verts):
            out[v] = local[i]
        assert {out[v] for v in blk} == {b[x] for x in q}
    res = Coloring(tuple(out), b.k)
    assert is_proper(ctx.base, res)
    return res


# -- lifts -----------------------------------------------------------------------

def _retarget_clique(cur: list[int], clique: list[int], target: dict[int, int], spare: int) -> Steps:
    """Permute colors on a clique to ``target`` using one spare color."""
    steps: Steps = []
    while True:
        pending = [q for q in clique if cur[q] != target[q]]
        if not pending:
            return steps
        used = {cur[q] for q in clique}
        direct = [q for q in pending if target[q] not in used]
        q = direct[0] if direct else pending[0]
        c = target[q] if direct else spare
        steps.append((q, c))
        cur[q] = c


def lift_path_to_skeleton(
    ctx: LiftContext, path: RecoloringSchedule, start_h: Coloring, target_h: Coloring | None = None
) -> RecoloringSchedule:
    """Shadow a walk on G by a walk on H keeping H(Q_p) within G(S_p) for every block.

    When a G-step removes its old color from block j, the Q_j vertex holding that
    color moves to the new color, or to another color of the updated block if
    the new color is already on Q_j. With ``target_h`` the result is extended
    by recoloring each Q_p through a spare color.
    """
    g, h = ctx.base, ctx.host
    _require_proper(g, path.start, "walk start")
    _require_proper(h, start_h, "coloring of H")
    blocks, cliques = ctx.blocks(), ctx.cliques()
    gcur, hcur = list(path.start.assignment), list(start_h.assignment)
    for blk, q in zip(blocks, cliques):
        if not {hcur[x] for x in q} <= {gcur[v] for v in blk}:
            raise PreconditionViolated("H coloring is not contained block-wise in the walk start")
    block_of = {v: p for p, blk in enumerate(blocks) for v in blk}
    steps: Steps = []
    for v, y in path.steps:
        j = block_of[v]
        old = gcur[v]
        gcur[v] = y
        gset = {gcur[u] for u in blocks[j]}
        hset = {hcur[x] for x in cliques[j]}
        if old in hset and old not in gset:
            x = next(x for x in cliques[j] if hcur[x] == old)
            z = y if y not in hset else min(gset - hset)
            steps.append((x, z))
            hcur[x] = z
        assert {hcur[x] for x in cliques[j]} <= {gcur[u] for u in blocks[j]}
    if target_h is not None:
        _require_proper(h, target_h, "target coloring of H")
        for blk, q in zip(blocks, cliques):
            if not {target_h[x] for x in q} <= {gcur[v] for v in blk}:
                raise PreconditionViolated("target is not contained block-wise in the walk end")
        spare = sorted(set(range(1, ctx.palette + 1)) - set(gcur))
        if not spare:
            raise PreconditionViolated("walk end uses every color; no spare color to retarget")
        for q in cliques:
            steps += _retarget_clique(hcur, q, {x: target_h[x] for x in q}, spare[0])
    sched = RecoloringSchedule(start_h.with_palette(ctx.palette), tuple(steps))
    sched.validate(h)
    return sched


def lift_path_from_skeleton(ctx: LiftContext, path: RecoloringSchedule, start_g: Coloring) -> RecoloringSchedule:
    """Expand each H-step on Q_j into recoloring every S_j vertex that holds the old color."""
    g, h = ctx.base, ctx.host
    _require_proper(g, start_g, "coloring of G")
    _require_proper(h, path.start, "walk start on H")
    blocks, cliques = ctx.blocks(), ctx.cliques()
    gcur, hcur = list(start_g.assignment), list(path.start.assignment)
    for blk, q in zip(blocks, cliques):
        if {gcur[v] for v in blk} != {hcur[x] for x in q}:
            raise PreconditionViolated("block colors of G and H differ at the walk start")
    steps = _expand_host_steps(blocks, cliques, gcur, hcur, path.steps)
    sched = RecoloringSchedule(start_g.with_palette(ctx.palette), tuple(steps))
    sched.validate(g)
    return sched


def _expand_host_steps(blocks, cliques, gcur: list[int], hcur: list[int], host_steps) -> Steps:
    clique_of = {x: p for p, q in enumerate(cliques) for x in q}
    steps: Steps = []
    for x, y in host_steps:
        j = clique_of[x]
        old = hcur[x]
        hcur[x] = y
        for v in blocks[j]:
            if gcur[v] == old:
                steps.append((v, y))
                gcur[v] = y
    return steps


def retarget_within_modules(
    ctx: LiftContext, a: Coloring, b: Coloring, budget: int = DEFAULT_PATH_BUDGET
) -> RecoloringSchedule:
    """Walk from ``a`` to ``b`` when a(S_p) is a subset of b(S_p) for every block.

    A color unused by both colorings serves as slack; blocks are rewritten one
    at a time by planning inside G[S_p] with every color not seen around it.
    """
    g = ctx.base
    _require_proper(g, a, "start")
    _require_proper(g, b, "target")
    blocks = ctx.blocks()
    for blk in blocks:
        if not {a[v] for v in blk} <= {b[v] for v in blk}:
            raise PreconditionViolated("start colors of a block are not a subset of the target's")
    palette = tuple(range(1, ctx.palette + 1))
    if not set(palette) - set(a.assignment) - set(b.assignment):
        raise PreconditionViolated("no color is free under both colorings")
    cur = list(a.assignment)
    steps: Steps = []
    tracker = _Budget(budget)
    for blk in blocks:
        if all(cur[v] == b[v] for v in blk):
            continue
        smask = mask_of(blk)
        pal = tuple(c for c in palette if c not in _outside_colors(g, cur, smask))
        try:
            sub_steps, _ = _plan_sub(g, blk, pal, cur, [b[v] for v in blk], tracker)
        except (NoPath, BudgetExhausted) as exc:
            raise SubgraphNotMixing(f"could not recolor block {blk} inside palette {pal}: {exc}") from exc
        steps += sub_steps
        _apply(cur, sub_steps)
    sched = RecoloringSchedule(a.with_palette(ctx.palette), tuple(steps))
    sched.validate(g)
    assert sched.end.assignment == b.assignment
    return sched


def sibling_lift(
    g: Graph, k: int, path: RecoloringSchedule, start: Coloring, final_pendants: Sequence[int] | None = None
) -> RecoloringSchedule:
    """Lift a walk on G to its sibling graph, parking each pendant before its owner moves."""
    if k <= 3:
        raise PaletteTooSmall("sibling lifting needs at least 4 colors")
    h = sibling(g)
    n = g.n
    _require_proper(h, start, "sibling start")
    if tuple(start.assignment[:n]) != path.start.assignment:
        raise PreconditionViolated("sibling start does not restrict to the walk start")
    cur = list(start.assignment)
    steps: Steps = []
    for y, c in path.steps:
        old = cur[y]
        if cur[n + y] == c:
            park = min(x for x in range(1, k + 1) if x not in (old, c))
            steps.append((n + y, park))
            cur[n + y] = park
        steps.append((y, c))
        cur[y] = c
    if final_pendants is not None:
        for x in range(n):
            want = final_pendants[x]
            if want == cur[x]:
                raise PreconditionViolated(f"pendant of {x} cannot share its color")
            if cur[n + x] != want:
                steps.append((n + x, want))
                cur[n + x] = want
    sched = RecoloringSchedule(start.with_palette(k), tuple(steps))
    sched.validate(h)
    return sched


# -- planner ----------------------------------------------------------------------

@dataclass
class PlanTrace:
    rule: str
    n: int
    note: str = ""
    children: list["PlanTrace"] = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"rule": self.rule, "n": self.n}
        if self.note:
            out["note"] = self.note
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out

    def rules(self) -> list[str]:
        out = [self.rule]
        for c in self.children:
            out += c.rules()
        return out


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.spent = 0

    def spend(self, amount: int = 1) -> None:
        self.spent += amount
        if self.spent > self.limit:
            raise BudgetExhausted(f"planner visited more than {self.limit} colorings")


def _plan_sub(g: Graph, verts: Sequence[int], pal, cur: Sequence[int], target: Sequence[int], budget):
    sub, verts = induced_subgraph(g, verts)
    steps, trace = _plan(sub, tuple(pal), tuple(cur[v] for v in verts), tuple(target), budget)
    return [(verts[v], c) for v, c in steps], trace


def _reverse(start: Sequence[int], steps: Steps) -> Steps:
    cur = list(start)
    olds = []
    for v, c in steps:
        olds.append((v, cur[v]))
        cur[v] = c
    return olds[::-1]


def _plan(g: Graph, pal: tuple[int, ...], a: tuple[int, ...], b: tuple[int, ...], budget: _Budget):
    if a == b:
        return [], PlanTrace("identity", g.n)
    if g.n == 1:
        return [(0, b[0])], PlanTrace("single", 1)
    comps = component_masks(g)
    if len(comps) > 1:
        return _plan_components(g, pal, a, b, budget, comps)
    cocomps = component_masks(complement(g))
    if len(cocomps) > 1:
        chi1 = chromatic_number(induced_subgraph(g, bits(cocomps[0]))[0])
        chi2 = chromatic_number(g) - chi1
        if len(pal) >= chi1 + chi2 + 1:
            return _plan_join(g, pal, a, b, budget, cocomps[0])
    dom = _dominated_pair(g)
    if dom is not None:
        return _plan_dominated(g, pal, a, b, budget, *dom)
    for v in range(g.n):
        if g.degree(v) <= len(pal) - 2:
            return _plan_low_degree(g, pal, a, b, budget, v)
    if is_prime_eligible(g) and len(pal) >= chromatic_number(g) + 1:
        cs = clique_skeleton(g)
        if cs.host.n < g.n:
            return _plan_modules(g, pal, a, b, budget, cs)
    return _plan_search(g, pal, a, b, budget)


def _plan_components(g, pal, a, b, budget, comps):
    steps: Steps = []
    trace = PlanTrace("components", g.n, f"{len(comps)} components")
    certified = True
    for comp in comps:
        verts = list(bits(comp))
        try:
            sub_steps, sub_trace = _plan_sub(g, verts, pal, a, [b[v] for v in verts], budget)
        except NoPath as exc:
            raise NoPath(f"component {verts}: {exc}", certified=exc.certified and certified, trace=trace) from exc
        steps += sub_steps
        trace.children.append(sub_trace)
    return steps, trace


def _dominated_pair(g: Graph) -> tuple[int, int] | None:
    for u in range(g.n):
        for v in range(g.n):
            if u != v and not g.has_edge(u, v) and g.adj[u] & ~g.adj[v] == 0:
                return u, v
    return None


def _plan_dominated(g, pal, a, b, budget, u, v):
    rest = [x for x in range(g.n) if x != u]
    trace = PlanTrace("dominated", g.n, f"N({u}) within N({v})")
    try:
        sub_steps, sub_trace = _plan_sub(g, rest, pal, a, [b[x] for x in rest], budget)
    except NoPath as exc:
        raise NoPath(f"after deleting dominated vertex {u}: {exc}", certified=exc.certified, trace=trace) from exc
    trace.children.append(sub_trace)
    cur = list(a)
    steps: Steps = []

    def emit(x, c):
        steps.append((x, c))
        cur[x] = c

    if cur[u] != cur[v]:
        emit(u, cur[v])
    for w, c in sub_steps:
        if w == v:
            emit(u, c)
        emit(w, c)
    if cur[u] != b[u]:
        emit(u, b[u])
    return steps, trace


def _plan_low_degree(g, pal, a, b, budget, v):
    rest = [x for x in range(g.n) if x != v]
    trace = PlanTrace("low-degree", g.n, f"deg({v}) = {g.degree(v)} <= {len(pal) - 2}")
    try:
        sub_steps, sub_trace = _plan_sub(g, rest, pal, a, [b[x] for x in rest], budget)
    except NoPath as exc:
        raise NoPath(f"after deleting vertex {v}: {exc}", certified=exc.certified, trace=trace) from exc
    trace.children.append(sub_trace)
    nbrs = g.adj[v]
    cur = list(a)
    steps: Steps = []
    for w, c in sub_steps:
        if nbrs >> w & 1 and c == cur[v]:
            around = {cur[u] for u in bits(nbrs)}
            free = [x for x in pal if x not in around and x != cur[v]]
            z = b[v] if b[v] in free else free[0]
            steps.append((v, z))
            cur[v] = z
        steps.append((w, c))
        cur[w] = c
    if cur[v] != b[v]:
        steps.append((v, b[v]))
    return steps, trace


def _reduce_sides(g, pal, start, sides, budget, trace) -> Steps:
    """Recolor each side (a module) to use exactly chi(side) colors, one side at a time."""
    cur = list(start)
    steps: Steps = []
    for verts in sides:
        sub, _ = induced_subgraph(g, verts)
        chi = chromatic_number(sub)
        used = sorted({cur[v] for v in verts})
        if len(used) <= chi:
            continue
        smask = mask_of(verts)
        side_pal = tuple(c for c in pal if c not in _outside_colors(g, cur, smask))
        local = coloring_with_colors(sub, used[:chi])
        sub_steps, sub_trace = _plan_sub(g, verts, side_pal, cur, [local[i] for i in range(len(verts))], budget)
        trace.children.append(sub_trace)
        steps += sub_steps
        _apply(cur, sub_steps)
    return steps


def _plan_join(g, pal, a, b, budget, left_mask):
    left = list(bits(left_mask))
    right = [x for x in range(g.n) if not left_mask >> x & 1]
    trace = PlanTrace("join", g.n, f"sides of size {len(left)} and {len(right)}")
    try:
        down_a = _reduce_sides(g, pal, a, (left, right), budget, trace)
        down_b = _reduce_sides(g, pal, b, (left, right), budget, trace)
        cur = list(a)
        _apply(cur, down_a)
        bhat = list(b)
        _apply(bhat, down_b)
        steps = list(down_a)

        def recolor_class(side, old, new):
            for x in side:
                if cur[x] == old:
                    steps.append((x, new))
                    cur[x] = new

        target_left = {bhat[x] for x in left}
        target_right = {bhat[x] for x in right}
        while True:
            have_left = {cur[x] for x in left}
            have_right = {cur[x] for x in right}
            if have_left == target_left:
                break
            free = [c for c in pal if c not in have_left and c not in have_right]
            want = sorted(target_left - have_left)
            ready = [c for c in want if c in free]
            if ready:
                recolor_class(left, min(have_left - target_left), ready[0])
            else:
                recolor_class(right, want[0], free[0])
        while True:
            have_right = {cur[x] for x in right}
            if have_right == target_right:
                break
            recolor_class(right, min(have_right - target_right), min(target_right - have_right))
        for side, other in ((left, right), (right, left)):
            side_pal = tuple(c for c in pal if c not in {cur[x] for x in other})
            sub_steps, sub_trace = _plan_sub(g, side, side_pal, cur, [bhat[x] for x in side], budget)
            trace.children.append(sub_trace)
            steps += sub_steps
            _apply(cur, sub_steps)
        steps += _reverse(b, down_b)
    except NoPath as exc:
        raise NoPath(f"join rule: {exc}", certified=False, trace=trace) from exc
    return steps, trace


def _plan_modules(g, pal, a, b, budget, cs: CliqueSkeletonMap):
    blocks = [sorted(blk) for blk in cs.source_blocks.blocks]
    cliques = [sorted(q) for q in cs.cliques]
    h = cs.host
    trace = PlanTrace("modules", g.n, f"{len(blocks)} maximal modules, clique skeleton on {h.n} vertices")
    try:
        down_a = _reduce_sides(g, pal, a, blocks, budget, trace)
        down_b = _reduce_sides(g, pal, b, blocks, budget, trace)
        ahat, bhat = list(a), list(b)
        _apply(ahat, down_a)
        _apply(bhat, down_b)

        def on_host(col):
            out = [0] * h.n
            for blk, q in zip(blocks, cliques):
                for x, c in zip(q, sorted({col[v] for v in blk})):
                    out[x] = c
            return tuple(out)

        chi = chromatic_number(h)
        mu_map = coloring_with_colors(h, pal[:chi])
        mu = tuple(mu_map[x] for x in range(h.n))
        lifted = []
        for start in (ahat, bhat):
            hstart = on_host(start)
            host_steps, host_trace = _plan(h, pal, hstart, mu, budget)
            trace.children.append(host_trace)
            gcur = list(start)
            lifted.append(_expand_host_steps(blocks, cliques, gcur, list(hstart), host_steps))
        cur = list(ahat)
        _apply(cur, lifted[0])
        gamma_b = list(bhat)
        _apply(gamma_b, lifted[1])
        steps = down_a + lifted[0]
        for blk in blocks:
            if all(cur[v] == gamma_b[v] for v in blk):
                continue
            smask = mask_of(blk)
            block_pal = tuple(c for c in pal if c not in _outside_colors(g, cur, smask))
            sub_steps, sub_trace = _plan_sub(g, blk, block_pal, cur, [gamma_b[v] for v in blk], budget)
            trace.children.append(sub_trace)
            steps += sub_steps
            _apply(cur, sub_steps)
        steps += _reverse(bhat, lifted[1])
        steps += _reverse(b, down_b)
    except NoPath as exc:
        raise NoPath(f"module rule: {exc}", certified=False, trace=trace) from exc
    return steps, trace


def _plan_search(g, pal, a, b, budget):
    """Best-first search towards ``b`` (fewest differing vertices first)."""
    trace = PlanTrace("search", g.n)
    if g.n <= 20:
        cut = find_tight_clique_cutset(g)
        if cut is not None:
            trace.note = f"tight clique cutset {sorted(cut)} present"
    n = g.n
    nbrs = [list(bits(g.adj[v])) for v in range(n)]
    dist = lambda s: sum(1 for i in range(n) if s[i] != b[i])
    parent: dict[tuple[int, ...], tuple[int, int] | None] = {a: None}
    tie = count()
    heap = [(dist(a), next(tie), a)]
    while heap:
        _, _, cur = heapq.heappop(heap)
        budget.spend()
        for v in range(n):
            seen = {cur[u] for u in nbrs[v]}
            for c in pal:
                if c == cur[v] or c in seen:
                    continue
                nxt = cur[:v] + (c,) + cur[v + 1:]
                if nxt in parent:
                    continue
                parent[nxt] = (v, cur[v])
                if nxt == b:
                    steps = []
                    s = nxt
                    while parent[s] is not None:
                        w, old = parent[s]
                        steps.append((w, s[w]))
                        s = s[:w] + (old,) + s[w + 1:]
                    steps.reverse()
                    trace.note = (trace.note + "; " if trace.note else "") + f"{len(parent)} colorings seen"
                    return steps, trace
                heapq.heappush(heap, (dist(nxt), next(tie), nxt))
    raise NoPath(f"component exhausted after {len(parent)} colorings", certified=True, trace=trace)


def plan_recoloring(
    g: Graph,
    ell: int,
    a: Coloring,
    b: Coloring,
    budget: int = DEFAULT_PATH_BUDGET,
    certify: bool = True,
) -> tuple[RecoloringSchedule, PlanTrace]:
    """Plan a walk from ``a`` to ``b`` in R_ell(G) through the reduction cascade.

    Raises ``NoPath`` (``certified`` tells whether the absence is proven) or
    ``BudgetExhausted``. When ``certify`` is set and the state space fits the
    census budget, an uncertain failure is settled by a census.
    """
    for name, c in (("start", a), ("target", b)):
        if len(c) != g.n or not is_proper(g, c) or max(c.assignment, default=1) > ell:
            raise PreconditionViolated(f"{name} is not a proper {ell}-coloring")
    chi = chromatic_number(g)
    if ell < chi + 1:
        raise PreconditionViolated(f"ell = {ell} is below chi + 1 = {chi + 1}")
    tracker = _Budget(budget)
    try:
        steps, trace = _plan(g, tuple(range(1, ell + 1)), a.assignment, b.assignment, tracker)
    except (NoPath, BudgetExhausted) as exc:
        if isinstance(exc, NoPath) and exc.certified:
            raise
        if certify and count_colorings(g, ell) <= memory_budget():
            rg = build_reconfiguration_graph(g, ell)
            if rg.component_of(a) != rg.component_of(b):
                raise NoPath("census places the endpoints in different components", certified=True,
                             trace=getattr(exc, "trace", None)) from exc
        raise
    sched = RecoloringSchedule(Coloring(a.assignment, ell), tuple(steps))
    sched.validate(g)
    if sched.end.assignment != b.assignment:
        raise AssertionError("planned schedule does not end at the target")
    return sched, trace
