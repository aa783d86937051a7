"""Induced-subgraph pattern search and the structural recognizers for P5-free classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotPrime, PatternTooLarge, TooLarge
from .graph import (
    Graph,
    bits,
    complement,
    complete_bipartite,
    component_masks,
    cycle_graph,
    disjoint_union,
    empty_graph,
    complete_graph,
    path_graph,
)

# Named patterns as 0-based edge lists.
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (3, 1), (3, 2)])
HOUSE = Graph.from_edges(5, [(1, 0), (0, 3), (2, 3), (1, 2), (4, 2), (1, 4)])
BULL = Graph.from_edges(5, [(1, 0), (0, 3), (2, 3), (4, 0), (3, 4)])
CO_FORK = Graph.from_edges(5, [(1, 0), (0, 2), (2, 3), (1, 2), (1, 3), (3, 4)])

PATTERNS: dict[str, Graph] = {
    "P3": path_graph(3),
    "P4": path_graph(4),
    "P5": path_graph(5),
    "C4": cycle_graph(4),
    "C5": cycle_graph(5),
    "C6": cycle_graph(6),
    "2K2": disjoint_union(complete_graph(2), complete_graph(2)),
    "3K1": empty_graph(3),
    "diamond": DIAMOND,
    "house": HOUSE,
    "bull": BULL,
    "co-fork": CO_FORK,
    "claw": complete_bipartite(1, 3),
}


def pattern(name: str) -> Graph:
    """Look up a named pattern; ``K{p},{q}`` builds a complete bipartite template."""
    if name in PATTERNS:
        return PATTERNS[name]
    if name.startswith("K") and "," in name:
        p, q = name[1:].split(",")
        return complete_bipartite(int(p), int(q))
    raise KeyError(f"unknown pattern {name!r}")


@dataclass(frozen=True)
class ClassSpec:
    forbidden: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        for name in self.forbidden:
            pattern(name)

    @property
    def label(self) -> str:
        return "(" + ", ".join(self.forbidden) + ")-free" if self.forbidden else "all graphs"


P5_DIAMOND_FREE = ClassSpec(("P5", "diamond"))
P5_HOUSE_BULL_FREE = ClassSpec(("P5", "house", "bull"))
SEMI_P4_SPARSE = ClassSpec(("P5", "C5", "co-fork"))
P5_HOUSE_FREE = ClassSpec(("P5", "house"))
P5_HOUSE_C5_FREE = ClassSpec(("P5", "house", "C5"))
TWO_K2_FREE = ClassSpec(("2K2",))
DIAMOND_FREE = ClassSpec(("diamond",))
ALL_GRAPHS = ClassSpec(())

NAMED_CLASSES = {
    "p5-diamond": P5_DIAMOND_FREE,
    "p5-house-bull": P5_HOUSE_BULL_FREE,
    "semi-p4-sparse": SEMI_P4_SPARSE,
    "p5-house": P5_HOUSE_FREE,
    "p5-house-c5": P5_HOUSE_C5_FREE,
    "2k2-free": TWO_K2_FREE,
    "diamond-free": DIAMOND_FREE,
    "all": ALL_GRAPHS,
}


def _search_order(p: Graph, first: int) -> list[int]:
    order, seen = [first], 1 << first
    while len(order) < p.n:
        touching = [v for v in range(p.n) if not seen >> v & 1 and p.adj[v] & seen]
        pool = touching or [v for v in range(p.n) if not seen >> v & 1]
        v = max(pool, key=lambda x: ((p.adj[x] & seen).bit_count(), p.degree(x), -x))
        order.append(v)
        seen |= 1 << v
    return order


def contains_induced(g: Graph, pat: Graph, must_include: int | None = None) -> tuple[int, ...] | None:
    """An induced embedding of ``pat`` in ``g`` (``emb[i]`` is the image of pattern vertex i).

    With ``must_include`` only embeddings whose image contains that vertex are sought.
    """
    if pat.n > 8:
        raise PatternTooLarge("patterns are limited to 8 vertices")
    if pat.n > g.n:
        return None
    if pat.n == 0:
        return ()
    gdeg = [g.degree(v) for v in range(g.n)]
    pdeg = [pat.degree(i) for i in range(pat.n)]
    # a vertex can host i only if it has enough neighbors and non-neighbors
    fits = [0] * pat.n
    for i in range(pat.n):
        need_non = pat.n - 1 - pdeg[i]
        for w in range(g.n):
            if gdeg[w] >= pdeg[i] and g.n - 1 - gdeg[w] >= need_non:
                fits[i] |= 1 << w
    firsts = range(pat.n) if must_include is not None else [max(range(pat.n), key=lambda i: (pdeg[i], -i))]
    for first in firsts:
        order = _search_order(pat, first)
        img = [-1] * pat.n
        start_cands = (1 << must_include) if must_include is not None else g.full

        def rec(j: int, used: int) -> bool:
            if j == pat.n:
                return True
            i = order[j]
            cand = fits[i] & ~used
            if j == 0:
                cand &= start_cands
            for jj in range(j):
                prev = order[jj]
                if pat.adj[i] >> prev & 1:
                    cand &= g.adj[img[prev]]
                else:
                    cand &= ~g.adj[img[prev]]
            for w in bits(cand):
                img[i] = w
                if rec(j + 1, used | (1 << w)):
                    return True
            img[i] = -1
            return False

        if rec(0, 0):
            return tuple(img)
    return None


def forbidden_witnesses(g: Graph, spec: ClassSpec) -> dict[str, tuple[int, ...]]:
    out = {}
    for name in spec.forbidden:
        emb = contains_induced(g, pattern(name))
        if emb is not None:
            out[name] = emb
    return out


def in_class(g: Graph, spec: ClassSpec, must_include: int | None = None) -> bool:
    return all(contains_induced(g, pattern(name), must_include) is None for name in spec.forbidden)


# -- recognizers -----------------------------------------------------------------

def is_bipartite(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in bits(g.adj[v]):
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return None
    return (frozenset(v for v in range(g.n) if side[v] == 0), frozenset(v for v in range(g.n) if side[v] == 1))


def is_co_bipartite(g: Graph) -> bool:
    return is_bipartite(complement(g)) is not None


def is_matched_co_bipartite(g: Graph) -> bool:
    """True iff ``g`` is the complement of K_{p,q} minus a maximum matching (p, q >= 1).

    Equivalently V splits into two nonempty cliques X, Y whose cross edges form
    a matching of size min(|X|, |Y|). Sides are searched component by
    component of the complement, pruning as soon as a vertex gets two
    neighbors across.
    """
    if g.n > 20:
        raise TooLarge("matched co-bipartite recognition is limited to 20 vertices")
    if g.n < 2:
        return False
    co = complement(g)
    parts = []
    for comp in component_masks(co):
        sub_side = _two_sides(co, comp)
        if sub_side is None:
            return False
        parts.append(sub_side)

    def cross_ok(x: int, y: int) -> bool:
        return all((g.adj[v] & y).bit_count() <= 1 for v in bits(x)) and all(
            (g.adj[v] & x).bit_count() <= 1 for v in bits(y)
        )

    def rec(i: int, x: int, y: int) -> bool:
        if not cross_ok(x, y):
            return False
        if i == len(parts):
            if not x or not y:
                return False
            matched = sum((g.adj[v] & y).bit_count() for v in bits(x))
            return matched == min(x.bit_count(), y.bit_count())
        a, b = parts[i]
        if rec(i + 1, x | a, y | b):
            return True
        return i > 0 and rec(i + 1, x | b, y | a)

    return rec(0, 0, 0)


def _two_sides(g: Graph, comp: int) -> tuple[int, int] | None:
    seed = (comp & -comp).bit_length() - 1
    side = {seed: 0}
    stack = [seed]
    while stack:
        v = stack.pop()
        for u in bits(g.adj[v] & comp):
            if u not in side:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    a = sum(1 << v for v, s in side.items() if s == 0)
    return a, comp & ~a


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search, then check the reversed visit order is a perfect elimination order."""
    n = g.n
    weight = [0] * n
    visited = 0
    visit = []
    for _ in range(n):
        v = max((x for x in range(n) if not visited >> x & 1), key=lambda x: (weight[x], -x))
        visit.append(v)
        visited |= 1 << v
        for u in bits(g.adj[v] & ~visited):
            weight[u] += 1
    peo = visit[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [u for u in bits(g.adj[v]) if pos[u] > pos[v]]
        if not later:
            continue
        u = min(later, key=lambda x: pos[x])
        rest = 0
        for w in later:
            if w != u:
                rest |= 1 << w
        if rest & ~g.adj[u]:
            return False
    return True


def thin_spider_split(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """A decomposition (K, S) witnessing a thin spider, or None."""
    if g.n > 20:
        raise TooLarge("thin spider recognition is limited to 20 vertices")
    if g.n == 0:
        return frozenset(), frozenset()
    deg = [g.degree(v) for v in range(g.n)]
    core = 0
    leaves = []
    for v in range(g.n):
        if deg[v] == 1:
            leaves.append(v)
        else:
            core |= 1 << v
    # a pendant vertex inside K forces |K| <= 2, so only tiny additions to the core
    extras = [()] + [(x,) for x in leaves] + [(x, y) for i, x in enumerate(leaves) for y in leaves[i + 1:]]
    for extra in extras:
        k = core
        for x in extra:
            k |= 1 << x
        s = g.full & ~k
        if _is_thin_split(g, k, s):
            return frozenset(bits(k)), frozenset(bits(s))
    return None


def _is_thin_split(g: Graph, k: int, s: int) -> bool:
    for v in bits(k):
        if (g.adj[v] | (1 << v)) & k != k:
            return False
    matched = 0
    for v in bits(s):
        if g.adj[v] & s:
            return False
        nk = g.adj[v] & k
        if nk.bit_count() != 1 or nk & matched:
            return False
        matched |= nk
    return k.bit_count() - s.bit_count() in (0, 1)


def is_thin_spider(g: Graph) -> bool:
    return thin_spider_split(g) is not None


def check_p5free_bipartite_staircase(g: Graph) -> bool:
    """Bipartite with equal halves B, W ordered so that N(b_i) = {w_1, ..., w_{h-i+1}}."""
    from .modules import is_prime

    if not is_prime(g):
        raise NotPrime("staircase check expects a prime graph")
    sides = is_bipartite(g)
    if sides is None or g.n % 2:
        return False
    h = g.n // 2
    for bside, wside in (sides, sides[::-1]):
        if len(bside) != h or len(wside) != h:
            continue
        order = sorted(bside, key=lambda v: -g.degree(v))
        if [g.degree(v) for v in order] != list(range(h, 0, -1)):
            continue
        if all(g.adj[order[i + 1]] & ~g.adj[order[i]] == 0 for i in range(h - 1)):
            return True
    return False


def staircase_graph(h: int) -> Graph:
    """The prime P5-free bipartite graph on 2h vertices: b_i (vertex i) sees w_1..w_{h-i+1}."""
    edges = [(i - 1, h + j - 1) for i in range(1, h + 1) for j in range(1, h - i + 2)]
    return Graph.from_edges(2 * h, edges)


def _cliques(g: Graph) -> list[int]:
    out = []

    def grow(clique: int, cand: int):
        for v in bits(cand):
            c = clique | (1 << v)
            out.append(c)
            grow(c, cand & g.adj[v] & ~((1 << (v + 1)) - 1))

    grow(0, g.full)
    out.sort(key=lambda c: (c.bit_count(), sorted(bits(c))))
    return out


def find_tight_clique_cutset(g: Graph) -> frozenset[int] | None:
    """A clique Q whose removal adds components, one of which is complete to Q."""
    if g.n > 20:
        raise TooLarge("clique cutset search is limited to 20 vertices")
    base = len(component_masks(g))
    for q in _cliques(g):
        rest = g.full & ~q
        comps = component_masks(g, rest)
        if len(comps) <= base:
            continue
        for comp in comps:
            if all(g.adj[x] & q == q for x in bits(comp)):
                return frozenset(bits(q))
    return None


def has_universal_vertex(g: Graph) -> int | None:
    for v in range(g.n):
        if g.adj[v] == g.full ^ (1 << v):
            return v
    return None


def is_prime_p5_free_bipartite(g: Graph) -> bool:
    from .modules import is_prime

    return is_prime(g) and is_bipartite(g) is not None and contains_induced(g, PATTERNS["P5"]) is None


def classify(g: Graph) -> dict:
    """Per-class membership plus witness embeddings for every forbidden pattern found."""
    from .modules import is_prime

    witnesses = {}
    for name in PATTERNS:
        emb = contains_induced(g, PATTERNS[name])
        if emb is not None:
            witnesses[name] = list(emb)
    classes = {key: all(f not in witnesses for f in spec.forbidden) for key, spec in NAMED_CLASSES.items()}
    small = g.n <= 20
    cut = find_tight_clique_cutset(g) if small else None
    return {
        "classes": classes,
        "witnesses": witnesses,
        "prime": is_prime(g),
        "bipartite": is_bipartite(g) is not None,
        "co_bipartite": is_co_bipartite(g),
        "chordal": is_chordal(g),
        "matched_co_bipartite": is_matched_co_bipartite(g) if small else None,
        "thin_spider": is_thin_spider(g) if small else None,
        "universal_vertex": has_universal_vertex(g),
        "tight_clique_cutset": sorted(cut) if cut is not None else None,
    }
