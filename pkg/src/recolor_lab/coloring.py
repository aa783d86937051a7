"""Colorings: properness, exact chromatic number, enumeration and counting.

Colors are 1-based throughout. Improper assignments are representable so that
errors can be reported with the offending coloring attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import LengthMismatch
from .graph import Graph, bits, component_masks, induced_subgraph


@dataclass(frozen=True)
class Coloring:
    assignment: tuple[int, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        for v, c in enumerate(self.assignment):
            if not 1 <= c <= self.k:
                raise ValueError(f"vertex {v} has color {c} outside 1..{self.k}")

    def __len__(self) -> int:
        return len(self.assignment)

    def __getitem__(self, v: int) -> int:
        return self.assignment[v]

    def recolor(self, v: int, c: int) -> "Coloring":
        a = list(self.assignment)
        a[v] = c
        return Coloring(tuple(a), self.k)

    def with_palette(self, k: int) -> "Coloring":
        return Coloring(self.assignment, k)

    def colors_on(self, s: Iterable[int]) -> frozenset[int]:
        return colors_on(self, s)

    def used(self) -> frozenset[int]:
        return frozenset(self.assignment)

    def to_json(self) -> list[int]:
        return list(self.assignment)


def is_proper(g: Graph, c: Coloring | Sequence[int]) -> bool:
    a = c.assignment if isinstance(c, Coloring) else tuple(c)
    if len(a) != g.n:
        raise LengthMismatch(f"coloring has {len(a)} entries, graph has {g.n} vertices")
    return all(a[u] != a[v] for u, v in g.edges())


def colors_on(c: Coloring, s: Iterable[int]) -> frozenset[int]:
    return frozenset(c.assignment[v] for v in s)


def movable(g: Graph, a: Sequence[int], v: int, k: int) -> list[int]:
    """Colors other than ``a[v]`` that ``v`` may take without conflict."""
    seen = {a[u] for u in bits(g.adj[v])}
    return [c for c in range(1, k + 1) if c != a[v] and c not in seen]


# -- exact chromatic number ------------------------------------------------------

def _greedy_clique(g: Graph, within: int) -> int:
    best = 0
    for start in bits(within):
        cand = g.adj[start] & within
        size = 1
        while cand:
            v = max(bits(cand), key=lambda x: (g.adj[x] & cand).bit_count())
            size += 1
            cand &= g.adj[v]
        best = max(best, size)
    return best


def _dsatur_greedy(g: Graph, verts: list[int]) -> dict[int, int]:
    col: dict[int, int] = {}
    left = set(verts)
    while left:
        def key(v):
            sat = {col[u] for u in bits(g.adj[v]) if u in col}
            return (len(sat), g.degree(v), -v)
        v = max(left, key=key)
        used = {col[u] for u in bits(g.adj[v]) if u in col}
        c = 1
        while c in used:
            c += 1
        col[v] = c
        left.discard(v)
    return col


def _k_color(g: Graph, verts: list[int], k: int) -> dict[int, int] | None:
    """DSATUR backtracking: a proper coloring of ``verts`` with colors 1..k, or None."""
    vmask = 0
    for v in verts:
        vmask |= 1 << v
    col: dict[int, int] = {}
    # forbidden[v]: bitmask of colors (bit c) used by colored neighbors
    forbidden = {v: 0 for v in verts}
    full = ((1 << (k + 1)) - 1) ^ 1

    def pick() -> int:
        best, bkey = -1, None
        for v in verts:
            if v in col:
                continue
            key = ((full & ~forbidden[v]).bit_count(), -(g.adj[v] & vmask).bit_count(), v)
            if bkey is None or key < bkey:
                best, bkey = v, key
        return best

    def rec(max_used: int) -> bool:
        if len(col) == len(verts):
            return True
        v = pick()
        avail = full & ~forbidden[v]
        for c in bits(avail):
            if c > max_used + 1:
                break
            col[v] = c
            touched = []
            for u in bits(g.adj[v] & vmask):
                if u not in col and not forbidden[u] >> c & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
            if rec(max(max_used, c)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
            del col[v]
        return False

    return dict(col) if rec(0) else None


def optimal_coloring(g: Graph) -> Coloring:
    """A chi(G)-coloring of ``g`` (exact, branch and bound per component)."""
    if g.n == 0:
        return Coloring((), 0)
    result = [0] * g.n
    chi = 1
    for comp in component_masks(g):
        verts = list(bits(comp))
        lower = _greedy_clique(g, comp)
        upper_col = _dsatur_greedy(g, verts)
        upper = max(upper_col.values())
        best = upper_col
        for k in range(lower, upper):
            found = _k_color(g, verts, k)
            if found is not None:
                best = found
                break
        for v, c in best.items():
            result[v] = c
        chi = max(chi, max(best.values()))
    return Coloring(tuple(result), chi)


def chromatic_number(g: Graph) -> int:
    return _chi_cached(g)


@lru_cache(maxsize=65536)
def _chi_cached(g: Graph) -> int:
    return optimal_coloring(g).k if g.n else 0


def is_k_colorable(g: Graph, k: int) -> bool:
    return g.n == 0 or chromatic_number(g) <= k


def coloring_with_colors(g: Graph, palette: Sequence[int]) -> dict[int, int]:
    """Color ``g`` optimally, renaming color i to ``sorted(palette)[i-1]``."""
    opt = optimal_coloring(g)
    pal = sorted(palette)
    if opt.k > len(pal):
        raise ValueError("palette smaller than the chromatic number")
    return {v: pal[c - 1] for v, c in enumerate(opt.assignment)}


# -- enumeration ----------------------------------------------------------------

def enumerate_colorings(g: Graph, k: int) -> Iterator[Coloring]:
    """Every proper k-coloring exactly once, lexicographic with vertex 0 most significant."""
    n = g.n
    if n == 0:
        yield Coloring((), k)
        return
    a = [0] * n
    lower = [g.adj[v] & ((1 << v) - 1) for v in range(n)]
    v = 0
    while v >= 0:
        c = a[v] + 1
        while c <= k and any(a[u] == c for u in bits(lower[v])):
            c += 1
        if c > k:
            a[v] = 0
            v -= 1
            continue
        a[v] = c
        if v == n - 1:
            yield Coloring(tuple(a), k)
        else:
            v += 1


def frontier_order(g: Graph) -> list[int]:
    """Vertex order that keeps the set of 'open' vertices small (greedy)."""
    order: list[int] = []
    placed = 0
    left = g.full
    while left:
        def cost(v):
            newly = placed | (1 << v)
            open_ = sum(1 for u in bits(newly) if g.adj[u] & ~newly)
            return (open_, -(g.adj[v] & placed).bit_count(), v)
        v = min(bits(left), key=cost)
        order.append(v)
        placed |= 1 << v
        left &= ~(1 << v)
    return order


def count_colorings(g: Graph, k: int) -> int:
    """Count proper k-colorings without storing them (frontier dynamic programming).

    States record the colors of already-placed vertices that still have an
    unplaced neighbor; everything else has been summed out.
    """
    if g.n == 0:
        return 1
    order = frontier_order(g)
    placed = 0
    active: tuple[int, ...] = ()
    states: dict[tuple[int, ...], int] = {(): 1}
    for v in order:
        placed |= 1 << v
        slot = [i for i, u in enumerate(active) if g.has_edge(u, v)]
        new_active = active + (v,)
        keep = [i for i, u in enumerate(new_active) if g.adj[u] & ~placed]
        nxt: dict[tuple[int, ...], int] = {}
        for st, cnt in states.items():
            blocked = {st[i] for i in slot}
            for c in range(1, k + 1):
                if c in blocked:
                    continue
                full = st + (c,)
                key = tuple(full[i] for i in keep)
                nxt[key] = nxt.get(key, 0) + cnt
        active = tuple(new_active[i] for i in keep)
        states = nxt
    return sum(states.values())


def coloring_array(g: Graph, k: int, max_rows: int | None = None) -> np.ndarray:
    """All proper k-colorings as a ``(count, n)`` uint8 array in lexicographic order.

    Built breadth-first one vertex at a time; ``max_rows`` bounds every stage.
    """
    n = g.n
    rows = np.zeros((1, 0), dtype=np.uint8)
    colors = np.arange(1, k + 1, dtype=np.uint8)
    for v in range(n):
        m = rows.shape[0]
        ext = np.empty((m * k, v + 1), dtype=np.uint8)
        ext[:, :v] = np.repeat(rows, k, axis=0)
        ext[:, v] = np.tile(colors, m)
        ok = np.ones(m * k, dtype=bool)
        for u in bits(g.adj[v] & ((1 << v) - 1)):
            ok &= ext[:, u] != ext[:, v]
        rows = ext[ok]
        if max_rows is not None and rows.shape[0] > max_rows:
            from .errors import StateSpaceTooLarge
            raise StateSpaceTooLarge(rows.shape[0], max_rows)
    return rows


def extend_coloring(g: Graph, partial: Sequence[int | None], k: int) -> Coloring | None:
    """Complete a partial coloring (``None`` or 0 = unset) to a proper k-coloring."""
    if len(partial) != g.n:
        raise LengthMismatch("partial coloring length does not match the graph")
    fixed = {v: c for v, c in enumerate(partial) if c}
    for u, v in g.edges():
        if u in fixed and v in fixed and fixed[u] == fixed[v]:
            return None
    free = [v for v in range(g.n) if v not in fixed]
    if not free:
        return Coloring(tuple(fixed[v] for v in range(g.n)), k)
    sub, verts = induced_subgraph(g, free)
    col: dict[int, int] = {}
    pre = [frozenset(fixed[u] for u in bits(g.adj[v]) if u in fixed) for v in verts]
    order = sorted(range(sub.n), key=lambda i: (-len(pre[i]), -sub.degree(i)))

    def rec(j: int) -> bool:
        if j == len(order):
            return True
        i = order[j]
        for c in range(1, k + 1):
            if c in pre[i] or any(col.get(u) == c for u in bits(sub.adj[i])):
                continue
            col[i] = c
            if rec(j + 1):
                return True
            del col[i]
        return False

    if not rec(0):
        return None
    out = dict(fixed)
    for i, v in enumerate(verts):
        out[v] = col[i]
    return Coloring(tuple(out[v] for v in range(g.n)), k)
