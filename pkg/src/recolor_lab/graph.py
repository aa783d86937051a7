"""Simple undirected graphs stored as per-vertex neighbor bitmasks.

Vertices are ``0..n-1``. Vertex sets are passed around as iterables of ints
and returned as ``frozenset``; internally most routines work on int bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import DuplicateEdge, EmptySet, LoopRejected, ParseError, ZeroMultiplicity

VertexSet = frozenset


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            if row >> self.n:
                raise ValueError(f"vertex {v} has a neighbor outside 0..{self.n - 1}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def induced(self, s: Iterable[int]) -> "Graph":
        return induced_subgraph(self, s)[0]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# -- named graphs ----------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(p: int, q: int) -> Graph:
    return Graph.from_edges(p + q, [(i, p + j) for i in range(p) for j in range(q)])


# -- operations ------------------------------------------------------------------

def complement(g: Graph) -> Graph:
    full = g.full
    return Graph(g.n, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj)))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    gm, hm = g.full, h.full << g.n
    return Graph(g.n + h.n, tuple(row | hm for row in g.adj) + tuple((row << g.n) | gm for row in h.adj))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Return ``(G[S], verts)`` where result vertex ``i`` is original vertex ``verts[i]``."""
    verts = tuple(sorted(set(s)))
    if not verts:
        raise EmptySet("induced subgraph of an empty vertex set")
    index = {v: i for i, v in enumerate(verts)}
    adj = []
    for v in verts:
        row = 0
        for u in bits(g.adj[v]):
            i = index.get(u)
            if i is not None:
                row |= 1 << i
        adj.append(row)
    return Graph(len(verts), tuple(adj)), verts


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    drop = set(s)
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop]) if len(drop) < g.n else (empty_graph(0), ())


def substitute(g: Graph, s: Iterable[int], h: Graph) -> Graph:
    """Replace the vertex set ``s`` of ``g`` by ``h``.

    Every vertex of ``h`` becomes adjacent to each vertex outside ``s`` that has
    at least one neighbor in ``s``. Vertices of ``g - s`` keep their relative
    order and come first; ``h`` is appended.
    """
    smask = mask_of(s)
    if not smask:
        raise EmptySet("cannot substitute for an empty set")
    rest = [v for v in range(g.n) if not smask >> v & 1]
    index = {v: i for i, v in enumerate(rest)}
    outside_nbrs = 0
    for v in bits(smask):
        outside_nbrs |= g.adj[v]
    outside_nbrs &= ~smask
    k = len(rest)
    hmask = ((1 << h.n) - 1) << k
    adj = []
    for v in rest:
        row = 0
        for u in bits(g.adj[v] & ~smask):
            row |= 1 << index[u]
        if outside_nbrs >> v & 1:
            row |= hmask
        adj.append(row)
    ext = mask_of(index[v] for v in bits(outside_nbrs))
    for row in h.adj:
        adj.append((row << k) | ext)
    return Graph(k + h.n, tuple(adj))


def blowup_blocks(sizes: Sequence[int]) -> list[range]:
    out, start = [], 0
    for s in sizes:
        out.append(range(start, start + s))
        start += s
    return out


def blowup(g: Graph, sizes: Sequence[int]) -> Graph:
    """Substitute a clique of ``sizes[v]`` vertices for every vertex ``v``.

    Copies of ``v`` are numbered consecutively, in vertex order.
    """
    if len(sizes) != g.n:
        raise ValueError("need one multiplicity per vertex")
    if any(s < 1 for s in sizes):
        raise ZeroMultiplicity("blowup multiplicities must be positive")
    blocks = blowup_blocks(sizes)
    bmask = [mask_of(b) for b in blocks]
    adj = []
    for v in range(g.n):
        around = 0
        for u in bits(g.adj[v]):
            around |= bmask[u]
        for x in blocks[v]:
            adj.append(around | (bmask[v] ^ (1 << x)))
    return Graph(len(adj), tuple(adj))


def sibling(g: Graph) -> Graph:
    """Attach a private pendant vertex ``n + x`` to every vertex ``x``."""
    n = g.n
    adj = [row | (1 << (n + v)) for v, row in enumerate(g.adj)]
    adj += [1 << v for v in range(n)]
    return Graph(2 * n, tuple(adj))


def component_masks(g: Graph, within: int | None = None) -> list[int]:
    left = g.full if within is None else within
    comps = []
    while left:
        seed = left & -left
        comp, frontier = seed, seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= left & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


def components(g: Graph) -> list[frozenset[int]]:
    return [frozenset(bits(c)) for c in component_masks(g)]


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(component_masks(g)) == 1


def co_component_masks(g: Graph) -> list[int]:
    return component_masks(complement(g))


# -- isomorphism ------------------------------------------------------------------

def _refine(g: Graph, rounds: int | None = None) -> list[int]:
    """Colour refinement with isomorphism-invariant colour names."""
    colors = [g.degree(v) for v in range(g.n)]
    for _ in range(rounds if rounds is not None else g.n):
        sigs = [(colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v])))) for v in range(g.n)]
        names = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [names[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new
    return colors


def graph_invariant(g: Graph) -> tuple:
    """A hashable isomorphism invariant (equal for isomorphic graphs)."""
    colors = [g.degree(v) for v in range(g.n)]
    history = [tuple(sorted(colors))]
    for _ in range(3):
        sigs = [(colors[v], tuple(sorted(colors[u] for u in bits(g.adj[v])))) for v in range(g.n)]
        names = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [names[s] for s in sigs]
        history.append(tuple(sorted(sigs)))
    tri = sum((g.adj[u] & g.adj[v]).bit_count() for u, v in g.edges()) // 3
    return (g.n, g.m, tri, tuple(history))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Backtracking isomorphism test with colour-refinement pruning (meant for n <= 10)."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return False
    n = g.n
    if n == 0:
        return True
    colors = _refine(disjoint_union(g, h))
    cg, ch = colors[:n], colors[n:]
    if sorted(cg) != sorted(ch):
        return False
    # most constrained vertices first, keeping connected order where possible
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    size = {c: cg.count(c) for c in cg}
    while remaining:
        touching = [v for v in remaining if g.adj[v] & placed]
        pool = touching or list(remaining)
        v = min(pool, key=lambda x: (size[cg[x]], -g.degree(x), x))
        order.append(v)
        remaining.discard(v)
        placed |= 1 << v
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(ch[v], []).append(v)
    image = [-1] * n
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        v = order[i]
        for w in by_color[cg[v]]:
            if used >> w & 1:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if g.has_edge(u, v) != h.has_edge(image[u], w):
                    ok = False
                    break
            if not ok:
                continue
            image[v] = w
            used |= 1 << w
            if extend(i + 1):
                return True
            used &= ~(1 << w)
        image[v] = -1
        return False

    return extend(0)


# -- I/O --------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    lines = text.split("\n")
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    rows = [(i, ln) for i, ln in rows if ln]
    if not rows:
        raise ParseError("empty input", line=1)
    lineno, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ParseError("header must be 'n m'", line=lineno)
    n, m = map(int, parts)
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"expected {m} edge lines, found {len(body)}", line=lineno)
    adj = [0] * n
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError("edge line must be 'u v'", line=lineno)
        u, v = map(int, parts)
        if u >= n or v >= n:
            raise ParseError(f"vertex out of range 0..{n - 1}", line=lineno)
        if u == v:
            raise LoopRejected(f"loop at vertex {u}", line=lineno)
        if adj[u] >> v & 1:
            raise DuplicateEdge(f"duplicate edge {min(u, v)} {max(u, v)}", line=lineno)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def emit_edge_list(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges()])


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[10:]
    if not data:
        raise ParseError("empty graph6 string", pos=0)
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}", pos=i)
    n = ord(data[0]) - 63
    if n > 62:
        raise ParseError("only graphs with at most 62 vertices are supported", pos=0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - 1 != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(data) - 1}", pos=len(data))
    stream = 0
    for ch in data[1:]:
        stream = (stream << 6) | (ord(ch) - 63)
    pad = need * 6 - nbits
    if stream & ((1 << pad) - 1):
        raise ParseError("nonzero padding bits", pos=len(data) - 1)
    stream >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if stream >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(adj))


def emit_graph6(g: Graph) -> str:
    if g.n > 62:
        raise ValueError("graph6 emission supports at most 62 vertices")
    out = [chr(g.n + 63)]
    acc, width = 0, 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            width += 1
            if width == 6:
                out.append(chr(acc + 63))
                acc, width = 0, 0
    if width:
        out.append(chr((acc << (6 - width)) + 63))
    return "".join(out)


FORMATS = ("edge-list", "graph6")


def parse_graph(text: str, format: str = "edge-list") -> Graph:
    if format == "edge-list":
        return parse_edge_list(text)
    if format == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown format {format!r}")


def emit_graph(g: Graph, format: str = "edge-list") -> str:
    if format == "edge-list":
        return emit_edge_list(g)
    if format == "graph6":
        return emit_graph6(g)
    raise ValueError(f"unknown format {format!r}")


def all_subsets(n: int, min_size: int = 0) -> Iterator[tuple[int, ...]]:
    for r in range(min_size, n + 1):
        yield from combinations(range(n), r)
