"""Exhaustive analysis of the reconfiguration graph R_k(G).

The census stores every proper k-coloring as a row of a uint8 array, groups
colorings that agree off a single vertex (each such group is a clique of
R_k(G)) and merges groups with a batched, array-based union-find. A pure
Python breadth-first labelling is kept alongside as an independent oracle.
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .coloring import Coloring, chromatic_number, coloring_array, count_colorings, enumerate_colorings, is_proper
from .errors import BudgetExhausted, ImproperEndpoint, StateSpaceTooLarge, TooLarge
from .graph import Graph, bits

MAX_VERTICES = 64
MAX_PALETTE = 16
DEFAULT_BUDGET = 1 << 27
DEFAULT_PATH_BUDGET = 1 << 24


def memory_budget() -> int:
    env = os.environ.get("RECOLOR_MEM_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_size(g: Graph, k: int) -> None:
    if g.n > MAX_VERTICES:
        raise TooLarge(f"reconfiguration search is limited to {MAX_VERTICES} vertices")
    if k > MAX_PALETTE:
        raise TooLarge(f"palette size is limited to {MAX_PALETTE}")


# -- schedules --------------------------------------------------------------------

@dataclass(frozen=True)
class RecoloringSchedule:
    """A walk in R_k(G): a start coloring and single-vertex recolor steps."""

    start: Coloring
    steps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(v), int(c)) for v, c in self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def walk(self) -> list[Coloring]:
        cur = list(self.start.assignment)
        out = [self.start]
        for v, c in self.steps:
            cur[v] = c
            out.append(Coloring(tuple(cur), self.start.k))
        return out

    @property
    def end(self) -> Coloring:
        cur = list(self.start.assignment)
        for v, c in self.steps:
            cur[v] = c
        return Coloring(tuple(cur), self.start.k)

    def validate(self, g: Graph) -> None:
        """Raise ``ValueError`` unless every intermediate coloring is proper."""
        if not is_proper(g, self.start):
            raise ValueError("schedule starts from an improper coloring")
        cur = list(self.start.assignment)
        k = self.start.k
        for i, (v, c) in enumerate(self.steps):
            if not 1 <= c <= k:
                raise ValueError(f"step {i} uses color {c} outside 1..{k}")
            if cur[v] == c:
                raise ValueError(f"step {i} does not change vertex {v}")
            for u in bits(g.adj[v]):
                if cur[u] == c:
                    raise ValueError(f"step {i} recolors {v} to {c}, clashing with neighbor {u}")
            cur[v] = c

    def is_valid(self, g: Graph) -> bool:
        try:
            self.validate(g)
        except ValueError:
            return False
        return True

    def then(self, other: "RecoloringSchedule") -> "RecoloringSchedule":
        if other.start.assignment != self.end.assignment:
            raise ValueError("schedules do not meet")
        return RecoloringSchedule(self.start, self.steps + other.steps)

    def reversed(self) -> "RecoloringSchedule":
        walk = self.walk()
        steps = []
        for i in range(len(self.steps) - 1, -1, -1):
            v, _ = self.steps[i]
            steps.append((v, walk[i][v]))
        return RecoloringSchedule(walk[-1], tuple(steps))

    def to_json(self) -> list[list[int]]:
        return [[v, c] for v, c in self.steps]


# -- union-find over arrays -------------------------------------------------------

def _compress(parent: np.ndarray) -> None:
    while True:
        grand = parent[parent]
        if np.array_equal(grand, parent):
            return
        parent[:] = grand


def union_pairs(parent: np.ndarray, a: np.ndarray, b: np.ndarray) -> None:
    """Union every pair ``(a[i], b[i])``; roots always hook onto smaller indices.

    Deterministic: after compression every element points at the smallest index
    of its component, whatever order the pairs arrive in.
    """
    while a.size:
        _compress(parent)
        ra, rb = parent[a], parent[b]
        live = ra != rb
        if not live.any():
            return
        a, b, ra, rb = a[live], b[live], ra[live], rb[live]
        hi = np.maximum(ra, rb)
        lo = np.minimum(ra, rb)
        np.minimum.at(parent, hi, lo)
    _compress(parent)


def _row_keys(rows: np.ndarray, k: int) -> tuple[np.ndarray | None, np.ndarray | None]:
    """Mixed-radix integer codes (vertex 0 most significant) when they fit in int64."""
    n = rows.shape[1]
    if n == 0 or n * np.log2(max(k, 2)) >= 62:
        return None, None
    weights = np.array([k ** (n - 1 - v) for v in range(n)], dtype=np.int64)
    codes = (rows.astype(np.int64) - 1) @ weights
    return codes, weights


@dataclass
class ReconfigurationGraph:
    """Stored colorings of R_k(G) with component labels (smallest member index)."""

    graph: Graph
    k: int
    rows: np.ndarray
    labels: np.ndarray
    degree: np.ndarray
    codes: np.ndarray | None = None
    weights: np.ndarray | None = None

    def index_of(self, c: Coloring | Sequence[int]) -> int:
        a = np.asarray(c.assignment if isinstance(c, Coloring) else c, dtype=np.int64)
        if self.codes is not None:
            code = int((a - 1) @ self.weights)
            i = int(np.searchsorted(self.codes, code))
            if i < len(self.codes) and self.codes[i] == code:
                return i
            return -1
        hits = np.nonzero((self.rows == a.astype(np.uint8)).all(axis=1))[0]
        return int(hits[0]) if hits.size else -1

    def index_of_rows(self, rows: np.ndarray) -> np.ndarray:
        """Indices of many colorings at once; every row must be present."""
        if self.codes is None:
            return np.array([self.index_of(r) for r in rows], dtype=np.int64)
        codes = (rows.astype(np.int64) - 1) @ self.weights
        idx = np.searchsorted(self.codes, codes)
        if np.any(idx >= len(self.codes)) or np.any(self.codes[np.minimum(idx, len(self.codes) - 1)] != codes):
            raise ImproperEndpoint("some rows are not proper k-colorings of the graph")
        return idx

    @property
    def size(self) -> int:
        return int(self.rows.shape[0])

    def coloring(self, i: int) -> Coloring:
        return Coloring(tuple(int(x) for x in self.rows[i]), self.k)

    def component_of(self, c: Coloring | Sequence[int]) -> int:
        i = self.index_of(c)
        if i < 0:
            raise ImproperEndpoint("coloring is not a proper k-coloring of the graph")
        return int(self.labels[i])

    @property
    def num_components(self) -> int:
        return int(np.unique(self.labels).size)


def build_reconfiguration_graph(g: Graph, k: int, budget: int | None = None) -> ReconfigurationGraph:
    _check_size(g, k)
    budget = memory_budget() if budget is None else budget
    total = count_colorings(g, k)
    if total > budget:
        raise StateSpaceTooLarge(total, budget)
    rows = coloring_array(g, k, max_rows=max(budget, total) * k)
    count = rows.shape[0]
    parent = np.arange(count, dtype=np.int64)
    degree = np.zeros(count, dtype=np.int64)
    codes, weights = _row_keys(rows, k)
    for v in range(g.n):
        if codes is not None:
            key = codes - (rows[:, v].astype(np.int64) - 1) * weights[v]
            order = np.argsort(key, kind="stable")
            sk = key[order]
            starts = np.ones(count, dtype=bool)
            starts[1:] = sk[1:] != sk[:-1]
        else:
            cols = [rows[:, u] for u in range(g.n) if u != v]
            order = np.lexsort(cols[::-1]) if cols else np.arange(count)
            sr = np.delete(rows, v, axis=1)[order]
            starts = np.ones(count, dtype=bool)
            if count > 1:
                starts[1:] = (sr[1:] != sr[:-1]).any(axis=1)
        group = np.cumsum(starts) - 1
        first = order[starts][group]
        sizes = np.bincount(group)
        degree[order] += sizes[group] - 1
        union_pairs(parent, order, first)
    return ReconfigurationGraph(g, k, rows, parent, degree, codes, weights)


# -- census -----------------------------------------------------------------------

@dataclass
class MixingReport:
    k: int
    num_colorings: int
    num_components: int
    connected: bool
    frozen: list[Coloring] = field(default_factory=list)
    elapsed: float = 0.0
    component_sizes: list[int] = field(default_factory=list)

    def to_json(self, max_frozen: int = 100) -> dict:
        return {
            "k": self.k,
            "num_colorings": self.num_colorings,
            "num_components": self.num_components,
            "connected": self.connected,
            "num_frozen": len(self.frozen),
            "frozen": [c.to_json() for c in self.frozen[:max_frozen]],
            "component_sizes": self.component_sizes,
        }


def census(g: Graph, k: int, budget: int | None = None, rg: ReconfigurationGraph | None = None) -> MixingReport:
    """Component census of R_k(G); ``rg`` reuses an already built reconfiguration graph."""
    t0 = time.perf_counter()
    if rg is None:
        rg = build_reconfiguration_graph(g, k, budget)
    _, sizes = np.unique(rg.labels, return_counts=True)
    frozen_idx = np.nonzero(rg.degree == 0)[0]
    frozen = [rg.coloring(int(i)) for i in frozen_idx]
    ncomp = int(sizes.size)
    return MixingReport(
        k=k,
        num_colorings=int(rg.rows.shape[0]),
        num_components=ncomp,
        connected=ncomp <= 1,
        frozen=frozen,
        elapsed=time.perf_counter() - t0,
        component_sizes=sorted((int(s) for s in sizes), reverse=True),
    )


def is_k_mixing(g: Graph, k: int, budget: int | None = None) -> bool:
    return census(g, k, budget).connected


@dataclass
class RecolorabilityVerdict:
    chi: int
    ell_max: int
    verdicts: dict[int, bool]

    @property
    def recolorable_up_to(self) -> bool:
        """True when every tested palette is mixing; a bounded claim only."""
        return all(self.verdicts.values())

    def to_json(self) -> dict:
        return {
            "chi": self.chi,
            "ell_max": self.ell_max,
            "verdicts": {str(l): v for l, v in self.verdicts.items()},
            "recolorable_up_to_ell_max": self.recolorable_up_to,
        }


def recolorable_up_to(g: Graph, ell_max: int, budget: int | None = None) -> RecolorabilityVerdict:
    chi = chromatic_number(g)
    verdicts = {ell: is_k_mixing(g, ell, budget) for ell in range(chi + 1, ell_max + 1)}
    return RecolorabilityVerdict(chi, ell_max, verdicts)


def frozen_colorings(g: Graph, k: int, budget: int | None = None) -> list[Coloring]:
    return census(g, k, budget).frozen


def is_frozen(g: Graph, c: Coloring) -> bool:
    """True when no vertex can change color: each sees all other colors on its neighbors."""
    a = c.assignment
    for v in range(g.n):
        seen = {a[u] for u in bits(g.adj[v])}
        if len(seen | {a[v]}) < c.k:
            return False
    return True


def component_orbits(g: Graph, k: int, budget: int | None = None) -> int:
    """Number of components of R_k(G) up to permuting the colors."""
    rg = build_reconfiguration_graph(g, k, budget)
    rows = rg.rows.astype(np.int64)
    canon = np.zeros_like(rows)
    # relabel colors by order of first appearance
    for i in range(rows.shape[0]):
        seen: dict[int, int] = {}
        canon[i] = [seen.setdefault(x, len(seen) + 1) for x in rows[i]]
    _, cls = np.unique(canon, axis=0, return_inverse=True)
    labels = rg.labels.copy()
    parent = np.arange(rows.shape[0], dtype=np.int64)
    order = np.argsort(cls.ravel(), kind="stable")
    sc = cls.ravel()[order]
    starts = np.ones(len(order), dtype=bool)
    starts[1:] = sc[1:] != sc[:-1]
    first = order[starts][np.cumsum(starts) - 1]
    union_pairs(parent, labels[order], labels[first])
    return int(np.unique(parent[labels]).size)


# -- independent oracle -----------------------------------------------------------

def bfs_component_labels(g: Graph, k: int) -> dict[tuple[int, ...], int]:
    """Explicit breadth-first labelling of R_k(G); labels are 0, 1, ... in discovery order."""
    cols = [c.assignment for c in enumerate_colorings(g, k)]
    label: dict[tuple[int, ...], int] = {}
    nxt = 0
    for s in cols:
        if s in label:
            continue
        label[s] = nxt
        queue = deque([s])
        while queue:
            cur = queue.popleft()
            for t in _moves(g, cur, k):
                if t not in label:
                    label[t] = nxt
                    queue.append(t)
        nxt += 1
    return label


def _moves(g: Graph, a: tuple[int, ...], k: int):
    for v in range(g.n):
        seen = {a[u] for u in bits(g.adj[v])}
        for c in range(1, k + 1):
            if c != a[v] and c not in seen:
                yield a[:v] + (c,) + a[v + 1:]


# -- paths -----------------------------------------------------------------------

def find_path(
    g: Graph, k: int, a: Coloring, b: Coloring, budget: int = DEFAULT_PATH_BUDGET
) -> RecoloringSchedule | None:
    """Shortest schedule from ``a`` to ``b`` in R_k(G), or None if they are disconnected.

    Raises ``BudgetExhausted`` if more than ``budget`` colorings get visited
    before the search is decided.
    """

    _check_size(g, k)
    for name, c in (("start", a), ("target", b)):
        if len(c) != g.n or not is_proper(g, c) or max(c.assignment, default=1) > k:
            raise ImproperEndpoint(f"{name} is not a proper {k}-coloring")
    start, goal = a.assignment, b.assignment
    if start == goal:
        return RecoloringSchedule(Coloring(start, k))
    parent: dict[tuple[int, ...], tuple[int, ...] | None] = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for t in _moves(g, cur, k):
            if t in parent:
                continue
            parent[t] = cur
            if t == goal:
                return _trace_back(parent, goal, k)
            if len(parent) > budget:
                raise BudgetExhausted(f"visited more than {budget} colorings")
            queue.append(t)
    return None


def _trace_back(parent, goal, k) -> RecoloringSchedule:
    chain = [goal]
    while parent[chain[-1]] is not None:
        chain.append(parent[chain[-1]])
    chain.reverse()
    steps = []
    for x, y in zip(chain, chain[1:]):
        v = next(i for i in range(len(x)) if x[i] != y[i])
        steps.append((v, y[v]))
    sched = RecoloringSchedule(Coloring(chain[0], k), tuple(steps))
    return sched


def connected_pairs(g: Graph, k: int, pairs: Iterable[tuple[Coloring, Coloring]], budget: int | None = None) -> list[bool]:
    rg = build_reconfiguration_graph(g, k, budget)
    return [rg.component_of(x) == rg.component_of(y) for x, y in pairs]
