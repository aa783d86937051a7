"""Modules, maximal-module partitions, primality, skeleton and clique skeleton."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .coloring import chromatic_number
from .errors import EmptySet, NotPrimeEligible, TooLarge
from .graph import Graph, bits, blowup, blowup_blocks, complement, component_masks, induced_subgraph, mask_of


@dataclass(frozen=True)
class ModulePartition:
    blocks: tuple[frozenset[int], ...]

    @property
    def m(self) -> int:
        return len(self.blocks)

    def block_of(self, v: int) -> int:
        for p, b in enumerate(self.blocks):
            if v in b:
                return p
        raise KeyError(v)

    def to_json(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


@dataclass(frozen=True)
class CliqueSkeletonMap:
    host: Graph
    cliques: tuple[frozenset[int], ...]
    sizes: tuple[int, ...]
    source_blocks: ModulePartition
    skeleton: Graph


def _module_mask(g: Graph, smask: int) -> bool:
    for x in bits(g.full & ~smask):
        hit = g.adj[x] & smask
        if hit and hit != smask:
            return False
    return True


def is_module(g: Graph, s: Iterable[int]) -> bool:
    smask = mask_of(s)
    if not smask:
        raise EmptySet("modules are nonempty")
    return _module_mask(g, smask)


def smallest_module(g: Graph, smask: int) -> int:
    """Closure of ``smask`` under adding splitters; the least module containing it."""
    while True:
        grow = 0
        for x in bits(g.full & ~smask):
            hit = g.adj[x] & smask
            if hit and hit != smask:
                grow |= 1 << x
        if not grow:
            return smask
        smask |= grow


def all_nontrivial_modules(g: Graph) -> list[frozenset[int]]:
    """Every module S with 2 <= |S| < n, by exhaustive subset scan (n <= 20)."""
    if g.n > 20:
        raise TooLarge("subset scan is limited to 20 vertices")
    out = []
    for smask in range(1, 1 << g.n):
        size = smask.bit_count()
        if size < 2 or size == g.n:
            continue
        if _module_mask(g, smask):
            out.append(frozenset(bits(smask)))
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


def maximal_modules_by_scan(g: Graph) -> ModulePartition:
    """Maximal proper modules assembled from the subset scan (test oracle)."""
    mods = [mask_of(s) for s in all_nontrivial_modules(g)]
    maximal = [a for a in mods if not any(a != b and a & b == a for b in mods)]
    covered = 0
    for a in maximal:
        covered |= a
    blocks = [frozenset(bits(a)) for a in maximal]
    blocks += [frozenset([v]) for v in range(g.n) if not covered >> v & 1]
    return ModulePartition(tuple(sorted(blocks, key=min)))


def is_prime_eligible(g: Graph) -> bool:
    """Connected and co-connected, i.e. neither a disjoint union nor a join."""
    if g.n <= 1:
        return True
    return len(component_masks(g)) == 1 and len(component_masks(complement(g))) == 1


def maximal_module_partition(g: Graph) -> ModulePartition:
    """Partition V(G) into its maximal proper modules.

    For each vertex v the block is v together with every least module M(u, v)
    that is still proper; overlapping proper modules have proper unions here,
    so the union over u is the maximal module containing v.
    """
    if g.n == 0:
        return ModulePartition(())
    if not is_prime_eligible(g):
        raise NotPrimeEligible("graph is disconnected or a join; split it first")
    full = g.full
    block_mask = [1 << v for v in range(g.n)]
    for u in range(g.n):
        for v in range(u + 1, g.n):
            m = smallest_module(g, (1 << u) | (1 << v))
            if m != full:
                block_mask[u] |= m
                block_mask[v] |= m
    seen = 0
    blocks = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        b = block_mask[v]
        if b & seen:
            raise AssertionError("maximal modules overlap")
        seen |= b
        blocks.append(frozenset(bits(b)))
    part = ModulePartition(tuple(blocks))
    for b in part.blocks:
        assert _module_mask(g, mask_of(b)), "block is not a module"
    return part


def is_prime(g: Graph) -> bool:
    if g.n <= 2:
        return True
    if not is_prime_eligible(g):
        return False
    return maximal_module_partition(g).m == g.n


def skeleton(g: Graph) -> tuple[Graph, tuple[int, ...]]:
    """Contract each maximal module; returns the skeleton and its representative per block.

    The skeleton is induced on the minimum vertex of every block, so skeleton
    vertex p stands for block p of ``maximal_module_partition(g)``.
    """
    part = maximal_module_partition(g)
    reps = tuple(min(b) for b in part.blocks)
    sk, _ = induced_subgraph(g, reps)
    return sk, reps


def clique_skeleton(g: Graph) -> CliqueSkeletonMap:
    part = maximal_module_partition(g)
    reps = [min(b) for b in part.blocks]
    sk, _ = induced_subgraph(g, reps)
    sizes = tuple(chromatic_number(induced_subgraph(g, b)[0]) for b in part.blocks)
    host = blowup(sk, sizes)
    cliques = tuple(frozenset(r) for r in blowup_blocks(sizes))
    return CliqueSkeletonMap(host, cliques, sizes, part, sk)
