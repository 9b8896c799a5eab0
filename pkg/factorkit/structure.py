"""Connectivity structure: components, blocks and triangular cacti.

The `*_masked` kernels work on a raw adjacency tuple restricted to an `alive`
vertex mask, so G - S is evaluated as `alive = V & ~S` without building the
induced subgraph. They are the inner loop of every subset enumeration.
"""
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import PreconditionError
from .graph import Graph, VertexSet, iter_bits, members

Adjacency = Sequence[int]


@dataclass(frozen=True)
class ComponentPartition:
    """Connected components, ordered by their smallest vertex"""

    parts: Tuple[VertexSet, ...]

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.parts)

    def as_lists(self) -> List[List[int]]:
        return [members(p) for p in self.parts]

    @property
    def isolated(self) -> int:
        return sum(1 for p in self.parts if p & (p - 1) == 0)


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks (vertex mask, edge count) and the cut vertices of a graph"""

    blocks: Tuple[Tuple[VertexSet, int], ...]
    cut_vertices: VertexSet

    def __len__(self) -> int:
        return len(self.blocks)

    def block_sets(self) -> List[List[int]]:
        return sorted(members(mask) for mask, _ in self.blocks)

    @property
    def cut_vertex_list(self) -> List[int]:
        return members(self.cut_vertices)


# ---------------------- Kernels ----------------------
def component_masks(adj: Adjacency, alive: VertexSet) -> Iterator[VertexSet]:
    """Components of the subgraph induced by `alive`, smallest vertex first"""
    while alive:
        comp = frontier = alive & -alive
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            grown = adj[low.bit_length() - 1] & alive & ~comp
            comp |= grown
            frontier |= grown
        alive &= ~comp
        yield comp


def count_c_iso_masked(adj: Adjacency, alive: VertexSet) -> Tuple[int, int]:
    c = iso = 0
    for comp in component_masks(adj, alive):
        c += 1
        if comp & (comp - 1) == 0:
            iso += 1
    return c, iso


def count_iso_masked(adj: Adjacency, alive: VertexSet) -> int:
    iso = 0
    rest = alive
    while rest:
        low = rest & -rest
        rest ^= low
        if not adj[low.bit_length() - 1] & alive:
            iso += 1
    return iso


def neighborhood_masked(adj: Adjacency, s: VertexSet) -> VertexSet:
    out = 0
    while s:
        low = s & -s
        s ^= low
        out |= adj[low.bit_length() - 1]
    return out


def block_masks(adj: Adjacency, alive: VertexSet) -> Tuple[List[Tuple[VertexSet, int]], VertexSet]:
    """Biconnected components of the subgraph induced by `alive`.

    Iterative depth-first search with discovery times and low-links; edges
    are kept on a stack and popped as one block whenever a child's low-link
    does not climb above its parent. Bridges come out as 2-vertex blocks and
    isolated vertices as 1-vertex blocks with no edges.
    """
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    blocks: List[Tuple[VertexSet, int]] = []
    cut = 0
    clock = 0
    for root in iter_bits(alive):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        if not adj[root] & alive:
            blocks.append((1 << root, 0))
            continue
        root_children = 0
        edge_stack: List[Tuple[int, int]] = []
        stack = [(root, -1, iter_bits(adj[root] & alive))]
        while stack:
            v, parent, pending = stack[-1]
            descended = False
            for w in pending:
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter_bits(adj[w] & alive)))
                    descended = True
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    edge_stack.append((v, w))
            if descended:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                mask = edges = 0
                while True:
                    a, b = edge_stack.pop()
                    mask |= 1 << a | 1 << b
                    edges += 1
                    if (a, b) == (u, v):
                        break
                blocks.append((mask, edges))
                if u == root:
                    root_children += 1
                else:
                    cut |= 1 << u
        if root_children >= 2:
            cut |= 1 << root
    return blocks, cut


def is_cactus_masked(adj: Adjacency, comp: VertexSet) -> bool:
    """Triangular-cactus test for a connected vertex mask"""
    k = comp.bit_count()
    if k == 1:
        return True
    if k % 2 == 0:
        return False
    edges = sum((adj[v] & comp).bit_count() for v in iter_bits(comp)) // 2
    if edges != 3 * (k - 1) // 2:
        return False
    blocks, _ = block_masks(adj, comp)
    return all(mask.bit_count() == 3 and e == 3 for mask, e in blocks)


def count_tc_masked(adj: Adjacency, alive: VertexSet, memo: Optional[Dict[VertexSet, bool]] = None) -> int:
    """Triangular-cactus components of G[alive]; `memo` caches per-component verdicts"""
    total = 0
    for comp in component_masks(adj, alive):
        if comp & (comp - 1) == 0:
            total += 1
            continue
        if memo is None:
            total += is_cactus_masked(adj, comp)
            continue
        verdict = memo.get(comp)
        if verdict is None:
            verdict = memo[comp] = is_cactus_masked(adj, comp)
        total += verdict
    return total


# ---------------------- Operations ----------------------
def components(g: Graph) -> ComponentPartition:
    return ComponentPartition(tuple(component_masks(g.adjacency, g.vertex_mask)))


def count_c_iso(g: Graph, s: VertexSet) -> Tuple[int, int]:
    """(c(G - S), iso(G - S))"""
    g.check_vertex_set(s)
    return count_c_iso_masked(g.adjacency, g.vertex_mask & ~s)


def blocks(g: Graph) -> BlockDecomposition:
    found, cut = block_masks(g.adjacency, g.vertex_mask)
    return BlockDecomposition(tuple(found), cut)


def is_triangular_cactus(g: Graph, component: VertexSet) -> bool:
    g.check_vertex_set(component)
    if not component:
        raise PreconditionError("empty vertex set is not a component")
    comps = list(component_masks(g.adjacency, component))
    if len(comps) != 1:
        raise PreconditionError(f"{members(component)} is not connected")
    if neighborhood_masked(g.adjacency, component) & ~component:
        raise PreconditionError(f"{members(component)} is not a maximal connected set")
    return is_cactus_masked(g.adjacency, component)


def count_tc(g: Graph, s: VertexSet) -> int:
    """c_tc(G - S); isolated vertices count as triangular cacti"""
    g.check_vertex_set(s)
    return count_tc_masked(g.adjacency, g.vertex_mask & ~s)


def neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """N_G(S): union of the neighbor sets of S's members (may meet S)"""
    g.check_vertex_set(s)
    return neighborhood_masked(g.adjacency, s)
