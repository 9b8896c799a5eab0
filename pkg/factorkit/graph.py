"""Simple undirected graphs on dense 0-based vertex labels.

Adjacency is stored as one integer bitmask per vertex and vertex sets are
plain integer bitmasks (bit v set iff v is a member), so the 2^n subsets of a
graph are exactly the integers 0..2^n-1.
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, List, Optional, Tuple, Union

from .config import CANONICAL_CAP
from .errors import CapExceededError, GraphFormatError, PreconditionError

VertexSet = int


# ---------------------- Vertex sets ----------------------
def vertex_set(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def iter_bits(mask: VertexSet) -> Iterator[int]:
    """Members of a vertex set in ascending order"""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: VertexSet) -> List[int]:
    return list(iter_bits(mask))


def full_mask(order: int) -> VertexSet:
    return (1 << order) - 1


def describe_set(vertices: Optional[List[int]]) -> str:
    return "{" + " ".join(map(str, vertices or [])) + "}"


# ---------------------- Graph ----------------------
@dataclass(frozen=True)
class Graph:
    order: int
    adjacency: Tuple[int, ...]
    # original label of each vertex when produced by induced_delete
    labels: Optional[Tuple[int, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.order < 0 or len(self.adjacency) != self.order:
            raise ValueError(f"adjacency has {len(self.adjacency)} rows for order {self.order}")
        universe = full_mask(self.order)
        for v, row in enumerate(self.adjacency):
            if row & ~universe:
                raise ValueError(f"vertex {v} has a neighbor outside 0..{self.order - 1}")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for w in iter_bits(row):
                if not self.adjacency[w] >> v & 1:
                    raise ValueError(f"edge {v}-{w} is not symmetric")
        if self.labels is not None and len(self.labels) != self.order:
            raise ValueError("labels must name every vertex")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {u}-{v} outside 0..{order - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    @property
    def size(self) -> int:
        """Edge count"""
        return sum(row.bit_count() for row in self.adjacency) // 2

    @property
    def vertex_mask(self) -> VertexSet:
        return full_mask(self.order)

    def neighbors(self, v: int) -> List[int]:
        return members(self.adjacency[v])

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges as (min, max) pairs in ascending order"""
        return [(u, v) for u in range(self.order) for v in iter_bits(self.adjacency[u] >> (u + 1) << (u + 1))]

    def is_complete(self) -> bool:
        universe = self.vertex_mask
        return all(row | (1 << v) == universe for v, row in enumerate(self.adjacency))

    def original_label(self, v: int) -> int:
        return v if self.labels is None else self.labels[v]

    def check_vertex_set(self, s: VertexSet) -> None:
        if s < 0 or s & ~self.vertex_mask:
            raise PreconditionError(f"vertex set {members(s) if s >= 0 else s} outside 0..{self.order - 1}")


# ---------------------- Edge-list codec ----------------------
def parse_edge_list(text: str) -> Graph:
    """Parse the `n <count>` / `<u> <v>` edge-list format, '#' starts a comment"""
    order: Optional[int] = None
    rows: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if order is None:
            if len(tokens) != 2 or tokens[0] != "n":
                raise GraphFormatError(lineno, f"expected header 'n <count>', got {line!r}")
            order = _parse_int(lineno, tokens[1], "vertex count")
            rows = [0] * order
            continue
        if len(tokens) != 2:
            raise GraphFormatError(lineno, f"expected '<u> <v>', got {line!r}")
        u = _parse_int(lineno, tokens[0], "vertex")
        v = _parse_int(lineno, tokens[1], "vertex")
        for w in (u, v):
            if w >= order:
                raise GraphFormatError(lineno, f"vertex {w} out of range for n = {order}")
        if u == v:
            raise GraphFormatError(lineno, f"self-loop at vertex {u}")
        if rows[u] >> v & 1:
            raise GraphFormatError(lineno, f"duplicate edge {u} {v}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if order is None:
        raise GraphFormatError(1, "missing header 'n <count>'")
    return Graph(order, tuple(rows))


def _parse_int(lineno: int, token: str, what: str) -> int:
    if not (token.isascii() and token.isdigit()):
        raise GraphFormatError(lineno, f"{what} must be a non-negative integer, got {token!r}")
    return int(token)


def serialize_edge_list(g: Graph) -> str:
    return f"n {g.order}\n" + "\n".join(f"{u} {v}" for u, v in g.edges())


def read_edge_list(path: Union[str, Path]) -> Graph:
    """parse_edge_list over a UTF-8 file"""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise GraphFormatError(data.count(b"\n", 0, e.start) + 1, f"invalid UTF-8 byte 0x{data[e.start]:02x}") from e
    return parse_edge_list(text)


# ---------------------- Induced subgraphs ----------------------
def induced_delete(g: Graph, s: VertexSet) -> Graph:
    """G - S, relabeled densely; `labels` maps new labels back to g's labels"""
    g.check_vertex_set(s)
    kept = members(g.vertex_mask & ~s)
    position = {v: i for i, v in enumerate(kept)}
    rows = []
    for v in kept:
        rows.append(vertex_set(position[w] for w in iter_bits(g.adjacency[v] & ~s)))
    return Graph(len(kept), tuple(rows), labels=tuple(g.original_label(v) for v in kept))


# ---------------------- Canonical form ----------------------
def canonical_form(g: Graph) -> str:
    """Label shared by exactly the graphs isomorphic to g.

    The label is the lexicographically smallest upper-triangle adjacency
    bitstring over all vertex orderings that list vertices by ascending
    degree. Orderings are built position by position and abandoned as soon
    as their prefix exceeds the best string found so far.
    """
    n = g.order
    if n > CANONICAL_CAP:
        raise CapExceededError("canonical_form", n, CANONICAL_CAP)
    adj = g.adjacency
    # slot i of the ordering may only hold a vertex of degree slot_degree[i]
    slot_degree = sorted(g.degree(v) for v in range(n))
    by_degree = {}
    for v in range(n):
        by_degree.setdefault(g.degree(v), []).append(v)

    best: List[Optional[List[int]]] = [None]
    bits: List[int] = []
    order: List[int] = []

    def extend(used: int) -> None:
        j = len(order)
        if j == n:
            if best[0] is None or bits < best[0]:
                best[0] = list(bits)
            return
        for v in by_degree[slot_degree[j]]:
            if used >> v & 1:
                continue
            row = [adj[order[i]] >> v & 1 for i in range(j)]
            start = len(bits)
            bits.extend(row)
            incumbent = best[0]
            if incumbent is None or bits <= incumbent[: len(bits)]:
                order.append(v)
                extend(used | 1 << v)
                order.pop()
            del bits[start:]

    extend(0)
    return f"{n}:" + "".join(map(str, best[0] or []))


def from_canonical(label: str) -> Graph:
    """Graph whose canonical_form is `label`"""
    head, _, body = label.partition(":")
    n = int(head)
    edges = []
    k = 0
    for j in range(n):
        for i in range(j):
            if body[k] == "1":
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def relabel(g: Graph, permutation: Iterable[int]) -> Graph:
    """Graph with vertex v renamed permutation[v]"""
    perm = list(permutation)
    if sorted(perm) != list(range(g.order)):
        raise PreconditionError("relabel needs a permutation of the vertices")
    return Graph.from_edges(g.order, ((perm[u], perm[v]) for u, v in g.edges()))

