"""Standard and extremal graph families.

Randomized families draw from numpy's PCG64 bit generator seeded with
GeneratorSpec.seed, one draw per decision, in a fixed documented order, so the same
spec produces the same graph on any platform numpy supports.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np

from .errors import InvalidSpecError
from .graph import Graph

log = logging.getLogger(__name__)

FAMILIES = ("complete", "path", "cycle", "gm", "hm", "random", "cactus")
SEEDED_FAMILIES = ("random", "cactus")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: Optional[int] = None
    m: Optional[int] = None
    p: Optional[Union[Fraction, float]] = None
    blocks: Optional[int] = None
    seed: Optional[int] = None

    def validate(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidSpecError(f"unknown family {self.family!r}, expected one of {', '.join(FAMILIES)}")
        if self.family in ("complete", "path"):
            _require(self.n is not None and self.n >= 1, f"{self.family} needs n >= 1")
        elif self.family == "cycle":
            _require(self.n is not None and self.n >= 3, "cycle needs n >= 3")
        elif self.family in ("gm", "hm"):
            _require(self.m is not None and self.m >= 2, f"{self.family} needs m >= 2")
        elif self.family == "random":
            _require(self.n is not None and self.n >= 0, "random needs n >= 0")
            _require(self.p is not None and 0 <= self.p <= 1, "random needs 0 <= p <= 1")
        elif self.family == "cactus":
            _require(self.blocks is not None and self.blocks >= 1, "cactus needs blocks >= 1")
        if self.family in SEEDED_FAMILIES:
            _require(self.seed is not None and self.seed >= 0, f"{self.family} needs a non-negative seed")

    def describe(self) -> str:
        if self.family in ("gm", "hm"):
            return f"{self.family}({self.m})"
        if self.family == "random":
            return f"random(n={self.n}, p={self.p}, seed={self.seed})"
        if self.family == "cactus":
            return f"cactus(blocks={self.blocks}, seed={self.seed})"
        return f"{self.family}({self.n})"


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise InvalidSpecError(message)


def generate(spec: GeneratorSpec) -> Graph:
    spec.validate()
    builder = {
        "complete": lambda: complete(spec.n),
        "path": lambda: path(spec.n),
        "cycle": lambda: cycle(spec.n),
        "gm": lambda: gm(spec.m),
        "hm": lambda: hm(spec.m),
        "random": lambda: random_graph(spec.n, spec.p, spec.seed),
        "cactus": lambda: random_cactus(spec.blocks, spec.seed),
    }[spec.family]
    g = builder()
    log.debug("generated %s: order %d, size %d", spec.describe(), g.order, g.size)
    return g


# ---------------------- Deterministic families ----------------------
def complete(n: int) -> Graph:
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(n - 1)] + [(0, n - 1)])


def _clique_edges(vertices: List[int]) -> List[Tuple[int, int]]:
    return [(u, v) for i, u in enumerate(vertices) for v in vertices[i + 1:]]


def gm(m: int) -> Graph:
    """K_{m-1} on vertices 0..m-2 joined to m independent vertices m-1..2m-2"""
    k = list(range(m - 1))
    outer = range(m - 1, 2 * m - 1)
    edges = _clique_edges(k) + [(u, x) for x in outer for u in k]
    return Graph.from_edges(2 * m - 1, edges)


def hm(m: int) -> Graph:
    """K_{m-1} on vertices 0..m-2 joined to m disjoint triangles.

    Triangle j occupies vertices m-1+3j .. m+1+3j.
    """
    k = list(range(m - 1))
    edges = _clique_edges(k)
    for j in range(m):
        tri = [m - 1 + 3 * j + i for i in range(3)]
        edges += _clique_edges(tri)
        edges += [(u, x) for x in tri for u in k]
    return Graph.from_edges(4 * m - 1, edges)


def bowtie() -> Graph:
    """Two triangles {0,1,2} and {2,3,4} sharing vertex 2"""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def disjoint_union(*parts: Graph) -> Graph:
    """Parts laid out left to right, each shifted past the ones before it"""
    edges: List[Tuple[int, int]] = []
    offset = 0
    for part in parts:
        edges += [(u + offset, v + offset) for u, v in part.edges()]
        offset += part.order
    return Graph.from_edges(offset, edges)


# ---------------------- Seeded families ----------------------
def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_graph(n: int, p: Union[Fraction, float], seed: int) -> Graph:
    """G(n, p): pair (u, v) scanned as (0,1),(0,2),...,(n-2,n-1), one uniform draw each"""
    draws = rng_for(seed).random(n * (n - 1) // 2)
    threshold = float(p)
    edges = []
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            if draws[k] < threshold:
                edges.append((u, v))
            k += 1
    return Graph.from_edges(n, edges)


def random_cactus(blocks: int, seed: int) -> Graph:
    """Connected triangular cactus: each new triangle hangs off a uniformly chosen existing vertex"""
    rng = rng_for(seed)
    edges = [(0, 1), (0, 2), (1, 2)]
    order = 3
    for _ in range(blocks - 1):
        anchor = int(rng.integers(0, order))
        a, b = order, order + 1
        edges += [(anchor, a), (anchor, b), (a, b)]
        order += 2
    return Graph.from_edges(order, edges)
