"""Order-7 graphs with no {K2, C_{2i+1} | i >= 2}-factor and I' > 4.

Every labeled graph on 7 vertices is visited once, as a 21-bit edge mask
whose bit j is the j-th pair of `combinations(range(7), 2)`. For a
nonadjacent pair u, v the set N(u) | N(v) leaves u and v isolated, so
I' > 4 forces |N(u) | N(v)| > 4 for every such pair; that test runs first
and discards almost everything. Survivors go through the backtracking
search, and only graphs it cannot cover get the criterion cross-check and
the exact I'. Disconnected graphs are kept and flagged as such.
"""
import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import psutil

from .config import DEFAULT_ENUMERATION
from .errors import OracleMismatchError, PreconditionError, ResourceExhaustedError
from .factors import cp_criterion, find_factor
from .graph import Graph, canonical_form, from_canonical
from .parameters import isolated_toughness_variant
from .pool import run_parallel, split_range
from .rational import Rational
from .structure import components

log = logging.getLogger(__name__)

ORDER = 7
SLOTS: Tuple[Tuple[int, int], ...] = tuple(combinations(range(ORDER), 2))
CHUNKS = 64
THRESHOLD = Rational(4)


@dataclass(frozen=True)
class ExceptionClass:
    canonical: str
    iprime: Rational

    @property
    def graph(self) -> Graph:
        return from_canonical(self.canonical)

    @property
    def connected(self) -> bool:
        return len(components(self.graph)) == 1

    def to_dict(self) -> Dict[str, object]:
        return {
            "canonical": self.canonical,
            "iprime": str(self.iprime),
            "connected": self.connected,
            "edges": [list(e) for e in self.graph.edges()],
        }


def adjacency_of(edge_mask: int) -> Tuple[int, ...]:
    adj = [0] * ORDER
    for slot, (u, v) in enumerate(SLOTS):
        if edge_mask >> slot & 1:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return tuple(adj)


def pairs_dominate(adj: Sequence[int], floor: int = 4) -> bool:
    """Every nonadjacent pair has more than `floor` vertices in N(u) | N(v)"""
    for u, v in SLOTS:
        if not adj[u] >> v & 1 and (adj[u] | adj[v]).bit_count() <= floor:
            return False
    return True


def scan_chunk(lo: int, hi: int) -> List[Tuple[str, str]]:
    """(canonical form, I') of every exception among edge masks lo..hi-1, one per class"""
    found: Dict[str, str] = {}
    rejected = set()
    for edge_mask in range(lo, hi):
        adj = adjacency_of(edge_mask)
        if not pairs_dominate(adj):
            continue
        g = Graph(ORDER, adj)
        if find_factor(g, 5) is not None:
            continue
        label = canonical_form(g)
        if label in found or label in rejected:
            continue
        if cp_criterion(g).exists:
            raise OracleMismatchError(f"search finds no factor in {label} but the criterion says one exists")
        iprime = isolated_toughness_variant(g).value
        if iprime > THRESHOLD:
            found[label] = str(iprime)
        else:
            rejected.add(label)
    return sorted(found.items())


def _rss_mib() -> float:
    return psutil.Process().memory_info().rss / (1 << 20)


def enumerate_exceptions(order: int = ORDER, jobs: int = 1) -> List[ExceptionClass]:
    """Isomorphism classes of order-7 graphs with no factor and I' > 4, sorted by canonical label"""
    if order != ORDER:
        raise PreconditionError(f"the exceptions enumeration only supports order {ORDER}, got {order}")
    chunks = split_range(1 << len(SLOTS), CHUNKS)
    progress = {"done": 0}

    def checkpoint(done: int, total: int) -> None:
        progress["done"] = done
        if done % 8 == 0 or done == total:
            log.info("exceptions: chunk %d/%d, rss %.0f MiB", done, total, _rss_mib())

    try:
        results = run_parallel(scan_chunk, chunks, jobs, progress=checkpoint)
    except MemoryError as e:
        raise ResourceExhaustedError("exceptions", f"chunk {progress['done']}/{len(chunks)}") from e

    merged: Dict[str, str] = {}
    for chunk in results:
        merged.update(chunk)
    classes = [ExceptionClass(label, Rational.parse(value)) for label, value in sorted(merged.items())]
    log.info("exceptions: %d classes", len(classes))
    return classes


def revalidate(cls: ExceptionClass) -> Optional[str]:
    """None if the class still has no factor, order 7 and I' > 4; otherwise what failed"""
    g = cls.graph
    if g.order != ORDER:
        return f"order {g.order}"
    if find_factor(g, 5) is not None:
        return "has a factor"
    value = isolated_toughness_variant(g, DEFAULT_ENUMERATION).value
    if value != cls.iprime or not value > THRESHOLD:
        return f"I' = {value}"
    return None
