"""{K2, odd cycle}-factors: two criteria and a constructive search.

`cp_criterion` decides the {K2, C_{2i+1} | i >= 2}-factor by looking for a
set S with c_tc(G - S) > |S|; `fractional_tutte` decides the i >= 1 factor by
looking for iso(G - S) > |S|. `find_factor` builds a factor by backtracking.
The two paths share no code beyond the structure kernels, so each one is an
oracle for the other.
"""
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .config import CHUNKS_PER_JOB, CONSTRUCTION_CAP, DEFAULT_ENUMERATION, EnumerationConfig, past_deadline
from .errors import BudgetExceededError, CapExceededError, OracleMismatchError, PreconditionError
from .graph import Graph, VertexSet, full_mask, iter_bits, members, vertex_set
from .parameters import masks_of_size
from .pool import run_parallel, split_range
from .structure import count_iso_masked, count_tc_masked

log = logging.getLogger(__name__)

MIN_CYCLE_CHOICES = (3, 5)


# ---------------------- Certificates ----------------------
@dataclass(frozen=True)
class Edge:
    u: int
    v: int

    @property
    def vertices(self) -> Tuple[int, ...]:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"edge({self.u} {self.v})"


@dataclass(frozen=True)
class Cycle:
    """Odd cycle listed from its smallest vertex, second vertex below the last"""

    sequence: Tuple[int, ...]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return self.sequence

    def __str__(self) -> str:
        return "cycle(" + " ".join(map(str, self.sequence)) + ")"


FactorComponent = Union[Edge, Cycle]


@dataclass(frozen=True)
class FactorDecomposition:
    components: Tuple[FactorComponent, ...]
    min_cycle: int

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.components)

    def to_dict(self) -> Dict[str, object]:
        return {
            "min_cycle": self.min_cycle,
            "edges": [list(c.vertices) for c in self.components if isinstance(c, Edge)],
            "cycles": [list(c.vertices) for c in self.components if isinstance(c, Cycle)],
        }


@dataclass(frozen=True)
class Violation:
    """S with c_tc(G - S) >= |S| + 1"""

    vertex_set: VertexSet
    tc_count: int

    @property
    def vertices(self) -> List[int]:
        return members(self.vertex_set)

    def to_dict(self) -> Dict[str, object]:
        return {"set": self.vertices, "c_tc": self.tc_count}


@dataclass(frozen=True)
class IsolationViolation:
    """S with iso(G - S) >= |S| + 1"""

    vertex_set: VertexSet
    iso_count: int

    @property
    def vertices(self) -> List[int]:
        return members(self.vertex_set)

    def to_dict(self) -> Dict[str, object]:
        return {"set": self.vertices, "iso": self.iso_count}


AnyViolation = Union[Violation, IsolationViolation]


@dataclass(frozen=True)
class FactorDecision:
    exists: bool
    decomposition: Optional[FactorDecomposition] = None
    violation: Optional[AnyViolation] = None

    def __post_init__(self):
        if self.exists and self.violation is not None:
            raise ValueError("an existing factor cannot carry a violation")
        if not self.exists and self.decomposition is not None:
            raise ValueError("a missing factor cannot carry a decomposition")

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"exists": self.exists}
        if self.decomposition is not None:
            out["decomposition"] = self.decomposition.to_dict()
        if self.violation is not None:
            out["violation"] = self.violation.to_dict()
        return out


@dataclass(frozen=True)
class FactorCheck:
    ok: bool
    reason: str = "ok"

    def __bool__(self) -> bool:
        return self.ok


# ---------------------- Criteria ----------------------
def _tc_counter(adj: Sequence[int]):
    memo: Dict[int, bool] = {}
    return lambda alive: count_tc_masked(adj, alive, memo)


def _iso_counter(adj: Sequence[int]):
    return lambda alive: count_iso_masked(adj, alive)


_COUNTERS = {"tc": _tc_counter, "iso": _iso_counter}
_SCAN_NAMES = {"tc": "cp_criterion", "iso": "fractional_tutte"}


def scan_violations(counter: str, adj: Sequence[int], n: int, lo: int, hi: int,
                    deadline: Optional[float] = None) -> Optional[Tuple[int, int, int]]:
    """Smallest (|S|, encoding, count) with count(G - S) > |S| among encodings lo..hi-1"""
    count = _COUNTERS[counter](adj)
    full = full_mask(n)
    best = None
    for s in range(lo, hi):
        if past_deadline(deadline, s - lo):
            raise BudgetExceededError(_SCAN_NAMES[counter])
        k = s.bit_count()
        # the count is at most n - k, so only 2k < n can violate
        if 2 * k >= n or (best is not None and k >= best[0]):
            continue
        found = count(full & ~s)
        if found > k:
            best = (k, s, found)
    return best


def _first_violation(counter: str, g: Graph, config: EnumerationConfig, what: str) -> Optional[Tuple[int, int, int]]:
    if g.order < 1:
        raise PreconditionError(f"{what} needs order >= 1")
    if g.order > config.cap:
        raise CapExceededError(what, g.order, config.cap)
    adj, n = g.adjacency, g.order
    if config.jobs > 1:
        chunks = split_range(1 << n, config.jobs * CHUNKS_PER_JOB)
        tasks = [(counter, adj, n, lo, hi, config.deadline) for lo, hi in chunks]
        found = run_parallel(scan_violations, tasks, config.jobs)
        return min((f for f in found if f is not None), default=None)
    count = _COUNTERS[counter](adj)
    full = full_mask(n)
    visited = 0
    for k in range((n - 1) // 2 + 1):
        for s in masks_of_size(n, k):
            if past_deadline(config.deadline, visited):
                raise BudgetExceededError(what)
            visited += 1
            found = count(full & ~s)
            if found > k:
                return (k, s, found)
    return None


def cp_criterion(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> FactorDecision:
    """{K2, C_{2i+1} | i >= 2}-factor exists iff c_tc(G - S) <= |S| for every S"""
    hit = _first_violation("tc", g, config, "cp_criterion")
    if hit is None:
        return FactorDecision(True)
    _, s, tc = hit
    log.debug("cp_criterion: violation S = %s with c_tc = %d", members(s), tc)
    return FactorDecision(False, violation=Violation(s, tc))


def fractional_tutte(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> FactorDecision:
    """{K2, C_{2i+1} | i >= 1}-factor exists iff iso(G - S) <= |S| for every S"""
    hit = _first_violation("iso", g, config, "fractional_tutte")
    if hit is None:
        return FactorDecision(True)
    _, s, iso = hit
    return FactorDecision(False, violation=IsolationViolation(s, iso))


# ---------------------- Construction ----------------------
def _cycles_through(adj: Sequence[int], anchor: int, uncovered: int, min_cycle: int):
    """Odd cycles through `anchor` inside `uncovered`, each vertex set yielded once"""
    seen_sets = set()
    path = [anchor]

    def walk(v: int, used: int):
        length = len(path)
        if length >= min_cycle and length % 2 == 1 and adj[v] >> anchor & 1 and path[1] < v:
            if used not in seen_sets:
                seen_sets.add(used)
                yield tuple(path), used
        for w in iter_bits(adj[v] & uncovered & ~used):
            path.append(w)
            yield from walk(w, used | 1 << w)
            path.pop()

    for first in iter_bits(adj[anchor] & uncovered):
        path.append(first)
        yield from walk(first, 1 << anchor | 1 << first)
        path.pop()


def find_factor(g: Graph, min_cycle: int, cap: int = CONSTRUCTION_CAP) -> Optional[FactorDecomposition]:
    """Backtracking search for a spanning set of edges and odd cycles of length >= min_cycle.

    The lowest uncovered vertex is either matched to an uncovered neighbor or
    placed on an odd cycle through it; failed uncovered sets are memoized.
    """
    if min_cycle not in MIN_CYCLE_CHOICES:
        raise PreconditionError(f"min_cycle must be one of {MIN_CYCLE_CHOICES}, got {min_cycle}")
    if g.order < 1:
        raise PreconditionError("find_factor needs order >= 1")
    if g.order > cap:
        raise CapExceededError("find_factor", g.order, cap)
    adj = g.adjacency

    @lru_cache(maxsize=None)
    def cover(uncovered: int) -> Optional[Tuple[FactorComponent, ...]]:
        if not uncovered:
            return ()
        for v in iter_bits(uncovered):
            if not adj[v] & uncovered:
                return None
        low = uncovered & -uncovered
        v = low.bit_length() - 1
        for w in iter_bits(adj[v] & uncovered):
            rest = cover(uncovered & ~(low | 1 << w))
            if rest is not None:
                return (Edge(v, w),) + rest
        for sequence, used in _cycles_through(adj, v, uncovered, min_cycle):
            rest = cover(uncovered & ~used)
            if rest is not None:
                return (Cycle(sequence),) + rest
        return None

    found = cover(g.vertex_mask)
    log.debug("find_factor(min_cycle=%d): %d uncovered sets explored", min_cycle, cover.cache_info().currsize)
    if found is None:
        return None
    return FactorDecomposition(found, min_cycle)


def validate_factor(g: Graph, f: FactorDecomposition, min_cycle: int) -> FactorCheck:
    covered = 0
    for comp in f.components:
        verts = comp.vertices
        if any(not 0 <= v < g.order for v in verts):
            return FactorCheck(False, "vertex-out-of-range")
        mask = vertex_set(verts)
        if mask.bit_count() != len(verts) or mask & covered:
            return FactorCheck(False, "overlapping-components")
        covered |= mask
        if isinstance(comp, Edge):
            if not g.has_edge(comp.u, comp.v):
                return FactorCheck(False, "not-an-edge")
            continue
        if len(verts) % 2 == 0:
            return FactorCheck(False, "even-cycle")
        if len(verts) < max(min_cycle, 3):
            return FactorCheck(False, "short-cycle")
        if any(not g.has_edge(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))):
            return FactorCheck(False, "not-a-cycle")
    if covered != g.vertex_mask:
        return FactorCheck(False, "uncovered-vertex")
    return FactorCheck(True)


def decide_factor(g: Graph, min_cycle: int, config: EnumerationConfig = DEFAULT_ENUMERATION,
                  construction_cap: int = CONSTRUCTION_CAP) -> FactorDecision:
    """Criterion decision plus an explicit decomposition when the factor exists"""
    if min_cycle not in MIN_CYCLE_CHOICES:
        raise PreconditionError(f"min_cycle must be one of {MIN_CYCLE_CHOICES}, got {min_cycle}")
    decision = cp_criterion(g, config) if min_cycle == 5 else fractional_tutte(g, config)
    built = find_factor(g, min_cycle, construction_cap)
    if decision.exists != (built is not None):
        raise OracleMismatchError(
            f"criterion says exists={decision.exists} but search {'found' if built else 'found no'} factor"
        )
    if built is None:
        return decision
    check = validate_factor(g, built, min_cycle)
    if not check:
        raise OracleMismatchError(f"constructed factor fails validation: {check.reason}")
    return FactorDecision(True, decomposition=built)
