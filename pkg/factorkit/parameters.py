"""Exact toughness, isolated toughness (and its variant) and binding number.

Every parameter is a minimum of a ratio over vertex subsets and is computed
by exhaustive enumeration. The witness is the minimizing subset with the
smallest cardinality, then the smallest integer encoding.

Sequential runs visit subsets by ascending cardinality. For t, I and I' the
ratio at any |S| = k is at least k/(n-k) (k/(n-k-1) for I'), which only
grows with k, so the search stops at the first cardinality whose bound
strictly exceeds the best ratio. Parallel runs split 0..2^n-1 into ranges
and keep a per-range best; the reduction uses the same tie-break.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .config import CHUNKS_PER_JOB, DEFAULT_ENUMERATION, EnumerationConfig, past_deadline
from .errors import BudgetExceededError, CapExceededError, PreconditionError
from .graph import Graph, VertexSet, full_mask, members
from .pool import run_parallel, split_range
from .rational import INFINITY, Rational
from .structure import count_c_iso_masked, count_iso_masked, neighborhood_masked

log = logging.getLogger(__name__)

# (numerator, denominator, |S|, encoding)
Candidate = Tuple[int, int, int, int]


class Parameter(str, Enum):
    TOUGHNESS = "t"
    ISOLATED_TOUGHNESS = "i"
    ISOLATED_TOUGHNESS_VARIANT = "iprime"
    BINDING_NUMBER = "bind"

    @property
    def long_name(self) -> str:
        return {
            Parameter.TOUGHNESS: "toughness",
            Parameter.ISOLATED_TOUGHNESS: "isolated_toughness",
            Parameter.ISOLATED_TOUGHNESS_VARIANT: "isolated_toughness_variant",
            Parameter.BINDING_NUMBER: "binding_number",
        }[self]


@dataclass(frozen=True)
class ParameterResult:
    parameter: Parameter
    value: Rational
    witness: VertexSet

    @property
    def witness_vertices(self) -> List[int]:
        return members(self.witness)

    def to_dict(self) -> Dict[str, object]:
        return {
            "parameter": self.parameter.long_name,
            "value": str(self.value),
            "witness": self.witness_vertices,
        }


# ---------------------- Ratio kernels ----------------------
def _ratio_toughness(adj, full, s, k):
    c, _ = count_c_iso_masked(adj, full & ~s)
    return (k, c) if c >= 2 else None


def _ratio_isolated(adj, full, s, k):
    iso = count_iso_masked(adj, full & ~s)
    return (k, iso) if iso >= 2 else None


def _ratio_isolated_variant(adj, full, s, k):
    iso = count_iso_masked(adj, full & ~s)
    return (k, iso - 1) if iso >= 2 else None


def _ratio_binding(adj, full, s, k):
    if not s:
        return None
    nb = neighborhood_masked(adj, s)
    return (nb.bit_count(), k) if nb != full else None


_RATIOS: Dict[str, Callable] = {
    Parameter.TOUGHNESS.value: _ratio_toughness,
    Parameter.ISOLATED_TOUGHNESS.value: _ratio_isolated,
    Parameter.ISOLATED_TOUGHNESS_VARIANT.value: _ratio_isolated_variant,
    Parameter.BINDING_NUMBER.value: _ratio_binding,
}

# largest possible denominator at |S| = k, or None when no bound applies
_DENOMINATOR_BOUND: Dict[str, Callable[[int, int], Optional[int]]] = {
    Parameter.TOUGHNESS.value: lambda n, k: n - k,
    Parameter.ISOLATED_TOUGHNESS.value: lambda n, k: n - k,
    Parameter.ISOLATED_TOUGHNESS_VARIANT.value: lambda n, k: n - k - 1,
    Parameter.BINDING_NUMBER.value: lambda n, k: None,
}


def _precedes(a: Candidate, b: Candidate) -> bool:
    left, right = a[0] * b[1], b[0] * a[1]
    if left != right:
        return left < right
    return (a[2], a[3]) < (b[2], b[3])


def _bound_exceeds(kind: str, n: int, k: int, best: Candidate) -> bool:
    den = _DENOMINATOR_BOUND[kind](n, k)
    if den is None:
        return False
    if den < 1:
        return True
    return k * best[1] > best[0] * den


def masks_of_size(n: int, k: int) -> Iterator[int]:
    """k-subsets of 0..n-1 as ascending integers (Gosper's hack)"""
    if k == 0:
        yield 0
        return
    if k > n:
        return
    s = (1 << k) - 1
    limit = 1 << n
    while s < limit:
        yield s
        low = s & -s
        ripple = s + low
        s = (((ripple ^ s) >> 2) // low) | ripple


def search_by_cardinality(kind: str, adj: Sequence[int], n: int, prune: bool = True,
                          deadline: Optional[float] = None) -> Optional[Candidate]:
    ratio = _RATIOS[kind]
    full = full_mask(n)
    best: Optional[Candidate] = None
    visited = 0
    for k in range(n + 1):
        if prune and best is not None and _bound_exceeds(kind, n, k, best):
            log.debug("%s: bound exceeds best %d/%d at |S| = %d, stopping", kind, best[0], best[1], k)
            break
        for s in masks_of_size(n, k):
            if past_deadline(deadline, visited):
                raise BudgetExceededError(Parameter(kind).long_name)
            visited += 1
            r = ratio(adj, full, s, k)
            if r is not None and (best is None or r[0] * best[1] < best[0] * r[1]):
                best = (r[0], r[1], k, s)
    log.debug("%s: visited %d of %d subsets", kind, visited, 1 << n)
    return best


def search_range(kind: str, adj: Sequence[int], n: int, lo: int, hi: int, prune: bool = True,
                 deadline: Optional[float] = None) -> Optional[Candidate]:
    """Best candidate among encodings lo..hi-1"""
    ratio = _RATIOS[kind]
    full = full_mask(n)
    best: Optional[Candidate] = None
    for s in range(lo, hi):
        if past_deadline(deadline, s - lo):
            raise BudgetExceededError(Parameter(kind).long_name)
        k = s.bit_count()
        if prune and best is not None and _bound_exceeds(kind, n, k, best):
            continue
        r = ratio(adj, full, s, k)
        if r is None:
            continue
        cand = (r[0], r[1], k, s)
        if best is None or _precedes(cand, best):
            best = cand
    return best


def reduce_candidates(found: Sequence[Optional[Candidate]]) -> Optional[Candidate]:
    best: Optional[Candidate] = None
    for cand in found:
        if cand is not None and (best is None or _precedes(cand, best)):
            best = cand
    return best


# ---------------------- Driver ----------------------
def _check_order(g: Graph, config: EnumerationConfig, what: str) -> None:
    if g.order < 2:
        raise PreconditionError(f"{what} needs order >= 2, got {g.order}")
    if g.order > config.cap:
        raise CapExceededError(what, g.order, config.cap)


def _minimize(g: Graph, parameter: Parameter, config: EnumerationConfig) -> ParameterResult:
    _check_order(g, config, parameter.long_name)
    if parameter is not Parameter.BINDING_NUMBER and g.is_complete():
        return ParameterResult(parameter, INFINITY, 0)

    kind, adj, n = parameter.value, g.adjacency, g.order
    if config.jobs > 1:
        chunks = split_range(1 << n, config.jobs * CHUNKS_PER_JOB)
        tasks = [(kind, adj, n, lo, hi, config.prune, config.deadline) for lo, hi in chunks]
        found = run_parallel(search_range, tasks, config.jobs)
        best = reduce_candidates(found)
    elif config.prune:
        best = search_by_cardinality(kind, adj, n, deadline=config.deadline)
    else:
        best = search_range(kind, adj, n, 0, 1 << n, prune=False, deadline=config.deadline)

    if best is None:
        raise PreconditionError(f"{parameter.long_name}: no vertex set satisfies the side condition")
    num, den, _, witness = best
    return ParameterResult(parameter, Rational(num, den), witness)


def toughness(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> ParameterResult:
    """t(G) = min |S| / c(G-S) over S with c(G-S) >= 2; +inf for complete graphs"""
    return _minimize(g, Parameter.TOUGHNESS, config)


def isolated_toughness(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> ParameterResult:
    """I(G) = min |S| / iso(G-S) over S with iso(G-S) >= 2; +inf for complete graphs"""
    return _minimize(g, Parameter.ISOLATED_TOUGHNESS, config)


def isolated_toughness_variant(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> ParameterResult:
    """I'(G) = min |S| / (iso(G-S) - 1) over S with iso(G-S) >= 2; +inf for complete graphs"""
    return _minimize(g, Parameter.ISOLATED_TOUGHNESS_VARIANT, config)


def binding_number(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> ParameterResult:
    """bind(G) = min |N(S)| / |S| over nonempty S with N(S) != V(G).

    There is no infinite convention: a singleton never dominates itself, so
    some S is always feasible, and bind(K_n) = n - 1.
    """
    return _minimize(g, Parameter.BINDING_NUMBER, config)


_COMPUTE = {
    Parameter.TOUGHNESS: toughness,
    Parameter.ISOLATED_TOUGHNESS: isolated_toughness,
    Parameter.ISOLATED_TOUGHNESS_VARIANT: isolated_toughness_variant,
    Parameter.BINDING_NUMBER: binding_number,
}


def compute(g: Graph, parameter: Parameter, config: EnumerationConfig = DEFAULT_ENUMERATION) -> ParameterResult:
    return _COMPUTE[Parameter(parameter)](g, config)


def compute_all(g: Graph, config: EnumerationConfig = DEFAULT_ENUMERATION) -> Dict[Parameter, ParameterResult]:
    return {p: fn(g, config) for p, fn in _COMPUTE.items()}


def ratio_at(g: Graph, parameter: Parameter, s: VertexSet) -> Optional[Rational]:
    """The parameter's defining ratio at S, or None if S violates its side condition"""
    g.check_vertex_set(s)
    r = _RATIOS[Parameter(parameter).value](g.adjacency, g.vertex_mask, s, s.bit_count())
    return None if r is None else Rational(*r)
