"""Graph corpora and the per-graph profile every corpus check reads.

A profile holds the four exact parameters, both criterion decisions, both
constructed factors and the self-checks run on them. Profiles are computed
in worker processes and merged by position, so a corpus evaluates to the
same list of profiles at any worker count.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import CANONICAL_CAP, CONSTRUCTION_CAP, DEFAULT_SEED, ENUMERATION_CAP, EnumerationConfig
from .errors import BudgetExceededError, CapExceededError, InvalidSpecError
from .factors import cp_criterion, find_factor, fractional_tutte, validate_factor
from .generators import GeneratorSpec, generate
from .graph import Graph, canonical_form, from_canonical
from .parameters import compute_all, isolated_toughness_variant, ratio_at
from .pool import run_parallel
from .rational import Rational
from .structure import count_c_iso, count_c_iso_masked, count_tc

log = logging.getLogger(__name__)

CORPUS_FAMILIES = ("random", "complete", "path", "cycle", "cactus")
# graphs handed to one worker task
BATCH_SIZE = 64
# unpruned re-enumeration and edge-monotonicity run up to this order
ORACLE_MAX_ORDER = 7


@dataclass(frozen=True)
class CorpusSpec:
    sizes: Tuple[int, ...] = (5, 6, 7, 8, 9)
    count: int = 2000
    probabilities: Tuple[float, ...] = (0.3, 0.4, 0.5, 0.6, 0.7)
    seed: int = DEFAULT_SEED
    family: str = "random"

    def validate(self) -> None:
        if self.family not in CORPUS_FAMILIES:
            raise InvalidSpecError(f"corpus family must be one of {', '.join(CORPUS_FAMILIES)}")
        if not self.sizes or min(self.sizes) < 1:
            raise InvalidSpecError("corpus sizes must be positive")
        if self.count < 0:
            raise InvalidSpecError("corpus count must be non-negative")
        if self.family == "random" and (not self.probabilities or any(not 0 <= p <= 1 for p in self.probabilities)):
            raise InvalidSpecError("edge probabilities must lie in [0, 1]")

    def generator_specs(self) -> List[GeneratorSpec]:
        """Deterministic list of graphs: `count` per size for seeded families, one per size otherwise"""
        self.validate()
        specs = []
        for n in self.sizes:
            if self.family == "random":
                for i in range(self.count):
                    p = self.probabilities[i % len(self.probabilities)]
                    specs.append(GeneratorSpec("random", n=n, p=p, seed=derive_seed(self.seed, n, i)))
            elif self.family == "cactus":
                for i in range(self.count):
                    specs.append(GeneratorSpec("cactus", blocks=n, seed=derive_seed(self.seed, n, i)))
            else:
                specs.append(GeneratorSpec(self.family, n=n))
        return specs


def derive_seed(seed: int, n: int, index: int) -> int:
    """Per-graph seed from numpy's SeedSequence, keyed by (order, index)"""
    state = np.random.SeedSequence(seed, spawn_key=(n, index)).generate_state(1, dtype=np.uint64)
    return int(state[0])


# ---------------------- Exhaustive classes ----------------------
def connected_graphs(max_order: int) -> Dict[int, List[Graph]]:
    """One representative per isomorphism class of connected graphs, by order.

    Every connected graph on n vertices has a vertex whose removal leaves it
    connected (a leaf of a spanning tree), so attaching a new vertex to every
    nonempty subset of each order-(n-1) class reaches all order-n classes.
    """
    if max_order > CANONICAL_CAP:
        raise CapExceededError("connected_graphs", max_order, CANONICAL_CAP)
    levels: Dict[int, List[Graph]] = {1: [Graph.empty(1)]}
    for n in range(2, max_order + 1):
        seen: Dict[str, Graph] = {}
        newcomer = 1 << (n - 1)
        for h in levels[n - 1]:
            for attach in range(1, newcomer):
                rows = [row | newcomer if attach >> v & 1 else row for v, row in enumerate(h.adjacency)]
                rows.append(attach)
                label = canonical_form(Graph(n, tuple(rows)))
                if label not in seen:
                    seen[label] = from_canonical(label)
        levels[n] = [seen[label] for label in sorted(seen)]
        log.info("connected graphs on %d vertices: %d classes", n, len(levels[n]))
    return {n: graphs for n, graphs in levels.items() if n <= max_order}


# ---------------------- Profiles ----------------------
@dataclass(frozen=True)
class GraphProfile:
    label: str
    order: int
    size: int
    complete: bool
    p: Optional[float] = None
    # iso(G)
    isolated: int = 0
    t: Optional[Rational] = None
    i: Optional[Rational] = None
    iprime: Optional[Rational] = None
    bind: Optional[Rational] = None
    cp_exists: Optional[bool] = None
    cp_violation: Optional[List[int]] = None
    ft_exists: Optional[bool] = None
    factor5: Optional[bool] = None
    factor3: Optional[bool] = None
    canonical: Optional[str] = None
    problems: Tuple[str, ...] = field(default_factory=tuple)
    skipped: Optional[str] = None

    @property
    def has_parameters(self) -> bool:
        return self.t is not None


def profile_graph(g: Graph, label: str, p: Optional[float] = None, cap: int = ENUMERATION_CAP,
                  construction_cap: int = CONSTRUCTION_CAP) -> GraphProfile:
    """Everything the corpus checks need about one graph, with self-checks recorded in `problems`"""
    config = EnumerationConfig(cap=cap, jobs=1)
    problems: List[str] = []
    values: Dict[str, Optional[Rational]] = {"t": None, "i": None, "iprime": None, "bind": None}
    try:
        if g.order >= 2:
            results = compute_all(g, config)
            for param, result in results.items():
                values[param.value] = result.value
                if not result.value.is_infinite and ratio_at(g, param, result.witness) != result.value:
                    problems.append(f"witness-unsound:{param.value}")
            if g.order <= ORACLE_MAX_ORDER:
                unpruned = compute_all(g, EnumerationConfig(cap=cap, jobs=1, prune=False))
                for param, result in unpruned.items():
                    if result != results[param]:
                        problems.append(f"pruning-changed:{param.value}")
                if not _edge_addition_monotone(g):
                    problems.append("edge-addition-increased-components")
        cp = cp_criterion(g, config)
        ft = fractional_tutte(g, config)
    except CapExceededError as e:
        return GraphProfile(label, g.order, g.size, g.is_complete(), p=p, skipped=str(e))

    if cp.violation is not None:
        v = cp.violation
        if count_tc(g, v.vertex_set) != v.tc_count or v.tc_count < v.vertex_set.bit_count() + 1:
            problems.append("cp-violation-unsound")
    if ft.violation is not None:
        v = ft.violation
        _, iso = count_c_iso(g, v.vertex_set)
        if iso != v.iso_count or iso < v.vertex_set.bit_count() + 1:
            problems.append("tutte-violation-unsound")

    factor5 = factor3 = None
    if g.order <= construction_cap:
        built5, built3 = find_factor(g, 5, construction_cap), find_factor(g, 3, construction_cap)
        factor5, factor3 = built5 is not None, built3 is not None
        for built, min_cycle in ((built5, 5), (built3, 3)):
            if built is not None and not validate_factor(g, built, min_cycle):
                problems.append(f"factor{min_cycle}-invalid:{validate_factor(g, built, min_cycle).reason}")

    return GraphProfile(
        label=label,
        order=g.order,
        size=g.size,
        complete=g.is_complete(),
        p=p,
        isolated=count_c_iso(g, 0)[1],
        t=values["t"],
        i=values["i"],
        iprime=values["iprime"],
        bind=values["bind"],
        cp_exists=cp.exists,
        cp_violation=None if cp.violation is None else cp.violation.vertices,
        ft_exists=ft.exists,
        factor5=factor5,
        factor3=factor3,
        canonical=canonical_form(g) if g.order <= CANONICAL_CAP else None,
        problems=tuple(problems),
    )


def _edge_addition_monotone(g: Graph) -> bool:
    """c(G + e - S) <= c(G - S) for every S, e the first non-edge"""
    missing = next(((u, v) for u in range(g.order) for v in range(u + 1, g.order) if not g.has_edge(u, v)), None)
    if missing is None:
        return True
    plus = Graph.from_edges(g.order, g.edges() + [missing])
    for s in range(1 << g.order):
        alive = g.vertex_mask & ~s
        if count_c_iso_masked(plus.adjacency, alive)[0] > count_c_iso_masked(g.adjacency, alive)[0]:
            return False
    return True


def profile_batch(items: Sequence[Tuple[Graph, str, Optional[float]]], cap: int) -> List[GraphProfile]:
    return [profile_graph(g, label, p, cap=cap) for g, label, p in items]


def profile_many(items: Sequence[Tuple[Graph, str, Optional[float]]], cap: int, jobs: int) -> List[GraphProfile]:
    batches = [tuple(items[i:i + BATCH_SIZE]) for i in range(0, len(items), BATCH_SIZE)]
    profiles: List[GraphProfile] = []
    for batch_profiles in run_parallel(profile_batch, [(batch, cap) for batch in batches], jobs):
        profiles.extend(batch_profiles)
    log.info("profiled %d graphs", len(profiles))
    return profiles


def corpus_items(spec: CorpusSpec) -> List[Tuple[Graph, str, Optional[float]]]:
    return [(generate(gs), gs.describe(), gs.p) for gs in spec.generator_specs()]


def exhaustive_items(max_order: int, min_order: int = 2) -> List[Tuple[Graph, str, Optional[float]]]:
    classes = connected_graphs(max_order)
    return [(g, f"connected:{canonical_form(g)}", None)
            for n in range(min_order, max_order + 1) for g in classes[n]]


# ---------------------- Large graphs ----------------------
@dataclass(frozen=True)
class LargeProfile:
    label: str
    order: int
    iprime: Optional[Rational] = None
    cp_exists: Optional[bool] = None
    skipped: Optional[str] = None
    isolated: int = 0


def profile_large(g: Graph, label: str, cap: int, budget: float) -> LargeProfile:
    """I' and, only when I' > 7/2, the factor decision, both within one time budget"""
    config = EnumerationConfig(cap=cap, jobs=1, deadline=time.monotonic() + budget)
    isolated = count_c_iso(g, 0)[1]
    try:
        iprime = isolated_toughness_variant(g, config).value
    except CapExceededError as e:
        return LargeProfile(label, g.order, skipped=str(e))
    except BudgetExceededError:
        return LargeProfile(label, g.order, skipped=f"budget {budget:.0f}s spent on I'")
    if iprime <= Rational(7, 2):
        return LargeProfile(label, g.order, iprime=iprime, isolated=isolated)
    try:
        exists = cp_criterion(g, config).exists
    except BudgetExceededError:
        return LargeProfile(label, g.order, iprime=iprime, skipped=f"budget {budget:.0f}s spent on the factor criterion")
    return LargeProfile(label, g.order, iprime=iprime, cp_exists=exists, isolated=isolated)


def profile_large_many(spec: CorpusSpec, cap: int, budget: float, jobs: int) -> List[LargeProfile]:
    items = [(generate(gs), gs.describe(), cap, budget) for gs in spec.generator_specs()]
    return run_parallel(profile_large, items, jobs)

