"""Claim verification suite and its report.

Every check carries a name, the claim it tests, the expected and actual
renderings, a witness and its elapsed time. A check passes exactly when the
actual rendering equals the expected one; checks that hit a cap, run out of
time or run out of memory are marked skipped. The JSON report sorts checks by name and
leaves elapsed times out unless asked, so a fixed configuration always
produces the same bytes.
"""
import json
import logging
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .config import ENUMERATION_CAP, GRAPH_TIME_BUDGET, EnumerationConfig
from .corpus import (
    CorpusSpec,
    GraphProfile,
    LargeProfile,
    corpus_items,
    exhaustive_items,
    profile_large_many,
    profile_many,
)
from .errors import BudgetExceededError, CapExceededError, ResourceExhaustedError
from .exception_graphs import enumerate_exceptions, revalidate
from .factors import cp_criterion
from .generators import GeneratorSpec, bowtie, complete, disjoint_union, generate, gm, hm, path
from .graph import canonical_form, describe_set
from .parameters import binding_number, isolated_toughness, isolated_toughness_variant, toughness
from .rational import Rational

log = logging.getLogger(__name__)


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class CheckResult:
    name: str
    claim: str
    status: Status
    expected: str
    actual: str
    witness: str = ""
    elapsed: float = 0.0

    def to_dict(self, timings: bool = False) -> Dict[str, object]:
        out = {
            "name": self.name,
            "claim": self.claim,
            "status": self.status.value,
            "expected": self.expected,
            "actual": self.actual,
            "witness": self.witness,
        }
        if timings:
            out["elapsed"] = round(self.elapsed, 3)
        return out


@dataclass
class CheckReport:
    checks: List[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)

    def sorted_checks(self) -> List[CheckResult]:
        return sorted(self.checks, key=lambda c: c.name)

    def counts(self) -> Dict[str, int]:
        out = {s.value: 0 for s in Status}
        for c in self.checks:
            out[c.status.value] += 1
        return out

    @property
    def all_passed(self) -> bool:
        return all(c.status is Status.PASS for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_passed else 1

    def to_json(self, timings: bool = False) -> str:
        body = {
            "checks": [c.to_dict(timings) for c in self.sorted_checks()],
            "summary": self.counts(),
        }
        return json.dumps(body, sort_keys=True, indent=2) + "\n"

    def render_text(self) -> str:
        lines = ["=" * 60, "CLAIM VERIFICATION", "=" * 60]
        for c in self.sorted_checks():
            lines.append(f"[{c.status.value.upper():7}] {c.name} ({c.elapsed:.2f}s)")
            lines.append(f"          claim:    {c.claim}")
            lines.append(f"          expected: {c.expected}")
            lines.append(f"          actual:   {c.actual}")
            if c.witness:
                lines.append(f"          witness:  {c.witness}")
        counts = self.counts()
        lines.append("=" * 60)
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Outcome:
    expected: str
    actual: str
    witness: str = ""
    skipped: bool = False


def _large_default() -> CorpusSpec:
    return CorpusSpec(sizes=(16, 17, 18), count=2, probabilities=(0.7, 0.8, 0.9))


@dataclass(frozen=True)
class VerifyConfig:
    m_max: int = 5
    corpus: CorpusSpec = field(default_factory=CorpusSpec)
    exhaustive_max_order: int = 7
    large_corpus: CorpusSpec = field(default_factory=_large_default)
    graph_budget: float = GRAPH_TIME_BUDGET
    cap: int = ENUMERATION_CAP
    jobs: int = 1
    exceptions: bool = True
    cactus_blocks: Tuple[int, ...] = (2, 3, 4, 5, 6)
    cactus_seeds: int = 5
    even_paths: Tuple[int, ...] = (4, 6, 8, 10, 12)


def _render_violation(hit) -> str:
    if hit is None:
        return "factor exists"
    return f"S={describe_set(hit.vertices)} c_tc={hit.tc_count}"


class ClaimVerifier:
    """Runs every check against one VerifyConfig and collects a CheckReport"""

    def __init__(self, config: VerifyConfig):
        self.config = config
        self.enumeration = EnumerationConfig(cap=config.cap, jobs=config.jobs)
        self.report = CheckReport()
        self.exception_labels: Optional[Set[str]] = None

    def run(self) -> CheckReport:
        self.check_toughness_family()
        self.check_isolated_family()
        self.check_binding_family()
        self.check_cacti()
        self.check_even_paths()
        if self.config.exceptions:
            self.check_exceptions()
        self.check_corpus("exhaustive", exhaustive_items(self.config.exhaustive_max_order))
        self.check_corpus("random", corpus_items(self.config.corpus))
        self.check_large_corpus()
        counts = self.report.counts()
        log.info("verification: %d passed, %d failed, %d skipped", counts["pass"], counts["fail"], counts["skipped"])
        return self.report

    # ---------------------- Plumbing ----------------------
    def _record(self, name: str, claim: str, compute: Callable[[], Outcome]) -> Optional[Outcome]:
        started = time.monotonic()
        try:
            outcome = compute()
        except (CapExceededError, BudgetExceededError, ResourceExhaustedError, MemoryError) as e:
            outcome = Outcome(expected="-", actual="skipped", witness=str(e) or type(e).__name__, skipped=True)
        elapsed = time.monotonic() - started
        if outcome.skipped:
            status = Status.SKIPPED
        else:
            status = Status.PASS if outcome.expected == outcome.actual else Status.FAIL
        self.report.add(CheckResult(name, claim, status, outcome.expected, outcome.actual, outcome.witness, elapsed))
        if status is Status.PASS:
            log.info("%s: pass", name)
        else:
            log.warning("%s: %s (expected %s, got %s)", name, status.value, outcome.expected, outcome.actual)
        return None if outcome.skipped else outcome

    def _exact(self, name: str, claim: str, expected: Rational, compute) -> Optional[Rational]:
        got: Dict[str, Rational] = {}

        def run() -> Outcome:
            result = compute()
            got["value"] = result.value
            return Outcome(str(expected), str(result.value), describe_set(result.witness_vertices))

        self._record(name, claim, run)
        return got.get("value")

    def _increasing_below(self, name: str, claim: str, values: Sequence[Rational], limit: Rational) -> None:
        def run() -> Outcome:
            expected = f"strictly increasing, below {limit}"
            rendered = ", ".join(map(str, values))
            if len(values) < 2:
                return Outcome(expected, "too few values", rendered, skipped=True)
            increasing = all(a < b for a, b in zip(values, values[1:]))
            below = all(v < limit for v in values)
            actual = expected if increasing and below else ("not increasing" if not increasing else f"reaches {limit}")
            return Outcome(expected, actual, rendered)

        self._record(name, claim, run)

    def _no_factor(self, name: str, claim: str, g, expected_set: List[int], expected_count: int) -> None:
        def run() -> Outcome:
            decision = cp_criterion(g, self.enumeration)
            return Outcome(f"S={describe_set(expected_set)} c_tc={expected_count}", _render_violation(decision.violation))

        self._record(name, claim, run)

    # ---------------------- Extremal families ----------------------
    def check_toughness_family(self) -> None:
        values = []
        for m in range(3, self.config.m_max + 2):
            got = self._exact(f"gm.toughness.m{m}", "t(gm(m)) = (m-1)/m", Rational(m - 1, m),
                              lambda m=m: toughness(gm(m), self.enumeration))
            if got is not None:
                values.append(got)
            self._no_factor(f"gm.no_factor.m{m}", "c_tc(gm(m) - V(K)) = m > |V(K)|", gm(m),
                            list(range(m - 1)), m)
        self._increasing_below("gm.toughness.limit", "t(gm(m)) increases toward 1", values, Rational(1))

    def check_isolated_family(self) -> None:
        values = []
        for m in range(2, self.config.m_max + 1):
            if m >= 3:
                got = self._exact(f"hm.isolated_toughness.m{m}", "I(hm(m)) = (3m-1)/m", Rational(3 * m - 1, m),
                                  lambda m=m: isolated_toughness(hm(m), self.enumeration))
                if got is not None:
                    values.append(got)
            self._exact(f"hm.isolated_toughness_variant.m{m}", "I'(hm(m)) = (3m-1)/(m-1)",
                        Rational(3 * m - 1, m - 1), lambda m=m: isolated_toughness_variant(hm(m), self.enumeration))
            self._no_factor(f"hm.no_factor.m{m}", "c_tc(hm(m) - V(K)) = m > |V(K)|", hm(m),
                            list(range(m - 1)), m)
        self._increasing_below("hm.isolated_toughness.limit", "I(hm(m)) increases toward 3", values, Rational(3))

    def check_binding_family(self) -> None:
        for m in range(3, self.config.m_max + 1):
            self._exact(f"hm.binding_number.m{m}", "bind(hm(m)) = 4/3", Rational(4, 3),
                        lambda m=m: binding_number(hm(m), self.enumeration))
        self._exact("bowtie.binding_number", "bind(bowtie) = 4/3", Rational(4, 3),
                    lambda: binding_number(bowtie(), self.enumeration))
        self._no_factor("bowtie.no_factor", "the bowtie is a triangular cactus, so c_tc(bowtie) = 1 > 0",
                        bowtie(), [], 1)

    def check_cacti(self) -> None:
        for b in self.config.cactus_blocks:
            graphs = [(seed, generate(GeneratorSpec("cactus", blocks=b, seed=seed)))
                      for seed in range(self.config.cactus_seeds)]

            def bounded(compute, limit, graphs=graphs) -> Outcome:
                expected = f"all <= {limit}"
                for seed, g in graphs:
                    value = compute(g, self.enumeration).value
                    if value > limit:
                        return Outcome(expected, f"{value} at seed {seed}", f"cactus(blocks={b}, seed={seed})")
                return Outcome(expected, expected, f"{len(graphs)} cacti of order {2 * b + 1}")

            def no_factor(graphs=graphs) -> Outcome:
                for seed, g in graphs:
                    if cp_criterion(g, self.enumeration).exists:
                        return Outcome("no factor", f"factor at seed {seed}")
                return Outcome("no factor", "no factor", f"{len(graphs)} cacti of order {2 * b + 1}")

            self._record(f"cactus.toughness.b{b}", "a triangular cactus of order >= 5 has a cut vertex, so t <= 1/2",
                         lambda: bounded(toughness, Rational(1, 2)))
            self._record(f"cactus.isolated_toughness_variant.b{b}", "a triangular cactus of order >= 5 has I' <= 3",
                         lambda: bounded(isolated_toughness_variant, Rational(3)))
            self._record(f"cactus.no_factor.b{b}", "a triangular cactus has no factor (c_tc(G - {}) = 1)", no_factor)

    def check_even_paths(self) -> None:
        for n in self.config.even_paths:
            def run(n=n) -> Outcome:
                g = path(n)
                exists = cp_criterion(g, self.enumeration).exists
                t = toughness(g, self.enumeration).value
                return Outcome("factor, t=1/2", f"{'factor' if exists else 'no factor'}, t={t}")

            self._record(f"path.factor_below_toughness_1.n{n:02d}",
                         "the sufficient conditions are not necessary: even paths have a factor with t < 1", run)

    # ---------------------- Exceptions ----------------------
    def check_exceptions(self) -> None:
        found: Dict[str, list] = {}

        def count() -> Outcome:
            classes = enumerate_exceptions(jobs=self.config.jobs)
            found["classes"] = classes
            self.exception_labels = {c.canonical for c in classes}
            connected = [c for c in classes if c.connected]
            rendered = "; ".join(f"{c.canonical} I'={c.iprime}" for c in connected)
            return Outcome("3 connected classes", f"{len(connected)} connected classes", rendered)

        claim = "connected order-7 graphs with no factor and I' > 4 form exactly three isomorphism classes"
        if self._record("exceptions.connected_class_count", claim, count) is None:
            return
        classes = found["classes"]
        target = canonical_form(hm(2))
        self._record("exceptions.includes_hm2", "hm(2) has no factor and I'(hm(2)) = 5",
                     lambda: Outcome("included", "included" if target in self.exception_labels else "missing", target))

        def disconnected() -> Outcome:
            expected = sorted(canonical_form(disjoint_union(complete(a), complete(b))) for a, b in ((1, 6), (3, 4)))
            got = sorted(c.canonical for c in classes if not c.connected)
            rendered = "; ".join(f"{c.canonical} I'={c.iprime}" for c in classes if not c.connected)
            return Outcome(", ".join(expected), ", ".join(got) or "none", rendered)

        self._record("exceptions.disconnected_classes",
                     "disconnected order-7 graphs with no factor and I' > 4 are exactly K1 + K6 and K3 + K4",
                     disconnected)

        def recheck() -> Outcome:
            failures = [(c.canonical, revalidate(c)) for c in classes]
            failures = [f"{label}: {why}" for label, why in failures if why is not None]
            return Outcome("0 failures", f"{len(failures)} failures", "; ".join(failures))

        self._record("exceptions.revalidated", "each exception has order 7, no factor and I' > 4", recheck)

    # ---------------------- Corpora ----------------------
    def check_corpus(self, corpus: str, items) -> None:
        profiles = profile_many(items, self.config.cap, self.config.jobs)
        done = [p for p in profiles if p.skipped is None]
        skipped = [p for p in profiles if p.skipped is not None]
        self._record(f"{corpus}.evaluated", "every corpus graph is evaluated within the caps",
                     lambda: Outcome("0 skipped", f"{len(skipped)} skipped",
                                     skipped[0].label if skipped else f"{len(done)} graphs", skipped=bool(skipped)))
        for name, claim, applies, holds in self._properties():
            self._property(f"{corpus}.{name}", claim, done, applies, holds)

    def _property(self, name: str, claim: str, profiles: Sequence[GraphProfile], applies, holds) -> None:
        def run() -> Outcome:
            considered = [p for p in profiles if applies(p)]
            bad = [p for p in considered if not holds(p)]
            witness = bad[0].label if bad else ""
            if bad and bad[0].problems:
                witness += " " + ",".join(bad[0].problems)
            return Outcome(f"0 of {len(considered)} violate", f"{len(bad)} of {len(considered)} violate", witness)

        self._record(name, claim, run)

    def _properties(self):
        def params(p: GraphProfile) -> bool:
            return p.has_parameters

        def large_no_factor(p: GraphProfile) -> bool:
            return p.has_parameters and p.order >= 5 and not p.cp_exists

        def large_params(p: GraphProfile) -> bool:
            return p.has_parameters and p.order >= 5

        def non_complete(p: GraphProfile) -> bool:
            return p.has_parameters and not p.complete

        # I and I' only look at S with iso(G - S) >= 2, so S = {} never sees a lone isolated vertex
        def isolation_bounded(applies):
            return lambda p: applies(p) and p.isolated != 1

        def problem_free(prefix: str):
            return lambda p: not any(problem.startswith(prefix) for problem in p.problems)

        def within_exceptions(p: GraphProfile) -> bool:
            if p.iprime <= Rational(4):
                return True
            if p.order != 7:
                return False
            return self.exception_labels is None or p.canonical in self.exception_labels

        four_thirds = Rational(4, 3)
        return [
            ("oracle.criterion_matches_search", "c_tc(G - S) <= |S| for all S iff a {K2, C_(2i+1) | i >= 2}-factor exists",
             lambda p: p.factor5 is not None, lambda p: p.cp_exists == p.factor5),
            ("oracle.isolation_matches_search", "iso(G - S) <= |S| for all S iff a {K2, C_(2i+1) | i >= 1}-factor exists",
             lambda p: p.factor3 is not None, lambda p: p.ft_exists == p.factor3),
            ("certificates.factors", "every constructed factor validates",
             lambda p: True, problem_free("factor")),
            ("certificates.violations", "every violating set recounts to more than |S|",
             lambda p: True, lambda p: problem_free("cp-")(p) and problem_free("tutte-")(p)),
            ("witness.sound", "every witness re-evaluates to the reported value",
             params, problem_free("witness-unsound")),
            ("witness.pruning_invariant", "pruned and full enumeration agree on value and witness",
             params, problem_free("pruning-changed")),
            ("structure.edge_addition_monotone", "adding an edge never increases c(G - S)",
             params, problem_free("edge-addition")),
            ("sufficient.toughness_at_least_1", "t >= 1 implies a factor",
             large_params, lambda p: p.t < 1 or p.cp_exists),
            ("sufficient.isolated_toughness_at_least_3", "I >= 3 implies a factor when iso(G) != 1",
             isolation_bounded(large_params), lambda p: p.i < 3 or p.cp_exists),
            ("sufficient.variant_above_5", "I' > 5 implies a factor when iso(G) != 1",
             isolation_bounded(large_params), lambda p: p.iprime <= 5 or p.cp_exists),
            ("sufficient.binding_above_4_3", "bind > 4/3 implies a factor",
             large_params, lambda p: p.bind <= four_thirds or p.cp_exists),
            ("sufficient.toughness_implies_fractional", "t >= 1 implies a {K2, C_(2i+1) | i >= 1}-factor",
             params, lambda p: p.t < 1 or p.ft_exists),
            ("contrapositive.toughness_below_1", "no factor at order >= 5 implies t < 1",
             large_no_factor, lambda p: p.t < 1),
            ("contrapositive.isolated_toughness_below_3", "no factor at order >= 5 and iso(G) != 1 implies I < 3",
             isolation_bounded(large_no_factor), lambda p: p.i < 3),
            ("contrapositive.variant_at_most_5", "no factor at order >= 5 and iso(G) != 1 implies I' <= 5",
             isolation_bounded(large_no_factor), lambda p: p.iprime <= 5),
            ("contrapositive.variant_at_most_4", "no factor and iso(G) != 1 implies I' <= 4 unless G is an order-7 exception",
             isolation_bounded(large_no_factor), within_exceptions),
            ("contrapositive.variant_at_most_11_3", "no factor, iso(G) != 1 and order not in {6, 7, 11} imply I' <= 11/3",
             lambda p: large_no_factor(p) and p.isolated != 1 and p.order not in (6, 7, 11), lambda p: p.iprime <= Rational(11, 3)),
            ("contrapositive.variant_at_most_7_2", "no factor, iso(G) != 1 and order not in {6, 7, 11, 15} imply I' <= 7/2",
             lambda p: large_no_factor(p) and p.isolated != 1 and p.order not in (6, 7, 11, 15), lambda p: p.iprime <= Rational(7, 2)),
            ("contrapositive.binding_at_most_4_3", "no factor at order >= 5 implies bind <= 4/3",
             large_no_factor, lambda p: p.bind <= four_thirds),
            ("chain.toughness_le_isolated", "t <= I",
             non_complete, lambda p: p.t <= p.i),
            ("chain.isolated_lt_variant", "I <= I', strictly when I > 0",
             non_complete, lambda p: p.i < p.iprime or p.i == p.iprime == 0),
            ("chain.binding_le_isolated", "bind <= I",
             non_complete, lambda p: p.bind <= p.i),
            ("chain.toughness_ge_binding_minus_1", "t >= bind - 1",
             non_complete, lambda p: p.t.as_fraction() >= p.bind.as_fraction() - 1),
            ("equivalence.fractional", "when iso(G) != 1: I >= 1 iff I' > 1 iff bind >= 1 iff iso(G - S) <= |S| for all S",
             isolation_bounded(params), lambda p: len({p.i >= 1, p.iprime > 1, p.bind >= 1, p.ft_exists}) == 1),
        ]

    def check_large_corpus(self) -> None:
        profiles: List[LargeProfile] = []

        def run() -> Outcome:
            profiles.extend(profile_large_many(self.config.large_corpus, self.config.cap,
                                               self.config.graph_budget, self.config.jobs))
            considered = [p for p in profiles
                          if p.skipped is None and p.isolated != 1 and p.iprime is not None and p.iprime > Rational(7, 2)]
            bad = [p for p in considered if not p.cp_exists]
            return Outcome(f"0 of {len(considered)} violate", f"{len(bad)} of {len(considered)} violate",
                           bad[0].label if bad else f"{len(profiles)} graphs")

        claim = "order >= 16, iso(G) != 1 and I' > 7/2 imply a factor"
        if self._record("large.variant_above_7_2", claim, run) is None:
            return
        skipped = [p for p in profiles if p.skipped is not None]
        self._record("large.evaluated", "every large corpus graph finishes within its time budget",
                     lambda: Outcome("0 skipped", f"{len(skipped)} skipped",
                                     "; ".join(f"{p.label}: {p.skipped}" for p in skipped), skipped=bool(skipped)))


def verify_claims(config: VerifyConfig) -> CheckReport:
    return ClaimVerifier(config).run()
