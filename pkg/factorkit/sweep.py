"""Parameter sweep: one JSON Lines row per corpus graph.

Rows carry the four exact parameters (as "p/q" or "inf" strings) and both
factor decisions, for plotting the empirical frontier elsewhere. A row whose
graph exceeds a cap is kept with its values empty and a note.
"""
import json
import logging
from dataclasses import asdict, dataclass
from typing import IO, Iterable, List, Optional

from .config import ENUMERATION_CAP, EnumerationConfig
from .corpus import CorpusSpec
from .errors import CapExceededError
from .factors import cp_criterion, fractional_tutte
from .generators import GeneratorSpec, generate
from .parameters import compute_all
from .pool import run_parallel

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    graph: str
    n: int
    p: Optional[float] = None
    seed: Optional[int] = None
    t: Optional[str] = None
    i: Optional[str] = None
    iprime: Optional[str] = None
    bind: Optional[str] = None
    factor: Optional[bool] = None
    fractional: Optional[bool] = None
    note: Optional[str] = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def sweep_row(spec: GeneratorSpec, cap: int = ENUMERATION_CAP) -> SweepRow:
    g = generate(spec)
    base = dict(graph=spec.describe(), n=g.order, p=spec.p, seed=spec.seed)
    config = EnumerationConfig(cap=cap, jobs=1)
    try:
        values = {}
        if g.order >= 2:
            values = {param.value: str(result.value) for param, result in compute_all(g, config).items()}
        factor = cp_criterion(g, config).exists if g.order >= 1 else None
        fractional = fractional_tutte(g, config).exists if g.order >= 1 else None
    except CapExceededError as e:
        return SweepRow(**base, note=f"skipped: {e}")
    note = None if g.order >= 2 else "parameters need order >= 2"
    return SweepRow(**base, **values, factor=factor, fractional=fractional, note=note)


def run_sweep(spec: CorpusSpec, cap: int = ENUMERATION_CAP, jobs: int = 1) -> List[SweepRow]:
    specs = spec.generator_specs()
    rows = run_parallel(sweep_row, [(gs, cap) for gs in specs], jobs)
    skipped = sum(1 for row in rows if row.note and row.note.startswith("skipped"))
    if skipped:
        log.warning("sweep: %d of %d rows skipped at cap %d", skipped, len(rows), cap)
    return rows


def write_rows(rows: Iterable[SweepRow], stream: IO[str]) -> int:
    count = 0
    for row in rows:
        stream.write(row.to_json() + "\n")
        count += 1
    return count
