import os
import time
from dataclasses import dataclass
from typing import Optional

import psutil

# Enumeration limits
ENUMERATION_CAP   = int(os.environ.get("FACTORKIT_CAP", "26"))
CONSTRUCTION_CAP  = int(os.environ.get("FACTORKIT_CONSTRUCTION_CAP", "16"))
CANONICAL_CAP     = 10

# Runtime defaults
DEFAULT_JOBS      = int(os.environ.get("FACTORKIT_JOBS", "0")) or psutil.cpu_count(logical=False) or 1
DEFAULT_SEED      = int(os.environ.get("FACTORKIT_SEED", "20210601"))
LOG_LEVEL         = os.environ.get("FACTORKIT_LOG_LEVEL", "INFO")
GRAPH_TIME_BUDGET = float(os.environ.get("FACTORKIT_GRAPH_BUDGET", "120"))

# Chunks handed to each worker per parallel enumeration
CHUNKS_PER_JOB = 4
# Subsets visited between deadline checks
DEADLINE_STRIDE = 4096

LOG_FORMAT  = "%(asctime)s[%(levelname)-5s] %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


@dataclass(frozen=True)
class EnumerationConfig:
    """Knobs shared by every exhaustive subset enumeration"""

    cap: int = ENUMERATION_CAP
    jobs: int = 1
    prune: bool = True
    # time.monotonic() value after which enumerations give up
    deadline: Optional[float] = None


def past_deadline(deadline: Optional[float], visited: int) -> bool:
    return deadline is not None and visited % DEADLINE_STRIDE == 0 and time.monotonic() >= deadline


DEFAULT_ENUMERATION = EnumerationConfig()
