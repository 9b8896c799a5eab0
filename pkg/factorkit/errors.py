class FactorkitError(Exception):
    """Base class for every error raised on purpose by factorkit"""


class GraphFormatError(FactorkitError, ValueError):
    """Edge-list text that does not describe a simple graph"""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class CapExceededError(FactorkitError, ValueError):
    """Graph order above an enumeration, construction or canonical-form cap"""

    def __init__(self, what: str, order: int, cap: int):
        self.order = order
        self.cap = cap
        super().__init__(f"{what}: order {order} exceeds cap {cap}")


class InvalidSpecError(FactorkitError, ValueError):
    pass


class PreconditionError(FactorkitError, ValueError):
    pass


class OracleMismatchError(FactorkitError):
    """The criterion enumeration and the backtracking search disagree"""


class ResourceExhaustedError(FactorkitError):
    """Memory ran out mid-enumeration; `checkpoint` says how far it got"""

    def __init__(self, what: str, checkpoint: str):
        self.checkpoint = checkpoint
        super().__init__(f"{what}: out of memory after {checkpoint}")


class BudgetExceededError(FactorkitError):
    """An enumeration passed its deadline before finishing"""

    def __init__(self, what: str):
        self.what = what
        super().__init__(f"{what}: time budget exhausted")

    def __reduce__(self):
        return type(self), (self.what,)
