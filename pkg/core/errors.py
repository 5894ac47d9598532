"""Exception types raised by the engine, the builders and the harness"""

from typing import List, Optional


class IwError(Exception):
    """Base class for every error raised by this package"""


class GroundTooShort(IwError):
    """The ground set ran out before a maximal member was found"""


class HorizonOverflow(IwError):
    """Building the schedule would exceed the configured integer size"""


class LevelOutOfHorizon(IwError):
    """A computation needs a level j beyond the schedule horizon"""

    def __init__(self, level: int, horizon: int, message: str = ''):
        self.level = level
        self.horizon = horizon
        super().__init__(message or f"level {level} is beyond the horizon {horizon}")


class HorizonExceeded(IwError):
    """A builder could not find a level satisfying its gap condition"""


class SearchBudgetExceeded(IwError):
    """The norm search hit its expansion cap

    Carries a certified lower bound with its witness and the l1 upper
    bound, so callers still get a sandwich.
    """

    def __init__(self, lower, witness, upper, expansions: int):
        self.lower = lower
        self.witness = witness
        self.upper = upper
        self.expansions = expansions
        super().__init__(
            f"search budget exceeded after {expansions} expansions "
            f"(lower={lower}, upper={upper})"
        )


class InvalidWitness(IwError):
    """A functional offered as a certificate is not in the norming set"""

    def __init__(self, violations: List):
        self.violations = violations
        text = '; '.join(str(v) for v in violations)
        super().__init__(f"invalid witness: {text}")


class ConstructionFailed(IwError):
    """A builder exhausted its retries"""


class ParseError(IwError):
    """Malformed JSON input, with the path of the offending value"""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path or '$'}: {message}")


class ConfigError(IwError):
    """Invalid run configuration, with the path of the offending key"""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"config {path or '$'}: {message}")


class Unbounded(IwError):
    """The linear program has no finite optimum"""


class Infeasible(IwError):
    """The linear program has no feasible point"""


class UnknownSuite(IwError):
    """No suite is registered under the requested name"""

    def __init__(self, name: str, known: Optional[List[str]] = None):
        self.name = name
        hint = f" (known: {', '.join(known)})" if known else ''
        super().__init__(f"unknown suite '{name}'{hint}")
