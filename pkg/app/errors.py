"""
Exception hierarchy shared by the library and the CLI.

Each class carries the process exit code the CLI reports for it.
"""

from typing import Optional


class NetworkAnalysisError(Exception):
    """Base exception for all analysis errors."""

    exit_code = 1


# Input files (exit 3)

class InputError(NetworkAnalysisError):
    """Malformed or unusable input file."""

    exit_code = 3


class CorpusParseError(InputError):
    """A compound line could not be parsed under the strict policy."""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class CharsetError(InputError):
    """Character whitelist file is invalid."""

    def __init__(self, reason: str, line_no: Optional[int] = None):
        self.line_no = line_no
        self.reason = reason
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{prefix}{reason}")


class EmptyCorpusError(InputError):
    """Corpus yielded no compounds."""
    pass


class GraphFormatError(InputError):
    """Graph or table file does not follow the documented format."""
    pass


# Parameters (exit 4)

class InvalidParameterError(NetworkAnalysisError):
    """Parameter outside its documented range."""

    exit_code = 4


class InfeasibleEdgeCountError(InvalidParameterError):
    """Requested edge count does not fit in a simple graph of n nodes."""

    def __init__(self, n: int, m: int):
        self.n = n
        self.m = m
        super().__init__(
            f"m={m} edges impossible for n={n} nodes (max {n * (n - 1) // 2})"
        )


class LabelingError(InvalidParameterError):
    """Node labeling is not a distinct single character per node."""
    pass


# Graph preconditions (exit 5)

class GraphPreconditionError(NetworkAnalysisError):
    """Graph does not satisfy an operation's precondition."""

    exit_code = 5


class EmptyGraphError(GraphPreconditionError):
    """Operation needs at least one node (or two)."""
    pass


class DisconnectedGraphError(GraphPreconditionError):
    """Operation needs a connected graph; names one unreachable pair."""

    def __init__(self, source: str, target: str):
        self.source = source
        self.target = target
        super().__init__(
            f"graph is disconnected: {target} is unreachable from {source}"
        )


class UnknownComponentError(GraphPreconditionError):
    """Component id not present in the partition."""
    pass


# Fitting (exit 6)

class InsufficientBinsError(NetworkAnalysisError):
    """Power-law fit window holds fewer than three nonempty bins."""

    exit_code = 6


# Calibration (exit 7)

class CalibrationBracketError(NetworkAnalysisError):
    """Target average degree is not bracketed by the alpha range."""

    exit_code = 7

    def __init__(self, k_lo: float, k_hi: float, target_k: float, reason: str = "outside bracket"):
        self.k_lo = k_lo
        self.k_hi = k_hi
        self.target_k = target_k
        super().__init__(
            f"target <k>={target_k:.4f} {reason}: "
            f"<k>(alpha_min)={k_lo:.4f}, <k>(alpha_max)={k_hi:.4f}"
        )
