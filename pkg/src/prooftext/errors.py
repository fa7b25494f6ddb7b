"""Exception hierarchy shared by all pipeline stages."""

from __future__ import annotations


class ProofTextError(Exception):
    """Base class for every error raised by the package."""


class ParseError(ProofTextError):
    """Malformed s-expression or proof file text."""

    def __init__(self, message: str, position: int | None = None, line: int | None = None):
        self.position = position
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if position is not None:
            where.append(f"position {position}")
        suffix = f" ({', '.join(where)})" if where else ""
        super().__init__(message + suffix)


class ValidationError(ProofTextError):
    """A parsed proof violates a structural invariant."""

    def __init__(self, kind: str, node_id: str | None, message: str):
        self.kind = kind
        self.node_id = node_id
        super().__init__(message)


class LexiconError(ProofTextError):
    """Missing or malformed lexicon entry."""

    def __init__(self, message: str, symbol: str | None = None):
        self.symbol = symbol
        super().__init__(message)


class SalienceError(ProofTextError):
    pass


class DiscourseStateError(ProofTextError):
    pass


class PCAError(ProofTextError):
    pass


class PlanningError(ProofTextError):
    """The planner reached a state where no operator applies."""

    def __init__(self, message: str, residual: frozenset[str] = frozenset()):
        self.residual = residual
        super().__init__(message)


class AnnotationError(ProofTextError):
    pass


class RealizationError(ProofTextError):
    pass
