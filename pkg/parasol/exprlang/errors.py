"""Expression language exceptions."""

from typing import Optional, Tuple


class ExprError(Exception):
    """Base class for expression parsing and evaluation failures"""


class ParseError(ExprError):
    def __init__(self, message: str, position: int, expected: str) -> None:
        super().__init__(message)
        self.message = message
        self.position = position
        self.expected = expected


class EvaluationError(ExprError):
    """Evaluation failure carrying the source span of the node that failed"""

    def __init__(self, message: str, span: Optional[Tuple[int, int]] = None) -> None:
        if span is not None:
            message = f"{message} (span={span[0]}..{span[1]})"
        super().__init__(message)
        self.message = message
        self.span = span


class UnboundVariableError(EvaluationError):
    def __init__(self, name: str, span: Optional[Tuple[int, int]] = None) -> None:
        super().__init__(f"Unbound variable {name!r}", span)
        self.name = name
