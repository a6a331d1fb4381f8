"""Python access to the domino knowledge compiler."""

from ._domino import (
    CapacityError,
    DominoError,
    ParseError,
    Reasoner,
    ValidationError,
    Verdict,
    compile,
    normalize,
    reason,
)

__all__ = [
    "CapacityError",
    "DominoError",
    "ParseError",
    "Reasoner",
    "ValidationError",
    "Verdict",
    "compile",
    "normalize",
    "reason",
]
