"""
Types
-----
Shared enums, aliases and exceptions of the algebra layer.
"""

from enum import Enum, unique
from typing import List, Tuple

from typing_extensions import TypeAlias

IntMatrix: TypeAlias = List[List[int]]
"""
Integer matrix stored row by row.
"""
IntVector: TypeAlias = Tuple[int, ...]
"""
Integer coordinate vector.
"""


@unique
class Side(str, Enum):
    """
    Side on which a ring acts on a module.
    Right modules over an algebra are stored as left modules over its opposite.
    """

    LEFT = "left"
    RIGHT = "right"


class VerificationError(AssertionError):
    """
    Raised when an identity that must hold by construction fails.
    Carries a distinguishing element; signals a bug rather than bad input.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
