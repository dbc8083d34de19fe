"""
Basis symbols of the Block type algebra: L[alpha,i] (i >= 0) and the central c.
"""
from dataclasses import dataclass
from typing import Tuple, Union

from scalar.errors import AlgebraError


@dataclass(frozen=True, order=True)
class Generator:
    """Basis symbol L[alpha,i]."""
    alpha: int
    i: int

    def __post_init__(self):
        if isinstance(self.alpha, bool) or not isinstance(self.alpha, int):
            raise AlgebraError(f"alpha must be an integer, got {self.alpha!r}")
        if isinstance(self.i, bool) or not isinstance(self.i, int) or self.i < 0:
            raise AlgebraError(f"i must be a nonnegative integer, got {self.i!r}")

    def to_text(self) -> str:
        return f"L[{self.alpha},{self.i}]"

    def __str__(self) -> str:
        return self.to_text()


class Central:
    """The central element c (a single shared instance)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Central)

    def __hash__(self) -> int:
        return hash("Central")

    def __repr__(self) -> str:
        return "Central()"

    def to_text(self) -> str:
        return "c"

    def __str__(self) -> str:
        return "c"


CENTRAL = Central()

BasisIndex = Union[Generator, Central]


def basis_sort_key(index: BasisIndex) -> Tuple[int, int, int]:
    """Generators by (alpha, i), the central element last."""
    if isinstance(index, Central):
        return (1, 0, 0)
    return (0, index.alpha, index.i)
