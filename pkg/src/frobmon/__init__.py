"""frobmon: exact computer algebra for monomorphism categories,
Gorenstein-projective modules and tilting verification over bound quiver
algebras."""

from .fields import F2, F3, QQ, Field, GF
from .linalg import Matrix, NoSolutionError, rank_kernel, solve_all
from .quivers import Quiver

__all__ = [
    "F2", "F3", "QQ", "Field", "GF",
    "Matrix", "NoSolutionError", "rank_kernel", "solve_all",
    "Quiver",
]

__version__ = "0.1.0"
