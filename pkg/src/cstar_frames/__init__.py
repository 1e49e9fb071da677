"""Frames, g-frames, K-frames and operator frames over finite-dimensional
Hilbert C*-modules, with exact and sampled bound verification."""

__version__ = "0.1.0"

from .algebra import (
    AlgebraDescriptor,
    AlgebraElement,
    AlgebraKind,
    StarHomomorphism,
    Tolerance,
    diagonals,
    full_matrices,
    scalars,
)
from .module import ModuleDescriptor, ModuleElement, random_element
from .operators import AdjointableOp
from .verification import BoundsSpec, Mode, OptimalBounds, Verdict, VerificationReport
from .frames import FrameSystem, gabor_frame
from .gframes import GFrameSystem
from .opframes import OperatorFrameSystem

__all__ = [
    "__version__",
    "AlgebraDescriptor",
    "AlgebraElement",
    "AlgebraKind",
    "StarHomomorphism",
    "Tolerance",
    "diagonals",
    "full_matrices",
    "scalars",
    "ModuleDescriptor",
    "ModuleElement",
    "random_element",
    "AdjointableOp",
    "BoundsSpec",
    "Mode",
    "OptimalBounds",
    "Verdict",
    "VerificationReport",
    "FrameSystem",
    "gabor_frame",
    "GFrameSystem",
    "OperatorFrameSystem",
]
