"""Ready-made systems with known bounds, used by the CLI and the demos.

Each generator returns the system together with the bound specification
it is expected to satisfy (truncations of the classical infinite
families, so the bounds are partial sums or slotwise values).
"""

from __future__ import annotations

import numpy as np

from .algebra import diagonals, element as alg_element, unit
from .frames import FrameSystem, gabor_frame, gaussian_window, optimal_frame_bounds
from .gframes import GFrameSystem
from .module import ModuleDescriptor, element
from .opframes import OperatorFrameSystem
from .operators import right_multiplication
from .verification import BoundsSpec, Mode

__all__ = [
    "star_diag_frame",
    "diagonal_gframe",
    "k_gframe_example",
    "star_k_opframe_example",
    "gabor_problem",
]


def star_diag_frame(terms: int) -> tuple:
    """Tight algebra-valued frame over the 2-slot diagonal algebra.

    Vectors diag(2^-i, 3^-i) for i = 1..terms; the tight bound is the
    square root of the geometric partial sums (1-4^-M)/3 and (1-9^-M)/8.
    """
    if terms < 1:
        raise ValueError("need at least one term")
    algebra = diagonals(2)
    module = ModuleDescriptor(algebra, 1)
    vectors = [
        element(module, [[2.0 ** -i, 3.0 ** -i]]) for i in range(1, terms + 1)
    ]
    slot1 = (1.0 - 4.0 ** -terms) / 3.0
    slot2 = (1.0 - 9.0 ** -terms) / 8.0
    bound = alg_element(algebra, np.sqrt([slot1, slot2]))
    spec = BoundsSpec(Mode.STAR, bound, bound)
    return FrameSystem(module, tuple(vectors)), spec


def diagonal_gframe(a_coeffs, b_coeffs) -> tuple:
    """Diagonal two-slot g-frame with blocks z -> (a_i z_1, b_i z_2).

    Optimal bounds are the min and max of the two coefficient energies.
    """
    a = np.asarray(a_coeffs, dtype=np.complex128)
    b = np.asarray(b_coeffs, dtype=np.complex128)
    if a.shape != b.shape or a.ndim != 1 or a.size == 0:
        raise ValueError("coefficient lists must be equal-length and nonempty")
    algebra = diagonals(2)
    module = ModuleDescriptor(algebra, 1)
    blocks = [
        right_multiplication(module, alg_element(algebra, [ai, bi]))
        for ai, bi in zip(a, b)
    ]
    e_a = float(np.sum(np.abs(a) ** 2))
    e_b = float(np.sum(np.abs(b) ** 2))
    spec = BoundsSpec(Mode.PLAIN, min(e_a, e_b), max(e_a, e_b))
    return GFrameSystem(module, tuple(blocks)), spec


def k_gframe_example(n_cut: int, dim: int) -> tuple:
    """Slot projections with K scaling the first n_cut slots by their index.

    The family resolves the identity, so it is a K-g-frame with bounds
    1/n_cut^2 and 1.
    """
    if not 1 <= n_cut <= dim:
        raise ValueError("need 1 <= n_cut <= dim")
    algebra = diagonals(dim)
    module = ModuleDescriptor(algebra, 1)
    blocks = []
    for j in range(dim):
        mask = np.zeros(dim)
        mask[j] = 1.0
        blocks.append(right_multiplication(module, alg_element(algebra, mask)))
    k_diag = np.zeros(dim)
    k_diag[:n_cut] = np.arange(1, n_cut + 1)
    k_op = right_multiplication(module, alg_element(algebra, k_diag))
    spec = BoundsSpec(Mode.K, 1.0 / (n_cut * n_cut), 1.0, k_op=k_op)
    return GFrameSystem(module, tuple(blocks)), spec, k_op


def star_k_opframe_example(dim: int) -> tuple:
    """Slotwise multipliers 1/2 + 1/i with K dividing slot i by i.

    A tight algebra-valued operator frame; against K it verifies with
    lower bound the algebra unit and upper bound the multiplier itself.
    """
    if dim < 1:
        raise ValueError("need at least one slot")
    algebra = diagonals(dim)
    module = ModuleDescriptor(algebra, 1)
    idx = np.arange(1, dim + 1, dtype=np.float64)
    mult = 0.5 + 1.0 / idx
    ops = []
    for j in range(dim):
        mask = np.zeros(dim)
        mask[j] = mult[j]
        ops.append(right_multiplication(module, alg_element(algebra, mask)))
    k_op = right_multiplication(module, alg_element(algebra, 1.0 / idx))
    spec = BoundsSpec(
        Mode.STAR_K,
        unit(algebra),
        alg_element(algebra, mult),
        k_op=k_op,
    )
    return OperatorFrameSystem(module, tuple(ops)), spec, k_op


def gabor_problem(length: int, a: int, b: int) -> tuple:
    """Gaussian-window Gabor system with its optimal scalar bounds."""
    F = gabor_frame(gaussian_window(length), a, b)
    bounds = optimal_frame_bounds(F)
    if not bounds.is_frame:
        raise ValueError("lattice is too sparse for the window")
    spec = BoundsSpec(Mode.PLAIN, bounds.lower, bounds.upper)
    return F, spec
