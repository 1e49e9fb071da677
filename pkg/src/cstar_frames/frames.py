"""Vector frames in standard Hilbert modules.

A frame system is a finite family of module elements.  The analysis
operator collects the inner products against the family, the frame
operator is its absolute square, and all bound verification modes are
decided against that operator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, Tolerance, adjoint, scalars
from .module import (
    ModuleDescriptor,
    ModuleElement,
    element,
    norm,
)
from .operators import (
    AdjointableOp,
    adjoint_op,
    apply,
    compose,
    invert_op,
    op_from_scalar_matrix,
    scalar_rep,
)
from .verification import (
    BoundsSpec,
    OptimalBounds,
    VerificationReport,
    optimal_bounds_from_operator,
    verify_norm_bounds_operator,
    verify_sum_operator,
)

__all__ = [
    "FrameSystem",
    "frame_system",
    "analysis_operator",
    "frame_operator",
    "optimal_frame_bounds",
    "verify_frame_bounds",
    "canonical_dual",
    "canonical_parseval",
    "verify_norm_bounds",
    "reconstruction_residual",
    "gaussian_window",
    "gabor_frame",
]


@dataclass(frozen=True, eq=False)
class FrameSystem:
    module: ModuleDescriptor
    vectors: tuple
    _cache: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        vecs = tuple(self.vectors)
        if not vecs:
            raise ValueError("a frame system needs at least one vector")
        for v in vecs:
            if v.module != self.module:
                raise ValueError("module mismatch")
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "_cache", [])

    def __len__(self) -> int:
        return len(self.vectors)


def frame_system(module: ModuleDescriptor, vectors) -> FrameSystem:
    return FrameSystem(module, tuple(vectors))


def analysis_operator(F: FrameSystem) -> AdjointableOp:
    """x -> {<x, x_i>}_i as an operator into A^N."""
    cod = ModuleDescriptor(F.module.algebra, len(F))
    m = F.module.rank
    shape = (m, len(F)) + F.module.algebra.element_shape
    coeffs = np.zeros(shape, dtype=np.complex128)
    for i, v in enumerate(F.vectors):
        for k in range(m):
            coeffs[k, i] = adjoint(v.component(k)).data
    return AdjointableOp(F.module, cod, coeffs)


def frame_operator(F: FrameSystem) -> AdjointableOp:
    """S = T*T, so Sx = sum_i <x, x_i> x_i; cached on the system."""
    if F._cache:
        return F._cache[0]
    T = analysis_operator(F)
    S = compose(adjoint_op(T), T)
    F._cache.append(S)
    return S


def optimal_frame_bounds(F: FrameSystem, tol: Tolerance = DEFAULT_TOL) -> OptimalBounds:
    """Extremal eigenvalues of the frame operator; lower is 0 for non-frames."""
    return optimal_bounds_from_operator(frame_operator(F), tol)


def verify_frame_bounds(
    F: FrameSystem,
    spec: BoundsSpec,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    return verify_sum_operator(frame_operator(F), spec, tol, samples, seed)


def canonical_dual(F: FrameSystem, tol: Tolerance = DEFAULT_TOL) -> FrameSystem:
    """The family S^{-1} x_i, which reproduces every x from its coefficients."""
    try:
        s_inv = invert_op(frame_operator(F), tol)
    except ValueError:
        raise ValueError("not a frame") from None
    return FrameSystem(F.module, tuple(apply(s_inv, v) for v in F.vectors))


def canonical_parseval(F: FrameSystem, tol: Tolerance = DEFAULT_TOL) -> FrameSystem:
    """The family S^{-1/2} x_i, whose frame operator is the identity."""
    S = scalar_rep(frame_operator(F))
    w, v = np.linalg.eigh((S + S.conj().T) / 2.0)
    if w[0] <= tol.rank_rel * max(w[-1], 0.0):
        raise ValueError("not a frame")
    root_inv = (v / np.sqrt(w)) @ v.conj().T
    s_half_inv = op_from_scalar_matrix(root_inv, F.module, F.module)
    return FrameSystem(F.module, tuple(apply(s_half_inv, x) for x in F.vectors))


def verify_norm_bounds(
    F: FrameSystem,
    lower: float,
    upper: float,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    """Sampled check of the norm form of the frame inequality."""
    return verify_norm_bounds_operator(frame_operator(F), lower, upper, tol, samples, seed)


def reconstruction_residual(F: FrameSystem, x: ModuleElement, tol: Tolerance = DEFAULT_TOL) -> float:
    """Relative error of x = sum_i <x, dual_i> x_i via the canonical dual."""
    dual = canonical_dual(F, tol)
    coeffs = apply(analysis_operator(dual), x)
    rebuilt = apply(adjoint_op(analysis_operator(F)), coeffs)
    nx = norm(x)
    return norm(x - rebuilt) / nx if nx > 0 else norm(x - rebuilt)


def gaussian_window(length: int) -> np.ndarray:
    """Unit-norm samples of a centered Gaussian on the cyclic group Z_L."""
    t = np.arange(length) - length / 2.0
    g = np.exp(-np.pi * t * t / length)
    return g / np.linalg.norm(g)


def gabor_frame(g, a: int, b: int) -> FrameSystem:
    """Discrete Gabor family over Z_L from a window and lattice steps.

    Vectors are M_{mb} T_{na} g for 0 <= n < L/a, 0 <= m < L/b, with
    cyclic translation T and modulation M; both steps must divide L.
    """
    g = np.asarray(g, dtype=np.complex128)
    L = g.shape[0]
    if g.ndim != 1 or L == 0:
        raise ValueError("window must be a nonempty vector")
    if not np.any(g):
        raise ValueError("window must be nonzero")
    if a <= 0 or b <= 0 or L % a != 0 or L % b != 0:
        raise ValueError("lattice steps must divide the window length")
    module = ModuleDescriptor(scalars(), L)
    grid = np.arange(L)
    vectors = []
    for n in range(L // a):
        shifted = np.roll(g, n * a)
        for m in range(L // b):
            vec = np.exp(2j * np.pi * m * b * grid / L) * shifted
            vectors.append(element(module, vec[:, np.newaxis]))
    return FrameSystem(module, tuple(vectors))
