"""Frames over a matrix algebra: bounds, duals, reconstruction.

Builds a redundant family in the standard module M_2(C)^2, reads off
its optimal bounds, and reconstructs elements through the canonical
dual and the Parseval normalization.
"""

import numpy as np

from cstar_frames import full_matrices
from cstar_frames.module import ModuleDescriptor, random_element
from cstar_frames.frames import (
    FrameSystem,
    analysis_operator,
    canonical_dual,
    canonical_parseval,
    frame_operator,
    optimal_frame_bounds,
    reconstruction_residual,
)
from cstar_frames.operators import adjoint_op, apply, op_norm_op, scalar_rep

rng = np.random.default_rng(7)
module = ModuleDescriptor(full_matrices(2), 2)

# six random vectors in a rank-2 module: redundancy 3
frame = FrameSystem(module, tuple(random_element(module, rng) for _ in range(6)))

bounds = optimal_frame_bounds(frame)
print(f"optimal bounds  lower={bounds.lower:.6f}  upper={bounds.upper:.6f}")
print(f"analysis norm   {op_norm_op(analysis_operator(frame)):.6f}"
      f"  (squares to the upper bound)")

dual = canonical_dual(frame)
dual_bounds = optimal_frame_bounds(dual)
print(f"dual bounds     lower={dual_bounds.lower:.6f}  upper={dual_bounds.upper:.6f}"
      f"  (reciprocals, swapped)")

x = random_element(module, rng)
print(f"reconstruction residual through the dual: {reconstruction_residual(frame, x):.2e}")

# coefficients against the dual synthesize back to x
coeffs = apply(analysis_operator(dual), x)
rebuilt = apply(adjoint_op(analysis_operator(frame)), coeffs)
print(f"direct resynthesis error: {np.max(np.abs(rebuilt.data - x.data)):.2e}")

parseval = canonical_parseval(frame)
S = scalar_rep(frame_operator(parseval))
print(f"parseval deviation from identity: {np.max(np.abs(S - np.eye(S.shape[0]))):.2e}")
