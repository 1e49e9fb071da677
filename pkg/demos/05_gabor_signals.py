"""Discrete time-frequency analysis on the cyclic group.

A Gabor family is built from translations and modulations of one
window.  Oversampled lattices give frames; the canonical dual then
reconstructs any signal from its time-frequency coefficients.
"""

import numpy as np

from cstar_frames.frames import (
    analysis_operator,
    canonical_dual,
    canonical_parseval,
    frame_operator,
    gabor_frame,
    gaussian_window,
    optimal_frame_bounds,
)
from cstar_frames.module import element, norm, vectorize
from cstar_frames.operators import adjoint_op, apply, scalar_rep

L, a, b = 8, 2, 2
window = gaussian_window(L)
frame = gabor_frame(window, a, b)
print(f"lattice ({a}, {b}) on Z_{L}: {len(frame)} atoms")

bounds = optimal_frame_bounds(frame)
print(f"frame bounds ({bounds.lower:.6f}, {bounds.upper:.6f}), "
      f"condition {bounds.upper / bounds.lower:.3f}")

# analyze a chirp-like signal and resynthesize it through the dual
t = np.arange(L)
signal = element(frame.module, (np.exp(2j * np.pi * (t ** 2) / (2 * L)))[:, np.newaxis])
coeffs = apply(analysis_operator(canonical_dual(frame)), signal)
rebuilt = apply(adjoint_op(analysis_operator(frame)), coeffs)
print(f"reconstruction error: {norm(rebuilt - signal) / norm(signal):.2e}")
print(f"largest coefficient magnitude: {np.max(np.abs(vectorize(coeffs))):.4f}")

# the Parseval normalization makes analysis an isometry
tight = canonical_parseval(frame)
S = scalar_rep(frame_operator(tight))
print(f"normalized frame operator deviation: {np.max(np.abs(S - np.eye(L))):.2e}")

# the critically sparse lattice below loses the frame property
sparse = gabor_frame(window, 4, 4)
print(f"lattice (4, 4): {len(sparse)} atoms, "
      f"frame={optimal_frame_bounds(sparse).is_frame}")
