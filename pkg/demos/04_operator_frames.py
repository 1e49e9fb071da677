"""Operator frames: perturbation, tensor products, and duals.

Families of endomorphisms carry the same bound machinery; on top of it
sit stability results (perturbing by a small Bessel family), spatial
tensor products across different algebras, and duals relative to a
fixed operator.
"""

import numpy as np

from cstar_frames import diagonals, full_matrices
from cstar_frames.module import ModuleDescriptor
from cstar_frames.opframes import (
    OperatorFrameSystem,
    canonical_dual_k_opframe,
    closeness_constant,
    is_dual_k_opframe,
    opframe_operator,
    optimal_opframe_bounds,
    perturb,
    tensor_opframes,
)
from cstar_frames.operators import kron_op, random_op, scale_op

rng = np.random.default_rng(13)
h = ModuleDescriptor(full_matrices(2), 1)
k = ModuleDescriptor(diagonals(2), 2)

base = OperatorFrameSystem(h, tuple(random_op(h, h, rng) for _ in range(3)))
nb = optimal_opframe_bounds(base)
print(f"base bounds: ({nb.lower:.6f}, {nb.upper:.6f})")

# perturb by a small Bessel family; spectra stay inside the predicted interval
small = OperatorFrameSystem(h, tuple(scale_op(0.1, op) for op in base.ops))
result = perturb(base, small)
pb = optimal_opframe_bounds(result.plus)
print(f"perturbed spectra ({pb.lower:.6f}, {pb.upper:.6f}) inside "
      f"[{result.lower:.6f}, {result.upper:.6f}]")

xi = closeness_constant(base, base)
print(f"closeness constant against itself: {xi:.6f}")

# tensor two verified families across different algebras
other = OperatorFrameSystem(k, tuple(random_op(k, k, rng) for _ in range(2)))
k1 = random_op(h, h, rng)
k2 = random_op(k, k, rng)
tensored = tensor_opframes(base, other, k1, k2)
print(f"tensor verification: {tensored.report.verdict.value} at "
      f"({tensored.lower:.6f}, {tensored.upper:.6f})")
direct = opframe_operator(tensored.system)
product = kron_op(opframe_operator(base), opframe_operator(other))
print(f"frame operator factorizes: defect "
      f"{np.max(np.abs(direct.coeffs - product.coeffs)):.1e}")

# a dual family relative to K reproduces K from mixed coefficients
dual = canonical_dual_k_opframe(base, k1)
print(f"canonical dual against K verifies: {is_dual_k_opframe(base, dual, k1)}")
