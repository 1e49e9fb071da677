"""Generalized frames: synthesis, range projection, and constructions.

A g-frame is a family of operators into block targets.  This walk
shows the synthesis operator characterization of the bounds, the
orthogonal projection onto the analysis range, and two ways of
manufacturing new verified systems from old ones.
"""

import numpy as np

from cstar_frames import full_matrices
from cstar_frames.module import ModuleDescriptor
from cstar_frames.gframes import (
    GFrameSystem,
    canonical_dual_gframe,
    coisometry_compose,
    dual_compose_with_k,
    frames_from_factorization,
    gframe_operator,
    optimal_gframe_bounds,
    range_projection,
    synthesis_operator,
    transfer_lower_bound,
)
from cstar_frames.operators import (
    adjoint_op,
    compose,
    op_distance,
    op_norm_op,
    pseudo_inverse,
    random_op,
    right_multiplication,
    scale_op,
)
from cstar_frames import algebra as alg

rng = np.random.default_rng(11)
module = ModuleDescriptor(full_matrices(2), 2)
G = GFrameSystem(module, tuple(random_op(module, module, rng) for _ in range(3)))

b = optimal_gframe_bounds(G)
q = synthesis_operator(G)
print(f"bounds from the sum operator: ({b.lower:.6f}, {b.upper:.6f})")
print(f"bounds from the synthesis operator: "
      f"({1 / op_norm_op(pseudo_inverse(q)) ** 2:.6f}, {op_norm_op(q) ** 2:.6f})")

P = range_projection(G)
print(f"projection defects: idempotent {op_distance(compose(P, P), P):.1e}, "
      f"self-adjoint {op_distance(adjoint_op(P), P):.1e}")

dual = canonical_dual_gframe(G)
db = optimal_gframe_bounds(dual)
print(f"canonical dual bounds: ({db.lower:.6f}, {db.upper:.6f})")

# transfer the lower bound to an operator with smaller range
u = np.linalg.qr(rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)))[0]
k_op = right_multiplication(module, alg.element(full_matrices(2), u + 2 * np.eye(2)))
report = transfer_lower_bound(G, k_op, scale_op(0.5, k_op))
print(f"range transfer to a halved operator: {report.verdict.value}")

# a factorization of K* through two systems certifies both against K
theta = dual_compose_with_k(G, k_op)
rep1, rep2 = frames_from_factorization(G, theta, k_op)
print(f"factorization certificates: {rep1.verdict.value} / {rep2.verdict.value}")

# composing with a co-isometry that commutes with K preserves the bounds
from cstar_frames.operators import add_op, identity_op

t_u = right_multiplication(module, alg.element(full_matrices(2), u))
k_poly = add_op(scale_op(2.0, identity_op(module)), scale_op(0.5, t_u))
_, rep3 = coisometry_compose(G, k_poly, t_u)
print(f"co-isometry composition: {rep3.verdict.value}")
