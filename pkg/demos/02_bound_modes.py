"""The four bound-verification modes on ready-made systems.

Scalar bounds are settled by eigenvalue checks (proved or falsified
with a witness); algebra-valued bounds are settled exactly per slot
over diagonal algebras.
"""

import numpy as np

from cstar_frames.frames import frame_operator, verify_frame_bounds
from cstar_frames.generators import (
    k_gframe_example,
    star_diag_frame,
    star_k_opframe_example,
)
from cstar_frames.gframes import gframe_operator, verify_gframe_bounds
from cstar_frames.module import inner
from cstar_frames.opframes import verify_opframe_bounds
from cstar_frames.operators import apply
from cstar_frames.verification import BoundsSpec, Mode, optimal_star_bounds_diagonal

# a tight algebra-valued frame: partial geometric sums per slot
frame, star_spec = star_diag_frame(40)
report = verify_frame_bounds(frame, star_spec)
print(f"tight diagonal frame: {report.verdict.value}  margin={report.margin:.1e}")
lo, hi = optimal_star_bounds_diagonal(frame_operator(frame))
print(f"  slotwise bound {np.round(lo.data.real, 8)} vs limit"
      f" {np.round([3**-0.5, 8**-0.5], 8)}")

# k-mode: lower bound measured against <K*x, K*x>
gframe, k_spec, k_op = k_gframe_example(3, 8)
print(f"slot-projection system vs K: {verify_gframe_bounds(gframe, k_spec).verdict.value}")
too_strong = BoundsSpec(Mode.K, k_spec.lower + 1e-3, k_spec.upper, k_op=k_op)
bad = verify_gframe_bounds(gframe, too_strong)
print(f"  nudged lower bound: {bad.verdict.value}  margin={bad.margin:.1e}")
w = bad.witness
gap = inner(apply(gframe_operator(gframe), w), w)
print(f"  witness re-check: slot values {np.round(gap.data.real, 6)}")

# star-k mode on an operator frame, exact diagonal path
opframe, sk_spec, _ = star_k_opframe_example(6)
print(f"multiplier operator frame vs K: {verify_opframe_bounds(opframe, sk_spec).verdict.value}")
print(f"  upper bound slots: {np.round(sk_spec.upper.data.real, 4)}")
