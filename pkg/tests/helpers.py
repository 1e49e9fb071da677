"""Shared factories for the test suite."""

import numpy as np

from cstar_frames import algebra as alg
from cstar_frames import module as mod
from cstar_frames import operators as ops
from cstar_frames.frames import FrameSystem
from cstar_frames.gframes import GFrameSystem
from cstar_frames.opframes import OperatorFrameSystem

FULL2 = alg.full_matrices(2)
DIAG2 = alg.diagonals(2)
DIAG3 = alg.diagonals(3)
SCALAR = alg.scalars()


def rng(*salt):
    return np.random.default_rng(list(salt))


def scalar_module(dim):
    return mod.ModuleDescriptor(SCALAR, dim)


def scalar_vec(module, entries):
    return mod.element(module, [[z] for z in entries])


def basis_scalar(module, k):
    data = [0.0] * module.rank
    data[k] = 1.0
    return scalar_vec(module, data)


def random_frame(module, r, count=None):
    count = count or 3 * module.rank
    return FrameSystem(module, tuple(mod.random_element(module, r) for _ in range(count)))


def random_gframe(module, r, blocks=3, target_rank=None):
    target = mod.ModuleDescriptor(module.algebra, target_rank or module.rank)
    return GFrameSystem(module, tuple(ops.random_op(module, target, r) for _ in range(blocks)))


def random_opframe(module, r, count=3):
    return OperatorFrameSystem(module, tuple(ops.random_op(module, module, r) for _ in range(count)))


def random_invertible(module, r, tries=50):
    for _ in range(tries):
        t = ops.random_op(module, module, r)
        if ops.bounded_below_margin(t) > 0.1 * ops.op_norm_op(t):
            return t
    raise RuntimeError("failed to draw an invertible operator")


def quad_eigs_2x2(m):
    """Eigenvalues of a Hermitian 2x2 matrix by the quadratic formula."""
    tr = (m[0, 0] + m[1, 1]).real
    det = (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real
    disc = np.sqrt(max(tr * tr - 4.0 * det, 0.0))
    return sorted([(tr - disc) / 2.0, (tr + disc) / 2.0])
