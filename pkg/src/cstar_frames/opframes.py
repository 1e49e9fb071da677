"""Operator frames: families of endomorphisms whose absolute squares sum
to a sandwiched positive operator.

Besides the shared verification modes this module carries the
perturbation and combination results, tensor products of systems across
different algebras, transport along *-homomorphisms, and duals relative
to a fixed operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, StarHomomorphism, Tolerance, op_norm
from .module import ModuleDescriptor, inner, random_element
from .operators import (
    AdjointableOp,
    add_op,
    adjoint_op,
    apply,
    compose,
    identity_op,
    invert_op,
    is_surjective,
    kron_op,
    op_distance,
    op_norm_op,
    sub_op,
)
from .verification import (
    BoundsSpec,
    Mode,
    OptimalBounds,
    VerificationReport,
    optimal_bounds_from_operator,
    optimal_k_lower,
    verify_norm_bounds_operator,
    verify_sum_operator,
)

__all__ = [
    "OperatorFrameSystem",
    "opframe_system",
    "opframe_operator",
    "optimal_opframe_bounds",
    "verify_opframe_bounds",
    "as_gframe",
    "PerturbResult",
    "perturb",
    "closeness_constant",
    "combine_families",
    "TensorResult",
    "tensor_opframes",
    "conjugate_tensor_factor",
    "transport_opframe",
    "is_dual_k_opframe",
    "canonical_dual_k_opframe",
    "tensor_duals",
]


@dataclass(frozen=True, eq=False)
class OperatorFrameSystem:
    module: ModuleDescriptor
    ops: tuple
    _cache: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise ValueError("an operator frame system needs at least one operator")
        for op in ops:
            if op.domain != self.module or op.codomain != self.module:
                raise ValueError("operators must be endomorphisms of the module")
        object.__setattr__(self, "ops", ops)
        object.__setattr__(self, "_cache", [])

    def __len__(self) -> int:
        return len(self.ops)


def opframe_system(module: ModuleDescriptor, ops) -> OperatorFrameSystem:
    return OperatorFrameSystem(module, tuple(ops))


def opframe_operator(OF: OperatorFrameSystem) -> AdjointableOp:
    """sum_i T_i* T_i; cached on the system."""
    if OF._cache:
        return OF._cache[0]
    S = None
    for op in OF.ops:
        term = compose(adjoint_op(op), op)
        S = term if S is None else add_op(S, term)
    OF._cache.append(S)
    return S


def optimal_opframe_bounds(OF: OperatorFrameSystem, tol: Tolerance = DEFAULT_TOL) -> OptimalBounds:
    return optimal_bounds_from_operator(opframe_operator(OF), tol)


def verify_opframe_bounds(
    OF: OperatorFrameSystem,
    spec: BoundsSpec,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    return verify_sum_operator(opframe_operator(OF), spec, tol, samples, seed)


def as_gframe(OF: OperatorFrameSystem):
    """View the family as a g-frame with every block target the module."""
    from .gframes import GFrameSystem

    return GFrameSystem(OF.module, OF.ops)


@dataclass(frozen=True)
class PerturbResult:
    plus: OperatorFrameSystem
    minus: OperatorFrameSystem
    lower: float
    upper: float


def perturb(OF: OperatorFrameSystem, R: OperatorFrameSystem, tol: Tolerance = DEFAULT_TOL) -> PerturbResult:
    """Sum and difference families with the predicted bound interval.

    With (nu, delta) the optimal bounds of the base family and xi the
    optimal upper bound of the perturbing family, xi < nu is required
    and the predicted interval is [(sqrt(nu)-sqrt(xi))^2,
    (sqrt(delta)+sqrt(xi))^2].
    """
    if OF.module != R.module or len(OF) != len(R):
        raise ValueError("families must share the module and index set")
    base = optimal_opframe_bounds(OF, tol)
    if not base.is_frame:
        raise ValueError("base family is not an operator frame")
    xi = optimal_opframe_bounds(R, tol).upper
    if xi >= base.lower:
        raise ValueError("Bessel bound too large")
    nu, delta = base.lower, base.upper
    lower = (math.sqrt(nu) - math.sqrt(xi)) ** 2
    upper = (math.sqrt(delta) + math.sqrt(xi)) ** 2
    plus = OperatorFrameSystem(OF.module, tuple(add_op(t, r) for t, r in zip(OF.ops, R.ops)))
    minus = OperatorFrameSystem(OF.module, tuple(sub_op(t, r) for t, r in zip(OF.ops, R.ops)))
    return PerturbResult(plus, minus, lower, upper)


def closeness_constant(
    OF: OperatorFrameSystem,
    R: OperatorFrameSystem,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 100,
    seed: int = 0,
):
    """Constant bounding the difference form by both families' forms.

    Returns None when the second family is not an operator frame.  The
    closed-form constant min(1 + sqrt(delta/eta), 1 + sqrt(rho/nu)) is
    certified by sampling; when sampling rejects it (the closed form is
    not safe under extreme scale mismatch) the least constant observed
    on the samples is returned instead.
    """
    if OF.module != R.module or len(OF) != len(R):
        raise ValueError("families must share the module and index set")
    base = optimal_opframe_bounds(OF, tol)
    if not base.is_frame:
        raise ValueError("base family is not an operator frame")
    rb = optimal_opframe_bounds(R, tol)
    if not rb.is_frame:
        return None
    nu, delta = base.lower, base.upper
    eta, rho = rb.lower, rb.upper
    xi = min(1.0 + math.sqrt(delta / eta), 1.0 + math.sqrt(rho / nu))
    diff = OperatorFrameSystem(OF.module, tuple(sub_op(t, r) for t, r in zip(OF.ops, R.ops)))
    s_diff = opframe_operator(diff)
    s_base = opframe_operator(OF)
    s_r = opframe_operator(R)
    rng = np.random.default_rng(seed)
    worst = 0.0
    slack = 1e-12
    for _ in range(samples):
        x = random_element(OF.module, rng)
        d = op_norm(inner(apply(s_diff, x), x))
        m = min(
            op_norm(inner(apply(s_base, x), x)),
            op_norm(inner(apply(s_r, x), x)),
        )
        if m <= slack:
            continue
        worst = max(worst, d / m)
    return xi if worst <= xi * (1.0 + 1e-9) else worst


def _stack_module(module: ModuleDescriptor, count: int) -> ModuleDescriptor:
    return ModuleDescriptor(module.algebra, module.rank * count)


def _stack_images(ops, x) -> np.ndarray:
    return np.concatenate([apply(op, x).data for op in ops])


def combine_families(
    families,
    replacements,
    l_op: AdjointableOp,
    p: int,
    lam: float,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 100,
    seed: int = 0,
) -> VerificationReport:
    """Verify the summed replacement family built from several frames.

    Hypotheses checked by sampling: applying l_op to the stacked sums
    {sum_k R_ki x}_i reproduces {T_pi x}_i, and each replacement family
    stays lam-close to its frame in the quadratic form.  The verified
    bounds are (sqrt(A_p)/||L||)^2 and ((1+sqrt(lam)) sum_k sqrt(B_k))^2.
    """
    families = list(families)
    replacements = [list(r) for r in replacements]
    if len(families) != len(replacements):
        raise ValueError("family counts differ")
    module = families[0].module
    count = len(families[0])
    for fam, rep in zip(families, replacements):
        if fam.module != module or len(fam) != count or len(rep) != count:
            raise ValueError("families must share the module and index set")
    if not 0 <= p < len(families):
        raise ValueError("pivot index out of range")
    stacked = _stack_module(module, count)
    if l_op.domain != stacked or l_op.codomain != stacked:
        raise ValueError("combination operator must act on the stacked module")
    summed_ops = []
    for i in range(count):
        acc = replacements[0][i]
        for rep in replacements[1:]:
            acc = add_op(acc, rep[i])
        summed_ops.append(acc)
    summed = OperatorFrameSystem(module, tuple(summed_ops))
    rng = np.random.default_rng(seed)
    from .module import ModuleElement

    for _ in range(samples):
        x = random_element(module, rng)
        stacked_sum = ModuleElement(stacked, _stack_images(summed.ops, x))
        target = _stack_images(families[p].ops, x)
        image = apply(l_op, stacked_sum).data
        if np.linalg.norm((image - target).reshape(-1)) > 1e-9 * max(
            1.0, np.linalg.norm(target.reshape(-1))
        ):
            raise ValueError("combination operator does not map the sums onto the pivot family")
        for fam, rep in zip(families, replacements):
            d = 0.0
            t = 0.0
            diff_form = None
            base_form = None
            for t_i, r_i in zip(fam.ops, rep):
                dv = apply(t_i, x) - apply(r_i, x)
                tv = apply(t_i, x)
                diff_form = inner(dv, dv) if diff_form is None else diff_form + inner(dv, dv)
                base_form = inner(tv, tv) if base_form is None else base_form + inner(tv, tv)
            d = op_norm(diff_form)
            t = op_norm(base_form)
            if d > lam * t + 1e-9 * max(1.0, t):
                raise ValueError("a replacement family exceeds the closeness constant")
    bounds_p = optimal_opframe_bounds(families[p], tol)
    if not bounds_p.is_frame:
        raise ValueError("pivot family is not an operator frame")
    l_norm = op_norm_op(l_op)
    lower = bounds_p.lower / (l_norm * l_norm)
    upper_root = (1.0 + math.sqrt(lam)) * sum(
        math.sqrt(optimal_opframe_bounds(f, tol).upper) for f in families
    )
    upper = upper_root * upper_root
    return verify_norm_bounds_operator(
        opframe_operator(summed), lower, upper, tol, samples, seed
    )


@dataclass(frozen=True)
class TensorResult:
    system: OperatorFrameSystem
    k_op: AdjointableOp
    lower: float
    upper: float
    report: VerificationReport


def tensor_opframes(
    lam: OperatorFrameSystem,
    gam: OperatorFrameSystem,
    k1: AdjointableOp,
    k2: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> TensorResult:
    """The family {L_i (x) G_j} verified against K1 (x) K2 at product bounds."""
    a = optimal_k_lower(opframe_operator(lam), k1, tol)
    b = optimal_opframe_bounds(lam, tol).upper
    c = optimal_k_lower(opframe_operator(gam), k2, tol)
    d = optimal_opframe_bounds(gam, tol).upper
    if a <= 0 or c <= 0:
        raise ValueError("inputs must verify in k mode with positive lower bounds")
    ops = tuple(kron_op(t, u) for t in lam.ops for u in gam.ops)
    system = OperatorFrameSystem(ops[0].domain, ops)
    k_tensor = kron_op(k1, k2)
    spec = BoundsSpec(Mode.K, a * c, b * d, k_op=k_tensor)
    report = verify_sum_operator(opframe_operator(system), spec, tol)
    return TensorResult(system, k_tensor, a * c, b * d, report)


def conjugate_tensor_factor(
    OF: OperatorFrameSystem,
    q_op: AdjointableOp,
    other: ModuleDescriptor,
    k_op: AdjointableOp,
    side: str = "left",
    tol: Tolerance = DEFAULT_TOL,
) -> tuple:
    """Compose a tensor-module family with Q* (x) I (or I (x) Q*).

    Q must be invertible on its factor and K must commute with the
    lifted operator; the composed family is verified against K at
    bounds scaled by the extreme singular values of Q.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    lifted = kron_op(q_op, identity_op(other)) if side == "left" else kron_op(identity_op(other), q_op)
    if lifted.domain != OF.module:
        raise ValueError("lifted operator does not match the tensor module")
    invert_op(q_op, tol)
    if op_distance(compose(k_op, lifted), compose(lifted, k_op)) > 1e-9 * max(
        1.0, op_norm_op(k_op) * op_norm_op(lifted)
    ):
        raise ValueError("K does not commute with the lifted operator")
    a = optimal_k_lower(opframe_operator(OF), k_op, tol)
    b = optimal_opframe_bounds(OF, tol).upper
    if a <= 0:
        raise ValueError("input must verify in k mode with a positive lower bound")
    s_min = 1.0 / op_norm_op(invert_op(q_op, tol))
    q_norm = op_norm_op(q_op)
    lifted_adj = adjoint_op(lifted)
    composed = OperatorFrameSystem(OF.module, tuple(compose(op, lifted_adj) for op in OF.ops))
    lower = s_min * s_min * a
    upper = q_norm * q_norm * b
    spec = BoundsSpec(Mode.K, lower, upper, k_op=k_op)
    report = verify_sum_operator(opframe_operator(composed), spec, tol)
    return composed, report


def transport_opframe(
    OF: OperatorFrameSystem,
    hom: StarHomomorphism,
    k_op: AdjointableOp,
    samples: int = 25,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple:
    """Move a family and its K across a built-in *-homomorphism.

    Checks the inner-product compatibility of the companion module map
    and its commutation with every family member, their adjoints, and
    K*; returns the transported family and transported K.
    """
    from .gframes import _check_transport_hypotheses, _transported_op

    if hom.algebra != OF.module.algebra:
        raise ValueError("algebra mismatch")
    extra = [("an adjoint block", adjoint_op(op)) for op in OF.ops]
    extra.append(("K*", adjoint_op(k_op)))
    _check_transport_hypotheses(hom, OF.ops, OF.module, samples, seed, tol, extra_ops=extra)
    moved = OperatorFrameSystem(OF.module, tuple(_transported_op(hom, op) for op in OF.ops))
    return moved, _transported_op(hom, k_op)


def is_dual_k_opframe(
    lam: OperatorFrameSystem,
    gam: OperatorFrameSystem,
    k_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """True when sum_i L_i* G_i reproduces K."""
    if lam.module != gam.module or len(lam) != len(gam):
        raise ValueError("families must share the module and index set")
    acc = None
    for l_i, g_i in zip(lam.ops, gam.ops):
        term = compose(adjoint_op(l_i), g_i)
        acc = term if acc is None else add_op(acc, term)
    return op_distance(k_op, acc) <= 1e-9 * max(1.0, op_norm_op(k_op))


def canonical_dual_k_opframe(
    lam: OperatorFrameSystem, k_op: AdjointableOp, tol: Tolerance = DEFAULT_TOL
) -> OperatorFrameSystem:
    """The family {L_i S^{-1} K}, a dual of the family relative to K."""
    if not is_surjective(k_op, tol):
        raise ValueError("K is not surjective")
    try:
        s_inv = invert_op(opframe_operator(lam), tol)
    except ValueError:
        raise ValueError("not an operator frame") from None
    tail = compose(s_inv, k_op)
    return OperatorFrameSystem(lam.module, tuple(compose(op, tail) for op in lam.ops))


def tensor_duals(
    lam: OperatorFrameSystem,
    lam_dual: OperatorFrameSystem,
    gam: OperatorFrameSystem,
    gam_dual: OperatorFrameSystem,
    k1: AdjointableOp,
    k2: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> bool:
    """Duality of the tensor families relative to K1 (x) K2."""
    if not is_dual_k_opframe(lam, lam_dual, k1, tol):
        raise ValueError("first dual pair fails its duality identity")
    if not is_dual_k_opframe(gam, gam_dual, k2, tol):
        raise ValueError("second dual pair fails its duality identity")
    big = OperatorFrameSystem(
        kron_op(lam.ops[0], gam.ops[0]).domain,
        tuple(kron_op(t, u) for t in lam.ops for u in gam.ops),
    )
    big_dual = OperatorFrameSystem(
        big.module,
        tuple(kron_op(t, u) for t in lam_dual.ops for u in gam_dual.ops),
    )
    return is_dual_k_opframe(big, big_dual, kron_op(k1, k2), tol)
