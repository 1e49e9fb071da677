"""Generalized frames: families of operators from one module into block
target modules, with the block stack materialized as a single standard
module.

Covers the frame operator and canonical dual, the synthesis operator and
the orthogonal projection onto its coimage, Bessel composition, and the
constructions that move a system across another operator (range
transfer, range restriction, co-isometries, factorizations, transport
along a *-homomorphism).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    StarHomomorphism,
    Tolerance,
    op_norm,
)
from .module import ModuleDescriptor, inner, map_components, random_element
from .operators import (
    AdjointableOp,
    add_op,
    adjoint_op,
    compose,
    invert_op,
    is_injective,
    op_distance,
    op_norm_op,
    pseudo_inverse,
    scalar_rep,
)
from .verification import (
    BoundsSpec,
    Mode,
    OptimalBounds,
    VerificationReport,
    _range_basis_psd,
    optimal_bounds_from_operator,
    optimal_k_lower,
    verify_sum_operator,
)

__all__ = [
    "GFrameSystem",
    "gframe_system",
    "block_stack_module",
    "g_analysis_operator",
    "synthesis_operator",
    "gframe_operator",
    "optimal_gframe_bounds",
    "verify_gframe_bounds",
    "canonical_dual_gframe",
    "range_projection",
    "compose_bessel",
    "left_compose",
    "transport_gframe",
    "transfer_lower_bound",
    "restrict_to_range",
    "coisometry_compose",
    "frames_from_factorization",
    "compose_with_k",
    "dual_compose_with_k",
]


@dataclass(frozen=True, eq=False)
class GFrameSystem:
    domain: ModuleDescriptor
    blocks: tuple
    _cache: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        blocks = tuple(self.blocks)
        if not blocks:
            raise ValueError("a g-frame system needs at least one block")
        for op in blocks:
            if op.domain != self.domain:
                raise ValueError("block domain mismatch")
            if op.codomain.algebra != self.domain.algebra:
                raise ValueError("algebra mismatch")
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_cache", [])

    def __len__(self) -> int:
        return len(self.blocks)


def gframe_system(domain: ModuleDescriptor, blocks) -> GFrameSystem:
    return GFrameSystem(domain, tuple(blocks))


def block_stack_module(G: GFrameSystem) -> ModuleDescriptor:
    """The direct sum of the block targets as one standard module."""
    total = sum(op.codomain.rank for op in G.blocks)
    return ModuleDescriptor(G.domain.algebra, total)


def g_analysis_operator(G: GFrameSystem) -> AdjointableOp:
    """x -> stacked block images {L_i x}_i."""
    cod = block_stack_module(G)
    shape = (G.domain.rank, cod.rank) + G.domain.algebra.element_shape
    coeffs = np.zeros(shape, dtype=np.complex128)
    offset = 0
    for op in G.blocks:
        p = op.codomain.rank
        coeffs[:, offset : offset + p] = op.coeffs
        offset += p
    return AdjointableOp(G.domain, cod, coeffs)


def synthesis_operator(G: GFrameSystem) -> AdjointableOp:
    """{g_i} -> sum_i L_i* g_i, the adjoint of the analysis operator."""
    return adjoint_op(g_analysis_operator(G))


def gframe_operator(G: GFrameSystem) -> AdjointableOp:
    """S = sum_i L_i* L_i; cached on the system."""
    if G._cache:
        return G._cache[0]
    S = None
    for op in G.blocks:
        term = compose(adjoint_op(op), op)
        S = term if S is None else add_op(S, term)
    G._cache.append(S)
    return S


def optimal_gframe_bounds(G: GFrameSystem, tol: Tolerance = DEFAULT_TOL) -> OptimalBounds:
    return optimal_bounds_from_operator(gframe_operator(G), tol)


def verify_gframe_bounds(
    G: GFrameSystem,
    spec: BoundsSpec,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    return verify_sum_operator(gframe_operator(G), spec, tol, samples, seed)


def canonical_dual_gframe(G: GFrameSystem, tol: Tolerance = DEFAULT_TOL) -> GFrameSystem:
    """Blocks L_i S^{-1}; resolves the identity against the original."""
    try:
        s_inv = invert_op(gframe_operator(G), tol)
    except ValueError:
        raise ValueError("not a g-frame") from None
    return GFrameSystem(G.domain, tuple(compose(op, s_inv) for op in G.blocks))


def range_projection(G: GFrameSystem, tol: Tolerance = DEFAULT_TOL) -> AdjointableOp:
    """Orthogonal projection of the block stack onto the analysis range,
    realized as T S^{-1} T*."""
    T = g_analysis_operator(G)
    try:
        s_inv = invert_op(gframe_operator(G), tol)
    except ValueError:
        raise ValueError("not a g-frame") from None
    return compose(T, compose(s_inv, adjoint_op(T)))


def compose_bessel(G: GFrameSystem, H: GFrameSystem) -> tuple:
    """Blocks {L_i* M_i} together with the guaranteed upper bound.

    The predicted bound is the product of the optimal upper bounds of
    the two inputs (the square of the algebra-valued bound's norm times
    the second scalar bound).
    """
    if len(G) != len(H):
        raise ValueError("block counts differ")
    blocks = []
    for lam, gam in zip(G.blocks, H.blocks):
        if lam.codomain != gam.codomain:
            raise ValueError("block target mismatch")
        blocks.append(compose(adjoint_op(lam), gam))
    upper = optimal_gframe_bounds(G).upper * optimal_gframe_bounds(H).upper
    return GFrameSystem(H.domain, tuple(blocks)), upper


def left_compose(theta: AdjointableOp, G: GFrameSystem, tol: Tolerance = DEFAULT_TOL) -> GFrameSystem:
    """Blocks {theta L_i} for injective closed-range theta on the domain."""
    for op in G.blocks:
        if op.codomain != G.domain:
            raise ValueError("left composition needs endomorphism blocks")
    if theta.domain != G.domain or theta.codomain != G.domain:
        raise ValueError("theta must act on the system domain")
    if not is_injective(theta, tol):
        raise ValueError("theta is not injective with closed range")
    return GFrameSystem(G.domain, tuple(compose(theta, op) for op in G.blocks))


def _transported_op(hom: StarHomomorphism, op: AdjointableOp) -> AdjointableOp:
    coeffs = np.empty_like(op.coeffs)
    for k in range(op.domain.rank):
        for j in range(op.codomain.rank):
            coeffs[k, j] = hom.of(op.coeff(k, j)).data
    return AdjointableOp(op.domain, op.codomain, coeffs)


def _check_transport_hypotheses(hom, blocks, module, samples, seed, tol, extra_ops=()):
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        x = random_element(module, rng)
        y = random_element(module, rng)
        lhs = inner(map_components(hom, x), map_components(hom, y))
        rhs = hom.of(inner(x, y))
        if op_norm(lhs - rhs) > 1e-9 * max(1.0, op_norm(rhs)):
            raise ValueError("transport map is not compatible with the homomorphism")
    for op in blocks:
        if op_distance(_transported_op(hom, op), op) > 1e-9 * max(1.0, op_norm_op(op)):
            raise ValueError("transport map does not commute with a block")
    for name, op in extra_ops:
        if op_distance(_transported_op(hom, op), op) > 1e-9 * max(1.0, op_norm_op(op)):
            raise ValueError(f"transport map does not commute with {name}")


def transport_gframe(
    G: GFrameSystem,
    hom: StarHomomorphism,
    samples: int = 25,
    seed: int = 0,
    tol: Tolerance = DEFAULT_TOL,
) -> GFrameSystem:
    """Move a system along a built-in *-homomorphism.

    The companion module map sends an element to its componentwise
    image; compatibility with the inner product and commutation with
    every block are checked before the transported system is returned.
    """
    if hom.algebra != G.domain.algebra:
        raise ValueError("algebra mismatch")
    _check_transport_hypotheses(hom, G.blocks, G.domain, samples, seed, tol)
    return GFrameSystem(G.domain, tuple(_transported_op(hom, op) for op in G.blocks))


def transfer_lower_bound(
    G: GFrameSystem,
    k_op: AdjointableOp,
    t_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> VerificationReport:
    """Re-verify a k-mode lower bound against an operator with smaller range.

    With alpha the least scale with TT* <= alpha^2 KK*, a lower bound C
    against K becomes C / alpha^2 against T.
    """
    from .operators import range_inclusion

    alpha = range_inclusion(t_op, k_op, tol)
    if alpha is None:
        raise ValueError("range not included")
    S = gframe_operator(G)
    lower = optimal_k_lower(S, k_op, tol)
    if lower <= 0:
        raise ValueError("system has no k-mode lower bound")
    upper = optimal_bounds_from_operator(S, tol).upper
    spec = BoundsSpec(Mode.K, lower / (alpha * alpha) if alpha > 0 else lower, upper, k_op=t_op)
    return verify_sum_operator(S, spec, tol)


def restrict_to_range(
    G: GFrameSystem,
    k_op: AdjointableOp,
    t_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple:
    """Compose the blocks with T* and verify on the range of T.

    The lower bound margin is the least ratio ||T* x|| / ||K* x|| over
    ran(T); the operation refuses when the two coimages disagree there.
    """
    from .operators import range_inclusion

    if range_inclusion(adjoint_op(t_op), k_op, tol) is None:
        raise ValueError("ran(T*) is not contained in ran(K)")
    Mt = scalar_rep(t_op)
    V, _, _ = _range_basis_psd(Mt @ Mt.conj().T, tol.rank_rel)
    if V.shape[1] == 0:
        raise ValueError("lower ratio margin is zero (trivial range)")
    At = scalar_rep(adjoint_op(t_op)) @ V
    Ak = scalar_rep(adjoint_op(k_op)) @ V
    P = At.conj().T @ At
    Q = Ak.conj().T @ Ak
    _, ker_q, _ = _range_basis_psd(Q, tol.rank_rel)
    p_scale = max(float(np.linalg.norm(P, 2)), 1e-300)
    if ker_q.shape[1] and np.linalg.norm(ker_q.conj().T @ P @ ker_q, 2) > tol.rank_rel * p_scale:
        raise ValueError("lower ratio margin is zero (coimage mismatch)")
    from .verification import loewner_ratio_lower

    delta_sq = loewner_ratio_lower(P, Q, tol.rank_rel)
    if delta_sq is None or delta_sq == math.inf or delta_sq <= 0:
        raise ValueError("lower ratio margin is zero")
    S = gframe_operator(G)
    e_low = optimal_k_lower(S, k_op, tol)
    f_up = optimal_bounds_from_operator(S, tol).upper
    k_dag = op_norm_op(pseudo_inverse(k_op, tol))
    lower = e_low * delta_sq / (k_dag * k_dag)
    upper = f_up * op_norm_op(t_op) ** 2
    restricted = GFrameSystem(
        G.domain, tuple(compose(op, adjoint_op(t_op)) for op in G.blocks)
    )
    spec = BoundsSpec(Mode.K, lower, upper, k_op=k_op)
    report = verify_sum_operator(gframe_operator(restricted), spec, tol, subspace=V)
    return restricted, report


def coisometry_compose(
    G: GFrameSystem,
    k_op: AdjointableOp,
    t_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple:
    """Blocks {L_i T*} for a co-isometry T commuting with K."""
    ident = np.eye(t_op.codomain.vector_dim)
    tt = scalar_rep(t_op) @ scalar_rep(adjoint_op(t_op))
    if np.linalg.norm(tt - ident, 2) > 1e-9:
        raise ValueError("T is not a co-isometry")
    if op_distance(compose(t_op, k_op), compose(k_op, t_op)) > 1e-9:
        raise ValueError("T does not commute with K")
    S = gframe_operator(G)
    lower = optimal_k_lower(S, k_op, tol)
    if lower <= 0:
        raise ValueError("system has no k-mode lower bound")
    upper = optimal_bounds_from_operator(S, tol).upper
    composed = GFrameSystem(G.domain, tuple(compose(op, adjoint_op(t_op)) for op in G.blocks))
    spec = BoundsSpec(Mode.K, lower, upper, k_op=k_op)
    report = verify_sum_operator(gframe_operator(composed), spec, tol)
    return composed, report


def frames_from_factorization(
    lam: GFrameSystem,
    tht: GFrameSystem,
    k_op: AdjointableOp,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple:
    """From synthesis(tht) o analysis(lam) = K*, certify both systems.

    The first system gets a k-mode lower bound 1/upper(tht) against K,
    the second 1/upper(lam) against K*.
    """
    t_lam = g_analysis_operator(lam)
    t_tht = synthesis_operator(tht)
    if t_lam.codomain != t_tht.domain:
        raise ValueError("block stacks do not match")
    resid = op_distance(compose(t_tht, t_lam), adjoint_op(k_op))
    if resid > 1e-9 * max(1.0, op_norm_op(k_op)):
        raise ValueError(f"factorization residual too large: {resid:.3e}")
    b_lam = optimal_gframe_bounds(lam, tol).upper
    b_tht = optimal_gframe_bounds(tht, tol).upper
    spec_lam = BoundsSpec(Mode.K, 1.0 / b_tht, b_lam, k_op=k_op)
    spec_tht = BoundsSpec(Mode.K, 1.0 / b_lam, b_tht, k_op=adjoint_op(k_op))
    rep_lam = verify_sum_operator(gframe_operator(lam), spec_lam, tol)
    rep_tht = verify_sum_operator(gframe_operator(tht), spec_tht, tol)
    return rep_lam, rep_tht


def compose_with_k(G: GFrameSystem, k_op: AdjointableOp) -> tuple:
    """Blocks {L_i K} and their frame operator in the form K* S K."""
    if k_op.domain != G.domain or k_op.codomain != G.domain:
        raise ValueError("K must act on the system domain")
    composed = GFrameSystem(G.domain, tuple(compose(op, k_op) for op in G.blocks))
    s_prime = compose(adjoint_op(k_op), compose(gframe_operator(G), k_op))
    return composed, s_prime


def dual_compose_with_k(
    G: GFrameSystem, k_op: AdjointableOp, tol: Tolerance = DEFAULT_TOL
) -> GFrameSystem:
    """Blocks {L_i S^{-1} K}, the canonical dual pushed through K."""
    try:
        s_inv = invert_op(gframe_operator(G), tol)
    except ValueError:
        raise ValueError("not a g-frame") from None
    return GFrameSystem(G.domain, tuple(compose(op, compose(s_inv, k_op)) for op in G.blocks))
