"""Bound verification shared by vector frames, g-frames and operator frames.

Every frame variant reduces to one sum operator S (the frame operator of
the system) and a pair of bounds.  Scalar bounds are decided exactly by
positive-semidefinite checks on the scalar representation; algebra-valued
bounds are decided exactly per slot over diagonal algebras and by
sampling over full matrix algebras.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Optional, Union

import numpy as np

from .algebra import (
    AlgebraElement,
    AlgebraKind,
    DEFAULT_TOL,
    Tolerance,
    invert,
    is_positive,
    op_norm,
)
from . import algebra
from .module import ModuleDescriptor, ModuleElement, from_vector, inner, norm, random_element
from .operators import (
    AdjointableOp,
    adjoint_op,
    apply,
    diag_slot_matrices,
    scalar_rep,
)

__all__ = [
    "Mode",
    "Verdict",
    "BoundsSpec",
    "VerificationReport",
    "OptimalBounds",
    "verify_sum_operator",
    "verify_norm_bounds_operator",
    "optimal_bounds_from_operator",
    "optimal_k_lower",
    "optimal_star_bounds_diagonal",
]


class Mode(str, Enum):
    PLAIN = "plain"
    STAR = "star"
    K = "k"
    STAR_K = "star-k"


class Verdict(str, Enum):
    PROVED = "proved"
    SAMPLED_PASS = "sampled-pass"
    FALSIFIED = "falsified"


ScalarOrElement = Union[float, AlgebraElement]


@dataclass(frozen=True)
class BoundsSpec:
    """A lower/upper bound pair in one of the four verification modes."""

    mode: Mode
    lower: ScalarOrElement
    upper: ScalarOrElement
    k_op: Optional[AdjointableOp] = None

    def validate(self, module: ModuleDescriptor, tol: Tolerance = DEFAULT_TOL):
        if self.mode in (Mode.PLAIN, Mode.K):
            lo, hi = float(self.lower), float(self.upper)
            if lo <= 0 or hi <= 0:
                raise ValueError("scalar bounds must be positive")
        else:
            for b in (self.lower, self.upper):
                if not isinstance(b, AlgebraElement) or b.algebra != module.algebra:
                    raise ValueError("algebra-valued bound expected")
                try:
                    invert(b, tol)
                except ValueError:
                    raise ValueError("bound not strictly nonzero") from None
        if self.mode in (Mode.K, Mode.STAR_K):
            if self.k_op is None:
                raise ValueError("k_op required for this mode")
            if self.k_op.domain != module or self.k_op.codomain != module:
                raise ValueError("k_op module mismatch")


@dataclass(frozen=True)
class VerificationReport:
    verdict: Verdict
    margin: float
    witness: Optional[ModuleElement]
    samples_used: int
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict is not Verdict.FALSIFIED


class OptimalBounds(NamedTuple):
    lower: float
    upper: float
    is_frame: bool

    @property
    def tight(self) -> bool:
        return self.is_frame and (self.upper - self.lower) <= 1e-9 * abs(self.upper)


def _hermitian(M: np.ndarray) -> np.ndarray:
    return (M + M.conj().T) / 2.0


def _psd_margin(M: np.ndarray) -> tuple:
    """Scaled least eigenvalue of the Hermitian part, with eigenvector."""
    w, v = np.linalg.eigh(_hermitian(M))
    scale = max(1.0, float(np.abs(w).max())) if w.size else 1.0
    return float(w[0]) / scale, v[:, 0]


def _element_psd_margin(d: AlgebraElement) -> float:
    if d.algebra.kind is AlgebraKind.DIAGONAL:
        w = d.data.real
        scale = max(1.0, float(np.abs(d.data).max())) if w.size else 1.0
        return float(w.min()) / scale
    margin, _ = _psd_margin(d.data)
    return margin


def optimal_bounds_from_operator(s_op: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> OptimalBounds:
    w = np.linalg.eigvalsh(_hermitian(scalar_rep(s_op)))
    lam_min, lam_max = float(w[0]), float(w[-1])
    frame = lam_min > tol.rank_rel * max(lam_max, 0.0) and lam_max > 0.0
    return OptimalBounds(lam_min if frame else 0.0, lam_max, frame)


def _range_basis_psd(P: np.ndarray, rel: float) -> tuple:
    w, v = np.linalg.eigh(_hermitian(P))
    top = max(float(w[-1]), 0.0) if w.size else 0.0
    keep = w > rel * top if top > 0 else np.zeros(w.shape, dtype=bool)
    return v[:, keep], v[:, ~keep], w[keep]


def loewner_ratio_lower(P: np.ndarray, Q: np.ndarray, rel: float) -> Optional[float]:
    """sup{c >= 0 : P - c Q is PSD} for PSD P, Q.

    Returns None when the kernel of P meets a direction where Q is
    positive (no positive c works); math.inf when Q vanishes.
    """
    Wp, W0, lam = _range_basis_psd(P, rel)
    q_scale = max(float(np.linalg.norm(Q, 2)), 0.0)
    if q_scale == 0.0:
        return math.inf
    if W0.shape[1] and np.linalg.norm(W0.conj().T @ Q @ W0, 2) > rel * q_scale:
        return None
    if Wp.shape[1] == 0:
        return None
    B = (Wp / np.sqrt(lam)).conj().T @ Q @ (Wp / np.sqrt(lam))
    mu = float(np.linalg.norm(_hermitian(B), 2))
    if mu <= 0.0:
        return math.inf
    return 1.0 / mu


def optimal_k_lower(s_op: AdjointableOp, k_op: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> float:
    """Largest c with c KK* <= S in the Loewner order (0 when none exists)."""
    S = scalar_rep(s_op)
    Mk = scalar_rep(k_op)
    c = loewner_ratio_lower(S, Mk @ Mk.conj().T, tol.rank_rel)
    if c is None:
        return 0.0
    return 0.0 if c == math.inf else c


def optimal_star_bounds_diagonal(s_op: AdjointableOp, tol: Tolerance = DEFAULT_TOL):
    """Slotwise tightest algebra-valued bounds over a diagonal algebra."""
    slots = diag_slot_matrices(s_op)
    lows, highs = [], []
    for s in range(slots.shape[0]):
        w = np.linalg.eigvalsh(_hermitian(slots[s]))
        lows.append(math.sqrt(max(float(w[0]), 0.0)))
        highs.append(math.sqrt(max(float(w[-1]), 0.0)))
    alg_d = s_op.domain.algebra
    return (
        AlgebraElement(alg_d, np.asarray(lows)),
        AlgebraElement(alg_d, np.asarray(highs)),
    )


def _check_psd_matrix(M: np.ndarray, tol: Tolerance, module: ModuleDescriptor, subspace):
    """PSD decision with margin and a module-element witness on failure."""
    if subspace is not None:
        M = subspace.conj().T @ M @ subspace
    margin, vec = _psd_margin(M)
    ok = margin >= -tol.psd_rel
    witness = None
    if not ok:
        full = subspace @ vec if subspace is not None else vec
        witness = from_vector(module, full)
    return ok, margin, witness


def _slot_witness(module: ModuleDescriptor, slot: int, vec: np.ndarray) -> ModuleElement:
    data = np.zeros(module.element_shape, dtype=np.complex128)
    data[:, slot] = vec
    return ModuleElement(module, data)


def verify_sum_operator(
    s_op: AdjointableOp,
    spec: BoundsSpec,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed: int = 0,
    subspace: Optional[np.ndarray] = None,
) -> VerificationReport:
    """Decide a bound pair against the sum operator of a frame system.

    Scalar modes and diagonal-algebra star modes return Proved or
    Falsified; star modes over full matrix algebras return SampledPass
    or Falsified with a concrete witness.
    """
    module = s_op.domain
    spec.validate(module, tol)
    if spec.mode in (Mode.PLAIN, Mode.K):
        return _verify_scalar(s_op, spec, tol, subspace)
    if subspace is not None:
        raise ValueError("subspace restriction is only supported for scalar modes")
    if module.algebra.kind is AlgebraKind.DIAGONAL:
        return _verify_star_diagonal(s_op, spec, tol)
    return _verify_star_sampled(s_op, spec, tol, samples, seed)


def _verify_scalar(s_op, spec, tol, subspace) -> VerificationReport:
    module = s_op.domain
    S = scalar_rep(s_op)
    eye = np.eye(S.shape[0])
    lo, hi = float(spec.lower), float(spec.upper)
    if spec.mode is Mode.K:
        Mk = scalar_rep(spec.k_op)
        lower_mat = S - lo * (Mk @ Mk.conj().T)
    else:
        lower_mat = S - lo * eye
    upper_mat = hi * eye - S
    worst = math.inf
    for M in (lower_mat, upper_mat):
        ok, margin, witness = _check_psd_matrix(M, tol, module, subspace)
        worst = min(worst, margin)
        if not ok:
            return VerificationReport(Verdict.FALSIFIED, margin, witness, 0)
    return VerificationReport(Verdict.PROVED, worst, None, 0)


def _verify_star_diagonal(s_op, spec, tol) -> VerificationReport:
    module = s_op.domain
    slots = diag_slot_matrices(s_op)
    lo = np.abs(spec.lower.data) ** 2
    hi = np.abs(spec.upper.data) ** 2
    k_slots = diag_slot_matrices(spec.k_op) if spec.mode is Mode.STAR_K else None
    worst = math.inf
    for s in range(slots.shape[0]):
        Ss = _hermitian(slots[s])
        eye = np.eye(Ss.shape[0])
        if k_slots is not None:
            Ks = k_slots[s]
            lower_mat = Ss - lo[s] * (Ks @ Ks.conj().T)
        else:
            lower_mat = Ss - lo[s] * eye
        upper_mat = hi[s] * eye - Ss
        for M in (lower_mat, upper_mat):
            margin, vec = _psd_margin(M)
            worst = min(worst, margin)
            if margin < -tol.psd_rel:
                witness = _slot_witness(module, s, vec)
                return VerificationReport(Verdict.FALSIFIED, margin, witness, 0)
    return VerificationReport(Verdict.PROVED, worst, None, 0)


def _verify_star_sampled(s_op, spec, tol, samples, seed) -> VerificationReport:
    module = s_op.domain
    rng = np.random.default_rng(seed)
    a_lo, b_hi = spec.lower, spec.upper
    k_adj = adjoint_op(spec.k_op) if spec.mode is Mode.STAR_K else None
    worst = math.inf
    for _ in range(samples):
        x = random_element(module, rng)
        mid = inner(apply(s_op, x), x)
        base = inner(apply(k_adj, x), apply(k_adj, x)) if k_adj is not None else inner(x, x)
        low_diff = mid - a_lo * base * algebra.adjoint(a_lo)
        gram = inner(x, x)
        high_diff = b_hi * gram * algebra.adjoint(b_hi) - mid
        for d in (low_diff, high_diff):
            margin = _element_psd_margin(d)
            worst = min(worst, margin)
            if not is_positive(d, tol):
                return VerificationReport(Verdict.FALSIFIED, margin, x, samples)
    return VerificationReport(Verdict.SAMPLED_PASS, worst, None, samples)


def verify_norm_bounds_operator(
    s_op: AdjointableOp,
    lower: float,
    upper: float,
    tol: Tolerance = DEFAULT_TOL,
    samples: int = 200,
    seed: int = 0,
) -> VerificationReport:
    """Sampled check of lower <= ||<Sx, x>|| / ||x||^2 <= upper."""
    if lower <= 0 or upper <= 0:
        raise ValueError("norm bounds must be positive")
    module = s_op.domain
    rng = np.random.default_rng(seed)
    slack = tol.psd_rel * max(1.0, upper)
    worst = math.inf
    ratio_min, ratio_max = math.inf, -math.inf
    for _ in range(samples):
        x = random_element(module, rng)
        nx = norm(x)
        if nx == 0.0:
            continue
        ratio = op_norm(inner(apply(s_op, x), x)) / (nx * nx)
        ratio_min, ratio_max = min(ratio_min, ratio), max(ratio_max, ratio)
        margin = min(ratio - lower, upper - ratio) / max(1.0, upper)
        worst = min(worst, margin)
        if ratio < lower - slack or ratio > upper + slack:
            return VerificationReport(
                Verdict.FALSIFIED, worst, x, samples,
                info={"ratio_min": ratio_min, "ratio_max": ratio_max},
            )
    return VerificationReport(
        Verdict.SAMPLED_PASS, worst, None, samples,
        info={"ratio_min": ratio_min, "ratio_max": ratio_max},
    )
