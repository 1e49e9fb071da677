"""Adjointable operators between standard Hilbert modules.

Operators are stored as right-action coefficient matrices over the
algebra: (Tx)_j = sum_k x_k c_kj.  This makes module linearity
structural and the adjoint exact, (c*)_jk = (c_kj)*.  Spectral work
(norms, positivity, inverses, pseudo-inverses, range tests) happens on
the scalar representation, the complex matrix acting on vectorized
coordinates; operators recovered from scalar-space computations are
re-projected onto coefficient form and certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import (
    AlgebraElement,
    AlgebraKind,
    DEFAULT_TOL,
    Tolerance,
    as_matrix,
)
from .module import (
    ModuleDescriptor,
    ModuleElement,
    basis_element,
    from_vector,
    vectorize,
)

__all__ = [
    "AdjointableOp",
    "op_from_coeffs",
    "identity_op",
    "zero_op",
    "scalar_op",
    "right_multiplication",
    "random_op",
    "apply",
    "adjoint_op",
    "compose",
    "add_op",
    "sub_op",
    "scale_op",
    "scalar_rep",
    "diag_slot_matrices",
    "op_from_scalar_matrix",
    "is_positive_op",
    "loewner_leq_op",
    "op_norm_op",
    "op_distance",
    "is_injective",
    "is_surjective",
    "bounded_below_margin",
    "invert_op",
    "pseudo_inverse",
    "range_inclusion",
    "tensor_algebra",
    "tensor_module",
    "elementary_tensor",
    "kron_op",
]


@dataclass(frozen=True, eq=False)
class AdjointableOp:
    domain: ModuleDescriptor
    codomain: ModuleDescriptor
    coeffs: np.ndarray
    _rep: list = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.domain.algebra != self.codomain.algebra:
            raise ValueError("algebra mismatch")
        shape = (self.domain.rank, self.codomain.rank) + self.domain.algebra.element_shape
        arr = np.array(self.coeffs, dtype=np.complex128)
        if arr.shape != shape:
            raise ValueError(f"coefficient array has shape {arr.shape}, expected {shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "_rep", [])

    def coeff(self, k: int, j: int) -> AlgebraElement:
        return AlgebraElement(self.domain.algebra, self.coeffs[k, j])

    def __eq__(self, other):
        if not isinstance(other, AdjointableOp):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and np.array_equal(self.coeffs, other.coeffs)
        )


def op_from_coeffs(domain: ModuleDescriptor, codomain: ModuleDescriptor, coeffs) -> AdjointableOp:
    """Build an operator from an (m, p) grid of algebra elements or arrays."""
    m, p = domain.rank, codomain.rank
    shape = (m, p) + domain.algebra.element_shape
    arr = np.zeros(shape, dtype=np.complex128)
    for k in range(m):
        for j in range(p):
            c = coeffs[k][j]
            arr[k, j] = c.data if isinstance(c, AlgebraElement) else np.asarray(c)
    return AdjointableOp(domain, codomain, arr)


def identity_op(module: ModuleDescriptor) -> AdjointableOp:
    m, alg = module.rank, module.algebra
    shape = (m, m) + alg.element_shape
    arr = np.zeros(shape, dtype=np.complex128)
    one = np.eye(alg.n) if alg.kind is AlgebraKind.FULL else np.ones(alg.n)
    for k in range(m):
        arr[k, k] = one
    return AdjointableOp(module, module, arr)


def zero_op(domain: ModuleDescriptor, codomain: ModuleDescriptor) -> AdjointableOp:
    shape = (domain.rank, codomain.rank) + domain.algebra.element_shape
    return AdjointableOp(domain, codomain, np.zeros(shape, dtype=np.complex128))


def scalar_op(module: ModuleDescriptor, c) -> AdjointableOp:
    return scale_op(c, identity_op(module))


def right_multiplication(module: ModuleDescriptor, a: AlgebraElement) -> AdjointableOp:
    """Componentwise right multiplication x_k -> x_k a."""
    if a.algebra != module.algebra:
        raise ValueError("algebra mismatch")
    shape = (module.rank, module.rank) + module.algebra.element_shape
    arr = np.zeros(shape, dtype=np.complex128)
    for k in range(module.rank):
        arr[k, k] = a.data
    return AdjointableOp(module, module, arr)


def random_op(domain: ModuleDescriptor, codomain: ModuleDescriptor, seed) -> AdjointableOp:
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    shape = (domain.rank, codomain.rank) + domain.algebra.element_shape
    data = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return AdjointableOp(domain, codomain, data)


def apply(T: AdjointableOp, x: ModuleElement) -> ModuleElement:
    if x.module != T.domain:
        raise ValueError("module mismatch")
    if T.domain.algebra.kind is AlgebraKind.FULL:
        out = np.einsum("kab,kpbc->pac", x.data, T.coeffs)
    else:
        out = np.einsum("ka,kpa->pa", x.data, T.coeffs)
    return ModuleElement(T.codomain, out)


def adjoint_op(T: AdjointableOp) -> AdjointableOp:
    if T.domain.algebra.kind is AlgebraKind.FULL:
        coeffs = np.conj(np.transpose(T.coeffs, (1, 0, 3, 2)))
    else:
        coeffs = np.conj(np.transpose(T.coeffs, (1, 0, 2)))
    return AdjointableOp(T.codomain, T.domain, coeffs)


def compose(after: AdjointableOp, before: AdjointableOp) -> AdjointableOp:
    """Function composition: compose(T, U)(x) = T(U(x))."""
    if before.codomain != after.domain:
        raise ValueError("operator shapes do not compose")
    if before.domain.algebra.kind is AlgebraKind.FULL:
        coeffs = np.einsum("kjab,jlbc->klac", before.coeffs, after.coeffs)
    else:
        coeffs = np.einsum("kja,jla->kla", before.coeffs, after.coeffs)
    return AdjointableOp(before.domain, after.codomain, coeffs)


def add_op(T: AdjointableOp, U: AdjointableOp) -> AdjointableOp:
    if T.domain != U.domain or T.codomain != U.codomain:
        raise ValueError("operator shape mismatch")
    return AdjointableOp(T.domain, T.codomain, T.coeffs + U.coeffs)


def sub_op(T: AdjointableOp, U: AdjointableOp) -> AdjointableOp:
    if T.domain != U.domain or T.codomain != U.codomain:
        raise ValueError("operator shape mismatch")
    return AdjointableOp(T.domain, T.codomain, T.coeffs - U.coeffs)


def scale_op(c, T: AdjointableOp) -> AdjointableOp:
    return AdjointableOp(T.domain, T.codomain, complex(c) * T.coeffs)


def scalar_rep(T: AdjointableOp) -> np.ndarray:
    """Complex matrix M with vectorize(Tx) = M @ vectorize(x)."""
    if T._rep:
        return T._rep[0]
    alg = T.domain.algebra
    m, p = T.domain.rank, T.codomain.rank
    n = alg.n
    if alg.kind is AlgebraKind.FULL:
        d = n * n
        M = np.zeros((p * d, m * d), dtype=np.complex128)
        eye = np.eye(n)
        for k in range(m):
            for j in range(p):
                M[j * d : (j + 1) * d, k * d : (k + 1) * d] = np.kron(eye, T.coeffs[k, j].T)
    else:
        M = np.zeros((p * n, m * n), dtype=np.complex128)
        for k in range(m):
            for j in range(p):
                M[j * n : (j + 1) * n, k * n : (k + 1) * n] = np.diag(T.coeffs[k, j])
    M.setflags(write=False)
    T._rep.append(M)
    return M


def diag_slot_matrices(T: AdjointableOp) -> np.ndarray:
    """Per-slot scalar matrices of an operator over a diagonal algebra.

    Slot s of the output is the (p, m) matrix sending the slot-s
    coordinates of x to the slot-s coordinates of Tx.
    """
    if T.domain.algebra.kind is not AlgebraKind.DIAGONAL:
        raise ValueError("slot matrices require a diagonal algebra")
    return np.transpose(T.coeffs, (2, 1, 0))


def op_from_scalar_matrix(
    M: np.ndarray,
    domain: ModuleDescriptor,
    codomain: ModuleDescriptor,
    cert: float = 1e-9,
) -> AdjointableOp:
    """Recover coefficient form from a scalar matrix and certify it.

    Probes the matrix with the canonical basis elements (unit algebra
    element in one component); the result is rejected unless its own
    scalar representation reproduces M to the certification tolerance.
    """
    M = np.asarray(M, dtype=np.complex128)
    if M.shape != (codomain.vector_dim, domain.vector_dim):
        raise ValueError("scalar matrix has wrong shape")
    shape = (domain.rank, codomain.rank) + domain.algebra.element_shape
    arr = np.zeros(shape, dtype=np.complex128)
    for k in range(domain.rank):
        probe = M @ vectorize(basis_element(domain, k))
        y = from_vector(codomain, probe)
        arr[k] = y.data
    cand = AdjointableOp(domain, codomain, arr)
    resid = np.linalg.norm(scalar_rep(cand) - M, 2)
    if resid > cert * max(1.0, np.linalg.norm(M, 2)):
        raise ValueError("matrix is not module-linear (certification failed)")
    return cand


def op_norm_op(T: AdjointableOp) -> float:
    M = scalar_rep(T)
    return float(np.linalg.norm(M, 2)) if M.size else 0.0


def op_distance(T: AdjointableOp, U: AdjointableOp) -> float:
    return op_norm_op(sub_op(T, U))


def _psd_min_eig(M: np.ndarray) -> tuple:
    """Least eigenvalue of the Hermitian part and its eigenvector."""
    H = (M + M.conj().T) / 2.0
    w, v = np.linalg.eigh(H)
    return float(w[0]), v[:, 0]


def is_positive_op(T: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> bool:
    if T.domain != T.codomain:
        raise ValueError("operator is not square")
    M = scalar_rep(T)
    scale = tol.psd_rel * max(1.0, float(np.linalg.norm(M, 2)))
    if np.linalg.norm(M - M.conj().T, 2) > scale:
        return False
    lam_min, _ = _psd_min_eig(M)
    return lam_min >= -scale


def loewner_leq_op(T: AdjointableOp, U: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> bool:
    if T.domain != U.domain or T.codomain != U.codomain:
        raise ValueError("operator shape mismatch")
    return is_positive_op(sub_op(U, T), tol)


def is_injective(T: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> bool:
    M = scalar_rep(T)
    if M.shape[1] > M.shape[0]:
        return False
    s = np.linalg.svd(M, compute_uv=False)
    return bool(s[-1] > tol.rank_rel * s[0]) if s[0] > 0 else False


def is_surjective(T: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Surjective iff the adjoint's scalar matrix is bounded below."""
    return is_injective(adjoint_op(T), tol)


def bounded_below_margin(T: AdjointableOp) -> float:
    """Largest m with ||Tx|| >= m ||x|| in vectorized coordinates."""
    M = scalar_rep(T)
    if M.shape[1] > M.shape[0]:
        return 0.0
    s = np.linalg.svd(M, compute_uv=False)
    return float(s[-1])


def invert_op(T: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> AdjointableOp:
    if T.domain.vector_dim != T.codomain.vector_dim:
        raise ValueError("not invertible")
    M = scalar_rep(T)
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0.0 or s[-1] <= tol.rank_rel * s[0]:
        raise ValueError("not invertible")
    return op_from_scalar_matrix(np.linalg.inv(M), T.codomain, T.domain)


def pseudo_inverse(T: AdjointableOp, tol: Tolerance = DEFAULT_TOL) -> AdjointableOp:
    """Moore-Penrose inverse with singular values below rank_rel treated as 0."""
    M = scalar_rep(T)
    u, s, vh = np.linalg.svd(M, full_matrices=False)
    cutoff = tol.rank_rel * (s[0] if s.size else 0.0)
    inv = np.where(s > cutoff, 1.0 / np.where(s > cutoff, s, 1.0), 0.0)
    dag = (vh.conj().T * inv) @ u.conj().T
    return op_from_scalar_matrix(dag, T.codomain, T.domain)


def _range_basis(P: np.ndarray, rel: float) -> tuple:
    """Orthonormal bases of the range and kernel of a PSD matrix."""
    w, v = np.linalg.eigh((P + P.conj().T) / 2.0)
    top = w[-1] if w.size else 0.0
    keep = w > rel * max(top, 0.0)
    return v[:, keep], v[:, ~keep], w[keep]


def range_inclusion(T: AdjointableOp, K: AdjointableOp, tol: Tolerance = DEFAULT_TOL):
    """Least alpha with TT* <= alpha^2 KK*, or None if ran(T) is not
    contained in ran(K)."""
    if T.codomain != K.codomain:
        raise ValueError("operators must share a codomain")
    Mt, Mk = scalar_rep(T), scalar_rep(K)
    P = Mt @ Mt.conj().T
    Q = Mk @ Mk.conj().T
    W, W0, lam = _range_basis(Q, tol.rank_rel)
    scale = max(float(np.linalg.norm(P, 2)), 1e-300)
    if W0.shape[1] and np.linalg.norm(W0.conj().T @ P @ W0, 2) > tol.rank_rel * scale:
        return None
    if W.shape[1] == 0:
        return 0.0 if np.linalg.norm(P, 2) <= tol.rank_rel * scale else None
    B = (W / np.sqrt(lam)).conj().T @ P @ (W / np.sqrt(lam))
    alpha_sq = float(np.linalg.norm((B + B.conj().T) / 2.0, 2))
    return float(np.sqrt(max(alpha_sq, 0.0)))


def tensor_algebra(a, b):
    """Spatial tensor product, realized as a full matrix algebra."""
    from .algebra import full_matrices

    return full_matrices(a.n * b.n)


def tensor_module(h: ModuleDescriptor, k: ModuleDescriptor) -> ModuleDescriptor:
    return ModuleDescriptor(tensor_algebra(h.algebra, k.algebra), h.rank * k.rank)


def elementary_tensor(x: ModuleElement, y: ModuleElement) -> ModuleElement:
    """x (x) y with <x1(x)y1, x2(x)y2> = <x1,x2> (x) <y1,y2>."""
    mod = tensor_module(x.module, y.module)
    n = mod.algebra.n
    data = np.zeros((mod.rank, n, n), dtype=np.complex128)
    mk = y.module.rank
    for k in range(x.module.rank):
        xa = as_matrix(x.component(k))
        for l in range(mk):
            data[k * mk + l] = np.kron(xa, as_matrix(y.component(l)))
    return ModuleElement(mod, data)


def kron_op(T: AdjointableOp, U: AdjointableOp) -> AdjointableOp:
    """(T (x) U)(x (x) y) = Tx (x) Uy over the tensor module."""
    dom = tensor_module(T.domain, U.domain)
    cod = tensor_module(T.codomain, U.codomain)
    n = dom.algebra.n
    mu, pu = U.domain.rank, U.codomain.rank
    arr = np.zeros((dom.rank, cod.rank, n, n), dtype=np.complex128)
    for k in range(T.domain.rank):
        for j in range(T.codomain.rank):
            ca = as_matrix(T.coeff(k, j))
            for l in range(mu):
                for lp in range(pu):
                    arr[k * mu + l, j * pu + lp] = np.kron(ca, as_matrix(U.coeff(l, lp)))
    return AdjointableOp(dom, cod, arr)
