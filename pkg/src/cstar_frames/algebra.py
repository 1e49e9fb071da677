"""Finite-dimensional C*-algebra arithmetic.

Two kinds of ambient algebra are supported: the full matrix algebra of
complex n-by-n matrices, and its diagonal subalgebra (stored as length-n
vectors).  Elements carry their descriptor so that involution, norm,
Loewner order and spectral calculus all dispatch on the storage kind.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

__all__ = [
    "AlgebraKind",
    "AlgebraDescriptor",
    "AlgebraElement",
    "Tolerance",
    "DEFAULT_TOL",
    "StarHomomorphism",
    "full_matrices",
    "diagonals",
    "scalars",
    "element",
    "unit",
    "zero",
    "scalar_multiple",
    "random_algebra_element",
    "adjoint",
    "multiply",
    "as_matrix",
    "op_norm",
    "is_positive",
    "loewner_leq",
    "sqrt_psd",
    "invert",
    "hermitian_spectrum",
    "identity_hom",
    "slot_permutation",
    "unitary_conjugation",
]


class AlgebraKind(str, Enum):
    FULL = "full"
    DIAGONAL = "diagonal"


@dataclass(frozen=True)
class AlgebraDescriptor:
    """Ambient algebra: full n-by-n matrices or their diagonal part."""

    kind: AlgebraKind
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("algebra dimension must be >= 1")

    @property
    def element_shape(self) -> tuple:
        if self.kind is AlgebraKind.FULL:
            return (self.n, self.n)
        return (self.n,)

    @property
    def dim(self) -> int:
        """Complex-linear dimension of the algebra."""
        return self.n * self.n if self.kind is AlgebraKind.FULL else self.n


def full_matrices(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(AlgebraKind.FULL, n)


def diagonals(n: int) -> AlgebraDescriptor:
    return AlgebraDescriptor(AlgebraKind.DIAGONAL, n)


def scalars() -> AlgebraDescriptor:
    """The complex numbers, realized as the diagonal algebra of size 1."""
    return diagonals(1)


@dataclass(frozen=True)
class Tolerance:
    """Numerical policy for positivity, rank and reconstruction decisions."""

    psd_rel: float = 1e-9
    rank_rel: float = 1e-10
    recon_rel: float = 1e-10

    def __post_init__(self):
        if min(self.psd_rel, self.rank_rel, self.recon_rel) < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: AlgebraDescriptor
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128)
        if arr.shape != self.algebra.element_shape:
            raise ValueError(
                f"element shape {arr.shape} does not match algebra "
                f"{self.algebra.kind.value}({self.algebra.n})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and np.array_equal(self.data, other.data)

    def __add__(self, other):
        _require_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.data + other.data)

    def __sub__(self, other):
        _require_same_algebra(self, other)
        return AlgebraElement(self.algebra, self.data - other.data)

    def __neg__(self):
        return AlgebraElement(self.algebra, -self.data)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return AlgebraElement(self.algebra, self.data * complex(other))

    def __rmul__(self, other):
        return AlgebraElement(self.algebra, complex(other) * self.data)


def _require_same_algebra(a: AlgebraElement, b: AlgebraElement):
    if a.algebra != b.algebra:
        raise ValueError("algebra mismatch")


def element(algebra: AlgebraDescriptor, data) -> AlgebraElement:
    return AlgebraElement(algebra, np.asarray(data, dtype=np.complex128))


def unit(algebra: AlgebraDescriptor) -> AlgebraElement:
    if algebra.kind is AlgebraKind.FULL:
        return AlgebraElement(algebra, np.eye(algebra.n))
    return AlgebraElement(algebra, np.ones(algebra.n))


def zero(algebra: AlgebraDescriptor) -> AlgebraElement:
    return AlgebraElement(algebra, np.zeros(algebra.element_shape))


def scalar_multiple(algebra: AlgebraDescriptor, c) -> AlgebraElement:
    return complex(c) * unit(algebra)


def random_algebra_element(algebra: AlgebraDescriptor, rng: np.random.Generator) -> AlgebraElement:
    """Entries i.i.d. standard complex Gaussian."""
    shape = algebra.element_shape
    data = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return AlgebraElement(algebra, data)


def adjoint(a: AlgebraElement) -> AlgebraElement:
    if a.algebra.kind is AlgebraKind.FULL:
        return AlgebraElement(a.algebra, a.data.conj().T)
    return AlgebraElement(a.algebra, a.data.conj())


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    _require_same_algebra(a, b)
    if a.algebra.kind is AlgebraKind.FULL:
        return AlgebraElement(a.algebra, a.data @ b.data)
    return AlgebraElement(a.algebra, a.data * b.data)


def as_matrix(a: AlgebraElement) -> np.ndarray:
    """Matrix realization (diagonal elements are expanded)."""
    if a.algebra.kind is AlgebraKind.FULL:
        return np.asarray(a.data)
    return np.diag(a.data)


def op_norm(a: AlgebraElement) -> float:
    if a.algebra.kind is AlgebraKind.FULL:
        return float(np.linalg.norm(a.data, 2))
    return float(np.max(np.abs(a.data)))


def _hermitian_part(a: AlgebraElement) -> np.ndarray:
    if a.algebra.kind is AlgebraKind.FULL:
        return (a.data + a.data.conj().T) / 2.0
    return a.data.real.astype(np.complex128)


def _self_adjoint_defect(a: AlgebraElement) -> float:
    return op_norm(a - adjoint(a))


def is_positive(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    scale = tol.psd_rel * max(1.0, op_norm(a))
    if _self_adjoint_defect(a) > scale:
        return False
    h = _hermitian_part(a)
    if a.algebra.kind is AlgebraKind.FULL:
        lam_min = float(np.linalg.eigvalsh(h)[0])
    else:
        lam_min = float(np.min(h.real)) if h.size else 0.0
    return lam_min >= -scale


def loewner_leq(a: AlgebraElement, b: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> bool:
    _require_same_algebra(a, b)
    return is_positive(b - a, tol)


def sqrt_psd(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """Positive square root; negative spectral leakage is clamped to zero."""
    if not is_positive(a, tol):
        raise ValueError("not positive")
    if a.algebra.kind is AlgebraKind.DIAGONAL:
        vals = np.clip(a.data.real, 0.0, None)
        return AlgebraElement(a.algebra, np.sqrt(vals))
    w, v = np.linalg.eigh(_hermitian_part(a))
    w = np.clip(w, 0.0, None)
    return AlgebraElement(a.algebra, (v * np.sqrt(w)) @ v.conj().T)


def invert(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    if a.algebra.kind is AlgebraKind.DIAGONAL:
        mags = np.abs(a.data)
        if mags.size == 0 or np.min(mags) <= tol.rank_rel * np.max(mags) or np.max(mags) == 0.0:
            raise ValueError("not invertible")
        return AlgebraElement(a.algebra, 1.0 / a.data)
    s = np.linalg.svd(a.data, compute_uv=False)
    if s[-1] <= tol.rank_rel * s[0] or s[0] == 0.0:
        raise ValueError("not invertible")
    return AlgebraElement(a.algebra, np.linalg.inv(a.data))


def hermitian_spectrum(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Real eigenvalues in ascending order; input must be self-adjoint."""
    if _self_adjoint_defect(a) > tol.psd_rel * max(1.0, op_norm(a)):
        raise ValueError("not self-adjoint")
    if a.algebra.kind is AlgebraKind.DIAGONAL:
        return np.sort(a.data.real)
    return np.linalg.eigvalsh(_hermitian_part(a))


@dataclass(frozen=True)
class StarHomomorphism:
    """Built-in unital *-homomorphism: identity, diagonal slot permutation,
    or conjugation by a fixed unitary."""

    kind: str
    algebra: AlgebraDescriptor
    data: np.ndarray | None = field(default=None)

    def __post_init__(self):
        if self.kind == "identity":
            return
        if self.kind == "slot-permutation":
            if self.algebra.kind is not AlgebraKind.DIAGONAL:
                raise ValueError("slot permutation requires a diagonal algebra")
            perm = np.asarray(self.data, dtype=np.intp)
            if sorted(perm.tolist()) != list(range(self.algebra.n)):
                raise ValueError("not a permutation of the slots")
            object.__setattr__(self, "data", perm)
            return
        if self.kind == "unitary-conjugation":
            if self.algebra.kind is not AlgebraKind.FULL:
                raise ValueError("unitary conjugation requires a full matrix algebra")
            u = np.asarray(self.data, dtype=np.complex128)
            if u.shape != (self.algebra.n, self.algebra.n):
                raise ValueError("unitary has wrong shape")
            if np.linalg.norm(u @ u.conj().T - np.eye(self.algebra.n), 2) > 1e-9:
                raise ValueError("matrix is not unitary")
            object.__setattr__(self, "data", u)
            return
        raise ValueError(f"unknown homomorphism kind {self.kind!r}")

    def of(self, a: AlgebraElement) -> AlgebraElement:
        if a.algebra != self.algebra:
            raise ValueError("algebra mismatch")
        if self.kind == "identity":
            return a
        if self.kind == "slot-permutation":
            return AlgebraElement(a.algebra, a.data[self.data])
        return AlgebraElement(a.algebra, self.data @ a.data @ self.data.conj().T)


def identity_hom(algebra: AlgebraDescriptor) -> StarHomomorphism:
    return StarHomomorphism("identity", algebra)


def slot_permutation(algebra: AlgebraDescriptor, perm) -> StarHomomorphism:
    return StarHomomorphism("slot-permutation", algebra, np.asarray(perm))


def unitary_conjugation(algebra: AlgebraDescriptor, u) -> StarHomomorphism:
    return StarHomomorphism("unitary-conjugation", algebra, np.asarray(u))
