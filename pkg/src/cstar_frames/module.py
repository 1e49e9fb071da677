"""Standard Hilbert modules A^m with algebra-valued inner product.

An element is a stack of m algebra elements; the inner product is
<x, y> = sum_k x_k y_k*.  ``vectorize`` flattens an element
component-major then row-major, which turns the trace pairing
tr<x, y> into the ordinary complex dot product.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraElement,
    AlgebraDescriptor,
    AlgebraKind,
    DEFAULT_TOL,
    StarHomomorphism,
    Tolerance,
    op_norm,
    sqrt_psd,
)

__all__ = [
    "ModuleDescriptor",
    "ModuleElement",
    "element",
    "zero_element",
    "basis_element",
    "inner",
    "act",
    "norm",
    "avalued_abs",
    "vectorize",
    "from_vector",
    "random_element",
    "map_components",
]


@dataclass(frozen=True)
class ModuleDescriptor:
    """The standard module A^m over the given algebra."""

    algebra: AlgebraDescriptor
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("module rank must be >= 1")

    @property
    def element_shape(self) -> tuple:
        return (self.rank,) + self.algebra.element_shape

    @property
    def vector_dim(self) -> int:
        """Length of the vectorized coordinates of an element."""
        return self.rank * self.algebra.dim


@dataclass(frozen=True, eq=False)
class ModuleElement:
    module: ModuleDescriptor
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.complex128)
        if arr.shape != self.module.element_shape:
            raise ValueError(
                f"element shape {arr.shape} does not match module of rank "
                f"{self.module.rank} over {self.module.algebra.kind.value}"
                f"({self.module.algebra.n})"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    def component(self, k: int) -> AlgebraElement:
        return AlgebraElement(self.module.algebra, self.data[k])

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.module == other.module and np.array_equal(self.data, other.data)

    def __add__(self, other):
        _require_same_module(self, other)
        return ModuleElement(self.module, self.data + other.data)

    def __sub__(self, other):
        _require_same_module(self, other)
        return ModuleElement(self.module, self.data - other.data)

    def __neg__(self):
        return ModuleElement(self.module, -self.data)

    def __mul__(self, c):
        return ModuleElement(self.module, self.data * complex(c))

    __rmul__ = __mul__


def _require_same_module(x: ModuleElement, y: ModuleElement):
    if x.module != y.module:
        raise ValueError("module mismatch")


def element(module: ModuleDescriptor, components) -> ModuleElement:
    """Build an element from a sequence of algebra elements or raw arrays."""
    rows = []
    for c in components:
        rows.append(c.data if isinstance(c, AlgebraElement) else np.asarray(c))
    return ModuleElement(module, np.stack([np.asarray(r, dtype=np.complex128) for r in rows]))


def zero_element(module: ModuleDescriptor) -> ModuleElement:
    return ModuleElement(module, np.zeros(module.element_shape))


def basis_element(module: ModuleDescriptor, k: int) -> ModuleElement:
    """Element with the algebra unit in component k and zero elsewhere."""
    data = np.zeros(module.element_shape, dtype=np.complex128)
    if module.algebra.kind is AlgebraKind.FULL:
        data[k] = np.eye(module.algebra.n)
    else:
        data[k] = np.ones(module.algebra.n)
    return ModuleElement(module, data)


def inner(x: ModuleElement, y: ModuleElement) -> AlgebraElement:
    """<x, y> = sum_k x_k y_k*, conjugate-symmetric and left-linear in x."""
    _require_same_module(x, y)
    if x.module.algebra.kind is AlgebraKind.FULL:
        g = np.einsum("kil,kjl->ij", x.data, y.data.conj())
    else:
        g = np.einsum("ks,ks->s", x.data, y.data.conj())
    return AlgebraElement(x.module.algebra, g)


def act(a: AlgebraElement, x: ModuleElement) -> ModuleElement:
    """Left module action, componentwise multiplication by a."""
    if a.algebra != x.module.algebra:
        raise ValueError("algebra mismatch")
    if a.algebra.kind is AlgebraKind.FULL:
        return ModuleElement(x.module, np.einsum("il,klj->kij", a.data, x.data))
    return ModuleElement(x.module, a.data[np.newaxis, :] * x.data)


def norm(x: ModuleElement) -> float:
    return float(np.sqrt(op_norm(inner(x, x))))


def avalued_abs(x: ModuleElement, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    return sqrt_psd(inner(x, x), tol)


def vectorize(x: ModuleElement) -> np.ndarray:
    """Flat coordinates, component-major then row-major.

    tr<x, y> equals the standard complex inner product of the coordinates.
    """
    return x.data.reshape(-1)


def from_vector(module: ModuleDescriptor, v: np.ndarray) -> ModuleElement:
    v = np.asarray(v, dtype=np.complex128)
    if v.shape != (module.vector_dim,):
        raise ValueError("coordinate vector has wrong length")
    return ModuleElement(module, v.reshape(module.element_shape))


def random_element(module: ModuleDescriptor, seed) -> ModuleElement:
    """Deterministic Gaussian element; ``seed`` is an int or a Generator."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    shape = module.element_shape
    data = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    return ModuleElement(module, data)


def map_components(hom: StarHomomorphism, x: ModuleElement) -> ModuleElement:
    """Apply a *-homomorphism to every component (the transport map)."""
    return element(x.module, [hom.of(x.component(k)) for k in range(x.module.rank)])
