"""Dense n-partite pure states, product states and superpositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence

import numpy as np

from .errors import (
    CancellationToZeroError,
    ShapeMismatchError,
    TrivialLeadError,
    ZeroFactorError,
    ZeroVectorError,
)
from .partitions import Bipartition

ZERO_NORM = 1e-12
_EPS = np.finfo(float).eps


def _normalized(vec: np.ndarray, what: type[Exception]) -> np.ndarray:
    norm = np.linalg.norm(vec)
    if not np.isfinite(norm):
        raise ShapeMismatchError("amplitudes must be finite")
    if norm < ZERO_NORM:
        raise what(f"vector norm {norm:.3g} is below {ZERO_NORM}")
    # leave already-unit vectors bit-identical so JSON round trips are exact
    if abs(norm - 1.0) <= 4 * _EPS:
        return vec
    return vec / norm


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitudes of a state on parties with local dimensions ``dims``.

    ``amps`` is flat, in row-major multi-index order, and read-only.
    """

    dims: tuple[int, ...]
    amps: np.ndarray

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def __repr__(self) -> str:
        return f"PureState(dims={self.dims})"


@dataclass(frozen=True, eq=False)
class ProductState:
    """Tensor product of one unit vector per party."""

    factors: tuple[np.ndarray, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    def vector(self) -> np.ndarray:
        out = np.ones(1, dtype=np.complex128)
        for f in self.factors:
            out = np.kron(out, f)
        return out

    def to_pure(self) -> PureState:
        return make_state(self.dims, self.vector())


@dataclass(frozen=True, eq=False)
class SuperpositionPlan:
    """``lead * base + sum(coeff * product)``; coefficients need not be normalized."""

    lead: complex
    terms: tuple[tuple[complex, ProductState], ...] = field(default_factory=tuple)

    def __post_init__(self):
        if abs(self.lead) == 0:
            raise TrivialLeadError("lead coefficient must be nonzero")
        object.__setattr__(
            self, "terms", tuple((complex(c), p) for c, p in self.terms)
        )
        object.__setattr__(self, "lead", complex(self.lead))

    @property
    def states(self) -> list[ProductState]:
        return [p for _, p in self.terms]

    def apply(self, base: PureState) -> PureState:
        return superpose(self.lead, base, self.terms)


def make_state(dims: Sequence[int], amps) -> PureState:
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ShapeMismatchError("a state needs at least one party")
    if any(d < 2 for d in dims):
        raise ShapeMismatchError(f"local dimensions must be >= 2, got {dims}")
    vec = np.asarray(amps, dtype=np.complex128).reshape(-1)
    if vec.size != prod(dims):
        raise ShapeMismatchError(
            f"{vec.size} amplitudes do not fit dims {dims} (need {prod(dims)})"
        )
    return PureState(dims, _frozen(_normalized(vec, ZeroVectorError)))


def product_state(factors: Sequence) -> ProductState:
    out = []
    for f in factors:
        vec = np.asarray(f, dtype=np.complex128).reshape(-1)
        if vec.size < 2:
            raise ShapeMismatchError("local factors need dimension >= 2")
        out.append(_frozen(_normalized(vec, ZeroFactorError)))
    if not out:
        raise ShapeMismatchError("a product state needs at least one factor")
    return ProductState(tuple(out))


def superposition_vector(lead: complex, base: PureState, terms) -> np.ndarray:
    """Unnormalized ``lead * base + sum(c * p)``."""
    if lead == 0:
        raise TrivialLeadError("nontrivial superposition requires lead != 0")
    vec = complex(lead) * base.amps
    for coeff, prod_state in terms:
        if prod_state.dims != base.dims:
            raise ShapeMismatchError(
                f"product state dims {prod_state.dims} != base dims {base.dims}"
            )
        vec = vec + complex(coeff) * prod_state.vector()
    return vec


def superpose(lead: complex, base: PureState, terms=()) -> PureState:
    vec = superposition_vector(lead, base, terms)
    if np.linalg.norm(vec) < ZERO_NORM:
        raise CancellationToZeroError("superposition cancels to the zero vector")
    if not terms and lead == 1:
        return base
    return make_state(base.dims, vec)


def bipartition_matrix(state: PureState, part: Bipartition) -> np.ndarray:
    """Amplitudes as a matrix with rows indexed by ``part.left``, columns by ``part.right``."""
    part.check(state.n)
    rows = prod(state.dims[i] for i in part.left)
    mat = np.transpose(state.tensor, part.left + part.right)
    return mat.reshape(rows, -1)


def inner_product(a: PureState, b: PureState) -> complex:
    """``<a|b>``, conjugate-linear in ``a``."""
    if a.dims != b.dims:
        raise ShapeMismatchError(f"dims differ: {a.dims} vs {b.dims}")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: PureState, b: PureState) -> float:
    """``|<a|b>|**2``; the comparison used for states equal up to global phase."""
    return abs(inner_product(a, b)) ** 2


# -- constructors used by fixtures, tests and the CLI ---------------------


def basis_state(dims: Sequence[int], index: Sequence[int]) -> PureState:
    vec = np.zeros(dims, dtype=np.complex128)
    vec[tuple(index)] = 1.0
    return make_state(dims, vec)


def ket(bits: str, d: int = 2) -> PureState:
    """``ket("011")`` is |011> on qubits."""
    digits = [int(c) for c in bits]
    return basis_state([d] * len(digits), digits)


def ghz(n: int, d: int = 2, coeffs=None) -> PureState:
    """``sum_i a_i |i i ... i>``; uniform coefficients by default."""
    coeffs = np.ones(d) if coeffs is None else np.asarray(coeffs, dtype=np.complex128)
    vec = np.zeros([d] * n, dtype=np.complex128)
    for i, c in enumerate(coeffs):
        vec[(i,) * n] = c
    return make_state([d] * n, vec)


def w_state(n: int) -> PureState:
    vec = np.zeros([2] * n, dtype=np.complex128)
    for i in range(n):
        idx = [0] * n
        idx[i] = 1
        vec[tuple(idx)] = 1.0
    return make_state([2] * n, vec)


def tensor(*states: PureState) -> PureState:
    vec = np.ones(1, dtype=np.complex128)
    dims: list[int] = []
    for s in states:
        vec = np.kron(vec, s.amps)
        dims.extend(s.dims)
    return make_state(dims, vec)


def permute_parties(state: PureState, order: Sequence[int]) -> PureState:
    """New state whose party ``k`` is party ``order[k]`` of ``state``."""
    order = tuple(order)
    if sorted(order) != list(range(state.n)):
        raise ShapeMismatchError(f"{order} is not a permutation of {state.n} parties")
    t = np.transpose(state.tensor, order)
    return make_state([state.dims[i] for i in order], t)


def random_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_state(dims: Sequence[int], rng: np.random.Generator) -> PureState:
    return make_state(dims, random_vector(prod(dims), rng))


def random_product(dims: Sequence[int], rng: np.random.Generator) -> ProductState:
    return product_state([random_vector(d, rng) for d in dims])


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def apply_local(state: PureState, ops: Sequence[np.ndarray]) -> PureState:
    """Apply one local operator per party."""
    t = state.tensor
    for axis, op in enumerate(ops):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [axis])), 0, axis)
    return make_state(state.dims, t)
