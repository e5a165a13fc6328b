"""Superposition plans that drive an entangled state to a product state."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .errors import (
    DegenerateMergeUnavoidableError,
    MaximallyEntangledError,
    MaximallyEntangledPairError,
    NoRootFoundError,
    NotBipartiteError,
    NotGHZFormError,
    RankTooLowError,
)
from .partitions import Bipartition
from .robustness import Classification, classify
from .schmidt import DEFAULT_TOL, SchmidtDecomposition, schmidt_decompose
from .states import (
    ProductState,
    PureState,
    SuperpositionPlan,
    product_state,
)

EQUAL_TOL = 1e-8
GRID_POINTS = 10_000


# -- two-term elimination ---------------------------------------------------


@dataclass(frozen=True, eq=False)
class EliminationStep:
    """One orthogonal product state that disentangles ``a0|00> + a1|11>``.

    ``sqrt(p) (a0|00> + a1|11>) + sqrt(1-p) |alpha>|beta>`` is the product
    ``resulting_factor``, with ``|alpha> = cos(alpha)|0> + e^{i theta} sin(alpha)|1>``
    and likewise for ``beta`` with phase ``delta``.
    """

    a0: float
    a1: float
    p: float
    alpha: float
    beta: float
    theta: float
    delta: float
    resulting_factor: ProductState
    scale: float

    @property
    def product(self) -> ProductState:
        return product_state(
            [
                [np.cos(self.alpha), np.exp(1j * self.theta) * np.sin(self.alpha)],
                [np.cos(self.beta), np.exp(1j * self.delta) * np.sin(self.beta)],
            ]
        )

    @property
    def orthogonality_residual(self) -> float:
        """Left side of ``a0 cos(a) cos(b) + a1 sin(a) sin(b) = 0``."""
        a, b = self.alpha, self.beta
        return self.a0 * np.cos(a) * np.cos(b) + self.a1 * np.sin(a) * np.sin(b)

    @property
    def separability_residual(self) -> float:
        """Left side of ``p a0 a1 + sqrt(p(1-p)) [a0 sin sin + a1 cos cos] = 0``."""
        a, b, p = self.alpha, self.beta, self.p
        k = self.a0 * np.sin(a) * np.sin(b) + self.a1 * np.cos(a) * np.cos(b)
        return p * self.a0 * self.a1 + sqrt(p * (1 - p)) * k

    def superposed(self) -> np.ndarray:
        pair = np.array([self.a0, 0, 0, self.a1], dtype=np.complex128)
        return sqrt(self.p) * pair + sqrt(1 - self.p) * self.product.vector()


def _angles(a0: float, a1: float, alpha: np.ndarray):
    """beta from the orthogonality condition and p from the determinant condition."""
    beta = np.arctan2(-a0 * np.cos(alpha), a1 * np.sin(alpha))
    k = a0 * np.sin(alpha) * np.sin(beta) + a1 * np.cos(alpha) * np.cos(beta)
    # beta -> beta + pi flips the sign of the product state; we need k < 0
    flip = k > 0
    beta = np.where(flip, beta + np.pi, beta)
    beta = np.where(beta > np.pi, beta - 2 * np.pi, beta)
    k = -np.abs(k)
    t = -k / (a0 * a1)
    p = t**2 / (1 + t**2)
    return beta, p


def pairwise_eliminate(a0: float, a1: float, *, alpha: float | None = None) -> EliminationStep:
    """Find ``p, alpha, beta`` making the two-term superposition a product state.

    Without ``alpha``, scans ``alpha`` over a fixed grid in ``(0, pi)`` and keeps
    the root whose mixing weight ``p`` is closest to 1/2.
    """
    a0, a1 = float(a0), float(a1)
    if a0 <= 0 or a1 <= 0:
        raise ValueError("coefficients must be positive")
    norm = np.hypot(a0, a1)
    a0, a1 = a0 / norm, a1 / norm
    if abs(a0 - a1) <= EQUAL_TOL:
        raise MaximallyEntangledPairError(
            "equal coefficients: no orthogonal product state yields a product"
        )

    if alpha is not None:
        alphas = np.array([float(alpha)])
    else:
        alphas = np.pi * (np.arange(GRID_POINTS) + 0.5) / GRID_POINTS
    betas, ps = _angles(a0, a1, alphas)
    ok = (ps > 1e-12) & (ps < 1 - 1e-12)
    if not np.any(ok):
        raise NoRootFoundError(f"no admissible root for a0={a0}, a1={a1}")
    idx = np.flatnonzero(ok)
    best = idx[np.argmin(np.abs(ps[idx] - 0.5))]
    p, al, be = float(ps[best]), float(alphas[best]), float(betas[best])

    u = np.array([np.cos(al), np.sin(al)])
    v = np.array([np.cos(be), np.sin(be)])
    mat = sqrt(p) * np.diag([a0, a1]) + sqrt(1 - p) * np.outer(u, v)
    left, s, right = np.linalg.svd(mat)
    factor = product_state([left[:, 0], right[0]])
    return EliminationStep(a0, a1, p, al, be, 0.0, 0.0, factor, float(s[0]))


# -- plans --------------------------------------------------------------------


@dataclass
class PlanVerification:
    classification: Classification
    base_overlaps: np.ndarray  # <base|p_i>
    gram: np.ndarray  # <p_i|p_j>
    state: PureState

    @property
    def kind(self):
        return self.classification.kind


def verify_plan(base: PureState, plan: SuperpositionPlan, tol: float = DEFAULT_TOL) -> PlanVerification:
    """Classify the superposed state and report overlaps of the plan states."""
    state = plan.apply(base)
    vecs = [p.vector() for p in plan.states]
    if vecs:
        mat = np.array(vecs)
        gram = mat.conj() @ mat.T
        overlaps = mat @ base.amps.conj()
    else:
        gram = np.zeros((0, 0), dtype=np.complex128)
        overlaps = np.zeros(0, dtype=np.complex128)
    return PlanVerification(classify(state, tol), overlaps, gram, state)


def _bipartite_schmidt(state: PureState, tol: float) -> SchmidtDecomposition:
    if state.n != 2:
        raise NotBipartiteError(f"expected a bipartite state, got {state.n} parties")
    dec = schmidt_decompose(state, Bipartition((0,), (1,)), tol)
    if dec.rank < 2:
        raise RankTooLowError(f"Schmidt rank {dec.rank} < 2: state is already a product")
    return dec


def _frame(dec: SchmidtDecomposition):
    r = dec.rank
    coeffs = dec.coeffs[:r] / np.linalg.norm(dec.coeffs[:r])
    return coeffs, dec.left_vecs[:r], dec.right_vecs[:r]


def _check_not_uniform(coeffs: np.ndarray) -> None:
    r = len(coeffs)
    if np.max(np.abs(np.abs(coeffs) - 1 / sqrt(r))) <= EQUAL_TOL:
        raise MaximallyEntangledError(
            f"all {r} Schmidt coefficients equal 1/sqrt({r})"
        )


def lemma2_construction(state: PureState, tol: float = DEFAULT_TOL) -> SuperpositionPlan:
    """``r`` mutually orthogonal product states, each orthogonal to the state.

    ``p_i = |i>(x)(sum_{j!=i}|j>)/sqrt(r-1)`` in the Schmidt bases, lead ``1/sqrt(r)``
    and weights ``sqrt((r-1)/r) a_i``; the result is ``(sum a_i|i>)(x)(sum|j>)/sqrt(r)``.
    """
    coeffs, left, right = _frame(_bipartite_schmidt(state, tol))
    r = len(coeffs)
    total_right = right.sum(axis=0)
    terms = []
    for i in range(r):
        other = (total_right - right[i]) / sqrt(r - 1)
        terms.append((sqrt((r - 1) / r) * coeffs[i], product_state([left[i], other])))
    return SuperpositionPlan(1 / sqrt(r), tuple(terms))


def _balanced_basis(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the complement of ``f`` (columns), each with equal overlap on ``g``."""
    r = len(f)
    gh = g / np.linalg.norm(g)
    q, _ = np.linalg.qr(np.column_stack([f, gh, np.eye(r)]))
    h = np.column_stack([gh, q[:, 2:r]])
    m = r - 1
    uniform = np.full(m, 1 / sqrt(m))
    v = np.eye(m)[0] - uniform
    if np.linalg.norm(v) < 1e-15:
        return h
    householder = np.eye(m) - 2 * np.outer(v, v) / (v @ v)
    return h @ householder


def orthogonal_core(coeffs: np.ndarray):
    """Real construction behind :func:`theorem4_construction`.

    For ``A = diag(coeffs)`` returns ``(E, W, a, b)`` with orthonormal columns
    ``E[:, i]`` such that ``A - outer(a, b) = sum_i outer(E[:, i], W[i])`` and
    ``E[:, i] @ A @ W[i] = 0``: the ``r - 1`` products ``e_i (x) w_i`` are
    mutually orthogonal and orthogonal to the state.
    """
    coeffs = np.asarray(coeffs, dtype=float)
    r = len(coeffs)
    _check_not_uniform(coeffs)
    a2 = coeffs**2
    f = np.full(r, 1 / sqrt(r))
    g = a2 * f
    g = g - (f @ g) * f
    e = _balanced_basis(f, g)
    overlap = e.T @ (a2 * f)  # e_i . A^2 f, all equal and nonzero
    c = np.einsum("ki,k,ki->i", e, a2, e) / overlap
    a_vec = e @ c + f
    b_vec = coeffs * f
    w = coeffs[None, :] * e.T - c[:, None] * b_vec[None, :]
    return e, w, a_vec, b_vec


def _orthogonal_terms(coeffs, left, right):
    e, w, _, _ = orthogonal_core(coeffs)
    terms = []
    for i in range(len(coeffs) - 1):
        weight = np.linalg.norm(w[i])
        lf = e[:, i] @ left
        rf = (w[i] / weight) @ right
        terms.append((-weight, product_state([lf, rf])))
    return terms


def _sequential_terms(coeffs, left, right):
    """Merge two Schmidt terms at a time, most unequal pair first."""
    r = len(coeffs)
    first = int(np.argmax(coeffs))
    cur_x = np.eye(r)[first]
    cur_y = np.eye(r)[first]
    cur_c = float(coeffs[first])
    remaining = [i for i in range(r) if i != first]
    lead = 1.0
    raw_terms: list[list] = []
    while remaining:
        gaps = [abs(cur_c - lead * coeffs[j]) for j in remaining]
        j = remaining.pop(int(np.argmax(gaps)))
        c0, c1 = cur_c, lead * coeffs[j]
        if abs(c0 - c1) <= EQUAL_TOL * np.hypot(c0, c1):
            raise DegenerateMergeUnavoidableError(
                "every remaining merge pairs equal coefficients"
            )
        norm = np.hypot(c0, c1)
        step = pairwise_eliminate(c0 / norm, c1 / norm)
        ej = np.eye(r)[j]
        px = np.cos(step.alpha) * cur_x + np.sin(step.alpha) * ej
        py = np.cos(step.beta) * cur_y + np.sin(step.beta) * ej
        shrink = sqrt(step.p) / norm
        lead *= shrink
        for term in raw_terms:
            term[0] *= shrink
        raw_terms.append([sqrt(1 - step.p), px, py])
        fx, fy = step.resulting_factor.factors
        cur_x = np.real(fx[0]) * cur_x + np.real(fx[1]) * ej
        cur_y = np.real(fy[0]) * cur_y + np.real(fy[1]) * ej
        cur_c = step.scale
    terms = [(mu, product_state([px @ left, py @ right])) for mu, px, py in raw_terms]
    return lead, terms


def theorem4_construction(
    state: PureState, tol: float = DEFAULT_TOL, strategy: str = "orthogonal"
) -> SuperpositionPlan:
    """``r - 1`` product states whose superposition with a rank-``r`` state is a product.

    ``strategy="orthogonal"`` (default) gives states that are mutually orthogonal
    and orthogonal to the input. ``strategy="sequential"`` merges two Schmidt
    terms at a time with :func:`pairwise_eliminate`; each new state is
    orthogonal only to the intermediate state it acts on.
    """
    coeffs, left, right = _frame(_bipartite_schmidt(state, tol))
    _check_not_uniform(coeffs)
    if strategy == "orthogonal":
        return SuperpositionPlan(1.0, tuple(_orthogonal_terms(coeffs, left, right)))
    if strategy == "sequential":
        lead, terms = _sequential_terms(coeffs, left, right)
        return SuperpositionPlan(lead, tuple(terms))
    raise ValueError(f"unknown strategy {strategy!r}")


def ghz_coefficients(state: PureState, tol: float = 1e-10) -> dict[int, complex]:
    """Nonzero ``a_i`` when the state is ``sum_i a_i |iii>`` in the computational basis."""
    if state.n != 3:
        raise NotGHZFormError(f"expected 3 parties, got {state.n}")
    t = state.tensor
    diag = {i: complex(t[i, i, i]) for i in range(min(state.dims))}
    off = state.amps.copy()
    for i in diag:
        off[np.ravel_multi_index((i, i, i), state.dims)] = 0
    if np.linalg.norm(off) > tol:
        raise NotGHZFormError("state has weight off the |iii> diagonal")
    return {i: a for i, a in diag.items() if abs(a) > tol}


def theorem5_construction(state: PureState, tol: float = DEFAULT_TOL) -> SuperpositionPlan:
    """``2r - 1`` product states, all orthogonal to ``sum_i a_i|iii>``, giving a full product.

    The first ``r`` states turn the state into ``(sum a_i|ii>)(x)u`` with
    ``u = sum|j>/sqrt(r)``; the other ``r - 1`` carry the two-party plan of
    :func:`theorem4_construction` tensored with ``u``.
    """
    amps = ghz_coefficients(state)
    support = sorted(amps)
    r = len(support)
    if r < 2:
        raise RankTooLowError("a single |iii> term is already a product")
    a = np.array([amps[i] for i in support])
    _check_not_uniform(np.abs(a))
    d1, d2, d3 = state.dims

    def basis(d, i):
        v = np.zeros(d, dtype=np.complex128)
        v[i] = 1
        return v

    u = sum(basis(d3, j) for j in support) / sqrt(r)
    terms = []
    for i, ai in zip(support, a):
        rest = sum(basis(d3, j) for j in support if j != i) / sqrt(r - 1)
        terms.append((sqrt((r - 1) / r) * ai, product_state([basis(d1, i), basis(d2, i), rest])))

    phases = a / np.abs(a)
    left = np.array([phases[k] * basis(d1, i) for k, i in enumerate(support)])
    right = np.array([basis(d2, i) for i in support])
    for eta, q in _orthogonal_terms(np.abs(a), left, right):
        terms.append((eta, product_state([*q.factors, u])))
    return SuperpositionPlan(1 / sqrt(r), tuple(terms))

