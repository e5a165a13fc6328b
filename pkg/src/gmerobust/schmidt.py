"""Schmidt decompositions, numerical rank and the first/second-order rank profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .partitions import Bipartition, enumerate_ordered, enumerate_unordered, nested
from .states import PureState, bipartition_matrix, make_state

DEFAULT_TOL = 1e-10
ABS_FLOOR = 1e-12
MARGINAL_FACTOR = 10.0


def numerical_rank(singular_values: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Count of ``s_i > tol * s_1`` (and above the absolute floor)."""
    sv = np.asarray(singular_values, dtype=float)
    if sv.size == 0 or sv[0] <= ABS_FLOOR:
        return 0
    return int(np.count_nonzero(sv > max(tol * sv[0], ABS_FLOOR)))


def is_marginal(singular_values: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True when some singular value sits within a factor 10 of the rank cutoff."""
    sv = np.asarray(singular_values, dtype=float)
    if sv.size < 2 or sv[0] <= ABS_FLOOR:
        return False
    rel = sv[1:] / sv[0]
    return bool(np.any((rel > tol / MARGINAL_FACTOR) & (rel < tol * MARGINAL_FACTOR)))


def _check_tol(tol: float) -> None:
    if not 0 < tol < 1:
        raise ValueError(f"tolerance must lie in (0, 1), got {tol}")


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``state = sum_i coeffs[i] * left_vecs[i] (x) right_vecs[i]``.

    All singular values are kept in ``coeffs``; only the first ``rank`` count.
    """

    part: Bipartition
    coeffs: np.ndarray
    left_vecs: np.ndarray  # (k, dim_left)
    right_vecs: np.ndarray  # (k, dim_right)
    rank: int
    left_dims: tuple[int, ...]
    right_dims: tuple[int, ...]
    marginal: bool = False

    def left_state(self, i: int) -> PureState:
        return make_state(self.left_dims, self.left_vecs[i])

    def right_state(self, i: int) -> PureState:
        return make_state(self.right_dims, self.right_vecs[i])

    @property
    def degenerate(self) -> bool:
        """Two retained coefficients coincide, so the Schmidt vectors are not unique."""
        kept = self.coeffs[: self.rank]
        return bool(np.any(np.abs(np.diff(kept)) < 1e-8 * max(kept[0], ABS_FLOOR)))

    def reconstruct(self) -> np.ndarray:
        """Matrix ``sum_i c_i |l_i><r_i*|`` in the bipartition layout."""
        r = self.rank
        return (self.left_vecs[:r].T * self.coeffs[:r]) @ self.right_vecs[:r]


def schmidt_decompose(
    state: PureState, part: Bipartition, tol: float = DEFAULT_TOL
) -> SchmidtDecomposition:
    _check_tol(tol)
    mat = bipartition_matrix(state, part)
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    return SchmidtDecomposition(
        part=part,
        coeffs=s,
        left_vecs=u.T.copy(),
        right_vecs=vh,
        rank=numerical_rank(s, tol),
        left_dims=tuple(state.dims[i] for i in part.left),
        right_dims=tuple(state.dims[i] for i in part.right),
        marginal=is_marginal(s, tol),
    )


def schmidt_rank(state: PureState, part: Bipartition, tol: float = DEFAULT_TOL) -> int:
    s = np.linalg.svd(bipartition_matrix(state, part), compute_uv=False)
    return numerical_rank(s, tol)


@dataclass
class RankProfile:
    per_bipartition: dict[Bipartition, int]
    r1_min: int
    r1_max: int
    tol: float
    r2_min: Optional[int] = None
    marginal: bool = False
    # n == 2: the nested split never exists and r2_min falls back to r1_min
    order2_vacuous: bool = False
    # some Schmidt spectrum used by r2_min had repeated coefficients
    schmidt_degenerate: bool = False
    minimizers: list[Bipartition] = field(default_factory=list)

    def rank(self, part: Bipartition) -> int:
        if part in self.per_bipartition:
            return self.per_bipartition[part]
        return self.per_bipartition[part.swapped()]

    def to_json(self) -> dict:
        out = {
            "ranks": {p.label(): r for p, r in self.per_bipartition.items()},
            "r1_min": self.r1_min,
            "r1_max": self.r1_max,
            "r2_min": self.r2_min,
            "tol": self.tol,
            "marginal": self.marginal,
        }
        if self.r2_min is not None:
            out["order2_vacuous"] = self.order2_vacuous
            out["schmidt_degenerate"] = self.schmidt_degenerate
        return out


def rank_profile(
    state: PureState, tol: float = DEFAULT_TOL, *, second_order: bool = False
) -> RankProfile:
    """Schmidt ranks across every unordered bipartition, plus their min and max."""
    _check_tol(tol)
    ranks: dict[Bipartition, int] = {}
    marginal = False
    for part in enumerate_unordered(state.n):
        s = np.linalg.svd(bipartition_matrix(state, part), compute_uv=False)
        ranks[part] = numerical_rank(s, tol)
        marginal = marginal or is_marginal(s, tol)
    values = list(ranks.values())
    r1_min = min(values)
    profile = RankProfile(
        per_bipartition=ranks,
        r1_min=r1_min,
        r1_max=max(values),
        tol=tol,
        marginal=marginal,
        minimizers=[p for p, r in ranks.items() if r == r1_min],
    )
    if second_order:
        value, vacuous, degenerate = _second_order(state, tol)
        profile.r2_min = value
        profile.order2_vacuous = vacuous
        profile.schmidt_degenerate = degenerate
    return profile


def _min_nested_rank(vec_state: PureState, tol: float) -> int:
    """Smallest Schmidt rank of a sub-state over its own bipartitions (1 for one party)."""
    if vec_state.n == 1:
        return 1
    return min(schmidt_rank(vec_state, p, tol) for p in nested(range(vec_state.n)))


def _second_order(state: PureState, tol: float) -> tuple[int, bool, bool]:
    if state.n == 2:
        ranks = [schmidt_rank(state, p, tol) for p in enumerate_unordered(2)]
        return min(ranks), True, False
    best = None
    degenerate = False
    for part in enumerate_ordered(state.n):
        dec = schmidt_decompose(state, part, tol)
        if len(part.left) == 1:
            total = dec.rank
        else:
            degenerate = degenerate or dec.degenerate
            total = sum(
                _min_nested_rank(dec.left_state(i), tol) for i in range(dec.rank)
            )
        if best is None or total < best:
            best = total
    return best, False, degenerate


def r2_min(state: PureState, tol: float = DEFAULT_TOL) -> int:
    """Second-order minimal Schmidt rank.

    For each ordered split ``X1|X2`` the left Schmidt vectors are split again
    inside ``X1`` (value 1 when ``X1`` is a single party); their minimal ranks
    are summed, and the sum is minimized over splits. For two parties this is
    the ordinary Schmidt rank.
    """
    _check_tol(tol)
    return _second_order(state, tol)[0]
