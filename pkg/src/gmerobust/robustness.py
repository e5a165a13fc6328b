"""Entanglement classification from Schmidt ranks and robustness budgets."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import TooFewPartiesError
from .partitions import Bipartition, enumerate_unordered
from .schmidt import DEFAULT_TOL, RankProfile, rank_profile, schmidt_decompose
from .states import PureState, make_state


class Kind(str, enum.Enum):
    GME = "GME"
    BISEPARABLE = "BiseparableNotGME"
    FULLY_SEPARABLE = "FullySeparableProduct"
    ENTANGLED = "Entangled"
    SEPARABLE = "Separable"

    def __str__(self) -> str:
        return self.value

    @property
    def is_product(self) -> bool:
        return self in (Kind.FULLY_SEPARABLE, Kind.SEPARABLE)


@dataclass
class Classification:
    kind: Kind
    witness: list[Bipartition]
    profile: RankProfile

    @property
    def marginal(self) -> bool:
        return self.profile.marginal

    def to_json(self) -> dict:
        return {
            "classification": self.kind.value,
            "witness": [p.to_json() for p in self.witness],
            "marginal": self.marginal,
        }


def factorize(
    state: PureState, tol: float = DEFAULT_TOL, parties: tuple[int, ...] | None = None
) -> list[tuple[tuple[int, ...], PureState]]:
    """Finest tensor factorization: ``[(parties, factor_state), ...]``.

    Splits across any rank-1 bipartition and recurses on both sides.
    """
    if parties is None:
        parties = tuple(range(state.n))
    if state.n == 1:
        return [(parties, state)]
    for part in enumerate_unordered(state.n):
        dec = schmidt_decompose(state, part, tol)
        if dec.rank == 1:
            left = make_state(dec.left_dims, dec.left_vecs[0])
            right = make_state(dec.right_dims, dec.right_vecs[0])
            out = factorize(left, tol, tuple(parties[i] for i in part.left))
            out += factorize(right, tol, tuple(parties[i] for i in part.right))
            return sorted(out, key=lambda item: item[0])
    return [(parties, state)]


def _n_factors(state: PureState, tol: float) -> int:
    return len(factorize(state, tol))


def classify(state: PureState, tol: float = DEFAULT_TOL) -> Classification:
    if state.n < 2:
        raise TooFewPartiesError("classification needs at least 2 parties")
    return _classify(state, rank_profile(state, tol), tol)


def _classify(state: PureState, profile: RankProfile, tol: float) -> Classification:
    if state.n == 2:
        (part, rank), = profile.per_bipartition.items()
        if rank == 1:
            return Classification(Kind.SEPARABLE, [], profile)
        return Classification(Kind.ENTANGLED, [part], profile)
    if profile.r1_max == 1:
        # rank 1 across every cut of a pure state means a full product
        assert _n_factors(state, tol) == state.n
        return Classification(Kind.FULLY_SEPARABLE, [], profile)
    if profile.r1_min >= 2:
        return Classification(Kind.GME, list(profile.minimizers), profile)
    witness = [p for p, r in profile.per_bipartition.items() if r == 1]
    return Classification(Kind.BISEPARABLE, witness, profile)


def is_entangled(state: PureState, tol: float = DEFAULT_TOL) -> bool:
    return not classify(state, tol).kind.is_product


def is_triple_separable(state: PureState, tol: float = DEFAULT_TOL) -> bool:
    """True when the state factors into at least three groups of parties."""
    if state.n < 3:
        raise TooFewPartiesError("triple separability needs at least 3 parties")
    return _n_factors(state, tol) >= 3


@dataclass
class RobustnessCertificate:
    """How many arbitrary product states may be superposed without losing
    GME (``gme_budget``), entanglement (``insep_budget``) or non-triple-separability
    (``triple_budget``)."""

    classification: Classification
    gme_budget: int
    insep_budget: int
    triple_budget: int
    profile: RankProfile
    notes: list[str] = field(default_factory=list)

    @property
    def marginal(self) -> bool:
        return self.profile.marginal

    def to_json(self) -> dict:
        out = {
            "classification": self.classification.kind.value,
            "gme_budget": self.gme_budget,
            "insep_budget": self.insep_budget,
            "triple_budget": self.triple_budget,
            "marginal": self.marginal,
            "r1_min": self.profile.r1_min,
            "r1_max": self.profile.r1_max,
            "r2_min": self.profile.r2_min,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def certify(state: PureState, tol: float = DEFAULT_TOL) -> RobustnessCertificate:
    if state.n < 2:
        raise TooFewPartiesError("certification needs at least 2 parties")
    profile = rank_profile(state, tol, second_order=True)
    classification = _classify(state, profile, tol)
    notes = []
    if classification.kind.is_product:
        notes.append("state is not entangled; nothing to certify")
        return RobustnessCertificate(classification, 0, 0, 0, profile, notes)
    if profile.order2_vacuous:
        notes.append("two parties: second-order rank equals the Schmidt rank")
    if profile.schmidt_degenerate:
        notes.append("degenerate Schmidt spectrum: r2_min depends on the SVD basis")
    if profile.marginal:
        notes.append("a singular value lies within 10x of the rank tolerance")
    return RobustnessCertificate(
        classification,
        gme_budget=max(profile.r1_min - 2, 0),
        insep_budget=max(profile.r1_max - 2, 0),
        triple_budget=max(profile.r2_min - 2, 0),
        profile=profile,
        notes=notes,
    )

