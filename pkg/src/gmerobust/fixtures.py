"""Worked examples with their expected values, replayed by ``verify-paper``.

Amplitudes are built from exact radicals at double precision, never from
transcribed decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Any, Callable

import numpy as np

from .disentangle import pairwise_eliminate, theorem4_construction, verify_plan
from .partitions import bipartition
from .robustness import Kind, certify, classify
from .schmidt import DEFAULT_TOL, rank_profile
from .states import (
    PureState,
    fidelity,
    ghz,
    inner_product,
    ket,
    make_state,
    product_state,
    random_vector,
    superpose,
)

PLUS = np.array([1, 1]) / sqrt(2)
B_VEC = np.array([2, sqrt(5)]) / 3


@dataclass(frozen=True)
class AtLeast:
    bound: float

    def __call__(self, actual) -> bool:
        return actual >= self.bound

    def __str__(self) -> str:
        return f">= {self.bound:.15g}"


@dataclass(frozen=True)
class AtMost:
    bound: float

    def __call__(self, actual) -> bool:
        return actual <= self.bound

    def __str__(self) -> str:
        return f"<= {self.bound:.3g}"


@dataclass(frozen=True)
class Near:
    value: float
    tol: float

    def __call__(self, actual) -> bool:
        return abs(actual - self.value) <= self.tol

    def __str__(self) -> str:
        return f"{self.value:.15g} +- {self.tol:.0e}"


@dataclass(frozen=True)
class Inside:
    low: float
    high: float

    def __call__(self, actual) -> bool:
        return self.low < actual < self.high

    def __str__(self) -> str:
        return f"in ({self.low:g}, {self.high:g})"


@dataclass
class CheckResult:
    fixture: str
    name: str
    expected: Any
    actual: Any
    passed: bool


@dataclass
class Fixture:
    name: str
    anchor: str
    state: PureState
    expected: dict[str, Any]
    measure: Callable[[], dict[str, Any]] = field(repr=False)

    def run(self) -> list[CheckResult]:
        actual = self.measure()
        out = []
        for key, want in self.expected.items():
            got = actual.get(key)
            ok = want(got) if callable(want) else got == want
            out.append(CheckResult(self.name, key, want, got, bool(ok)))
        return out


# -- states ---------------------------------------------------------------


def ghz_plus() -> PureState:
    return ghz(3, 2)


def psi2() -> PureState:
    return make_state([2, 2, 2], (ket("000").amps + ket("100").amps + ket("111").amps) / sqrt(3))


def psi3() -> PureState:
    amps = (
        sqrt(2) / 4 * ket("001").amps
        + sqrt(5) / 4 * np.kron(ket("01").amps, PLUS)
        + 3 / 4 * np.kron(np.kron([0, 1], B_VEC), PLUS)
    )
    return make_state([2, 2, 2], amps)


def example5_coeffs() -> np.ndarray:
    return np.array([3, 6, 2 * sqrt(26)]) / sqrt(149)


def example5_state() -> PureState:
    return make_state([3, 3], np.diag(example5_coeffs()))


def _e(i: int, d: int = 3) -> np.ndarray:
    v = np.zeros(d)
    v[i] = 1
    return v


def example5_alpha1() -> np.ndarray:
    return (-_e(0) + 8 * _e(1)) / sqrt(65)


def example5_plan_states():
    plus3 = (_e(0) + _e(1)) / sqrt(2)
    p1 = product_state([(-_e(0) + 2 * _e(1)) / sqrt(5), (4 * _e(0) + _e(1)) / sqrt(17)])
    p2 = product_state(
        [(example5_alpha1() + 2 * _e(2)) / sqrt(5), (4 * plus3 - sqrt(5) * _e(2)) / sqrt(21)]
    )
    return p1, p2


def example5_coefficients() -> tuple[float, float, float]:
    lam = sqrt(149 / (178 * 78))
    mu1 = sqrt(85 / (178 * 78))
    mu2 = sqrt(175 / 178)
    return lam, mu1, mu2


def example5_target() -> PureState:
    plus3 = (_e(0) + _e(1)) / sqrt(2)
    left = (5 * example5_alpha1() + 8 * _e(2)) / sqrt(89)
    right = (sqrt(5) * plus3 - _e(2)) / sqrt(6)
    return make_state([3, 3], np.kron(left, right))


def _single_party_ranks(state: PureState, tol: float = DEFAULT_TOL) -> list[int]:
    prof = rank_profile(state, tol)
    parties = range(1, state.n + 1)
    return [prof.rank(bipartition([i], [j for j in parties if j != i])) for i in parties]


# -- measurements -----------------------------------------------------------


def _intro():
    psi = ghz_plus()
    out = superpose(sqrt(2), psi, [(-1, product_state([[1, 0]] * 3))])
    mixed = superpose(1, psi, [(1, product_state([[1, 0], [0, 1], [0, 1]]))])
    return {
        "classify(psi+)": classify(psi).kind,
        "classify(sqrt2 psi+ - |000>)": classify(out).kind,
        "fidelity with |111>": fidelity(out, ket("111")),
        "classify(psi+ + |011>)": classify(mixed).kind,
    }


def _example1():
    out = {}
    for n in (3, 4):
        for d in (2, 3, 4):
            prof = rank_profile(ghz(n, d), second_order=True)
            out[f"n={n},d={d} (r1_min,r1_max,r2_min)"] = (prof.r1_min, prof.r1_max, prof.r2_min)
    cert = certify(ghz(3, 4))
    out["d=4 budgets"] = (cert.gme_budget, cert.insep_budget, cert.triple_budget)
    return out


def _example2_trials(count=200, seed=2024):
    a0, a1 = 0.6, 0.8
    psi = make_state([2, 2, 2], a0 * ket("000").amps + a1 * ket("111").amps)
    rng = np.random.default_rng(seed)
    ranks = set()
    max_overlap = 0.0
    for _ in range(count):
        al, be = random_vector(2, rng), random_vector(2, rng)
        # <psi|p> = a0 al0 be0 ga0 + a1 al1 be1 ga1 = 0
        ga = np.array([a1 * al[1] * be[1], -a0 * al[0] * be[0]])
        p = product_state([al, be, ga])
        max_overlap = max(max_overlap, abs(inner_product(psi, p.to_pure())))
        angle = rng.uniform(0.05, np.pi / 2 - 0.05)
        state = superpose(np.cos(angle), psi, [(np.sin(angle), p)])
        ranks.update(_single_party_ranks(state))
    return psi, ranks, max_overlap


def _example2():
    psi, ranks, overlap = _example2_trials()
    return {
        "classify(psi1)": classify(psi).kind,
        "single-party ranks after orthogonal superposition": sorted(ranks),
        "max |<psi1|p>|": overlap,
    }


def _example3():
    base = psi2()
    cert = certify(base)
    corrected = superpose(sqrt(3) / 2, base, [(0.5, product_state([[1, 0], [0, 1], [0, 1]]))])
    variant = superpose(sqrt(3) / 2, base, [(0.5, product_state([[1, 0], [1, 0], [0, 1]]))])
    target = make_state([2, 2, 2], np.kron(PLUS, ghz(2, 2).amps))
    cls = classify(corrected)
    return {
        "single-party ranks of psi2": _single_party_ranks(base),
        "classify(psi2)": classify(base).kind,
        "budgets": (cert.gme_budget, cert.insep_budget, cert.triple_budget),
        "classify(sqrt3/2 psi2 + 1/2 |011>)": cls.kind,
        "witness": [p.label() for p in cls.witness],
        "fidelity with |+>|psi+>": fidelity(corrected, target),
        "variant with |001>: classify(sqrt3/2 psi2 + 1/2 |001>)": classify(variant).kind,
    }


def _example4():
    base = psi3()
    p = product_state([[1, 0]] * 3)
    out = superpose(2 * sqrt(2) / 3, base, [(1 / 3, p)])
    target = make_state([2, 2, 2], np.kron(np.kron(PLUS, B_VEC), PLUS))
    prof = rank_profile(base)
    return {
        "norm of psi3 amplitudes before normalization": float(
            np.linalg.norm(
                sqrt(2) / 4 * ket("001").amps
                + sqrt(5) / 4 * np.kron(ket("01").amps, PLUS)
                + 3 / 4 * np.kron(np.kron([0, 1], B_VEC), PLUS)
            )
        ),
        "classify(psi3)": classify(base).kind,
        "ranks of psi3": (prof.r1_min, prof.r1_max),
        "|<psi3|000>|": abs(inner_product(base, p.to_pure())),
        "classify(superposition)": classify(out).kind,
        "fidelity with |+>|b>|+>": fidelity(out, target),
    }


def _example5():
    psi = example5_state()
    p1, p2 = example5_plan_states()
    lam, mu1, mu2 = example5_coefficients()
    out = superpose(lam, psi, [(mu1, p1), (mu2, p2)])
    pair = make_state([3, 3], (np.kron(_e(0), _e(0)) + 2 * np.kron(_e(1), _e(1))) / sqrt(5))
    stage1 = superpose(3 / sqrt(26), pair, [(sqrt(17 / 26), p1)])
    plus3 = (_e(0) + _e(1)) / sqrt(2)
    step = pairwise_eliminate(1 / sqrt(5), 2 / sqrt(5), alpha=float(np.arctan2(2, -1)))
    plan = theorem4_construction(psi)
    check = verify_plan(psi, plan)
    return {
        "schmidt rank": rank_profile(psi).r1_max,
        "insep_budget": certify(psi).insep_budget,
        "stage 1 fidelity with |alpha1>|+>": fidelity(stage1, make_state([3, 3], np.kron(example5_alpha1(), plus3))),
        "eliminate(1/sqrt5, 2/sqrt5) at alpha = atan2(2, -1): p": step.p,
        "|p - 9/26|": abs(step.p - 9 / 26),
        "explicit plan: r1_max": rank_profile(out).r1_max,
        "explicit plan: fidelity with target": fidelity(out, example5_target()),
        "orthogonal 2-state plan": check.kind,
        "orthogonal plan: max |<p_i|p_j>| (i!=j)": float(np.max(np.abs(check.gram - np.eye(2)))),
    }


def all_fixtures() -> list[Fixture]:
    return [
        Fixture(
            "intro",
            "sqrt(2)|psi+> - |000> = |111>",
            ghz_plus(),
            {
                "classify(psi+)": Kind.GME,
                "classify(sqrt2 psi+ - |000>)": Kind.FULLY_SEPARABLE,
                "fidelity with |111>": AtLeast(1 - 1e-12),
                "classify(psi+ + |011>)": Kind.GME,
            },
            _intro,
        ),
        Fixture(
            "example1",
            "r2_min = r1_min = d",
            ghz(3, 3),
            {
                **{
                    f"n={n},d={d} (r1_min,r1_max,r2_min)": (d, d, d)
                    for n in (3, 4)
                    for d in (2, 3, 4)
                },
                "d=4 budgets": (2, 2, 2),
            },
            _example1,
        ),
        Fixture(
            "example2",
            "has all reduced density matrices of rank 2",
            make_state([2, 2, 2], 0.6 * ket("000").amps + 0.8 * ket("111").amps),
            {
                "classify(psi1)": Kind.GME,
                "single-party ranks after orthogonal superposition": [2],
                "max |<psi1|p>|": AtMost(1e-12),
            },
            _example2,
        ),
        Fixture(
            "example3",
            "sqrt(3)/2|psi2> + 1/2|001> = |+> (x) |psi+>  (holds with |011>)",
            psi2(),
            {
                "single-party ranks of psi2": [2, 2, 2],
                "classify(psi2)": Kind.GME,
                "budgets": (0, 0, 0),
                "classify(sqrt3/2 psi2 + 1/2 |011>)": Kind.BISEPARABLE,
                "witness": ["1|23"],
                "fidelity with |+>|psi+>": AtLeast(1 - 1e-12),
                "variant with |001>: classify(sqrt3/2 psi2 + 1/2 |001>)": Kind.GME,
            },
            _example3,
        ),
        Fixture(
            "example4",
            "2sqrt(2)/3|psi3> + 1/3|p> = |+>|b>|+>",
            psi3(),
            {
                "norm of psi3 amplitudes before normalization": Near(1.0, 1e-12),
                "classify(psi3)": Kind.GME,
                "ranks of psi3": (2, 2),
                "|<psi3|000>|": AtMost(1e-12),
                "classify(superposition)": Kind.FULLY_SEPARABLE,
                "fidelity with |+>|b>|+>": AtLeast(1 - 1e-10),
            },
            _example4,
        ),
        Fixture(
            "example5",
            "lambda = sqrt(149/(178 x 78)), mu1 = sqrt(85/(178 x 78)), mu2 = sqrt(175/178)",
            example5_state(),
            {
                "schmidt rank": 3,
                "insep_budget": 1,
                "stage 1 fidelity with |alpha1>|+>": AtLeast(1 - 1e-12),
                "eliminate(1/sqrt5, 2/sqrt5) at alpha = atan2(2, -1): p": Inside(0.0, 1.0),
                "|p - 9/26|": AtMost(1e-12),
                "explicit plan: r1_max": 1,
                "explicit plan: fidelity with target": AtLeast(1 - 1e-10),
                "orthogonal 2-state plan": Kind.SEPARABLE,
                "orthogonal plan: max |<p_i|p_j>| (i!=j)": AtMost(1e-10),
            },
            _example5,
        ),
    ]


def run_fixtures() -> list[CheckResult]:
    out = []
    for fx in all_fixtures():
        out.extend(fx.run())
    return out
