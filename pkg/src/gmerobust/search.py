"""Numerical hunt for product-state superpositions that break entanglement.

The gap surrogates replace integer ranks with the second Schmidt coefficient:
``gme_gap`` is the smallest sigma_2 over all cuts (0 iff biseparable) and
``sep_gap`` the largest (0 iff fully product).

``adversarial_search`` fixes the lead coefficient to 1 and minimizes the gap of
the *unnormalized* vector ``psi + sum_t mu_t p_t``. A free lead would let the
search shrink ``psi`` towards zero and report spurious breaks; with the lead
fixed, sigma_2 is bounded below by sigma_{k+2} of ``psi`` on every cut.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from math import prod
from typing import Optional

import numpy as np

from .errors import BaseNotEntangledError
from .partitions import enumerate_unordered
from .robustness import classify
from .schmidt import DEFAULT_TOL
from .states import PureState, SuperpositionPlan, bipartition_matrix, product_state

log = logging.getLogger(__name__)


class Objective(str, enum.Enum):
    BREAK_GME = "break-gme"
    FULL_SEPARABILITY = "full-sep"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SearchConfig:
    k: int
    objective: Objective = Objective.BREAK_GME
    restarts: int = 32
    max_iters: int = 2000
    seed: int = 0
    success_threshold: float = 1e-8
    stall_iters: int = 60

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective(self.objective))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not 0 < self.success_threshold < 1:
            raise ValueError("success_threshold must lie in (0, 1)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass
class SearchReport:
    best_gap: float
    best_plan: Optional[SuperpositionPlan]
    iterations_used: int
    succeeded: bool
    objective: Objective
    k: int
    restart_gaps: list[float] = field(default_factory=list)

    def to_json(self) -> dict:
        from .serialization import plan_to_json

        return {
            "objective": self.objective.value,
            "k": self.k,
            "best_gap": self.best_gap,
            "succeeded": self.succeeded,
            "iterations_used": self.iterations_used,
            "restarts_run": len(self.restart_gaps),
            "best_plan": None if self.best_plan is None else plan_to_json(self.best_plan),
        }


def _sigma2(state: PureState) -> list[tuple[float, float]]:
    out = []
    for part in enumerate_unordered(state.n):
        s = np.linalg.svd(bipartition_matrix(state, part), compute_uv=False)
        out.append((float(s[0]), float(s[1])))
    return out


def gme_gap(state: PureState, tol: float = DEFAULT_TOL) -> float:
    """Smallest second Schmidt coefficient over all cuts; values at or below
    ``tol * sigma_1`` count as zero, matching the rank rule."""
    return min(s2 if s2 > tol * s1 else 0.0 for s1, s2 in _sigma2(state))


def sep_gap(state: PureState, tol: float = DEFAULT_TOL) -> float:
    """Largest second Schmidt coefficient over all cuts; 0 iff fully product."""
    return max(s2 if s2 > tol * s1 else 0.0 for s1, s2 in _sigma2(state))


class _Landscape:
    """Batched evaluation of the squared gap over flat real parameter vectors.

    Layout: for each term, for each party, ``2 * d`` reals (re then im); then
    ``2 * k`` reals for the complex coefficients.
    """

    def __init__(self, base: PureState, k: int, objective: Objective):
        self.dims = base.dims
        self.k = k
        self.base = base.amps
        self.reduce = np.min if objective is Objective.BREAK_GME else np.max
        self.factor_len = 2 * sum(self.dims)
        self.size = k * self.factor_len + 2 * k
        self.cuts = []
        for part in enumerate_unordered(base.n):
            rows = prod(self.dims[i] for i in part.left)
            axes = (0,) + tuple(i + 1 for i in part.left + part.right)
            self.cuts.append((axes, rows))

    def factors(self, x: np.ndarray) -> list[list[np.ndarray]]:
        """Per term, per party complex factors (unnormalized); ``x`` is (B, size)."""
        out = []
        pos = 0
        for _ in range(self.k):
            term = []
            for d in self.dims:
                re = x[:, pos : pos + d]
                im = x[:, pos + d : pos + 2 * d]
                term.append(re + 1j * im)
                pos += 2 * d
            out.append(term)
        return out

    def coeffs(self, x: np.ndarray) -> np.ndarray:
        c = x[:, self.k * self.factor_len :]
        return c[:, 0::2] + 1j * c[:, 1::2]

    def vectors(self, x: np.ndarray) -> np.ndarray:
        batch = x.shape[0]
        out = np.broadcast_to(self.base, (batch, self.base.size)).copy()
        mus = self.coeffs(x)
        for t, term in enumerate(self.factors(x)):
            vec = np.ones((batch, 1), dtype=np.complex128)
            for f in term:
                f = f / np.linalg.norm(f, axis=1, keepdims=True)
                vec = (vec[:, :, None] * f[:, None, :]).reshape(batch, -1)
            out += mus[:, t : t + 1] * vec
        return out

    def __call__(self, x: np.ndarray) -> np.ndarray:
        vecs = self.vectors(x).reshape((x.shape[0],) + self.dims)
        s2 = []
        for axes, rows in self.cuts:
            mat = np.transpose(vecs, axes).reshape(x.shape[0], rows, -1)
            s2.append(np.linalg.svd(mat, compute_uv=False)[:, 1])
        gap = self.reduce(np.array(s2), axis=0)
        # a degenerate factor (zero vector) produces NaN; treat it as no progress
        return np.where(np.isfinite(gap), gap**2, np.inf)

    def plan(self, x: np.ndarray) -> SuperpositionPlan:
        x = x[None, :]
        mus = self.coeffs(x)[0]
        terms = []
        for t, term in enumerate(self.factors(x)):
            terms.append((complex(mus[t]), product_state([f[0] for f in term])))
        return SuperpositionPlan(1.0, tuple(terms))


_LINE_STEPS = np.array([2.0, 1.0, 0.5, 0.25, 0.125])


def _descend(land: _Landscape, x: np.ndarray, cfg: SearchConfig) -> tuple[np.ndarray, float, int]:
    """Coordinate-wise quadratic fits, then a line search along the fitted step."""
    target = cfg.success_threshold**2
    n = x.size
    h = np.full(n, 0.1)
    f0 = float(land(x[None])[0])
    history = [f0]
    it = 0
    for it in range(1, cfg.max_iters + 1):
        if f0 < target:
            break
        probe = np.diag(h)
        vals = land(np.vstack([x + probe, x - probe]))
        fp, fm = vals[:n], vals[n:]
        slope = (fp - fm) / (2 * h)
        curv = (fp + fm - 2 * f0) / h**2
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(curv > 0, -slope / curv, -np.sign(slope) * h)
        step = np.nan_to_num(np.clip(step, -4 * h, 4 * h))

        best_coord = int(np.argmin(vals))
        coord_point = x + probe[best_coord] if best_coord < n else x - probe[best_coord - n]
        cands = np.vstack([x + t * step for t in _LINE_STEPS] + [coord_point])
        fc = land(cands)
        j = int(np.argmin(fc))
        if fc[j] < f0:
            moved = np.abs(cands[j] - x)
            x, f0 = cands[j], float(fc[j])
            h = np.clip(0.5 * (h + moved), 1e-13, 1.0)
        else:
            h = np.maximum(h * 0.3, 1e-13)
        history.append(f0)
        if h.max() <= 1e-12:
            break
        if len(history) > cfg.stall_iters:
            old = history[-cfg.stall_iters - 1]
            if old - f0 <= 1e-9 * old and f0 > target:
                break
    return x, f0, it


def adversarial_search(base: PureState, cfg: SearchConfig) -> SearchReport:
    """Minimize the selected gap over ``cfg.k`` product states and coefficients.

    Restarts run in order and stop at the first success; the reported plan is the
    one with the smallest ``(gap, restart_index)``. Deterministic for a given seed.
    """
    if classify(base).kind.is_product:
        raise BaseNotEntangledError("base state is not entangled")
    land = _Landscape(base, cfg.k, cfg.objective)
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.restarts)
    best: tuple[float, int] | None = None
    best_x = None
    gaps = []
    total_iters = 0
    for idx, seq in enumerate(seeds):
        rng = np.random.default_rng(seq)
        x0 = rng.normal(size=land.size)
        x, f, iters = _descend(land, x0, cfg)
        gap = float(np.sqrt(f))
        gaps.append(gap)
        total_iters += iters
        log.debug("restart %d: gap %.3e after %d iterations", idx, gap, iters)
        if best is None or (gap, idx) < best:
            best, best_x = (gap, idx), x
        if gap < cfg.success_threshold:
            break
    best_gap = best[0]
    succeeded = best_gap < cfg.success_threshold
    return SearchReport(
        best_gap=best_gap,
        best_plan=land.plan(best_x) if succeeded else None,
        iterations_used=total_iters,
        succeeded=succeeded,
        objective=cfg.objective,
        k=cfg.k,
        restart_gaps=gaps,
    )
