"""JSON formats for states and superposition plans.

State::

    {"dims": [2, 2, 2],
     "amps": [{"idx": [0, 0, 0], "re": 0.7071067811865476, "im": 0.0}, ...]}

Omitted indices are zero and amplitudes need not be normalized. Floats are
written with ``repr`` precision, so a parse/serialize/parse cycle is exact.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import GmeError, InputError
from .states import ProductState, PureState, SuperpositionPlan, make_state, product_state


def complex_to_json(z: complex) -> dict:
    z = complex(z)
    return {"re": float(z.real), "im": float(z.imag)}


def complex_from_json(obj: Any) -> complex:
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    try:
        return complex(float(obj["re"]), float(obj.get("im", 0.0)))
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputError(f"bad complex number: {obj!r}") from exc


def state_to_json(state: PureState) -> dict:
    amps = []
    for flat in np.flatnonzero(state.amps):
        idx = [int(i) for i in np.unravel_index(flat, state.dims)]
        amps.append({"idx": idx, **complex_to_json(state.amps[flat])})
    return {"dims": list(state.dims), "amps": amps}


def state_from_json(obj: Any) -> PureState:
    if not isinstance(obj, dict) or "dims" not in obj or "amps" not in obj:
        raise InputError('state JSON needs "dims" and "amps"')
    try:
        dims = [int(d) for d in obj["dims"]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad dims: {obj['dims']!r}") from exc
    if not dims or any(d < 2 for d in dims):
        raise InputError(f"every local dimension must be >= 2, got {dims}")
    vec = np.zeros(dims, dtype=np.complex128)
    for entry in obj["amps"]:
        try:
            idx = tuple(int(i) for i in entry["idx"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad amplitude entry: {entry!r}") from exc
        if len(idx) != len(dims) or any(not 0 <= i < d for i, d in zip(idx, dims)):
            raise InputError(f"index {list(idx)} out of range for dims {dims}")
        vec[idx] += complex_from_json(entry)
    try:
        return make_state(dims, vec)
    except GmeError as exc:
        raise InputError(str(exc)) from exc


def parse_state(text: str) -> PureState:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return state_from_json(obj)


def dump_state(state: PureState) -> str:
    return json.dumps(state_to_json(state))


def product_to_json(prod_state: ProductState) -> list:
    return [[complex_to_json(z) for z in f] for f in prod_state.factors]


def product_from_json(obj: Any) -> ProductState:
    try:
        return product_state([[complex_from_json(z) for z in f] for f in obj])
    except TypeError as exc:
        raise InputError(f"bad product state: {obj!r}") from exc


def plan_to_json(plan: SuperpositionPlan, verified: str | None = None) -> dict:
    out = {
        "lead": complex_to_json(plan.lead),
        "terms": [
            {"coeff": complex_to_json(c), "factors": product_to_json(p)}
            for c, p in plan.terms
        ],
    }
    if verified is not None:
        out["verified"] = verified
    return out


def plan_from_json(obj: Any) -> SuperpositionPlan:
    try:
        terms = tuple(
            (complex_from_json(t["coeff"]), product_from_json(t["factors"]))
            for t in obj["terms"]
        )
        return SuperpositionPlan(complex_from_json(obj["lead"]), terms)
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad plan JSON: {exc}") from exc
