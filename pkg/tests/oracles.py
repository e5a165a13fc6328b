"""Reference computations that avoid the library's reshape+SVD path.

Reduced density matrices are built by explicit index loops and diagonalized
with ``eigvalsh``; product structure is detected through purity.
"""

from itertools import product
from math import prod

import numpy as np

from gmerobust.states import (
    PureState,
    make_state,
    permute_parties,
    random_product,
    random_state,
    random_vector,
    tensor,
)


def reduced_density_matrix(state: PureState, keep) -> np.ndarray:
    keep = tuple(sorted(keep))
    rest = tuple(i for i in range(state.n) if i not in keep)
    keep_ranges = [range(state.dims[i]) for i in keep]
    rest_ranges = [range(state.dims[i]) for i in rest]
    t = state.tensor
    size = prod(state.dims[i] for i in keep)
    rho = np.zeros((size, size), dtype=complex)
    keep_idx = list(product(*keep_ranges))
    for a, ia in enumerate(keep_idx):
        for b, ib in enumerate(keep_idx):
            acc = 0j
            for ir in product(*rest_ranges):
                full_a = [0] * state.n
                full_b = [0] * state.n
                for pos, party in enumerate(keep):
                    full_a[party] = ia[pos]
                    full_b[party] = ib[pos]
                for pos, party in enumerate(rest):
                    full_a[party] = ir[pos]
                    full_b[party] = ir[pos]
                acc += t[tuple(full_a)] * np.conj(t[tuple(full_b)])
            rho[a, b] = acc
    return rho


def schmidt_values(state: PureState, keep) -> np.ndarray:
    ev = np.linalg.eigvalsh(reduced_density_matrix(state, keep))[::-1]
    return np.sqrt(np.clip(ev, 0, None))


def rank_by_eigen(state: PureState, keep, rel=1e-6) -> int:
    """Rank of the reduced state; threshold on Schmidt values relative to the largest."""
    s = schmidt_values(state, keep)
    return int(np.count_nonzero(s > rel * s[0]))


def purity(state: PureState, keep) -> float:
    rho = reduced_density_matrix(state, keep)
    return float(np.real(np.trace(rho @ rho)))


def brute_force_kind(state: PureState, tol=1e-9) -> str:
    """Label by testing every cut for an exact product (purity 1)."""
    from itertools import combinations

    n = state.n
    cuts = []
    for size in range(1, n // 2 + 1):
        for left in combinations(range(n), size):
            cuts.append(left)
    product_cuts = [c for c in cuts if purity(state, c) > 1 - tol]
    singles_product = all(purity(state, (i,)) > 1 - tol for i in range(n))
    if n == 2:
        return "Separable" if product_cuts else "Entangled"
    if singles_product:
        return "FullySeparableProduct"
    if product_cuts:
        return "BiseparableNotGME"
    return "GME"


# -- samplers ------------------------------------------------------------------


def random_grouped_state(rng: np.random.Generator, dims) -> PureState:
    """Random tensor product over a random grouping of parties, then shuffled."""
    n = len(dims)
    order = rng.permutation(n)
    groups = []
    start = 0
    while start < n:
        size = int(rng.integers(1, n - start + 1))
        groups.append(order[start : start + size])
        start += size
    pieces = [random_state([dims[i] for i in g], rng) if len(g) > 1 else
              make_state([dims[g[0]]], random_vector(dims[g[0]], rng)) for g in groups]
    state = tensor(*pieces)
    flat = [int(i) for g in groups for i in g]
    # party k of ``state`` is original party flat[k]; invert to restore order
    inverse = [flat.index(i) for i in range(n)]
    return permute_parties(state, inverse)


def random_sum_of_products(rng: np.random.Generator, dims, terms: int):
    """``sum_t c_t p_t`` with random product states; returns (state, coeffs, products)."""
    prods = [random_product(dims, rng) for _ in range(terms)]
    coeffs = rng.normal(size=terms) + 1j * rng.normal(size=terms)
    vec = sum(c * p.vector() for c, p in zip(coeffs, prods))
    norm = np.linalg.norm(vec)
    return make_state(dims, vec), coeffs / norm, prods
