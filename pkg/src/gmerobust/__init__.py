"""Robustness of multipartite entanglement of pure states under superposition
with product states, via first- and second-order Schmidt ranks."""

from .disentangle import (
    EliminationStep,
    PlanVerification,
    lemma2_construction,
    pairwise_eliminate,
    theorem4_construction,
    theorem5_construction,
    verify_plan,
)
from .partitions import Bipartition, bipartition, enumerate_ordered, enumerate_unordered, nested
from .robustness import (
    Classification,
    Kind,
    RobustnessCertificate,
    certify,
    classify,
    factorize,
    is_triple_separable,
)
from .schmidt import (
    DEFAULT_TOL,
    RankProfile,
    SchmidtDecomposition,
    r2_min,
    rank_profile,
    schmidt_decompose,
)
from .search import Objective, SearchConfig, SearchReport, adversarial_search, gme_gap, sep_gap
from .states import (
    ProductState,
    PureState,
    SuperpositionPlan,
    bipartition_matrix,
    fidelity,
    ghz,
    inner_product,
    ket,
    make_state,
    product_state,
    superpose,
    tensor,
    w_state,
)

__version__ = "0.1.0"
