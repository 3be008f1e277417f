"""Binary self-dual codes: construction, shadow analysis, and equivalence testing."""

from __future__ import annotations

from .codes import (
    AtLeast,
    BoundReport,
    LinearCode,
    ParityClass,
    WeightEnumerator,
    bounds,
    coset_min_weight,
    dual,
    from_generator,
    is_self_dual,
    min_weight,
    parity_class,
    weight_enumerator,
)
from .constructions import (
    NeighborPair,
    enumerate_self_dual_neighbors,
    extend_odd,
    four_block_quasi_cyclic,
    n1_n3_neighbors,
    neighbor,
    neighbor_multi,
    pure_double_circulant,
    sample_self_dual_neighbors,
    subtract,
)
from .equivalence import (
    Equivalent,
    Inequivalent,
    Unknown,
    apply_permutation,
    are_equivalent,
    partition_classes,
    signature,
    transitivity_probe,
)
from .errors import BudgetExceeded, CodeError, DimensionMismatch, ParseError, PreconditionError
from .gf2core import BitMatrix, BitVector, kernel, member, product, rank, rref
from .shadow import (
    ShadowDecomposition,
    doubly_even_subcode,
    is_s_extremal,
    s_extremality,
    shadow_decomposition,
    shadow_min_weight,
)

__version__ = "0.1.0"
