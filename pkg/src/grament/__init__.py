"""Gram-matrix analysis of bipartite qudit pure states."""

from .bipartite import (
    BipartiteState,
    SchmidtDecomposition,
    Separability,
    Side,
    apply_local,
    entanglement_entropy,
    full_gram,
    gram_operator,
    is_separable,
    random_state,
    reduced_density,
    schmidt,
    side_frame,
    state_from_equal_grams,
)
from .cholesky import (
    PurificationResult,
    cholesky_psd0,
    cholesky_spd,
    pure_projector,
    purify,
    validate_density,
)
from .frames import (
    Frame,
    align_frames,
    gram_matrix,
    gramian,
    height,
    relative_gram,
    transform_frame,
    wedge_inner_bruteforce,
)
from .geometry import (
    GeometryReport,
    contraction_probe,
    geometry_report,
    gvol,
    gvol_subframe_oracle,
    is_maximally_entangled,
    parallelepiped_volume,
)
from .tensor_core import (
    EigResult,
    SvdResult,
    eigh,
    flat_to_pair,
    hs_inner,
    kron,
    pair_to_flat,
    psd_rank,
    svd,
    vec_op,
)

__version__ = "0.1.0"
