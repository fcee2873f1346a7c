"""Product-construction CSS codes, decoders and Monte Carlo simulation."""

from ._kernels import BACKEND as kernel_backend
from .bitlin import BitMatrix, RowReduction, kernel_basis, kron, rank, row_reduce, solve, stack
from .build import (
    SpcParams,
    asymmetric_product,
    classical_product_pcm,
    dfold_product,
    predict_spc_stats,
    shor_code,
    spc,
    spc_logical_witnesses,
    symmetric_product,
    tensor_product_pcm,
)
from .css import (
    CodeStats,
    CssCode,
    DistanceReport,
    PauliVector,
    is_logical_failure,
    new_css,
    pure_distance,
    search_min_logical,
    stats,
    syndromes,
)
from .decode import BpConfig, BpDecoder, BpResult, TannerGraph, bp_decode, bp_decode_extended, decode_erasure
from .meta import ExtendedSyndrome, MetaCheck, extend_pcm, measurement_overhead, metacheck_from_pcm, spc3_metacheck
from .sim import ChannelSpec, SimPoint, depolarizing, depolarizing_readout, erasure, run_point, sample_error
from .zoo import BicycleSpec, TannerSpec, bicycle, hypergraph_product, quantum_tanner, random_css

__version__ = "0.1.0"
