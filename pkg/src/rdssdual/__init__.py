"""Recoverable distributed storage codes and index codes on a shared graph."""

__version__ = "0.1.0"

from .alphabet import Alphabet, field_inv, project, rank, unrank, word_add, word_sub
from .confusion import Codebook, RecoveryTable, confusable, is_rdss, recovery_table, repair
from .covering import (
    TranslateCover,
    best_doubling_step,
    bes_sum,
    cover_subspace_closure,
    cover_valid,
    greedy_cover,
    random_cover,
    uncovered_fraction,
)
from .duality import (
    DualityReport,
    IndexCodeSpec,
    LinearIndexCodeSpec,
    decode_index,
    duality_report,
    encode_index,
    index_from_rdss,
    linear_index_from_fitting,
    rdss_from_index,
    vector_report,
    verify_index_code,
)
from .graph import (
    StorageGraph,
    complete_graph,
    cycle_graph,
    empty_graph,
    five_server_graph,
    is_symmetric,
    parse_graph,
)
from .linalg import rank_gf
from .search import FittingMatrix, SearchResult, minrank, nullspace_code, rdss_exact
