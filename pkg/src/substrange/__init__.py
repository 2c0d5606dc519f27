"""Substring search restricted to position-label ranges.

The package indexes a byte string whose positions carry integer labels
and answers three kinds of questions about a pattern: report every
occurrence whose label falls in a range, count them, or test whether
any exists.  Reductions reuse the same machinery for position-restricted
search, interval-restricted search, and two-part patterns separated by
a fixed gap.
"""

from .model import (
    EmptyPattern,
    EmptyText,
    IndexFormatError,
    IntervalOutOfBounds,
    LabelOutOfRange,
    LabeledString,
    LengthMismatch,
    PositionOutOfRange,
    RangeOutOfBounds,
    ValidationError,
    WrongIndexKind,
)
from .suffix import Locus, SuffixTree, lcp_array, suffix_array
from .ranges import SortedLabelStore, WaveletMatrix
from .index import (
    QueryPath,
    QueryStats,
    SubstringRangeIndex,
    counting_cutoff,
    reporting_cutoff,
)
from .reductions import (
    GapSearchDetails,
    GappedPatternIndex,
    IntervalRestrictedIndex,
    PositionRestrictedIndex,
    interval_labels,
)
from .oracle import (
    naive_count,
    naive_empty,
    naive_gap_search,
    naive_interval_search,
    naive_position_search,
    naive_report,
)
from .serialize import (
    index_from_bytes,
    index_to_bytes,
    kind_name,
    load_index,
    save_index,
)
from .workloads import (
    MODES,
    Mismatch,
    WorkloadReport,
    WorkloadSpec,
    english_like_text,
    run_workload,
)

__version__ = "0.1.0"

__all__ = [
    "EmptyPattern",
    "MODES",
    "EmptyText",
    "GapSearchDetails",
    "GappedPatternIndex",
    "IndexFormatError",
    "IntervalOutOfBounds",
    "IntervalRestrictedIndex",
    "LabelOutOfRange",
    "LabeledString",
    "LengthMismatch",
    "Locus",
    "Mismatch",
    "PositionOutOfRange",
    "PositionRestrictedIndex",
    "QueryPath",
    "QueryStats",
    "RangeOutOfBounds",
    "SortedLabelStore",
    "SubstringRangeIndex",
    "SuffixTree",
    "ValidationError",
    "WaveletMatrix",
    "WorkloadReport",
    "WorkloadSpec",
    "WrongIndexKind",
    "counting_cutoff",
    "english_like_text",
    "index_from_bytes",
    "index_to_bytes",
    "interval_labels",
    "kind_name",
    "lcp_array",
    "load_index",
    "naive_count",
    "naive_empty",
    "naive_gap_search",
    "naive_interval_search",
    "naive_position_search",
    "naive_report",
    "reporting_cutoff",
    "run_workload",
    "save_index",
    "suffix_array",
    "__version__",
]
