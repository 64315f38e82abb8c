"""Counting, enumeration and spectral detection of pairwise level-merger patterns."""
from .counting import (
    Series,
    count_P_closed,
    count_P_recurrence,
    count_T_closed,
    count_T_recurrence,
    series_f,
    series_g,
)
from .matchings import (
    CapExceeded,
    InvalidMatching,
    MergerPattern,
    ParseError,
    enumerate_noncrossing,
    enumerate_symmetric,
    format_symbol,
    is_centrally_symmetric,
    is_noncrossing,
    parse_symbol,
    reflect,
)
from .spectral import (
    ConfluenceEvent,
    EigenPath,
    MatrixFamily,
    ObservedPattern,
    Tolerances,
    block_family,
    build_witness,
    check_central_symmetry,
    classify,
    detect_confluences,
    spectrum,
    track_paths,
)

__version__ = "0.1.0"
