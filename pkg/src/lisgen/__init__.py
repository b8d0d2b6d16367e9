"""Exact counts of words with bounded longest increasing subsequence.

A_{d+1,r}(n) counts words of length rn over {1..n}, each letter used r times,
whose longest strictly increasing subsequence has length at most d.
"""

from .gessel import (
    CountResult,
    Method,
    count_via_gessel,
    count_via_gessel_r2,
    count_via_gessel_tr_eliminated,
    gessel_r1_series,
    gessel_row,
    poissonized_partial_sum,
    prob_lis_le,
    toeplitz_det_truncated,
    toeplitz_entry,
)
from .oracles import count_via_brute, count_via_rsk, lis_length
from .polyring import TPoly, VSeries, gaussian_pairing
from .symfunc import (
    Partition,
    complete_homogeneous,
    cycle_index,
    f_lambda,
    kostka_g,
    kostka_ssyt_oracle,
    partitions_of,
    schur,
)

__all__ = [
    "CountResult",
    "Method",
    "Partition",
    "TPoly",
    "VSeries",
    "complete_homogeneous",
    "count_via_brute",
    "count_via_gessel",
    "count_via_gessel_r2",
    "count_via_gessel_tr_eliminated",
    "count_via_rsk",
    "cycle_index",
    "f_lambda",
    "gaussian_pairing",
    "gessel_r1_series",
    "gessel_row",
    "kostka_g",
    "kostka_ssyt_oracle",
    "lis_length",
    "partitions_of",
    "poissonized_partial_sum",
    "prob_lis_le",
    "schur",
    "toeplitz_det_truncated",
    "toeplitz_entry",
]

__version__ = "0.1.0"
