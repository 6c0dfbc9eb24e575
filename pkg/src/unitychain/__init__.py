"""Square roots of unity, Fibonacci-like chains, and the size of A(n).

A(n) = {1 <= a < n : n | a^2 - 1 and a | n^2 - 1}.
"""

__version__ = "0.1.0"

from .polyseq import PolyCoeffs, f_coeffs, f_eval, g_coeffs, g_eval
from .unity import (
    ASetResult,
    Factorization,
    aset_brute,
    aset_fast,
    correct_root_count,
    divisor_count,
    factorize,
    paper_upper_bound,
    spf_sieve,
    sqrt_units,
)
from .chains import ChainCoord, DescentTrace, aset_chain, chain_iter, descend, locate, locate_scan, predecessor
from .census import CensusReport, ChainMember, average_value, enumerate_members, n_x_k, verify_conjecture
