"""Exact Jacobi-sum Grossencharacter data for Fermat curves of odd prime
degree: Chebyshev-bias sums, normalized partial Euler products at the
central point, and second-moment estimators."""

from .arith import LevelConfig, primitive_root, residue_degree, sieve_primes
from .curves import (
    ApRecord,
    CurveId,
    ap_from_jacobi,
    count_fermat_bruteforce,
    count_quotient_bruteforce,
    local_factor_over_F,
    local_factor_over_Q,
)
from .cyclotomic import CycInt
from .fields import (
    FqTable,
    PrimeOfF,
    TableCapError,
    build_extension_field_table,
    build_prime_field_table,
    primes_above,
)
from .jacobi import JacobiCache, JacobiProvider, JacobiRecord, index_pairs, jacobi_sum
from .lfunc import (
    BiasDecomposition,
    RegressionFit,
    SeriesSample,
    bias_decomposition,
    bias_sum,
    compute_series,
    default_grid,
    loglog_fit,
    partial_euler_product,
    predicted_slope,
    second_moment_partial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
