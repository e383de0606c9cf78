"""Exact difference-set, distance-set, additive-energy, and character-sum
computations over finite vector spaces F_q^d at desk scale."""

from .field import Field, FieldSpec, find_irreducible, is_prime, parse_prime_power
from .pointspace import RNG_SCHEME, PointSet, Space
from .setops import (
    CorrelationTable,
    RoundingError,
    TranslateProfile,
    correlation_table,
    difference_set,
    distance_set,
    energy,
    energy_brute,
    energy_corr,
    energy_spectral,
    translate_profile,
)
from .spectral import SalemScan, Spectrum, dft_fast, dft_naive, plancherel_residual, salem_constant, salem_scan
from .varieties import (
    BezoutResult,
    BivarPoly,
    LineSpec,
    all_lines,
    bezout_translate_check,
    contains_line,
    line_set,
    paraboloid,
    product_set,
    sphere,
    subspace,
    variety_points,
)
from .verify import (
    CHECKS,
    THEOREM_GRADE,
    VerificationReport,
    check_dense_set_norms,
    check_energy_bound,
    check_energy_profile_bound,
    check_falconer,
    check_fourier_decay_bound,
    check_profile_diff_bound,
    check_salem_diff_bound,
    check_spectral_energy_identity,
    run_named_check,
)

__version__ = "0.1.0"

__all__ = [
    "Field",
    "FieldSpec",
    "find_irreducible",
    "is_prime",
    "parse_prime_power",
    "Space",
    "PointSet",
    "RNG_SCHEME",
    "Spectrum",
    "SalemScan",
    "dft_naive",
    "dft_fast",
    "salem_constant",
    "salem_scan",
    "plancherel_residual",
    "CorrelationTable",
    "TranslateProfile",
    "RoundingError",
    "correlation_table",
    "difference_set",
    "distance_set",
    "energy",
    "energy_brute",
    "energy_corr",
    "energy_spectral",
    "translate_profile",
    "BivarPoly",
    "LineSpec",
    "BezoutResult",
    "all_lines",
    "bezout_translate_check",
    "contains_line",
    "line_set",
    "paraboloid",
    "product_set",
    "sphere",
    "subspace",
    "variety_points",
    "CHECKS",
    "THEOREM_GRADE",
    "VerificationReport",
    "check_energy_bound",
    "check_spectral_energy_identity",
    "check_dense_set_norms",
    "check_energy_profile_bound",
    "check_profile_diff_bound",
    "check_salem_diff_bound",
    "check_fourier_decay_bound",
    "check_falconer",
    "run_named_check",
]
