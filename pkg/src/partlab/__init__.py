"""Exact arithmetic for restricted and multicolor partition counts p_A(n, k)."""
from .asymptotics import (
    almkvist_polynomial_part,
    bernoulli_table,
    euler_maclaurin_poly_sum,
    netto_leading,
    sigma_table,
)
from .bounds import (
    BoundEnvelope,
    Classification,
    Threshold,
    bo_threshold,
    classify,
    ek_constant,
    envelope_cubic,
    envelope_cubic_coprime,
    envelope_leading_term,
    envelope_stable_part,
    f_constant,
    logconcavity_threshold,
)
from .core import (
    PartSystem,
    RationalPolynomial,
    TruncatedPowerSeries,
    gcd_all_multisubsets,
    make_part_system,
    series_reciprocal,
)
from .errors import (
    ApplicabilityError,
    CapacityError,
    ConsistencyError,
    PartlabError,
    SingularSeriesError,
    ValidationError,
)
from .exact import (
    PartitionTable,
    binomial_all_ones,
    count_k1,
    count_one,
    count_table,
    delta,
    nearest_int_formula,
    popoviciu,
)
from .quasipoly import (
    QuasiPolynomial,
    cnt_quasipolynomial,
    evaluate,
    fit_quasipolynomial,
    rising_factorial_coeffs,
    stable_coefficients,
    stirling1_unsigned,
)
from .scanner import (
    ScanReport,
    minimal_logconcave_start,
    scan_bo,
    scan_logconcavity,
    verify_envelope,
    verify_quasipolynomial,
)

__version__ = "0.1.0"
