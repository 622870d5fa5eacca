"""Average bipartite mutual information of Haar-random pure states.

For a random pure state on A x B x E the ensemble-average mutual
information <I(A:B)> is computed by four independent routes:

* exact closed form in binary64 (digamma) and exact rationals (harmonic
  numbers) -- :mod:`haarmi.page`;
* a divergent large-N Bernoulli expansion with superasymptotic
  truncation -- :mod:`haarmi.series`;
* a convergent Bose-Einstein integral that resums that expansion and
  proves the strict leading-order bound -- :mod:`haarmi.integral`;
* a Haar Monte Carlo oracle -- :mod:`haarmi.sampling`.
"""

__version__ = "0.1.0"

from .dims import CasimirCounts, Dimensions, casimir_counts, leading_order
from .errors import (
    DegeneratePoleError,
    DomainError,
    HaarMIError,
    InvalidDimensionError,
    NonConvergenceError,
    NumericalValidityError,
    OracleWorkerError,
    RegimeError,
    SeriesOverflowError,
)
from .special import (
    BERNOULLI_LIMIT,
    EULER_GAMMA,
    bernoulli,
    digamma,
    harmonic_rational,
    zeta_negative_odd,
)
from .page import (
    MutualInformationBreakdown,
    bloch_variance,
    diagonal_entropy_avg,
    diagonal_entropy_avg_rational,
    diagonal_second_moment,
    forced_factorised_value,
    i_diag_rational,
    lubkin_purity,
    mutual_information_exact,
    mutual_information_rational,
    page_entropy,
    page_entropy_rational,
    schur_deficit,
)
from .series import (
    K_MAX_DEFAULT,
    SeriesExpansion,
    bernoulli_term,
    expand,
    optimal_truncation_value,
)
from .integral import (
    EVAL_BUDGET,
    PartialFractionForm,
    QuadratureResult,
    binet_tail,
    bound_deficit,
    compute_J,
    folded_integrand,
    kernel_R,
    mutual_information_integral,
    partial_fractions,
)
from .sampling import (
    CHUNK_SIZE,
    RNG_IDENTITY,
    STATE_DIMENSION_CAP,
    BlochVarianceStats,
    DensityMatrix,
    GellMannBasis,
    HaarSampleStats,
    PureState,
    bloch_variances,
    diagonal_entropy,
    gell_mann_basis,
    mutual_info_sample,
    reduce_state,
    run_oracle,
    sample_state,
    von_neumann_entropy,
)

__all__ = [
    "__version__",
    # dims
    "CasimirCounts", "Dimensions", "casimir_counts", "leading_order",
    # errors
    "HaarMIError", "InvalidDimensionError", "DomainError", "RegimeError",
    "DegeneratePoleError", "NonConvergenceError", "SeriesOverflowError",
    "NumericalValidityError", "OracleWorkerError",
    # special functions
    "BERNOULLI_LIMIT", "EULER_GAMMA", "bernoulli", "digamma",
    "harmonic_rational", "zeta_negative_odd",
    # closed forms
    "MutualInformationBreakdown", "page_entropy", "page_entropy_rational",
    "diagonal_entropy_avg", "diagonal_entropy_avg_rational", "schur_deficit",
    "mutual_information_exact", "mutual_information_rational",
    "forced_factorised_value", "i_diag_rational", "lubkin_purity",
    "diagonal_second_moment", "bloch_variance",
    # series
    "K_MAX_DEFAULT", "SeriesExpansion", "bernoulli_term", "expand",
    "optimal_truncation_value",
    # integral
    "EVAL_BUDGET", "PartialFractionForm", "QuadratureResult", "binet_tail",
    "bound_deficit", "compute_J", "folded_integrand", "kernel_R",
    "mutual_information_integral", "partial_fractions",
    # sampling
    "CHUNK_SIZE", "RNG_IDENTITY", "STATE_DIMENSION_CAP",
    "BlochVarianceStats", "DensityMatrix", "GellMannBasis",
    "HaarSampleStats", "PureState", "bloch_variances", "diagonal_entropy",
    "gell_mann_basis", "mutual_info_sample", "reduce_state", "run_oracle",
    "sample_state", "von_neumann_entropy",
]
