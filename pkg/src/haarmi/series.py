"""Divergent large-N expansion of the average mutual information.

The expansion reads

    leading + sum_{k>=1} t_k,
    t_k = zeta(1-2k) * (d_a^{2k} - 1)(d_b^{2k} - 1) / N^{2k},

with ``leading = (d_a^2-1)(d_b^2-1)/(2N)`` and exact rational coefficients
``zeta(1-2k) = -B_{2k}/(2k)``.  Only even inverse powers of N appear.  The
factorial growth of the Bernoulli numbers makes the series divergent for
every fixed N: term magnitudes shrink to a minimum near ``k ~ pi * d_e``
and then explode.  Truncating at the smallest term (superasymptotic
truncation) leaves an error of the order of that term, which is what
``error_estimate`` reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .dims import Dimensions, leading_order
from .errors import DomainError, SeriesOverflowError
from .special import BERNOULLI_LIMIT, zeta_negative_odd

#: Default number of terms kept by :func:`expand`.
K_MAX_DEFAULT = 40


@dataclass(frozen=True)
class SeriesExpansion:
    """Terms and running truncations of the large-N expansion.

    terms[i] is t_{i+1}; partial_sums[k] = leading + t_1 + ... + t_k, built
    strictly sequentially so partial_sums[k] == partial_sums[k-1] + terms[k-1]
    holds bitwise, with partial_sums[0] == leading.

    optimal_k:      1-based index of the smallest-magnitude term: the
                    superasymptotic truncation point.
    error_estimate: magnitude of the first term beyond the truncation
                    point (the last computed term if none was beyond).
    divergence_k:   first 1-based index whose magnitude strictly exceeds
                    its predecessor's, or None if magnitudes never grow.
    """

    dims: Dimensions
    leading: float
    terms: list[float]
    partial_sums: list[float]
    optimal_k: int
    error_estimate: float
    divergence_k: int | None

    @property
    def value_at_optimal(self) -> float:
        """The superasymptotically truncated value, partial_sums[optimal_k]."""
        return self.partial_sums[self.optimal_k]


def _check_k_max(k_max: int) -> None:
    if not isinstance(k_max, int) or isinstance(k_max, bool) or k_max < 1:
        raise DomainError(f"k_max must be an int >= 1, got {k_max!r}")
    if 2 * k_max > BERNOULLI_LIMIT:
        raise DomainError(
            f"k_max={k_max} needs Bernoulli numbers past the supported "
            f"limit {BERNOULLI_LIMIT}"
        )


def bernoulli_term(dims: Dimensions, k: int) -> float:
    """Term ``t_k = zeta(1-2k) (d_a^{2k}-1)(d_b^{2k}-1) / N^{2k}``.

    Each dimension factor is evaluated as ``(d^2/N)^k - (1/N)^k``, which
    never overflows for moderate dims (both bases are O(1) in the
    factorised regime), is exactly zero when ``d = 1``, and keeps the
    term's sign pattern ``(-1)^k`` intact.
    """
    _check_k_max(k)
    n = dims.n
    coeff = float(zeta_negative_odd(k))
    try:
        factor_a = (dims.d_a * dims.d_a / n) ** k - (1.0 / n) ** k
        factor_b = (dims.d_b * dims.d_b / n) ** k - (1.0 / n) ** k
        term = coeff * factor_a * factor_b
    except OverflowError:
        # float ** raises instead of returning inf once d^2/N is large
        raise SeriesOverflowError(
            f"series term k={k} overflows binary64 for {dims}", k=k
        ) from None
    if not math.isfinite(term):
        raise SeriesOverflowError(
            f"series term k={k} is non-finite for {dims}", k=k
        )
    return term


def expand(dims: Dimensions, k_max: int = K_MAX_DEFAULT) -> SeriesExpansion:
    """Evaluate the first ``k_max`` terms together with their partial sums
    and the superasymptotic truncation bookkeeping."""
    _check_k_max(k_max)
    lead = leading_order(dims)
    terms = [bernoulli_term(dims, k) for k in range(1, k_max + 1)]
    partial_sums = [lead]
    for t in terms:
        partial_sums.append(partial_sums[-1] + t)

    magnitudes = [abs(t) for t in terms]
    optimal_k = k_max
    for k in range(1, k_max):
        if magnitudes[k] >= magnitudes[k - 1]:
            optimal_k = k
            break
    error_estimate = magnitudes[optimal_k] if optimal_k < k_max else magnitudes[-1]

    divergence_k = None
    for k in range(1, k_max):
        if magnitudes[k] > magnitudes[k - 1]:
            divergence_k = k + 1
            break

    return SeriesExpansion(
        dims=dims,
        leading=lead,
        terms=terms,
        partial_sums=partial_sums,
        optimal_k=optimal_k,
        error_estimate=error_estimate,
        divergence_k=divergence_k,
    )


def optimal_truncation_value(
    dims: Dimensions, k_max: int = K_MAX_DEFAULT
) -> tuple[float, float]:
    """Superasymptotically truncated value and its error estimate."""
    expansion = expand(dims, k_max)
    return expansion.value_at_optimal, expansion.error_estimate
