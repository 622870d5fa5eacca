# Watching an asymptotic series diverge (and using it anyway)
# ------------------------------------------------------------
#
# The inverse-N expansion of the average mutual information has Bernoulli
# numbers in its coefficients, and Bernoulli numbers grow like (2k)!.
# For any fixed dimensions the terms therefore shrink only up to some
# index and then explode.  Truncating at the smallest term (the
# "superasymptotic" rule) gives the best the series can do, with the
# first omitted term as an honest error estimate.
#
# Run:  python demos/02_divergent_series.py

from haarmi import Dimensions, expand, mutual_information_exact

dims = Dimensions(2, 2, 4)
exact = mutual_information_exact(dims).total
series = expand(dims, k_max=60)

print(f"dims = {dims}, exact value {exact:.17g}")
print()
print(" k    term t_k        partial sum      |error of partial sum|")
for k in range(1, 25):
    term = series.terms[k - 1]
    partial = series.partial_sums[k]
    marker = ""
    if k == series.optimal_k:
        marker = "   <- smallest term: stop here"
    if k == series.divergence_k:
        marker = "   <- terms now grow: divergence"
    print(f"{k:2d}  {term:+.6e}  {partial:.12f}  {abs(partial - exact):.3e}"
          f"{marker}")

print("...")
print(f"60  {series.terms[59]:+.6e}   (|t_60| > 1: the tail is useless)")
print()
print(f"optimal index      k = {series.optimal_k}")
print(f"value there        {series.value_at_optimal:.17g}")
print(f"actual error       {abs(series.value_at_optimal - exact):.3e}")
print(f"claimed estimate   {series.error_estimate:.3e}")
print()

# The achievable accuracy improves rapidly with the environment: the
# smallest term falls roughly like e^{-2 pi d_E}.  Once the estimate
# drops below ~1e-16 the "true gap" column saturates at the rounding
# noise of the binary64 reference value, not at the series error.
print("best-achievable accuracy by environment size (d_A = d_B = 2):")
for d_e in (4, 8, 12, 16):
    s = expand(Dimensions(2, 2, d_e), k_max=60)
    e = mutual_information_exact(Dimensions(2, 2, d_e)).total
    print(f"  d_E = {d_e:2d}: stop at k = {s.optimal_k:2d}, "
          f"estimate {s.error_estimate:.1e}, "
          f"true gap {abs(s.value_at_optimal - e):.1e}")
