#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lipext {

/// One row of the constants table.
struct ConstantEntry {
    std::string space;       // e.g. "mn-sa"
    int n = 0;               // space parameter (0 when not applicable)
    double value = 0.0;
    std::string kind;        // "exact", "upper", "lower"
    std::string provenance;  // "closed-form", "quadrature", "bound", "monte-carlo"
    std::string note;
};

/// Extension constant of the complex plane: 4/pi.
double le_complex();

/// Projection constant of C^n with the sup norm over the index set of unit
/// functionals, as a Gamma-function ratio; evaluated through the equivalent
/// integer form 4^n (n!)^2 / (2 (2n)!), with exact integer intermediates up
/// to n = 16 and a ratio recurrence beyond.
double pc_complex_n(int n);

/// Extension constant of the full matrix space M_n(C), n >= 2: the square of
/// pc_complex_n(n).  n = 1 is rejected (the space is the complex plane;
/// call le_complex instead).
double le_mn(int n);

/// Extension constant of the self-adjoint part of M_n(C):
/// 2 n (n / (n+1))^(n-1) - 1.
double le_mn_sa(int n);

/// Normalized growth rate le_mn_sa(n) / n; decreases to 2/e.
double omega(int n);

/**
 * Independent quadrature route to le_mn_sa: the projection norm integral
 * 2^-n n (n-1) * integral over [-1,1] of |(n-1) + (n+1) t| (1-t)^(n-2) dt,
 * split exactly at the kink t = -(n-1)/(n+1), with the binomial expansion of
 * (1-t)^(n-2) integrated term by term in rational arithmetic for n <= 16 and
 * adaptive quadrature beyond.  Defined for n >= 2.
 */
double p_norm_quadrature(int n);

/// (n-1) 2^(1-n) * integral over [-1,1] of h(t) (1-t)^(n-2) dt by adaptive
/// Gauss-Kronrod quadrature at absolute tolerance 1e-10; `kinks` lists interior
/// points where h is not smooth so the integral is split there.  n >= 2.
double density_integral(int n, const std::function<double(double)>& h,
                        const std::vector<double>& kinks = {});

struct MonteCarloEstimate {
    double value = 0.0;
    double sigma = 0.0;  // standard error of the mean
    std::int64_t samples = 0;
};

/// Test functions for the density identity check.
enum class TestFn { T, T2, AbsAffine, Indicator, One };

struct Lemma71Result {
    double mc = 0.0;     // Monte Carlo average of h(2 tr(p0 q) - 1) over Haar q
    double quad = 0.0;   // density_integral of h
    double sigma = 0.0;  // MC standard error
};

/// Checks the push-forward density of t = 2 tr(p0 q) - 1 under the invariant
/// measure against the closed-form density.  AbsAffine uses
/// h(t) = |(n-1) + (n+1) t|, Indicator uses h = 1 on [0, 1].
Lemma71Result lemma71_check(int n, TestFn h, std::int64_t samples, std::uint64_t seed);

/// Monte Carlo route to pc_complex_n: mean of n |v_1| over Haar unit vectors.
MonteCarloEstimate pc_cn_monte_carlo(int n, std::int64_t samples, std::uint64_t seed);

/// Generic upper bounds for a target of the given real dimension: the
/// dimension itself, its square root, and the sharper value (2 + 3 sqrt 6)/5
/// in dimension four.
std::vector<ConstantEntry> bounds_table(int dim_real);

/// Full constants table over the supported spaces for 1 <= n <= max_n:
/// exact values where published, upper/lower bounds otherwise.
/// Every upper bound dominates the exact value of its space and every lower
/// bound is dominated by it.
std::vector<ConstantEntry> constants_table(int max_n);

/// Serializes entries as CSV with header "space,n,value,kind,provenance".
std::string constants_csv(const std::vector<ConstantEntry>& entries);

}  // namespace lipext
