#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipext/metric.hpp"
#include "lipext/spaces.hpp"

namespace lipext {

struct OracleOptions {
    double tol_bisect = 1e-4;  // relative bracket width at which bisection stops
    double tol_feas = 1e-8;    // max relative pair violation accepted as feasible
    int max_iters = 200000;    // hard sweep cap per feasibility solve
};

/// Outcome of one feasibility solve at a fixed candidate constant.
struct FeasibilityReport {
    bool feasible = false;
    std::vector<SpaceElement> assignment;  // last iterate (a witness when feasible)
    int sweeps = 0;
    double violation = 0.0;  // max relative pair violation of the last iterate
};

/**
 * Decides whether f admits an extension with Lipschitz constant at most c by
 * cyclic projections onto the pair constraint sets
 * ||g(z) - g(w)|| <= c d(z, w), with Dykstra correction terms, in the
 * Euclidean/Frobenius ambient geometry.  The pair order is lexicographic and
 * fixed, so the solve is deterministic.
 *
 * A feasible verdict is certified by the returned assignment.  An infeasible
 * verdict is heuristic: it is reported when the violation stalls above the
 * tolerance or the sweep cap is reached.
 *
 * `warm` optionally seeds the free values (e.g. from a previous solve at a
 * larger c); by default free points start at the value of the nearest
 * subset point.
 */
FeasibilityReport feasible_extension(const FiniteMetricSpace& space, const PartialFunction& f,
                                     double c, const OracleOptions& opt = {},
                                     const std::vector<SpaceElement>* warm = nullptr);

struct OracleResult {
    double input_lipschitz = 0.0;
    double optimal_lipschitz = 0.0;  // the certified upper end of the bracket
    double bracket_lo = 0.0;         // heuristic lower end
    double bracket_hi = 0.0;
    double ratio = 1.0;              // optimal / input, 1 when input is 0
    std::vector<SpaceElement> witness;
    int total_sweeps = 0;
};

/**
 * Smallest extension constant by bisection over c in
 * [L(f), dim * L(f)] (the generic upper end is always feasible).  The
 * certified quantity is the upper bracket end together with its witness,
 * whose Lipschitz constant is recomputed and checked against the bracket.
 */
OracleResult minimal_extension(const FiniteMetricSpace& space, const PartialFunction& f,
                               const OracleOptions& opt = {});

struct ProblemInstance {
    FiniteMetricSpace space;
    PartialFunction f;
};

/// Four points: three at mutual distance 2, a hub at distance 1 from each;
/// f maps the three outer points to the cube roots of unity in the plane.
/// L(f) = sqrt(3)/2 and the optimal extension constant is 1 (the hub goes to
/// the circumcenter), giving the ratio 2/sqrt(3).
ProblemInstance four_point_example();

/// Published extension constant of a target space, when there is one:
/// 4/pi for the plane, 1 for real sup norms, the closed forms for the matrix
/// spaces.  Empty otherwise.
std::optional<double> published_le(const SpaceDescriptor& target);

struct ProspectResult {
    double best_ratio = 0.0;
    double worst_gap = 0.0;  // max over trials of ratio - (published + tol); <= 0 when capped
    std::optional<ProblemInstance> best_instance;
    OracleResult best_oracle;
    std::int64_t trials = 0;
    std::vector<std::pair<std::int64_t, double>> improvements;  // (trial, ratio)
};

/**
 * Random search for instances with a large minimal-extension ratio: random
 * metric spaces (Euclidean point clouds, or random symmetric matrices
 * repaired by shortest-path closure), random subsets and values, plus local
 * perturbation ascent around the incumbent.  For the plane the four-point
 * example is seeded into the pool.
 *
 * Every evaluated ratio is checked against the published constant of the
 * target (when there is one) plus 1e-3; `worst_gap` reports the margin.
 */
ProspectResult prospect_lower_bound(const SpaceDescriptor& target, std::int64_t trials, int zmax,
                                    std::uint64_t seed, const OracleOptions& opt = {});

}  // namespace lipext
