#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lipext/metric.hpp"
#include "lipext/sampling.hpp"
#include "lipext/spaces.hpp"

namespace lipext {

/// Output of every extension method: one value per point of the metric
/// space, plus recomputed certificates.
struct ExtensionResult {
    std::string method;
    std::vector<SpaceElement> assignment;   // indexed like the metric space
    double input_lipschitz = 0.0;           // L(f) on the subset
    double achieved_lipschitz = 0.0;        // L of the assignment, recomputed
    double achieved_sup = 0.0;              // sup norm of the assignment
    double ratio = 1.0;                     // achieved / input, 1 when input is 0
    double restriction_error = 0.0;         // max over subset of ||g(x) - f(x)||
    std::string guarantee;                  // which Lipschitz guarantee applies
    int nodes = 0;                          // quadrature size (kernel projection)
    std::uint64_t seed = 0;                 // quadrature seed (kernel projection)
};

/**
 * Sup-formula extension of a scalar function: g(z) = max over subset points x
 * of f(x) - L * d(z, x).  Restriction to the subset reproduces f exactly.
 * With `clamp`, g is cut off below at -sup|f|, which preserves the Lipschitz
 * constant and pins the sup norm of g to sup|f|.
 *
 * `lip` must dominate the Lipschitz constant of (subset, values); passing a
 * larger constant is allowed (the coordinates of a vector lift all share one
 * constant).
 */
std::vector<double> mcshane_extend_scalar(const FiniteMetricSpace& space,
                                          const std::vector<int>& subset,
                                          const std::vector<double>& values, double lip,
                                          bool clamp);

/// Scalar extension packaged as an ExtensionResult; target RealSup(1).
ExtensionResult mcshane_extend(const FiniteMetricSpace& space, const PartialFunction& f,
                               bool clamp = true);

/**
 * Coordinatewise extension for sup-norm targets (RealSup(k),
 * SeqSupComplex(k), or the plane): each real coordinate is extended by the
 * scalar sup formula with its own Lipschitz constant and clamp.
 *
 * For RealSup the result is exact: achieved Lipschitz constant equals L(f)
 * and the sup norm equals sup||f||.  For complex targets each complex
 * coordinate is split into real and imaginary parts, which gives the
 * guarantee achieved <= sqrt(2) * L(f).
 */
ExtensionResult coordinatewise_extend(const FiniteMetricSpace& space, const PartialFunction& f);

/// Reproducing kernel for the invariant projection onto the span of the
/// coordinate functions p -> tr(ap): K(p, q) = mu + nu tr(pq) with mu = -n
/// and nu = n(n+1).
double kernel_value(int n, double pairing);

/// Dense kernel matrix K(p_i, p_j) of a quadrature set.
Eigen::MatrixXd kernel_matrix(const QuadratureSet& quad);

/// Reconstruction of a self-adjoint matrix from node values h_j ~ tr(a p_j):
/// a = -n mean(h) I + n(n+1) mean(h_j p_j).  Equal to the discrete kernel
/// projection of h evaluated against the coordinate functions.
SpaceElement kernel_project_reconstruct(const std::vector<double>& h, const QuadratureSet& quad);

/// Discrete estimate of the projection norm: max over i of
/// (1/N) sum_j |K(p_i, p_j)|.
double discrete_projection_norm(const QuadratureSet& quad);

/**
 * Near-optimal extension into MatrixSA(n) through the invariant-projection
 * pipeline: lift f through the coordinate functions at `nodes` quadrature
 * nodes, extend every node coordinate by the clamped sup formula with the
 * shared constant L(f), and reconstruct a matrix at every point.
 *
 * Requires nodes >= n^2 (the reconstruction is rank-deficient below that).
 * Restriction to the subset carries the Monte Carlo reconstruction error,
 * which the result records.
 */
ExtensionResult extend_sa(const FiniteMetricSpace& space, const PartialFunction& f, int nodes,
                          std::uint64_t seed);

/// Radial retraction onto the ball of radius r > 0: identity inside,
/// v -> r v / ||v|| outside.  Lipschitz constant at most 2 in any normed
/// space and exactly 1 for Euclidean targets.
SpaceElement radial_retract(const SpaceElement& v, double r);

/**
 * Norm-preserving wrapper: runs `inner` and composes with the radial
 * retraction at radius sup||f||.  The sup norm of the result equals sup||f||
 * and the Lipschitz guarantee of the inner method at most doubles.
 * A zero function short-circuits to the zero extension.
 */
ExtensionResult extend_norm_preserving(
    const FiniteMetricSpace& space, const PartialFunction& f,
    const std::function<ExtensionResult(const FiniteMetricSpace&, const PartialFunction&)>& inner);

/**
 * A linear map C(M) -> E of the form v -> sum_k v(q_k) B_k, where M is the
 * rank-one projection space, E the self-adjoint matrices, q_k evaluation
 * nodes and B_k self-adjoint coefficients.  Both the interpolation projection
 * and the discrete kernel projection take this shape, and conjugating by a
 * unitary maps the shape to itself, so group averaging stays in this class.
 */
struct NodeFunctionalMap {
    int n = 0;
    std::vector<RankOneNode> eval_nodes;
    std::vector<Eigen::MatrixXcd> coeffs;
};

/// Interpolation projection onto the coordinate-function span: the n^2 nodes
/// must make the interpolation problem solvable.  Validates the projection
/// identity Q(phi_{Q(v)}) = Q(v) to 1e-8 on a probe basis.
NodeFunctionalMap interpolation_projection(const QuadratureSet& nodes);

/// The discrete kernel projection as a NodeFunctionalMap over `quad`.
NodeFunctionalMap kernel_projection_map(const QuadratureSet& quad);

/// Applies the map to a function given anywhere on M.
Eigen::MatrixXcd apply_map(const NodeFunctionalMap& map,
                           const std::function<double(const RankOneNode&)>& h);

/// Group average (1/S) sum_s conj_u(Q) over explicit unitaries, where
/// conj_u(Q) v = u Q(v(u . u*)) u*.  With the single identity element the
/// output equals Q.
NodeFunctionalMap average_projection(const NodeFunctionalMap& q,
                                     const std::vector<Eigen::MatrixXcd>& unitaries);

/// Haar Monte Carlo version with `samples` unitaries from `seed`.
NodeFunctionalMap average_projection(const NodeFunctionalMap& q, int samples, std::uint64_t seed);

/// sup-to-operator-norm estimate of a NodeFunctionalMap over an evaluation
/// grid: max over grid points p of sum_k |tr(B_k p)|.
double map_norm_estimate(const NodeFunctionalMap& map, const QuadratureSet& grid);

}  // namespace lipext
