#pragma once

#include <string>
#include <vector>

#include "lipext/spaces.hpp"

namespace lipext {

/// A finite metric space given by labels and a full distance matrix.
/// Construction validates the metric axioms, including all m^3 triangle
/// inequalities with a relative slack of 1e-12.
class FiniteMetricSpace {
  public:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist);

    int size() const { return m_; }
    double d(int i, int j) const { return dist_[i * m_ + j]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& matrix() const { return dist_; }

    /// Index of a label; throws std::invalid_argument if absent.
    int index_of(const std::string& label) const;

  private:
    int m_;
    std::vector<std::string> labels_;
    std::vector<double> dist_;
};

/// Repairs a symmetric nonnegative matrix with zero diagonal into a metric by
/// shortest-path closure (Floyd-Warshall).  Off-diagonal zeros are rejected.
std::vector<double> metric_closure(std::vector<double> dist, int m);

/// A function defined on a subset of a metric space, with values in a target
/// normed space.  `subset` holds point indices into the metric space.
struct PartialFunction {
    SpaceDescriptor target;
    std::vector<int> subset;
    std::vector<SpaceElement> values;
};

/// Validates index range/distinctness and value/target consistency.
void validate_partial_function(const FiniteMetricSpace& space, const PartialFunction& f);

/// Largest ratio ||f(x) - f(y)|| / d(x, y) over pairs of subset points;
/// 0 when fewer than two points.
double lipschitz_constant(const FiniteMetricSpace& space, const PartialFunction& f);

/// Same, for a function defined on every point of the space.
double lipschitz_constant(const FiniteMetricSpace& space, const std::vector<SpaceElement>& values);

/// Sup of ||f(x)|| over the subset (or all points).
double sup_norm(const PartialFunction& f);
double sup_norm(const std::vector<SpaceElement>& values);

}  // namespace lipext
