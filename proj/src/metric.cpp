#include "lipext/metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace lipext {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> dist)
    : m_(static_cast<int>(labels.size())), labels_(std::move(labels)), dist_(std::move(dist)) {
    if (m_ < 1) fail("metric space needs at least one point");
    if (static_cast<int>(dist_.size()) != m_ * m_) fail("distance matrix has wrong size");
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second) fail("duplicate point label: " + l);
    for (int i = 0; i < m_; ++i) {
        if (dist_[i * m_ + i] != 0.0) fail("distance matrix diagonal must be zero");
        for (int j = 0; j < m_; ++j) {
            const double dij = dist_[i * m_ + j];
            if (!std::isfinite(dij)) fail("distances must be finite");
            if (i != j && dij <= 0.0) fail("off-diagonal distances must be positive");
            if (dij != dist_[j * m_ + i]) fail("distance matrix must be symmetric");
        }
    }
    // triangle inequality, with relative slack for inputs computed in floating point
    for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j)
            for (int k = 0; k < m_; ++k) {
                const double lhs = dist_[i * m_ + j];
                const double rhs = dist_[i * m_ + k] + dist_[k * m_ + j];
                if (lhs > rhs * (1.0 + 1e-12)) fail("triangle inequality violated");
            }
}

int FiniteMetricSpace::index_of(const std::string& label) const {
    for (int i = 0; i < m_; ++i)
        if (labels_[i] == label) return i;
    fail("unknown point label: " + label);
}

std::vector<double> metric_closure(std::vector<double> dist, int m) {
    if (static_cast<int>(dist.size()) != m * m) fail("matrix has wrong size");
    for (int i = 0; i < m; ++i) {
        if (dist[i * m + i] != 0.0) fail("diagonal must be zero");
        for (int j = 0; j < m; ++j) {
            if (dist[i * m + j] != dist[j * m + i]) fail("matrix must be symmetric");
            if (i != j && !(dist[i * m + j] > 0.0)) fail("off-diagonal entries must be positive");
        }
    }
    for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                dist[i * m + j] = std::min(dist[i * m + j], dist[i * m + k] + dist[k * m + j]);
    return dist;
}

void validate_partial_function(const FiniteMetricSpace& space, const PartialFunction& f) {
    if (f.subset.empty()) fail("subset must be nonempty");
    if (f.subset.size() != f.values.size()) fail("subset and values must have the same length");
    std::unordered_set<int> seen;
    for (int x : f.subset) {
        if (x < 0 || x >= space.size()) fail("subset index out of range");
        if (!seen.insert(x).second) fail("subset indices must be distinct");
    }
    for (const auto& v : f.values)
        if (v.space != f.target) fail("value does not live in the target space");
}

double lipschitz_constant(const FiniteMetricSpace& space, const PartialFunction& f) {
    validate_partial_function(space, f);
    const int k = static_cast<int>(f.subset.size());
    double L = 0.0;
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            L = std::max(L, distance(f.values[a], f.values[b]) / space.d(f.subset[a], f.subset[b]));
    return L;
}

double lipschitz_constant(const FiniteMetricSpace& space, const std::vector<SpaceElement>& values) {
    if (static_cast<int>(values.size()) != space.size()) fail("need one value per point");
    double L = 0.0;
    for (int a = 0; a < space.size(); ++a)
        for (int b = a + 1; b < space.size(); ++b)
            L = std::max(L, distance(values[a], values[b]) / space.d(a, b));
    return L;
}

double sup_norm(const PartialFunction& f) { return sup_norm(f.values); }

double sup_norm(const std::vector<SpaceElement>& values) {
    double s = 0.0;
    for (const auto& v : values) s = std::max(s, norm(v));
    return s;
}

}  // namespace lipext
