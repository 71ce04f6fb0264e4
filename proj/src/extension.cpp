#include "lipext/extension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lipext {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Shared finish: recompute certificates from the assignment.
void finalize(const FiniteMetricSpace& space, const PartialFunction& f, ExtensionResult& r) {
    r.input_lipschitz = lipschitz_constant(space, f);
    r.achieved_lipschitz = lipschitz_constant(space, r.assignment);
    r.achieved_sup = sup_norm(r.assignment);
    r.ratio = r.input_lipschitz > 0.0 ? r.achieved_lipschitz / r.input_lipschitz : 1.0;
    r.restriction_error = 0.0;
    for (size_t i = 0; i < f.subset.size(); ++i)
        r.restriction_error =
            std::max(r.restriction_error, distance(r.assignment[f.subset[i]], f.values[i]));
}

}  // namespace

std::vector<double> mcshane_extend_scalar(const FiniteMetricSpace& space,
                                          const std::vector<int>& subset,
                                          const std::vector<double>& values, double lip,
                                          bool clamp) {
    if (subset.size() != values.size() || subset.empty()) fail("subset/values mismatch");
    const int m = space.size();
    std::vector<double> g(m);
    std::vector<char> pinned(m, 0);
    double sup = 0.0;
    for (size_t i = 0; i < subset.size(); ++i) {
        g[subset[i]] = values[i];  // restriction is exact by construction
        pinned[subset[i]] = 1;
        sup = std::max(sup, std::abs(values[i]));
    }
    for (int z = 0; z < m; ++z) {
        if (pinned[z]) continue;
        double best = -std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < subset.size(); ++i)
            best = std::max(best, values[i] - lip * space.d(z, subset[i]));
        g[z] = clamp ? std::max(best, -sup) : best;
    }
    return g;
}

ExtensionResult mcshane_extend(const FiniteMetricSpace& space, const PartialFunction& f,
                               bool clamp) {
    validate_partial_function(space, f);
    if (!(f.target.kind == SpaceKind::RealSup && f.target.param == 1))
        fail("mcshane_extend takes scalar functions (target RealSup(1))");
    const double lip = lipschitz_constant(space, f);
    std::vector<double> vals(f.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = f.values[i].data[0];
    const std::vector<double> g = mcshane_extend_scalar(space, f.subset, vals, lip, clamp);

    ExtensionResult r;
    r.method = clamp ? "mcshane-clamped" : "mcshane";
    r.guarantee = "exact";
    r.assignment.reserve(space.size());
    for (int z = 0; z < space.size(); ++z) r.assignment.push_back(make_element(f.target, {g[z]}));
    finalize(space, f, r);
    return r;
}

ExtensionResult coordinatewise_extend(const FiniteMetricSpace& space, const PartialFunction& f) {
    validate_partial_function(space, f);
    const SpaceKind kind = f.target.kind;
    if (kind != SpaceKind::RealSup && kind != SpaceKind::SeqSupComplex &&
        kind != SpaceKind::ComplexPlane)
        fail("coordinatewise_extend takes sup-norm targets or the plane");
    const int m = space.size();
    const int width = f.target.flat_size();
    const int npts = static_cast<int>(f.subset.size());

    std::vector<std::vector<double>> coords(width, std::vector<double>(npts));
    for (int c = 0; c < width; ++c)
        for (int i = 0; i < npts; ++i) coords[c][i] = f.values[i].data[c];

    std::vector<std::vector<double>> ext(width);
    for (int c = 0; c < width; ++c) {
        // per-coordinate constant; each one is dominated by L(f)
        double lip = 0.0;
        for (int a = 0; a < npts; ++a)
            for (int b = a + 1; b < npts; ++b)
                lip = std::max(lip, std::abs(coords[c][a] - coords[c][b]) /
                                        space.d(f.subset[a], f.subset[b]));
        ext[c] = mcshane_extend_scalar(space, f.subset, coords[c], lip, true);
    }

    ExtensionResult r;
    r.method = "coordinatewise";
    r.guarantee = kind == SpaceKind::RealSup ? "exact" : "sqrt2-split";
    r.assignment.reserve(m);
    for (int z = 0; z < m; ++z) {
        std::vector<double> data(width);
        for (int c = 0; c < width; ++c) data[c] = ext[c][z];
        r.assignment.push_back(make_element(f.target, std::move(data)));
    }
    finalize(space, f, r);
    return r;
}

double kernel_value(int n, double pairing) {
    const double mu = -static_cast<double>(n);
    const double nu = static_cast<double>(n) * (n + 1);
    return mu + nu * pairing;
}

Eigen::MatrixXd kernel_matrix(const QuadratureSet& quad) {
    const int N = quad.count();
    Eigen::MatrixXd k(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) {
            const double t = std::norm(quad.nodes[i].v.dot(quad.nodes[j].v));
            k(i, j) = k(j, i) = kernel_value(quad.n, t);
        }
    return k;
}

SpaceElement kernel_project_reconstruct(const std::vector<double>& h, const QuadratureSet& quad) {
    const int N = quad.count(), n = quad.n;
    if (static_cast<int>(h.size()) != N) fail("need one node value per quadrature node");
    double mean = 0.0;
    for (double x : h) mean += x;
    mean /= N;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < N; ++j) acc.noalias() += h[j] * (quad.nodes[j].v * quad.nodes[j].v.adjoint());
    acc *= static_cast<double>(n) * (n + 1) / N;
    acc -= (static_cast<double>(n) * mean) * Eigen::MatrixXcd::Identity(n, n);
    // the formula is exactly Hermitian up to rounding; symmetrize before validation
    acc = 0.5 * (acc + acc.adjoint()).eval();
    return from_matrix(make_descriptor(SpaceKind::MatrixSA, n), acc);
}

double discrete_projection_norm(const QuadratureSet& quad) {
    const int N = quad.count(), n = quad.n;
    // row sums of |K| in blocks of Gram products; O(N^2) time, O(N*B) memory
    Eigen::MatrixXcd u(n, N);
    for (int j = 0; j < N; ++j) u.col(j) = quad.nodes[j].v;
    const double scale = static_cast<double>(n) * (n + 1);
    // |K| is symmetric: accumulate row sums from upper-triangular blocks only
    const int B = std::max(1, std::min(N, 2048));
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(N);
    Eigen::MatrixXcd g(B, B);
    Eigen::ArrayXXd a(B, B);
    for (int i0 = 0; i0 < N; i0 += B) {
        const int bi = std::min(B, N - i0);
        for (int j0 = i0; j0 < N; j0 += B) {
            const int bj = std::min(B, N - j0);
            g.topLeftCorner(bi, bj).noalias() =
                u.middleCols(i0, bi).adjoint() * u.middleCols(j0, bj);
            a.topLeftCorner(bi, bj) =
                (scale * g.topLeftCorner(bi, bj).cwiseAbs2().array() - static_cast<double>(n))
                    .abs();
            row_sums.segment(i0, bi) += a.topLeftCorner(bi, bj).rowwise().sum().matrix();
            if (j0 > i0)
                row_sums.segment(j0, bj) +=
                    a.topLeftCorner(bi, bj).colwise().sum().matrix().transpose();
        }
    }
    return row_sums.maxCoeff() / N;
}

ExtensionResult extend_sa(const FiniteMetricSpace& space, const PartialFunction& f, int nodes,
                          std::uint64_t seed) {
    validate_partial_function(space, f);
    if (f.target.kind != SpaceKind::MatrixSA) fail("extend_sa takes MatrixSA targets");
    const int n = f.target.param;
    if (nodes < n * n) fail("extend_sa needs at least n^2 quadrature nodes");

    const QuadratureSet quad = sample_quadrature(n, nodes, seed);
    const double lip = lipschitz_constant(space, f);
    const double sup = sup_norm(f);
    const int m = space.size();
    const int npts = static_cast<int>(f.subset.size());

    // lift f through the coordinate functions: one scalar value per node
    std::vector<Eigen::MatrixXcd> fm;
    fm.reserve(npts);
    for (const auto& v : f.values) fm.push_back(to_matrix(v));
    std::vector<std::vector<double>> lifted(npts, std::vector<double>(nodes));
    for (int i = 0; i < npts; ++i)
        for (int j = 0; j < nodes; ++j) lifted[i][j] = rank_one_expectation(fm[i], quad.nodes[j]);

    // clamped sup-formula extension per node coordinate with the shared
    // constant L(f); the lift is then L(f)-Lipschitz into the sup norm
    ExtensionResult r;
    r.method = "kernel-projection";
    r.guarantee = "discrete-projection-norm";
    r.nodes = nodes;
    r.seed = seed;
    r.assignment.reserve(m);
    std::vector<double> h(nodes);
    std::vector<char> pin(m, 0);
    std::vector<int> pin_idx(m, -1);
    for (int i = 0; i < npts; ++i) {
        pin[f.subset[i]] = 1;
        pin_idx[f.subset[i]] = i;
    }
    for (int z = 0; z < m; ++z) {
        if (pin[z]) {
            // the sup formula restricts exactly, so the node values are the lift itself
            h = lifted[pin_idx[z]];
        } else {
            for (int j = 0; j < nodes; ++j) {
                double best = -std::numeric_limits<double>::infinity();
                for (int i = 0; i < npts; ++i)
                    best = std::max(best, lifted[i][j] - lip * space.d(z, f.subset[i]));
                h[j] = std::max(best, -sup);
            }
        }
        r.assignment.push_back(kernel_project_reconstruct(h, quad));
    }
    finalize(space, f, r);
    return r;
}

SpaceElement radial_retract(const SpaceElement& v, double r) {
    if (!(r > 0.0)) fail("retraction radius must be positive");
    const double nv = norm(v);
    if (nv <= r) return v;
    return scale(v, r / nv);
}

ExtensionResult extend_norm_preserving(
    const FiniteMetricSpace& space, const PartialFunction& f,
    const std::function<ExtensionResult(const FiniteMetricSpace&, const PartialFunction&)>& inner) {
    validate_partial_function(space, f);
    const double sup = sup_norm(f);
    if (sup == 0.0) {
        ExtensionResult r;
        r.method = "norm-preserving(zero)";
        r.guarantee = "exact";
        r.assignment.assign(space.size(), zero_element(f.target));
        finalize(space, f, r);
        return r;
    }
    ExtensionResult r = inner(space, f);
    for (auto& g : r.assignment) g = radial_retract(g, sup);
    r.method = "norm-preserving(" + r.method + ")";
    r.guarantee = r.guarantee + "+retraction";
    const int nodes = r.nodes;
    const std::uint64_t seed = r.seed;
    finalize(space, f, r);
    r.nodes = nodes;
    r.seed = seed;
    return r;
}

NodeFunctionalMap interpolation_projection(const QuadratureSet& nodes) {
    const int n = nodes.n, N = nodes.count();
    if (N != n * n) fail("interpolation projection needs exactly n^2 nodes");

    // orthonormal Hermitian basis in the trace inner product
    std::vector<Eigen::MatrixXcd> basis;
    basis.reserve(n * n);
    const std::complex<double> I(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
        e(i, i) = 1.0;
        basis.push_back(e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
            e(i, j) = e(j, i) = M_SQRT1_2;
            basis.push_back(e);
            e(i, j) = -I * M_SQRT1_2;
            e(j, i) = I * M_SQRT1_2;
            basis.push_back(e);
        }

    // A[l][k] = tr(e_k q_l); cardinal coefficients solve A c_k = delta_k
    Eigen::MatrixXd a(N, N);
    for (int l = 0; l < N; ++l)
        for (int k = 0; k < N; ++k) a(l, k) = rank_one_expectation(basis[k], nodes.nodes[l]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) fail("interpolation nodes do not span the coordinate space");
    const Eigen::MatrixXd c = lu.inverse();  // c(l, k): coefficient of e_l in B_k

    NodeFunctionalMap q;
    q.n = n;
    q.eval_nodes = nodes.nodes;
    q.coeffs.reserve(N);
    for (int k = 0; k < N; ++k) {
        Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
        for (int l = 0; l < N; ++l) b += c(l, k) * basis[l];
        q.coeffs.push_back(b);
    }

    // projection identity Q(phi_{Q(v)}) = Q(v) on the cardinal probe basis
    for (int k = 0; k < N; ++k) {
        const Eigen::MatrixXcd once = q.coeffs[k];
        Eigen::MatrixXcd twice = Eigen::MatrixXcd::Zero(n, n);
        for (int l = 0; l < N; ++l)
            twice += rank_one_expectation(once, q.eval_nodes[l]) * q.coeffs[l];
        if ((twice - once).norm() > 1e-8 * (1.0 + once.norm()))
            fail("interpolation map fails the projection identity");
    }
    return q;
}

NodeFunctionalMap kernel_projection_map(const QuadratureSet& quad) {
    const int n = quad.n, N = quad.count();
    NodeFunctionalMap p;
    p.n = n;
    p.eval_nodes = quad.nodes;
    p.coeffs.reserve(N);
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    for (int j = 0; j < N; ++j)
        p.coeffs.push_back((1.0 / N) * (-static_cast<double>(n) * id +
                                        static_cast<double>(n) * (n + 1) *
                                            quad.nodes[j].projection()));
    return p;
}

Eigen::MatrixXcd apply_map(const NodeFunctionalMap& map,
                           const std::function<double(const RankOneNode&)>& h) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(map.n, map.n);
    for (size_t k = 0; k < map.eval_nodes.size(); ++k) out += h(map.eval_nodes[k]) * map.coeffs[k];
    return out;
}

NodeFunctionalMap average_projection(const NodeFunctionalMap& q,
                                     const std::vector<Eigen::MatrixXcd>& unitaries) {
    if (unitaries.empty()) fail("average needs at least one group element");
    const double w = 1.0 / static_cast<double>(unitaries.size());
    NodeFunctionalMap avg;
    avg.n = q.n;
    avg.eval_nodes.reserve(unitaries.size() * q.eval_nodes.size());
    avg.coeffs.reserve(unitaries.size() * q.coeffs.size());
    for (const auto& u : unitaries) {
        for (size_t k = 0; k < q.eval_nodes.size(); ++k) {
            avg.eval_nodes.push_back(RankOneNode{u * q.eval_nodes[k].v});
            avg.coeffs.push_back(w * (u * q.coeffs[k] * u.adjoint()));
        }
    }
    return avg;
}

NodeFunctionalMap average_projection(const NodeFunctionalMap& q, int samples, std::uint64_t seed) {
    if (samples < 1) fail("average needs at least one sample");
    Rng rng(seed);
    std::vector<Eigen::MatrixXcd> us;
    us.reserve(samples);
    for (int s = 0; s < samples; ++s) us.push_back(sample_haar_unitary(q.n, rng));
    return average_projection(q, us);
}

double map_norm_estimate(const NodeFunctionalMap& map, const QuadratureSet& grid) {
    if (grid.n != map.n) fail("grid dimension mismatch");
    double best = 0.0;
    for (const auto& p : grid.nodes) {
        double s = 0.0;
        for (const auto& b : map.coeffs) s += std::abs(rank_one_expectation(b, p));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace lipext
