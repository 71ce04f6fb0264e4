// End-to-end acceptance checks.  Each criterion prints one [PASS]/[FAIL]
// line with its runtime and a short numeric summary; the exit code is 0
// only when every criterion passes.
//
// All randomness is derived from one base seed so the run is reproducible;
// LIPEXT_ACCEPT_SEED overrides it for sensitivity experiments.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "lipext/constants.hpp"
#include "lipext/extension.hpp"
#include "lipext/metric.hpp"
#include "lipext/oracle.hpp"
#include "lipext/sampling.hpp"

using namespace lipext;

namespace {

std::uint64_t g_seed = 9;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

FiniteMetricSpace random_space(int m, Rng& rng) {
    std::vector<double> d(m * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) d[i * m + j] = d[j * m + i] = 0.2 + std::abs(rng.gauss());
    std::vector<std::string> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = "p" + std::to_string(i);
    return FiniteMetricSpace(labels, metric_closure(std::move(d), m));
}

PartialFunction random_partial(const SpaceDescriptor& d, int m, int nx, Rng& rng) {
    PartialFunction f{d, {}, {}};
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    for (int i = 0; i < nx; ++i) {
        const int j = i + static_cast<int>(rng.below(m - i));
        std::swap(idx[i], idx[j]);
    }
    for (int i = 0; i < nx; ++i) {
        std::vector<double> data(d.flat_size());
        for (auto& x : data) x = rng.gauss();
        if (d.kind == SpaceKind::MatrixSA) {
            const Eigen::MatrixXcd raw = to_matrix(SpaceElement{d, data});
            f.values.push_back(from_matrix(d, (0.5 * (raw + raw.adjoint())).eval()));
        } else {
            f.values.push_back(make_element(d, data));
        }
        f.subset.push_back(idx[i]);
    }
    return f;
}

// 1. closed-form self-adjoint constants for n = 1, 2, 3
Outcome c01_exact_constants() {
    const double targets[3] = {1.0, 5.0 / 3.0, 19.0 / 8.0};
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) worst = std::max(worst, std::abs(le_mn_sa(n) - targets[n - 1]));
    return {worst <= 1e-12, fmt("max |le_mn_sa - target| = %.3g over n = 1..3", worst)};
}

// 2. independent quadrature route to the same constants
Outcome c02_dual_route() {
    double worst = 0.0;
    for (int n = 2; n <= 12; ++n)
        worst = std::max(worst, std::abs(p_norm_quadrature(n) - le_mn_sa(n)));
    return {worst <= 1e-10, fmt("max |quadrature - closed form| = %.3g over n = 2..12", worst)};
}

// 3. push-forward density identity, Monte Carlo vs quadrature
Outcome c03_density_identity() {
    const std::uint64_t s = derive_seed(g_seed, 3);
    const TestFn fns[4] = {TestFn::T, TestFn::T2, TestFn::AbsAffine, TestFn::Indicator};
    double worst = 0.0;
    int idx = 0;
    for (int n = 2; n <= 5; ++n) {
        for (const TestFn fn : fns) {
            const Lemma71Result r = lemma71_check(n, fn, 1000000, derive_seed(s, idx++));
            worst = std::max(worst, std::abs(r.mc - r.quad) / r.sigma);
        }
    }
    return {worst <= 3.0, fmt("max |mc - quad| / sigma = %.2f over 16 checks", worst)};
}

// 4. mean rank-one projection equals I/n entrywise
Outcome c04_haar_mean() {
    const std::uint64_t s = derive_seed(g_seed, 4);
    double worst = 0.0;
    for (int n = 2; n <= 3; ++n) {
        Rng rng(derive_seed(s, n));
        Eigen::MatrixXcd mean = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < 100000; ++i) {
            const Eigen::VectorXcd v = sample_unit_vector(n, rng);
            mean += v * v.adjoint();
        }
        mean /= 100000.0;
        worst = std::max(worst,
                         (mean - Eigen::MatrixXcd::Identity(n, n) / n).cwiseAbs().maxCoeff());
    }
    return {worst <= 5e-3, fmt("max entry deviation %.2e over n = 2, 3", worst)};
}

// 5. sphere integral for the projection constant of C^n
Outcome c05_sphere_integral() {
    const MonteCarloEstimate e = pc_cn_monte_carlo(2, 1000000, derive_seed(g_seed, 5));
    const double dev = std::abs(e.value - 4.0 / 3.0);
    const double exact[3] = {1.0, 4.0 / 3.0, 1.6};
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) worst = std::max(worst, std::abs(pc_complex_n(n) - exact[n - 1]));
    const bool pass = dev <= 3.0 * e.sigma && worst <= 1e-12;
    return {pass, fmt("mc dev %.2e (3 sigma = %.2e), closed-form dev %.3g", dev, 3.0 * e.sigma,
                      worst)};
}

// 6. discrete projection norm at n = 2 approaches 5/3
Outcome c06_discrete_norm() {
    const std::uint64_t s = derive_seed(g_seed, 6);
    double mean = 0.0;
    for (int k = 0; k < 10; ++k)
        mean += discrete_projection_norm(sample_quadrature(2, 20000, derive_seed(s, k)));
    mean /= 10.0;
    const double dev = std::abs(mean - 5.0 / 3.0);
    return {dev <= 3e-2, fmt("mean of 10 estimates %.5f, |dev| = %.2e", mean, dev)};
}

// 7. scalar sup-formula exactness on random instances
Outcome c07_sup_formula() {
    Rng rng(derive_seed(g_seed, 7));
    const auto d = make_descriptor(SpaceKind::RealSup, 1);
    double worst_rel = 0.0;
    bool sup_exact = true;
    for (int t = 0; t < 1000; ++t) {
        const int m = 3 + static_cast<int>(rng.below(10));
        const int nx = 2 + static_cast<int>(rng.below(m - 1));
        const FiniteMetricSpace space = random_space(m, rng);
        const PartialFunction f = random_partial(d, m, nx, rng);
        const ExtensionResult r = mcshane_extend(space, f);
        worst_rel = std::max(worst_rel, std::abs(r.achieved_lipschitz - r.input_lipschitz) /
                                            r.input_lipschitz);
        sup_exact = sup_exact && r.achieved_sup == sup_norm(f.values);
    }
    return {worst_rel <= 1e-12 && sup_exact,
            fmt("max relative constant deviation %.3g, sup preserved bitwise: %s", worst_rel,
                sup_exact ? "yes" : "no")};
}

// 8. the four point instance: optimal ratio 2/sqrt(3), no isometric extension
Outcome c08_four_point() {
    const ProblemInstance inst = four_point_example();
    const OracleResult r = minimal_extension(inst.space, inst.f);
    const double dev = std::abs(r.ratio - 2.0 / std::sqrt(3.0));
    const FeasibilityReport below =
        feasible_extension(inst.space, inst.f, 0.985 * r.optimal_lipschitz);
    const bool pass = dev <= 1e-3 && !below.feasible && r.ratio > 1.0 + 1e-3;
    return {pass, fmt("ratio %.6f (dev %.2e), below-optimum feasibility: %s", r.ratio, dev,
                      below.feasible ? "accepted (bad)" : "rejected")};
}

// 9. prospected oracle ratios never beat the published constants
Outcome c09_ratio_cap() {
    const std::uint64_t s = derive_seed(g_seed, 9);
    const SpaceDescriptor targets[3] = {make_descriptor(SpaceKind::ComplexPlane, 1),
                                        make_descriptor(SpaceKind::RealSup, 3),
                                        make_descriptor(SpaceKind::MatrixSA, 2)};
    std::string detail;
    bool pass = true;
    for (int i = 0; i < 3; ++i) {
        const ProspectResult r = prospect_lower_bound(targets[i], 2000, 7, derive_seed(s, i));
        pass = pass && r.worst_gap <= 0.0;
        detail += fmt("%s%s best %.4f gap %.1e", i ? "; " : "",
                      kind_name(targets[i].kind).c_str(), r.best_ratio, r.worst_gap);
    }
    return {pass, detail};
}

// 10. the radial retraction is 2-Lipschitz, 1-Lipschitz on Euclidean targets,
//     and the factor 2 is approached in a two dimensional sup norm
Outcome c10_retraction() {
    const std::uint64_t s = derive_seed(g_seed, 10);
    const SpaceDescriptor spaces[6] = {
        make_descriptor(SpaceKind::RealSup, 4),     make_descriptor(SpaceKind::RealEuclid, 3),
        make_descriptor(SpaceKind::ComplexPlane, 1), make_descriptor(SpaceKind::SeqSupComplex, 3),
        make_descriptor(SpaceKind::MatrixFull, 2),  make_descriptor(SpaceKind::MatrixSA, 2)};
    bool pass = true;
    double worst_global = 0.0, worst_euclid = 0.0;
    for (const auto& d : spaces) {
        Rng rng(derive_seed(s, static_cast<std::uint64_t>(d.kind)));
        const bool euclidean =
            d.kind == SpaceKind::RealEuclid || d.kind == SpaceKind::ComplexPlane;
        double worst = 0.0;
        const int fs = d.flat_size();
        for (int i = 0; i < 100000; ++i) {
            std::vector<double> a(fs), b(fs);
            const double sa = std::exp(rng.gauss()), sb = std::exp(rng.gauss());
            for (int j = 0; j < fs; ++j) a[j] = sa * rng.gauss();
            for (int j = 0; j < fs; ++j) b[j] = sb * rng.gauss();
            SpaceElement va{d, a}, vb{d, b};
            if (d.kind == SpaceKind::MatrixSA) {
                va = from_matrix(d, (0.5 * (to_matrix(va) + to_matrix(va).adjoint())).eval());
                vb = from_matrix(d, (0.5 * (to_matrix(vb) + to_matrix(vb).adjoint())).eval());
            }
            const double dd = distance(va, vb);
            if (dd == 0.0) continue;
            const double ratio =
                distance(radial_retract(va, 1.0), radial_retract(vb, 1.0)) / dd;
            worst = std::max(worst, ratio);
        }
        worst_global = std::max(worst_global, worst);
        if (euclidean) worst_euclid = std::max(worst_euclid, worst);
    }
    pass = pass && worst_global <= 2.0 + 1e-9 && worst_euclid <= 1.0 + 1e-9;

    const auto sup2 = make_descriptor(SpaceKind::RealSup, 2);
    double sharp = 0.0;
    for (const double eps : {1e-1, 1e-2, 1e-3}) {
        const SpaceElement g = make_element(sup2, {1.0, -1.0});
        const SpaceElement v = make_element(sup2, {1.0 + eps, -1.0 + eps});
        sharp = std::max(sharp, distance(radial_retract(v, 1.0), radial_retract(g, 1.0)) /
                                    distance(v, g));
    }
    pass = pass && sharp >= 2.0 - 1e-2;
    return {pass, fmt("max ratio %.6f, euclidean max %.6f, sharpness witness %.4f", worst_global,
                      worst_euclid, sharp)};
}

// 11. unitary averaging keeps the norm bounded and converges toward the
//     invariant kernel projection
Outcome c11_averaging() {
    const std::uint64_t s = derive_seed(g_seed, 11);
    const int n = 2;
    const NodeFunctionalMap q = interpolation_projection(sample_quadrature(n, n * n, derive_seed(s, 1)));
    const QuadratureSet grid = sample_quadrature(n, 4000, derive_seed(s, 2));
    const double qn = map_norm_estimate(q, grid);
    const NodeFunctionalMap ref = kernel_projection_map(sample_quadrature(n, 100000, derive_seed(s, 3)));

    Rng prng(derive_seed(s, 4));
    std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>> probes;
    for (int i = 0; i < 8; ++i) {
        Eigen::MatrixXcd b1(n, n), b2(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                b1(r, c) = prng.cgauss();
                b2(r, c) = prng.cgauss();
            }
        probes.emplace_back((0.5 * (b1 + b1.adjoint())).eval(),
                            (0.5 * (b2 + b2.adjoint())).eval());
    }
    const auto dist_to_ref = [&](const NodeFunctionalMap& m) {
        double acc = 0.0;
        for (const auto& [b1, b2] : probes) {
            const auto h = [&](const RankOneNode& p) {
                return rank_one_expectation(b1, p) * rank_one_expectation(b2, p);
            };
            acc += (apply_map(m, h) - apply_map(ref, h)).operatorNorm();
        }
        return acc / static_cast<double>(probes.size());
    };

    bool norms_ok = true, monotone = true;
    double prev = 0.0;
    std::string trend;
    int step = 0;
    for (const int size : {100, 1000, 10000}) {
        const NodeFunctionalMap avg = average_projection(q, size, derive_seed(s, 5));
        norms_ok = norms_ok && map_norm_estimate(avg, grid) <= qn + 1e-2;
        const double dd = dist_to_ref(avg);
        if (step > 0) monotone = monotone && dd < prev;
        prev = dd;
        trend += fmt("%s%.4f", step ? " -> " : "", dd);
        ++step;
    }
    return {norms_ok && monotone,
            fmt("base norm %.3f, norms bounded: %s, distance trend %s", qn,
                norms_ok ? "yes" : "no", trend.c_str())};
}

// 12. full matrix extension pipeline on random instances
Outcome c12_matrix_pipeline() {
    const std::uint64_t s = derive_seed(g_seed, 12);
    const auto d = make_descriptor(SpaceKind::MatrixSA, 2);
    double worst_restriction = 0.0, worst_ratio = 0.0, worst_oracle_margin = -1e300;
    for (int t = 0; t < 100; ++t) {
        Rng rng(derive_seed(s, t));
        const int m = 3 + static_cast<int>(rng.below(6));
        const int nx = 2 + static_cast<int>(rng.below(m - 2));
        const FiniteMetricSpace space = random_space(m, rng);
        const PartialFunction f = random_partial(d, m, nx, rng);
        const ExtensionResult r = extend_sa(space, f, 4000, derive_seed(s, 5000 + t));
        worst_restriction = std::max(worst_restriction, r.restriction_error / sup_norm(f.values));
        worst_ratio = std::max(worst_ratio, r.ratio);
        // the assignment with the subset values restored is an exact
        // extension, so the certified optimum can never exceed its constant
        std::vector<SpaceElement> repinned = r.assignment;
        for (std::size_t i = 0; i < f.subset.size(); ++i) repinned[f.subset[i]] = f.values[i];
        const double witness_l = lipschitz_constant(space, repinned);
        const OracleResult o = minimal_extension(space, f);
        worst_oracle_margin = std::max(
            worst_oracle_margin, o.optimal_lipschitz - witness_l * (1.0 + 2e-4) - 1e-9);
    }
    const bool pass =
        worst_restriction <= 5e-2 && worst_ratio <= 5.0 / 3.0 + 0.1 && worst_oracle_margin <= 0.0;
    return {pass, fmt("worst restriction %.4f (cap 0.05), worst ratio %.4f (cap %.4f), "
                      "max oracle-witness margin %.1e",
                      worst_restriction, worst_ratio, 5.0 / 3.0 + 0.1, worst_oracle_margin)};
}

// 13. normalized growth of the self-adjoint constant approaches 2/e
Outcome c13_asymptote() {
    const double dev = std::abs(omega(500) - 2.0 / std::exp(1.0));
    return {dev < 5e-4, fmt("|omega(500) - 2/e| = %.2e", dev)};
}

}  // namespace

int main() {
    if (const char* env = std::getenv("LIPEXT_ACCEPT_SEED"))
        g_seed = std::strtoull(env, nullptr, 10);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"01 exact-sa-constants", c01_exact_constants},
        {"02 dual-route-integral", c02_dual_route},
        {"03 density-identity-mc", c03_density_identity},
        {"04 haar-mean", c04_haar_mean},
        {"05 sphere-integral", c05_sphere_integral},
        {"06 discrete-projection-norm", c06_discrete_norm},
        {"07 sup-formula-exactness", c07_sup_formula},
        {"08 four-point-oracle", c08_four_point},
        {"09 ratio-cap", c09_ratio_cap},
        {"10 retraction", c10_retraction},
        {"11 averaging", c11_averaging},
        {"12 matrix-extension-pipeline", c12_matrix_pipeline},
        {"13 omega-asymptote", c13_asymptote},
    };

    bool all = true;
    for (const auto& [name, run] : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
                    o.detail.c_str());
        std::fflush(stdout);
        all = all && o.pass;
    }
    std::printf(all ? "acceptance: 13/13 criteria passed\n" : "acceptance: FAILURES above\n");
    return all ? 0 : 1;
}
