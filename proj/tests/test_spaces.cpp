#include <doctest.h>

#include <cmath>
#include <vector>

#include "lipext/sampling.hpp"
#include "lipext/spaces.hpp"

using namespace lipext;

namespace {

SpaceElement random_element(const SpaceDescriptor& d, Rng& rng) {
    std::vector<double> data(d.flat_size());
    for (auto& x : data) x = rng.gauss();
    if (d.kind == SpaceKind::MatrixSA) {
        SpaceElement raw{d, data};
        const Eigen::MatrixXcd m = to_matrix(raw);
        return from_matrix(d, (0.5 * (m + m.adjoint())).eval());
    }
    return make_element(d, data);
}

const std::vector<SpaceDescriptor> kAll = {
    make_descriptor(SpaceKind::RealSup, 4),     make_descriptor(SpaceKind::RealEuclid, 3),
    make_descriptor(SpaceKind::ComplexPlane, 1), make_descriptor(SpaceKind::SeqSupComplex, 3),
    make_descriptor(SpaceKind::MatrixFull, 2),  make_descriptor(SpaceKind::MatrixSA, 2),
    make_descriptor(SpaceKind::MatrixSA, 3),
};

}  // namespace

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(make_descriptor(SpaceKind::RealSup, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_descriptor(SpaceKind::MatrixSA, 65), std::invalid_argument);
    CHECK(make_descriptor(SpaceKind::ComplexPlane, 5).param == 1);
    CHECK(make_descriptor(SpaceKind::MatrixSA, 3).flat_size() == 18);
    CHECK(make_descriptor(SpaceKind::MatrixSA, 3).real_dim() == 9);
    CHECK(make_descriptor(SpaceKind::MatrixFull, 3).real_dim() == 18);
    CHECK(make_descriptor(SpaceKind::SeqSupComplex, 3).flat_size() == 6);
}

TEST_CASE("element validation") {
    const auto sa = make_descriptor(SpaceKind::MatrixSA, 2);
    CHECK_THROWS_AS(make_element(sa, {1.0, 0.0, 0.0}), std::invalid_argument);
    // non-Hermitian payload rejected
    CHECK_THROWS_AS(make_element(sa, {0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0}),
                    std::invalid_argument);
    const double bad = std::nan("");
    CHECK_THROWS_AS(make_element(make_descriptor(SpaceKind::RealSup, 1), {bad}),
                    std::invalid_argument);
}

TEST_CASE("norm axioms on random pairs") {
    Rng rng(20260301);
    for (const auto& d : kAll) {
        for (int i = 0; i < 1400; ++i) {
            const SpaceElement a = random_element(d, rng);
            const SpaceElement b = random_element(d, rng);
            const double na = norm(a), nb = norm(b);
            CHECK(na >= 0.0);
            CHECK(norm(add(a, b)) <= na + nb + 1e-9 * (na + nb + 1.0));
            const double s = rng.gauss();
            CHECK(norm(scale(a, s)) == doctest::Approx(std::abs(s) * na).epsilon(1e-9));
        }
        const SpaceElement zero = make_element(d, std::vector<double>(d.flat_size(), 0.0));
        CHECK(norm(zero) == 0.0);
    }
}

TEST_CASE("operator norm agrees between Hermitian and general storage") {
    Rng rng(7);
    const auto sa = make_descriptor(SpaceKind::MatrixSA, 3);
    const auto full = make_descriptor(SpaceKind::MatrixFull, 3);
    for (int i = 0; i < 200; ++i) {
        const SpaceElement a = random_element(sa, rng);
        const SpaceElement b = from_matrix(full, to_matrix(a));
        CHECK(norm(a) == doctest::Approx(norm(b)).epsilon(1e-10));
    }
}

TEST_CASE("operator norm of a nilpotent matrix") {
    const auto full = make_descriptor(SpaceKind::MatrixFull, 2);
    Eigen::MatrixXcd m(2, 2);
    m << 0.0, 2.0, 0.0, 0.0;
    CHECK(norm(from_matrix(full, m)) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("two by two Hermitian norm closed form") {
    Rng rng(11);
    const auto sa = make_descriptor(SpaceKind::MatrixSA, 2);
    for (int i = 0; i < 500; ++i) {
        const SpaceElement a = random_element(sa, rng);
        const Eigen::VectorXd ev =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_matrix(a)).eigenvalues();
        CHECK(norm(a) == doctest::Approx(ev.cwiseAbs().maxCoeff()).epsilon(1e-10));
    }
}

TEST_CASE("ball projection is a metric projection") {
    Rng rng(20260302);
    for (const auto& d : kAll) {
        for (int i = 0; i < 300; ++i) {
            const SpaceElement a = random_element(d, rng);
            const double r = 0.25 + std::abs(rng.gauss());
            const SpaceElement p = ball_project(a, r);
            CHECK(norm(p) <= r * (1.0 + 1e-9) + 1e-12);
            if (norm(a) <= r) {
                CHECK(distance(a, p) <= 1e-12 * (1.0 + norm(a)));
            } else {
                // projection onto a convex set is firmly nonexpansive; spot-check
                // optimality against random feasible points in the Euclidean metric
                const Eigen::Map<const Eigen::VectorXd> av(a.data.data(), a.data.size());
                const Eigen::Map<const Eigen::VectorXd> pv(p.data.data(), p.data.size());
                for (int j = 0; j < 8; ++j) {
                    SpaceElement q = ball_project(random_element(d, rng), r);
                    const Eigen::Map<const Eigen::VectorXd> qv(q.data.data(), q.data.size());
                    CHECK((av - pv).norm() <= (av - qv).norm() + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("two by two Hermitian ball projection matches the eigenvalue clip") {
    Rng rng(20260303);
    const auto sa = make_descriptor(SpaceKind::MatrixSA, 2);
    for (int i = 0; i < 400; ++i) {
        const SpaceElement a = random_element(sa, rng);
        const double r = 0.25 + std::abs(rng.gauss());
        const Eigen::MatrixXcd m = to_matrix(a);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
        Eigen::VectorXd ev = es.eigenvalues();
        for (int j = 0; j < 2; ++j) ev[j] = std::clamp(ev[j], -r, r);
        const Eigen::MatrixXcd clipped =
            es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
        CHECK(distance(ball_project(a, r), from_matrix(sa, clipped)) <= 1e-9);
    }
}

TEST_CASE("rank-one pairing stays in the unit interval") {
    Rng rng(20260304);
    for (int n : {2, 3, 4}) {
        const auto sa = make_descriptor(SpaceKind::MatrixSA, n);
        for (int i = 0; i < 200; ++i) {
            const Eigen::VectorXcd v = sample_unit_vector(n, rng);
            const Eigen::VectorXcd w = sample_unit_vector(n, rng);
            const SpaceElement p = from_matrix(sa, (v * v.adjoint()).eval());
            const SpaceElement q = from_matrix(sa, (w * w.adjoint()).eval());
            const double t = pairing_sa(p, q);
            CHECK(t >= -1e-12);
            CHECK(t <= 1.0 + 1e-12);
            CHECK(pairing_sa(p, p) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("matrix round trip preserves data") {
    Rng rng(20260305);
    for (const auto kind : {SpaceKind::MatrixFull, SpaceKind::MatrixSA}) {
        const auto d = make_descriptor(kind, 3);
        for (int i = 0; i < 100; ++i) {
            const SpaceElement a = random_element(d, rng);
            const SpaceElement b = from_matrix(d, to_matrix(a));
            CHECK(distance(a, b) <= 1e-14);
        }
    }
}
