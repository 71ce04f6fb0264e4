#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace lipext {

/**
 * Seeded random generator with portable output.
 *
 * mt19937_64 has a standardized output sequence, but the standard
 * distributions do not, so uniform and Gaussian variates are derived from the
 * raw 64-bit stream directly.  A fixed seed therefore produces identical
 * streams on every platform, which the reproducibility contract of the
 * stochastic operations relies on.
 */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; one spare is cached.
    double gauss();

    /// Standard complex normal, E|z|^2 = 1.
    std::complex<double> cgauss();

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Seed for shard `shard` of a run with the given base seed (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t shard);

/// Haar-uniform unit vector in C^n (normalized complex Gaussian).
Eigen::VectorXcd sample_unit_vector(int n, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the R
/// diagonal phases absorbed into Q.
Eigen::MatrixXcd sample_haar_unitary(int n, Rng& rng);

/// A rank-one projection p = v v* on C^n, stored by its unit vector.
struct RankOneNode {
    Eigen::VectorXcd v;
    Eigen::MatrixXcd projection() const { return v * v.adjoint(); }
};

/// tr(b p) for a rank-one node p = v v* and Hermitian b, i.e. v* b v.
double rank_one_expectation(const Eigen::MatrixXcd& b, const RankOneNode& p);

/// Equal-weight Monte Carlo quadrature over the rank-one projections:
/// `count` independent Haar samples, each of weight 1/count.
struct QuadratureSet {
    int n = 0;
    std::vector<RankOneNode> nodes;
    double weight() const { return 1.0 / static_cast<double>(nodes.size()); }
    int count() const { return static_cast<int>(nodes.size()); }
};

QuadratureSet sample_quadrature(int n, int count, std::uint64_t seed);

/// Worker cap for sharded loops: LIPEXT_THREADS if set, else hardware
/// concurrency, at least 1.
int worker_cap();

/**
 * Runs `jobs` independent jobs on at most worker_cap() threads and returns
 * the results in job order.  Job functions receive their job index; outputs
 * are combined deterministically, so results do not depend on the number of
 * workers.
 */
std::vector<double> parallel_map(int jobs, const std::function<double(int)>& fn);

/// Same, for jobs producing vectors of doubles.
std::vector<std::vector<double>> parallel_map_vec(
    int jobs, const std::function<std::vector<double>(int)>& fn);

}  // namespace lipext
