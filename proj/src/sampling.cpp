#include "lipext/sampling.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

namespace lipext {

double Rng::gauss() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Box-Muller on explicitly constructed uniforms
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::complex<double> Rng::cgauss() {
    return {gauss() * M_SQRT1_2, gauss() * M_SQRT1_2};
}

std::uint64_t Rng::below(std::uint64_t n) {
    // rejection sampling keeps the distribution exactly uniform
    const std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = raw();
    } while (x >= lim);
    return x % n;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t shard) {
    // splitmix64 finalizer over the combined words
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (shard + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Eigen::VectorXcd sample_unit_vector(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = rng.cgauss();
    const double nv = v.norm();
    if (nv == 0.0) return sample_unit_vector(n, rng);
    return v / nv;
}

Eigen::MatrixXcd sample_haar_unitary(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("dimension must be >= 1");
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = rng.cgauss();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // absorb the R diagonal phases so that Q follows the Haar measure
    for (int j = 0; j < n; ++j) {
        const std::complex<double> d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

double rank_one_expectation(const Eigen::MatrixXcd& b, const RankOneNode& p) {
    return std::real(p.v.dot(b * p.v));
}

QuadratureSet sample_quadrature(int n, int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("quadrature needs at least one node");
    QuadratureSet q;
    q.n = n;
    q.nodes.reserve(count);
    Rng rng(seed);
    // Stratified sampling: nodes come in randomly oriented groups whose sum
    // of projections is a multiple of the identity, which removes the
    // first-moment error of every kernel-formula mean while each node stays
    // uniform on M with weight 1/N. For n = 2 a group is the three mutually
    // unbiased bases of one Haar unitary (6 nodes); such a group also has the
    // exact second moment, so reconstructing phi_b from exact node values is
    // exact on full groups. For n >= 3 a group is the n columns of a Haar
    // unitary. The count == n*n case stays fully independent because
    // interpolation at n*n nodes needs them in general position; leftover
    // nodes beyond full groups are independent as well.
    const int group = n == 2 ? 6 : n;
    int remaining = count;
    if (n >= 2 && count > n * n) {
        for (int g = 0; g < count / group; ++g) {
            const Eigen::MatrixXcd u = sample_haar_unitary(n, rng);
            if (n == 2) {
                const Eigen::VectorXcd u1 = u.col(0), u2 = u.col(1);
                const std::complex<double> i1(0.0, 1.0);
                q.nodes.push_back(RankOneNode{u1});
                q.nodes.push_back(RankOneNode{u2});
                q.nodes.push_back(RankOneNode{(u1 + u2) * M_SQRT1_2});
                q.nodes.push_back(RankOneNode{(u1 - u2) * M_SQRT1_2});
                q.nodes.push_back(RankOneNode{(u1 + i1 * u2) * M_SQRT1_2});
                q.nodes.push_back(RankOneNode{(u1 - i1 * u2) * M_SQRT1_2});
            } else {
                for (int c = 0; c < n; ++c) q.nodes.push_back(RankOneNode{u.col(c)});
            }
        }
        remaining = count % group;
    }
    for (int i = 0; i < remaining; ++i) q.nodes.push_back(RankOneNode{sample_unit_vector(n, rng)});
    return q;
}

int worker_cap() {
    if (const char* env = std::getenv("LIPEXT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<int>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

template <class T>
std::vector<T> run_jobs(int jobs, const std::function<T(int)>& fn) {
    std::vector<T> out(jobs);
    const int workers = std::min(jobs, worker_cap());
    if (workers <= 1) {
        for (int j = 0; j < jobs; ++j) out[j] = fn(j);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) out[j] = fn(j);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace

std::vector<double> parallel_map(int jobs, const std::function<double(int)>& fn) {
    return run_jobs<double>(jobs, fn);
}

std::vector<std::vector<double>> parallel_map_vec(int jobs,
                                                  const std::function<std::vector<double>(int)>& fn) {
    return run_jobs<std::vector<double>>(jobs, fn);
}

}  // namespace lipext
