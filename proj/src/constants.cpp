#include "lipext/constants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "lipext/sampling.hpp"

namespace lipext {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

cpp_rational rat_pow(const cpp_rational& x, int e) {
    cpp_rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
}

cpp_int binom(int n, int k) {
    cpp_int r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// integral of ((n-1) + (n+1) t) (1-t)^(n-2) over [a, b], expanded binomially
// and integrated term by term
cpp_rational affine_density_integral(int n, const cpp_rational& a, const cpp_rational& b) {
    cpp_rational total = 0;
    for (int k = 0; k <= n - 2; ++k) {
        const cpp_int c = binom(n - 2, k) * ((k % 2 == 0) ? 1 : -1);
        // c * [(n-1) t^k + (n+1) t^(k+1)]
        const cpp_rational m1 = (rat_pow(b, k + 1) - rat_pow(a, k + 1)) / (k + 1);
        const cpp_rational m2 = (rat_pow(b, k + 2) - rat_pow(a, k + 2)) / (k + 2);
        total += cpp_rational(c) * (cpp_rational(n - 1) * m1 + cpp_rational(n + 1) * m2);
    }
    return total;
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 17, 1e-12);
}

}  // namespace

double le_complex() { return 4.0 / M_PI; }

double pc_complex_n(int n) {
    if (n < 1) fail("pc_complex_n needs n >= 1");
    if (n <= 16) {
        // 4^n (n!)^2 / (2 (2n)!) with exact 128-bit integer intermediates
        unsigned __int128 num = 1, den = 2;
        for (int i = 1; i <= n; ++i) num *= 4ULL * static_cast<unsigned __int128>(i) * i;
        for (int i = 1; i <= 2 * n; ++i) den *= i;
        return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
    }
    double v = pc_complex_n(16);
    for (int i = 17; i <= n; ++i) v *= (2.0 * i) / (2.0 * i - 1.0);
    return v;
}

double le_mn(int n) {
    if (n == 1)
        fail("M_1(C) is the complex plane; its extension constant is le_complex() = 4/pi");
    if (n < 1) fail("le_mn needs n >= 2");
    const double p = pc_complex_n(n);
    return p * p;
}

double le_mn_sa(int n) {
    if (n < 1) fail("le_mn_sa needs n >= 1");
    return 2.0 * n * std::pow(static_cast<double>(n) / (n + 1), n - 1) - 1.0;
}

double omega(int n) { return le_mn_sa(n) / n; }

double p_norm_quadrature(int n) {
    if (n < 2) fail("p_norm_quadrature needs n >= 2");
    // kink of |(n-1) + (n+1) t|
    const double tk = -static_cast<double>(n - 1) / (n + 1);
    if (n <= 16) {
        const cpp_rational t(-(n - 1), n + 1);
        const cpp_rational I = -affine_density_integral(n, -1, t) + affine_density_integral(n, t, 1);
        const cpp_rational result = I * cpp_rational(n * (n - 1)) / rat_pow(2, n);
        return result.convert_to<double>();
    }
    const auto f = [n](double t) {
        return std::abs((n - 1) + (n + 1) * t) * std::pow(1.0 - t, n - 2);
    };
    const double I = adaptive_integral(f, -1.0, tk) + adaptive_integral(f, tk, 1.0);
    return I * n * (n - 1) * std::pow(2.0, -n);
}

double density_integral(int n, const std::function<double(double)>& h,
                        const std::vector<double>& kinks) {
    if (n < 2) fail("density_integral needs n >= 2");
    std::vector<double> cuts{-1.0, 1.0};
    for (double k : kinks)
        if (k > -1.0 && k < 1.0) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());
    const auto f = [&](double t) { return h(t) * std::pow(1.0 - t, n - 2); };
    double I = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) I += adaptive_integral(f, cuts[i], cuts[i + 1]);
    return (n - 1) * std::pow(2.0, 1 - n) * I;
}

namespace {

struct TestFnDef {
    std::function<double(double)> h;
    std::vector<double> kinks;
};

TestFnDef test_fn(int n, TestFn tag) {
    switch (tag) {
        case TestFn::T: return {[](double t) { return t; }, {}};
        case TestFn::T2: return {[](double t) { return t * t; }, {}};
        case TestFn::AbsAffine:
            return {[n](double t) { return std::abs((n - 1) + (n + 1) * t); },
                    {-static_cast<double>(n - 1) / (n + 1)}};
        case TestFn::Indicator: return {[](double t) { return t >= 0.0 ? 1.0 : 0.0; }, {0.0}};
        case TestFn::One: return {[](double) { return 1.0; }, {}};
    }
    fail("unknown test function");
}

// deterministic sharded Monte Carlo mean: fixed shard layout regardless of
// the worker count, partials combined in shard order
MonteCarloEstimate sharded_mean(std::int64_t samples, std::uint64_t seed,
                                const std::function<double(Rng&)>& draw) {
    if (samples < 2) fail("need at least two samples");
    const int shards = 64;
    const std::int64_t per = samples / shards;
    const std::int64_t extra = samples % shards;
    const auto partial = parallel_map_vec(shards, [&](int s) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
        const std::int64_t count = per + (s < extra ? 1 : 0);
        double sum = 0.0, sumsq = 0.0;
        for (std::int64_t i = 0; i < count; ++i) {
            const double x = draw(rng);
            sum += x;
            sumsq += x * x;
        }
        return std::vector<double>{sum, sumsq};
    });
    double sum = 0.0, sumsq = 0.0;
    for (const auto& p : partial) {
        sum += p[0];
        sumsq += p[1];
    }
    MonteCarloEstimate est;
    est.samples = samples;
    est.value = sum / samples;
    const double var = std::max(0.0, sumsq / samples - est.value * est.value);
    est.sigma = std::sqrt(var / samples);
    return est;
}

}  // namespace

Lemma71Result lemma71_check(int n, TestFn h, std::int64_t samples, std::uint64_t seed) {
    if (n < 2) fail("lemma71_check needs n >= 2");
    const TestFnDef def = test_fn(n, h);
    const auto est = sharded_mean(samples, seed, [&](Rng& rng) {
        const Eigen::VectorXcd v = sample_unit_vector(n, rng);
        return def.h(2.0 * std::norm(v(0)) - 1.0);
    });
    Lemma71Result r;
    r.mc = est.value;
    r.sigma = est.sigma;
    r.quad = density_integral(n, def.h, def.kinks);
    return r;
}

MonteCarloEstimate pc_cn_monte_carlo(int n, std::int64_t samples, std::uint64_t seed) {
    if (n < 1) fail("pc_cn_monte_carlo needs n >= 1");
    return sharded_mean(samples, seed, [&](Rng& rng) {
        const Eigen::VectorXcd v = sample_unit_vector(n, rng);
        return n * std::abs(v(0));
    });
}

std::vector<ConstantEntry> bounds_table(int dim_real) {
    if (dim_real < 1) fail("dimension must be >= 1");
    std::vector<ConstantEntry> out;
    out.push_back({"any", dim_real, static_cast<double>(dim_real), "upper", "bound",
                   "dimension (Auerbach basis)"});
    out.push_back({"any", dim_real, std::sqrt(static_cast<double>(dim_real)), "upper", "bound",
                   "sqrt(dimension)"});
    if (dim_real == 4)
        out.push_back({"any", dim_real, (2.0 + 3.0 * std::sqrt(6.0)) / 5.0, "upper", "bound",
                       "sharper bound in real dimension four"});
    return out;
}

std::vector<ConstantEntry> constants_table(int max_n) {
    if (max_n < 1) fail("max_n must be >= 1");
    std::vector<ConstantEntry> t;
    t.push_back({"complex", 1, le_complex(), "exact", "closed-form", "4/pi"});
    t.push_back({"complex", 1, 2.0, "upper", "bound", "dimension"});
    t.push_back({"complex", 1, std::sqrt(2.0), "upper", "bound", "sqrt(dimension)"});
    t.push_back({"complex", 1, 1.0, "lower", "bound", "norm-one projection"});
    for (int k = 1; k <= max_n; ++k)
        t.push_back({"real-sup", k, 1.0, "exact", "closed-form", "coordinatewise sup formula"});
    for (int n = 1; n <= max_n; ++n) {
        t.push_back({"pc-cn", n, pc_complex_n(n), "exact", "closed-form",
                     "4^n (n!)^2 / (2 (2n)!)"});
        if (n >= 2) {
            t.push_back({"mn", n, le_mn(n), "exact", "closed-form", "pc_complex_n(n)^2"});
            t.push_back({"mn", n, n * M_SQRT2, "upper", "bound", "n sqrt(2)"});
            t.push_back({"mn", n, 4.0 * n / M_PI, "upper", "bound", "4n/pi"});
            t.push_back({"mn", n, M_PI * n / 4.0, "lower", "bound", "pi n / 4"});
        }
        t.push_back({"mn-sa", n, le_mn_sa(n), "exact", "closed-form", "2n(n/(n+1))^(n-1) - 1"});
        t.push_back({"mn-sa", n, static_cast<double>(n), "upper", "bound",
                     "sqrt(dimension) = n"});
        t.push_back({"mn-sa", n, 1.0, "lower", "bound", "norm-one projection"});
    }
    return t;
}

std::string constants_csv(const std::vector<ConstantEntry>& entries) {
    std::ostringstream os;
    os << "space,n,value,kind,provenance\n";
    for (const auto& e : entries) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", e.value);
        os << e.space << ',' << e.n << ',' << buf << ',' << e.kind << ',' << e.provenance << '\n';
    }
    return os.str();
}

}  // namespace lipext
