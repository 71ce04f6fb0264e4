#include "lipext/spaces.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace lipext {

namespace {

constexpr int kMaxMatrixN = 64;

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

}  // namespace

int SpaceDescriptor::flat_size() const {
    switch (kind) {
        case SpaceKind::RealSup:
        case SpaceKind::RealEuclid: return param;
        case SpaceKind::ComplexPlane: return 2;
        case SpaceKind::SeqSupComplex: return 2 * param;
        case SpaceKind::MatrixFull:
        case SpaceKind::MatrixSA: return 2 * param * param;
    }
    return 0;
}

int SpaceDescriptor::real_dim() const {
    switch (kind) {
        case SpaceKind::RealSup:
        case SpaceKind::RealEuclid: return param;
        case SpaceKind::ComplexPlane: return 2;
        case SpaceKind::SeqSupComplex: return 2 * param;
        case SpaceKind::MatrixFull: return 2 * param * param;
        case SpaceKind::MatrixSA: return param * param;
    }
    return 0;
}

int SpaceDescriptor::matrix_n() const { return is_matrix() ? param : 0; }

SpaceDescriptor make_descriptor(SpaceKind kind, int param) {
    if (kind == SpaceKind::ComplexPlane) param = 1;
    if (param < 1) fail("space parameter must be >= 1");
    if ((kind == SpaceKind::MatrixFull || kind == SpaceKind::MatrixSA) && param > kMaxMatrixN)
        fail("matrix spaces are supported up to n = 64");
    return SpaceDescriptor{kind, param};
}

SpaceElement make_element(const SpaceDescriptor& space, std::vector<double> data) {
    if (static_cast<int>(data.size()) != space.flat_size())
        fail("element data has wrong length for its space");
    for (double x : data)
        if (!std::isfinite(x)) fail("element data must be finite");
    if (space.kind == SpaceKind::MatrixSA) {
        const int n = space.param;
        double mx = 0.0;
        for (double x : data) mx = std::max(mx, std::abs(x));
        const double tol = 1e-12 * (1.0 + mx);
        for (int i = 0; i < n; ++i) {
            if (std::abs(data[2 * (i * n + i) + 1]) > tol)
                fail("MatrixSA element has a non-real diagonal entry");
            for (int j = i + 1; j < n; ++j) {
                const double re_ij = data[2 * (i * n + j)], im_ij = data[2 * (i * n + j) + 1];
                const double re_ji = data[2 * (j * n + i)], im_ji = data[2 * (j * n + i) + 1];
                if (std::abs(re_ij - re_ji) > tol || std::abs(im_ij + im_ji) > tol)
                    fail("MatrixSA element is not self-adjoint within tolerance");
            }
        }
    }
    return SpaceElement{space, std::move(data)};
}

SpaceElement zero_element(const SpaceDescriptor& space) {
    return SpaceElement{space, std::vector<double>(space.flat_size(), 0.0)};
}

namespace {

// operator norm of a 2x2 Hermitian [[a, b],[conj(b), c]]: |trace/2| + disc
double herm2_norm(const double* d) {
    const double a = d[0], c = d[6];
    const double br = d[2], bi = d[3];
    const double mid = 0.5 * (a + c), half = 0.5 * (a - c);
    const double disc = std::sqrt(half * half + br * br + bi * bi);
    return std::abs(mid) + disc;
}

Eigen::MatrixXcd flat_to_matrix(int n, const double* d) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = std::complex<double>(d[2 * (i * n + j)], d[2 * (i * n + j) + 1]);
    return m;
}

void matrix_to_flat(const Eigen::MatrixXcd& m, double* d) {
    const int n = static_cast<int>(m.rows());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            d[2 * (i * n + j)] = m(i, j).real();
            d[2 * (i * n + j) + 1] = m(i, j).imag();
        }
}

}  // namespace

double norm(const SpaceDescriptor& space, const double* data) {
    switch (space.kind) {
        case SpaceKind::RealSup: {
            double mx = 0.0;
            for (int i = 0; i < space.param; ++i) mx = std::max(mx, std::abs(data[i]));
            return mx;
        }
        case SpaceKind::RealEuclid: {
            double s = 0.0;
            for (int i = 0; i < space.param; ++i) s += data[i] * data[i];
            return std::sqrt(s);
        }
        case SpaceKind::ComplexPlane:
            return std::hypot(data[0], data[1]);
        case SpaceKind::SeqSupComplex: {
            double mx = 0.0;
            for (int i = 0; i < space.param; ++i)
                mx = std::max(mx, data[2 * i] * data[2 * i] + data[2 * i + 1] * data[2 * i + 1]);
            return std::sqrt(mx);
        }
        case SpaceKind::MatrixSA: {
            if (space.param == 1) return std::abs(data[0]);
            if (space.param == 2) return herm2_norm(data);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(flat_to_matrix(space.param, data),
                                                               Eigen::EigenvaluesOnly);
            return es.eigenvalues().cwiseAbs().maxCoeff();
        }
        case SpaceKind::MatrixFull: {
            if (space.param == 1) return std::hypot(data[0], data[1]);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(flat_to_matrix(space.param, data));
            return svd.singularValues()(0);
        }
    }
    return 0.0;
}

double norm(const SpaceElement& v) { return norm(v.space, v.data.data()); }

double frobenius_norm(const SpaceDescriptor& space, const double* data) {
    double s = 0.0;
    for (int i = 0; i < space.flat_size(); ++i) s += data[i] * data[i];
    return std::sqrt(s);
}

double pairing_sa(const SpaceElement& a, const SpaceElement& b) {
    if (a.space.kind != SpaceKind::MatrixSA || b.space != a.space)
        fail("pairing_sa requires two MatrixSA elements of the same size");
    const int n = a.space.param;
    // tr(ab) = sum_ij a_ij b_ji; for Hermitian a, b the imaginary parts cancel
    double re = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double ar = a.data[2 * (i * n + j)], ai = a.data[2 * (i * n + j) + 1];
            const double br = b.data[2 * (j * n + i)], bi = b.data[2 * (j * n + i) + 1];
            re += ar * br - ai * bi;
        }
    return re;
}

void ball_project(const SpaceDescriptor& space, double* data, double r) {
    if (!(r >= 0.0)) fail("ball radius must be nonnegative");
    switch (space.kind) {
        case SpaceKind::RealSup:
            for (int i = 0; i < space.param; ++i) data[i] = std::clamp(data[i], -r, r);
            return;
        case SpaceKind::RealEuclid:
        case SpaceKind::ComplexPlane: {
            const double nv = norm(space, data);
            if (nv > r) {
                const double s = r / nv;
                for (int i = 0; i < space.flat_size(); ++i) data[i] *= s;
            }
            return;
        }
        case SpaceKind::SeqSupComplex:
            // the ball is a product of discs; project each complex coordinate
            for (int i = 0; i < space.param; ++i) {
                const double m = std::hypot(data[2 * i], data[2 * i + 1]);
                if (m > r) {
                    const double s = r / m;
                    data[2 * i] *= s;
                    data[2 * i + 1] *= s;
                }
            }
            return;
        case SpaceKind::MatrixSA: {
            const int n = space.param;
            if (norm(space, data) <= r) return;
            if (n == 2) {
                // Pauli coordinates: eigenvalues mid +/- s, clip both into [-r, r]
                const double a = data[0], c = data[6];
                const double mid = 0.5 * (a + c), half = 0.5 * (a - c);
                const double s = std::sqrt(half * half + data[2] * data[2] + data[3] * data[3]);
                const double lp = std::clamp(mid + s, -r, r), lm = std::clamp(mid - s, -r, r);
                const double mid2 = 0.5 * (lp + lm), s2 = 0.5 * (lp - lm);
                const double f = (s > 0.0) ? s2 / s : 0.0;
                data[0] = mid2 + half * f;
                data[6] = mid2 - half * f;
                data[2] *= f;
                data[3] *= f;
                data[4] = data[2];
                data[5] = -data[3];
                data[1] = data[7] = 0.0;
                return;
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(flat_to_matrix(n, data));
            Eigen::VectorXd ev = es.eigenvalues();
            for (int i = 0; i < n; ++i) ev(i) = std::clamp(ev(i), -r, r);
            Eigen::MatrixXcd m = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
            matrix_to_flat(m, data);
            return;
        }
        case SpaceKind::MatrixFull: {
            const int n = space.param;
            if (norm(space, data) <= r) return;
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(flat_to_matrix(n, data),
                                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
            Eigen::VectorXd sv = svd.singularValues();
            for (int i = 0; i < n; ++i) sv(i) = std::min(sv(i), r);
            Eigen::MatrixXcd m = svd.matrixU() * sv.asDiagonal() * svd.matrixV().adjoint();
            matrix_to_flat(m, data);
            return;
        }
    }
}

SpaceElement ball_project(const SpaceElement& v, double r) {
    SpaceElement out = v;
    ball_project(out.space, out.data.data(), r);
    return out;
}

Eigen::MatrixXcd to_matrix(const SpaceElement& v) {
    if (!v.space.is_matrix()) fail("to_matrix requires a matrix-kind element");
    return flat_to_matrix(v.space.param, v.data.data());
}

SpaceElement from_matrix(const SpaceDescriptor& space, const Eigen::MatrixXcd& m) {
    if (!space.is_matrix()) fail("from_matrix requires a matrix kind");
    if (m.rows() != space.param || m.cols() != space.param) fail("matrix size mismatch");
    std::vector<double> data(space.flat_size());
    matrix_to_flat(m, data.data());
    return make_element(space, std::move(data));
}

SpaceElement add(const SpaceElement& a, const SpaceElement& b) {
    assert(a.space == b.space);
    SpaceElement r = a;
    for (size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
    return r;
}

SpaceElement sub(const SpaceElement& a, const SpaceElement& b) {
    assert(a.space == b.space);
    SpaceElement r = a;
    for (size_t i = 0; i < r.data.size(); ++i) r.data[i] -= b.data[i];
    return r;
}

SpaceElement scale(const SpaceElement& a, double s) {
    SpaceElement r = a;
    for (double& x : r.data) x *= s;
    return r;
}

double distance(const SpaceElement& a, const SpaceElement& b) {
    assert(a.space == b.space);
    std::vector<double> d(a.data.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = a.data[i] - b.data[i];
    return norm(a.space, d.data());
}

std::string kind_name(SpaceKind kind) {
    switch (kind) {
        case SpaceKind::RealSup: return "real-sup";
        case SpaceKind::RealEuclid: return "euclid";
        case SpaceKind::ComplexPlane: return "complex";
        case SpaceKind::SeqSupComplex: return "seq-sup";
        case SpaceKind::MatrixFull: return "mn";
        case SpaceKind::MatrixSA: return "mn-sa";
    }
    return "?";
}

}  // namespace lipext
