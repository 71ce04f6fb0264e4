#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lipext {

/// Target normed spaces supported by the library.  All of them are treated as
/// real Banach spaces; complex scalars are stored as (re, im) pairs.
enum class SpaceKind {
    RealSup,        ///< R^k with the sup norm
    RealEuclid,     ///< R^k with the Euclidean norm
    ComplexPlane,   ///< C with the modulus (isometric to RealEuclid(2))
    SeqSupComplex,  ///< C^k with the sup-of-moduli norm
    MatrixFull,     ///< n x n complex matrices with the operator norm
    MatrixSA        ///< self-adjoint n x n complex matrices, operator norm
};

struct SpaceDescriptor {
    SpaceKind kind;
    int param;  // k for the vector kinds, n for the matrix kinds (1 for ComplexPlane)

    /// Number of doubles in the flat representation of one element.
    int flat_size() const;

    /// Dimension of the space as a real vector space.  This is the generic
    /// (Auerbach) upper bound on the extension constant.
    int real_dim() const;

    /// Matrix side length for the matrix kinds, 0 otherwise.
    int matrix_n() const;

    bool is_matrix() const { return kind == SpaceKind::MatrixFull || kind == SpaceKind::MatrixSA; }
    bool operator==(const SpaceDescriptor&) const = default;
};

/// Builds a descriptor and validates the parameter (k, n >= 1; matrix n <= 64,
/// spectral computations are for small dense matrices only).
SpaceDescriptor make_descriptor(SpaceKind kind, int param);

/// A point of a target space.  Layout of `data`:
///   RealSup(k), RealEuclid(k): k reals
///   ComplexPlane:              [re, im]
///   SeqSupComplex(k):          k (re, im) pairs
///   MatrixFull(n), MatrixSA(n): n*n row-major entries, each an (re, im) pair
struct SpaceElement {
    SpaceDescriptor space;
    std::vector<double> data;
};

/**
 * Validating constructor for elements.  Checks the data length and, for
 * MatrixSA, self-adjointness within 1e-12 * (1 + max entry magnitude).
 *
 * @throw std::invalid_argument on mismatched length or a non-Hermitian
 *        MatrixSA payload.
 */
SpaceElement make_element(const SpaceDescriptor& space, std::vector<double> data);

/// Zero element of the space.
SpaceElement zero_element(const SpaceDescriptor& space);

/// Norm of the flat data in the space's own norm.  Spectral norms are
/// computed by eigenvalue (MatrixSA) or singular value (MatrixFull)
/// decomposition.
double norm(const SpaceDescriptor& space, const double* data);
double norm(const SpaceElement& v);

/// Euclidean / Frobenius norm of the flat data; the ambient geometry used by
/// the minimal-extension solver.
double frobenius_norm(const SpaceDescriptor& space, const double* data);

/// Normalized trace pairing <a, b> = tr(ab) of two self-adjoint matrices.
/// Real within 1e-12 for valid inputs; the real part is returned.
double pairing_sa(const SpaceElement& a, const SpaceElement& b);

/**
 * Projects `data` in place onto the ball {||v|| <= r} of the space's norm,
 * orthogonally with respect to the Euclidean/Frobenius geometry:
 * coordinate clipping for sup norms, radial scaling for Euclidean norms,
 * eigenvalue clipping for MatrixSA and singular-value clipping for
 * MatrixFull.
 */
void ball_project(const SpaceDescriptor& space, double* data, double r);

/// Value-returning form of the ball projection.
SpaceElement ball_project(const SpaceElement& v, double r);

/// Conversions between the flat representation and Eigen matrices
/// (matrix kinds only).
Eigen::MatrixXcd to_matrix(const SpaceElement& v);
SpaceElement from_matrix(const SpaceDescriptor& space, const Eigen::MatrixXcd& m);

// elementwise helpers on flat data
SpaceElement add(const SpaceElement& a, const SpaceElement& b);
SpaceElement sub(const SpaceElement& a, const SpaceElement& b);
SpaceElement scale(const SpaceElement& a, double s);
double distance(const SpaceElement& a, const SpaceElement& b);

std::string kind_name(SpaceKind kind);

}  // namespace lipext
