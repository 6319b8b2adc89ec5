#include "gyrospectra/gyro_system.hpp"

#include <cmath>

namespace gyrospectra {

namespace {

constexpr double kStructureTol = 1e-12;

void require_symmetric(const Eigen::Matrix2d& m, const char* name) {
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (std::abs(m(0, 1) - m(1, 0)) > kStructureTol * scale)
        throw std::invalid_argument(std::string(name) + " is not symmetric");
    if (!m.allFinite()) throw std::invalid_argument(std::string(name) + " has non-finite entries");
}

// Returns the scale factor s of a skew matrix s * [[0,1],[-1,0]].
double require_skew(const Eigen::Matrix2d& m, const char* name) {
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (!m.allFinite()) throw std::invalid_argument(std::string(name) + " has non-finite entries");
    if (std::abs(m(0, 0)) > kStructureTol * scale || std::abs(m(1, 1)) > kStructureTol * scale ||
        std::abs(m(0, 1) + m(1, 0)) > kStructureTol * scale)
        throw std::invalid_argument(std::string(name) + " is not skew-symmetric");
    double s = m(0, 1);
    if (s == 0.0) throw std::invalid_argument(std::string(name) + " has zero skew scale");
    return s;
}

}  // namespace

GyroSystem2D::GyroSystem2D(double beta, const Eigen::Matrix2d& G, const Eigen::Matrix2d& D,
                           const Eigen::Matrix2d& K, const Eigen::Matrix2d& N)
    : beta_(beta), D_(D), K_(K) {
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("beta must be positive and finite");
    require_symmetric(D, "D");
    require_symmetric(K, "K");
    // Symmetrize exactly so downstream trace/determinant identities are clean.
    D_(0, 1) = D_(1, 0) = 0.5 * (D(0, 1) + D(1, 0));
    K_(0, 1) = K_(1, 0) = 0.5 * (K(0, 1) + K(1, 0));
    omega_scale_ = require_skew(G, "G");
    nu_scale_ = require_skew(N, "N");
}

GyroSystem2D::GyroSystem2D(double beta, const Eigen::Matrix2d& D, const Eigen::Matrix2d& K)
    : GyroSystem2D(beta, unit_skew(), D, K, unit_skew()) {}

SymEigs sym_eigs_2x2(const Eigen::Matrix2d& m) {
    double tr = m(0, 0) + m(1, 1);
    double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double disc = tr * tr - 4.0 * det;
    double s = std::sqrt(std::max(disc, 0.0));
    return {0.5 * (tr + s), 0.5 * (tr - s)};
}

}  // namespace gyrospectra
