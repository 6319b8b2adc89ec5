#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gyrospectra/quartic.hpp"

namespace gyrospectra {

/// Eigenvector basis and first-order coefficient matrices at the double
/// eigenvalue i*beta of the non-rotating system.
struct NodeBasis {
    Eigen::Vector2d u1;  // (0, 1)/sqrt(2 beta)
    Eigen::Vector2d u2;  // (1, 0)/sqrt(2 beta)
    Eigen::Matrix2cd f;  // gyroscopic coupling: f11 = f22 = 0, f12 = -f21 = i
    Eigen::Matrix2cd eps;  // perturbation projections
};

/// The discriminant-like quantity under the square root of the two-branch
/// splitting formula, with its real/imaginary decomposition and the
/// eigenvalues of D and K it is built from.
struct SplitC {
    Complex value;
    double re;
    double im;
    double mu1, mu2;    // eigenvalues of D, mu1 >= mu2
    double rho1, rho2;  // eigenvalues of K, rho1 >= rho2
};

/// Geometry of the ring of complex eigenvalues created by dissipation.
struct BubbleGeometry {
    double radius;               // |mu1 - mu2| |delta| / 4
    double depth;                // |mu1 + mu2| |delta| / 4
    std::pair<double, double> exceptional_omegas;  // branch-coalescence points
    double exceptional_re;       // -delta (mu1 + mu2)/4
    std::optional<double> omega_cr;  // present iff det D < 0
    bool latent;                 // ring fully at Re <= 0 (det D >= 0)
    bool degenerate;             // mu1 == mu2, radius collapses to 0
};

enum class Definiteness { Definite, Semidefinite, Indefinite };

/// Hyperbola traced by the imaginary parts under a pure stiffness
/// perturbation (real parts stay zero).
struct ConservativeHyperbola {
    double asymptote_center;  // Im value the two asymptotes cross at
    double beta1, beta2;      // intercepts with the omega = 0 axis
    Definiteness cls;
};

NodeBasis node_basis(const GyroSystem2D& sys, const ParamPoint& p);

SplitC split_c(const GyroSystem2D& sys, const ParamPoint& p);

/// First-order eigenvalue pair at the node:
///   lambda± = i beta + i kappa (rho1+rho2)/(4 beta) - delta (mu1+mu2)/4 ± sqrt(c)
/// with the principal branch of the square root.
std::pair<Complex, Complex> asymptotic_eigs(const GyroSystem2D& sys, const ParamPoint& p);

/// Real and imaginary parts of the pair, sign-paired so that the product
/// identity (Re l + delta trD/4)(Im l - beta) = omega nu/(2 beta) holds per
/// eigenvalue (kappa = 0), matching asymptotic_eigs.
struct ReImPair {
    std::pair<double, double> re;
    std::pair<double, double> im;
};
ReImPair re_im_curves(const GyroSystem2D& sys, const ParamPoint& p);

ConservativeHyperbola conservative_hyperbola(const GyroSystem2D& sys, double kappa);

BubbleGeometry dissipative_bubble(const GyroSystem2D& sys, double delta);

/// All four eigenvalues under a pure circulatory perturbation, labelled by
/// the mesh branch they deform.
struct LabelledEig {
    const char* label;
    Complex lambda;
};
std::array<LabelledEig, 4> circulatory_split(double beta, double omega, double nu);

/// (Re l + delta trD/4)(Im l - beta) - omega nu/(2 beta); vanishes on the
/// first-order eigenvalue trajectories when kappa = 0.
double complex_trajectory_residual(Complex lambda, const GyroSystem2D& sys, const ParamPoint& p);

/// Branch-continued sweep of asymptotic_eigs over omega.  The square root
/// uses the principal branch; consecutive samples are re-paired (2x2
/// assignment, cheapest total move) so each returned branch is continuous.
struct BranchPair {
    std::vector<Complex> plus;
    std::vector<Complex> minus;
};
BranchPair asymptotic_trajectory(const GyroSystem2D& sys, const ParamPoint& base,
                                 const std::vector<double>& omegas);

}  // namespace gyrospectra
