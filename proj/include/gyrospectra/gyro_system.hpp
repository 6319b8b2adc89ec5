#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace gyrospectra {

/// Two-degree-of-freedom gyroscopic system
///
///   x'' + (2*omega*G + delta*D) x' + ((beta^2 - omega^2) I + kappa*K + nu*N) x = 0
///
/// G and N are 2x2 skew-symmetric with unit determinant; any input scale on
/// them is folded into the gyroscopic and circulatory parameters instead
/// (omega_scale, nu_scale), so the stored matrices are exactly
/// [[0,1],[-1,0]].  D and K are symmetric.
class GyroSystem2D {
public:
    GyroSystem2D(double beta, const Eigen::Matrix2d& G, const Eigen::Matrix2d& D,
                 const Eigen::Matrix2d& K, const Eigen::Matrix2d& N);

    /// Convenience: G = N = [[0,1],[-1,0]].
    GyroSystem2D(double beta, const Eigen::Matrix2d& D, const Eigen::Matrix2d& K);

    double beta() const { return beta_; }
    const Eigen::Matrix2d& damping() const { return D_; }
    const Eigen::Matrix2d& stiffness() const { return K_; }
    Eigen::Matrix2d gyro() const { return unit_skew(); }
    Eigen::Matrix2d circulatory() const { return unit_skew(); }

    /// Fold factor applied to the raw gyroscopic parameter.
    double omega_scale() const { return omega_scale_; }
    /// Fold factor applied to the raw circulatory parameter.
    double nu_scale() const { return nu_scale_; }

    double tr_d() const { return D_.trace(); }
    double det_d() const { return D_.determinant(); }
    double tr_k() const { return K_.trace(); }
    double det_k() const { return K_.determinant(); }
    double tr_kd() const { return (K_ * D_).trace(); }

    static Eigen::Matrix2d unit_skew() {
        Eigen::Matrix2d j;
        j << 0.0, 1.0, -1.0, 0.0;
        return j;
    }

private:
    double beta_;
    Eigen::Matrix2d D_;
    Eigen::Matrix2d K_;
    double omega_scale_;
    double nu_scale_;
};

/// One point of the perturbation-parameter space.
struct ParamPoint {
    double omega = 0.0;  // gyroscopic
    double delta = 0.0;  // damping scale
    double kappa = 0.0;  // stiffness scale
    double nu = 0.0;     // circulatory scale
};

/// Eigenvalues of a symmetric 2x2 matrix, ordered hi >= lo.
struct SymEigs {
    double hi;
    double lo;
};

SymEigs sym_eigs_2x2(const Eigen::Matrix2d& m);

}  // namespace gyrospectra
