#include "gyrospectra/node_perturbation.hpp"

#include <cmath>

namespace gyrospectra {

namespace {
const Complex kI(0.0, 1.0);
}  // namespace

NodeBasis node_basis(const GyroSystem2D& sys, const ParamPoint& p) {
    double beta = sys.beta();
    double delta = p.delta, kappa = p.kappa;
    double nu = p.nu * sys.nu_scale();
    const Eigen::Matrix2d& D = sys.damping();
    const Eigen::Matrix2d& K = sys.stiffness();

    NodeBasis nb;
    double inv = 1.0 / std::sqrt(2.0 * beta);
    nb.u1 << 0.0, inv;
    nb.u2 << inv, 0.0;

    nb.f.setZero();
    nb.f(0, 1) = kI;
    nb.f(1, 0) = -kI;

    nb.eps(0, 0) = kI * (0.5 * delta * D(1, 1)) + kappa * K(1, 1) / (2.0 * beta);
    nb.eps(1, 1) = kI * (0.5 * delta * D(0, 0)) + kappa * K(0, 0) / (2.0 * beta);
    Complex off = kI * (0.5 * delta * D(0, 1)) + kappa * K(0, 1) / (2.0 * beta);
    nb.eps(0, 1) = off + nu / (2.0 * beta);
    nb.eps(1, 0) = off - nu / (2.0 * beta);
    return nb;
}

SplitC split_c(const GyroSystem2D& sys, const ParamPoint& p) {
    double beta = sys.beta();
    double om = p.omega * sys.omega_scale();
    double nu = p.nu * sys.nu_scale();
    double delta = p.delta, kappa = p.kappa;
    SymEigs mu = sym_eigs_2x2(sys.damping());
    SymEigs rho = sym_eigs_2x2(sys.stiffness());
    double cross = 2.0 * sys.tr_kd() - sys.tr_k() * sys.tr_d();

    double dmu = 0.25 * (mu.hi - mu.lo);
    double drho = (rho.hi - rho.lo) / (4.0 * beta);

    SplitC c;
    c.mu1 = mu.hi;
    c.mu2 = mu.lo;
    c.rho1 = rho.hi;
    c.rho2 = rho.lo;
    Complex shift = kI * om + nu / (2.0 * beta);
    c.value = dmu * dmu * delta * delta - drho * drho * kappa * kappa + shift * shift -
              kI * delta * kappa * cross / (8.0 * beta);
    c.re = dmu * dmu * delta * delta - drho * drho * kappa * kappa - om * om +
           nu * nu / (4.0 * beta * beta);
    c.im = om * nu / beta - delta * kappa * cross / (8.0 * beta);
    return c;
}

std::pair<Complex, Complex> asymptotic_eigs(const GyroSystem2D& sys, const ParamPoint& p) {
    double beta = sys.beta();
    SplitC c = split_c(sys, p);
    Complex center = kI * beta + kI * p.kappa * (c.rho1 + c.rho2) / (4.0 * beta) -
                     p.delta * (c.mu1 + c.mu2) / 4.0;
    Complex root = std::sqrt(c.value);
    return {center + root, center - root};
}

ReImPair re_im_curves(const GyroSystem2D& sys, const ParamPoint& p) {
    double beta = sys.beta();
    SplitC c = split_c(sys, p);
    double h = std::hypot(c.re, c.im);
    double x = std::sqrt(std::max(0.5 * (c.re + h), 0.0));
    double y = std::sqrt(std::max(0.5 * (h - c.re), 0.0));
    // Pair the Im sign with sign(Im c) so the per-eigenvalue product identity
    // holds; this matches the principal square root in asymptotic_eigs.
    if (c.im < 0.0) y = -y;

    double re_center = -p.delta * (c.mu1 + c.mu2) / 4.0;
    double im_center = beta + p.kappa * (c.rho1 + c.rho2) / (4.0 * beta);
    return {{re_center + x, re_center - x}, {im_center + y, im_center - y}};
}

ConservativeHyperbola conservative_hyperbola(const GyroSystem2D& sys, double kappa) {
    double beta = sys.beta();
    SymEigs rho = sym_eigs_2x2(sys.stiffness());
    ConservativeHyperbola h;
    h.asymptote_center = beta + kappa * (rho.hi + rho.lo) / (4.0 * beta);
    h.beta1 = beta + kappa * rho.hi / (2.0 * beta);
    h.beta2 = beta + kappa * rho.lo / (2.0 * beta);
    double prod = sys.det_k();
    h.cls = prod > 0.0   ? Definiteness::Definite
            : prod < 0.0 ? Definiteness::Indefinite
                         : Definiteness::Semidefinite;
    return h;
}

BubbleGeometry dissipative_bubble(const GyroSystem2D& sys, double delta) {
    SymEigs mu = sym_eigs_2x2(sys.damping());
    double detD = sys.det_d();

    BubbleGeometry b;
    b.radius = std::abs((mu.hi - mu.lo) * delta) / 4.0;
    b.depth = std::abs((mu.hi + mu.lo) * delta) / 4.0;
    double ep = delta * (mu.hi - mu.lo) / 4.0;
    b.exceptional_omegas = {-std::abs(ep), std::abs(ep)};
    b.exceptional_re = -delta * (mu.hi + mu.lo) / 4.0;
    b.latent = detD >= 0.0;
    b.degenerate = (mu.hi == mu.lo);
    if (detD < 0.0) b.omega_cr = 0.5 * std::abs(delta) * std::sqrt(-detD);
    return b;
}

std::array<LabelledEig, 4> circulatory_split(double beta, double omega, double nu) {
    double s = nu / (2.0 * beta);
    return {{{"p+", Complex(s, beta + omega)},
             {"p-", Complex(-s, beta - omega)},
             {"n+", Complex(-s, -beta + omega)},
             {"n-", Complex(s, -beta - omega)}}};
}

double complex_trajectory_residual(Complex lambda, const GyroSystem2D& sys,
                                   const ParamPoint& p) {
    double beta = sys.beta();
    double om = p.omega * sys.omega_scale();
    double nu = p.nu * sys.nu_scale();
    return (lambda.real() + p.delta * sys.tr_d() / 4.0) * (lambda.imag() - beta) -
           om * nu / (2.0 * beta);
}

BranchPair asymptotic_trajectory(const GyroSystem2D& sys, const ParamPoint& base,
                                 const std::vector<double>& omegas) {
    BranchPair out;
    out.plus.reserve(omegas.size());
    out.minus.reserve(omegas.size());
    for (double om : omegas) {
        ParamPoint p = base;
        p.omega = om;
        auto [lp, lm] = asymptotic_eigs(sys, p);
        if (!out.plus.empty()) {
            double keep = std::abs(lp - out.plus.back()) + std::abs(lm - out.minus.back());
            double swap = std::abs(lm - out.plus.back()) + std::abs(lp - out.minus.back());
            if (swap < keep) std::swap(lp, lm);
        }
        out.plus.push_back(lp);
        out.minus.push_back(lm);
    }
    return out;
}

}  // namespace gyrospectra
