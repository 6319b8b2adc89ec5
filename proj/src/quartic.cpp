#include "gyrospectra/quartic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gyrospectra {

Complex QuarticPoly::eval(Complex x) const {
    Complex v = c[0];
    for (int i = 1; i < 5; ++i) v = v * x + c[i];
    return v;
}

Complex QuarticPoly::deriv(Complex x) const {
    Complex v = 4.0 * c[0];
    v = v * x + 3.0 * c[1];
    v = v * x + 2.0 * c[2];
    v = v * x + c[3];
    return v;
}

double QuarticPoly::coeff_scale() const {
    double m = 1.0;
    for (double a : c) m = std::max(m, std::abs(a));
    return m;
}

const char* to_string(StabilityKind k) {
    switch (k) {
        case StabilityKind::AsymptoticallyStable: return "asymptotically-stable";
        case StabilityKind::Marginal: return "marginal";
        case StabilityKind::Flutter: return "flutter";
        case StabilityKind::Divergence: return "divergence";
    }
    return "?";
}

QuarticPoly char_poly(const GyroSystem2D& sys, const ParamPoint& p) {
    double beta = sys.beta();
    double om = p.omega * sys.omega_scale();
    double nu = p.nu * sys.nu_scale();
    double delta = p.delta, kappa = p.kappa;
    double trD = sys.tr_d(), detD = sys.det_d();
    double trK = sys.tr_k(), detK = sys.det_k();
    double trKD = sys.tr_kd();
    double w = beta * beta - om * om;

    QuarticPoly q;
    q.c[0] = 1.0;
    q.c[1] = delta * trD;
    q.c[2] = 2.0 * (beta * beta + om * om) + delta * delta * detD + kappa * trK;
    q.c[3] = 4.0 * om * nu + delta * w * trD + delta * kappa * (trK * trD - trKD);
    q.c[4] = kappa * kappa * detK + kappa * trK * w + w * w + nu * nu;
    return q;
}

namespace {

void sort_and_label(QuarticSpectrum& s) {
    std::array<int, 4> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (s.roots[a].imag() != s.roots[b].imag()) return s.roots[a].imag() > s.roots[b].imag();
        return s.roots[a].real() < s.roots[b].real();
    });
    QuarticSpectrum out = s;
    for (int i = 0; i < 4; ++i) {
        out.roots[i] = s.roots[idx[i]];
        out.residuals[i] = s.residuals[idx[i]];
        out.labels[i] = "r" + std::to_string(i + 1);
    }
    s = out;
}

// Both quadratic roots of x^2 + b x + c with a cancellation-free split.
std::pair<Complex, Complex> quadratic_roots(double b, double c) {
    double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        double s = std::sqrt(disc);
        double q = -0.5 * (b + std::copysign(s, b));
        double r1 = q;
        double r2 = (q != 0.0) ? c / q : 0.0;
        return {Complex(r1, 0.0), Complex(r2, 0.0)};
    }
    double s = std::sqrt(-disc);
    return {Complex(-0.5 * b, 0.5 * s), Complex(-0.5 * b, -0.5 * s)};
}

// Quadratic-in-x^2 route for polynomials with zero odd coefficients; exact
// at the double roots of the reversible case, where the companion route
// loses half the digits.
QuarticSpectrum solve_biquadratic(const QuarticPoly& poly) {
    auto [y1, y2] = quadratic_roots(poly.a2(), poly.a0());
    QuarticSpectrum s;
    s.roots[0] = std::sqrt(y1);
    s.roots[1] = -s.roots[0];
    s.roots[2] = std::sqrt(y2);
    s.roots[3] = -s.roots[2];
    for (int i = 0; i < 4; ++i) s.residuals[i] = std::abs(poly.eval(s.roots[i]));
    return s;
}

}  // namespace

QuarticSpectrum solve_quartic(const QuarticPoly& poly) {
    QuarticSpectrum s;
    const double res_bound = 1e-9 * poly.coeff_scale();

    if (poly.a3() == 0.0 && poly.a1() == 0.0) {
        s = solve_biquadratic(poly);
    } else {
        Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
        companion(0, 3) = -poly.a0();
        companion(1, 3) = -poly.a1();
        companion(2, 3) = -poly.a2();
        companion(3, 3) = -poly.a3();
        companion(1, 0) = companion(2, 1) = companion(3, 2) = 1.0;
        Eigen::EigenSolver<Eigen::Matrix4d> es(companion, /*computeEigenvectors=*/false);
        for (int i = 0; i < 4; ++i) {
            Complex root = es.eigenvalues()(i);
            double best = std::abs(poly.eval(root));
            // Newton polish; keep the iterate only while the residual drops.
            Complex z = root;
            for (int it = 0; it < 50 && best > 0.0; ++it) {
                Complex dp = poly.deriv(z);
                if (dp == Complex(0.0, 0.0)) break;
                Complex step = poly.eval(z) / dp;
                z -= step;
                double r = std::abs(poly.eval(z));
                if (r < best) {
                    best = r;
                    root = z;
                }
                if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
            }
            s.roots[i] = root;
            s.residuals[i] = best;
        }
    }

    s.converged = true;
    for (double r : s.residuals)
        if (!(r < res_bound)) s.converged = false;
    sort_and_label(s);
    return s;
}

StabilityVerdict classify(const QuarticSpectrum& spec, double tol) {
    double max_re = -std::numeric_limits<double>::infinity();
    for (const auto& r : spec.roots) max_re = std::max(max_re, r.real());

    StabilityKind kind;
    if (max_re > tol) {
        bool complex_unstable = false;
        for (const auto& r : spec.roots)
            if (r.real() > tol && std::abs(r.imag()) > tol) complex_unstable = true;
        kind = complex_unstable ? StabilityKind::Flutter : StabilityKind::Divergence;
    } else if (max_re >= -tol) {
        kind = StabilityKind::Marginal;
    } else {
        kind = StabilityKind::AsymptoticallyStable;
    }
    return {kind, max_re, tol};
}

StabilityVerdict routh_hurwitz(const QuarticPoly& poly) {
    double a3 = poly.a3(), a2 = poly.a2(), a1 = poly.a1(), a0 = poly.a0();
    double d1 = a3;
    double d2 = a3 * a2 - a1;
    double d3 = a1 * d2 - a3 * a3 * a0;
    double nan = std::numeric_limits<double>::quiet_NaN();

    if (d1 > 0.0 && d2 > 0.0 && d3 > 0.0 && a0 > 0.0)
        return {StabilityKind::AsymptoticallyStable, nan, 0.0};
    if (a0 < 0.0)  // P(0) < 0 with P(+inf) > 0: a real positive root exists
        return {StabilityKind::Divergence, nan, 0.0};
    if (d1 < 0.0 || d2 < 0.0 || d3 < 0.0)
        return {StabilityKind::Flutter, nan, 0.0};
    return {StabilityKind::Marginal, nan, 0.0};
}

QuarticSpectrum unperturbed_spectrum(double beta, double omega) {
    QuarticSpectrum s;
    s.roots = {Complex(0.0, beta + omega), Complex(0.0, -beta + omega),
               Complex(0.0, beta - omega), Complex(0.0, -beta - omega)};
    s.residuals = {0.0, 0.0, 0.0, 0.0};
    s.labels = {"p+", "n+", "p-", "n-"};
    s.converged = true;
    return s;
}

}  // namespace gyrospectra
