#include "gyrospectra/rotating_string.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gyrospectra::rstring {

namespace {
const Complex kI(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
constexpr double kSubcriticalMargin = 1e-6;
}  // namespace

void StringParams::validate() const {
    if (!(std::abs(omega) <= 1.0 - kSubcriticalMargin))
        throw std::invalid_argument("string speed must satisfy |omega| <= 1 - 1e-6");
    if (!(k >= 0.0)) throw std::invalid_argument("spring coefficient must be >= 0");
    if (!(d >= 0.0)) throw std::invalid_argument("damper coefficient must be >= 0");
    if (!std::isfinite(mu)) throw std::invalid_argument("friction coefficient must be finite");
}

std::vector<StringEig> unperturbed_string_eigs(int n_max, double omega) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<StringEig> out;
    out.reserve(static_cast<std::size_t>(4 * n_max));
    for (int n = -n_max; n <= n_max; ++n) {
        if (n == 0) continue;
        for (int sign : {+1, -1})
            out.push_back({n, sign, Complex(0.0, n * (1.0 + sign * omega))});
    }
    return out;
}

Complex string_eigenfunction(int n, int sign, double phi) {
    return Complex(std::cos(n * phi), -sign * std::sin(n * phi));
}

MeshNode make_node(int n, int eps, int m, int del) {
    if (n == 0 || m == 0) throw std::invalid_argument("node mode numbers must be nonzero");
    if ((eps != 1 && eps != -1) || (del != 1 && del != -1))
        throw std::invalid_argument("branch signs must be +1 or -1");
    int den = m * del - n * eps;
    if (den == 0) throw std::invalid_argument("branches are parallel (m del == n eps)");
    double om = static_cast<double>(n - m) / den;
    Complex lam(0.0, static_cast<double>(n) * m * (del - eps) / den);
    return {n, eps, m, del, om, lam};
}

std::vector<MeshNode> mesh_nodes(int n_max, double omega_lo, double omega_hi) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    std::vector<MeshNode> nodes;
    for (int n = 1; n <= n_max; ++n) {
        for (int eps : {+1, -1}) {
            for (int m = 1; m <= n_max; ++m) {
                for (int del : {+1, -1}) {
                    if (std::make_pair(n, eps) >= std::make_pair(m, del)) continue;
                    int den = m * del - n * eps;
                    if (den == 0) continue;
                    double om = static_cast<double>(n - m) / den;
                    if (om < omega_lo || om > omega_hi) continue;
                    Complex lam(0.0, static_cast<double>(n) * m * (del - eps) / den);
                    nodes.push_back({n, eps, m, del, om, lam});
                }
            }
        }
    }
    std::sort(nodes.begin(), nodes.end(), [](const MeshNode& a, const MeshNode& b) {
        if (a.omega_star != b.omega_star) return a.omega_star < b.omega_star;
        if (a.lambda_star.imag() != b.lambda_star.imag())
            return a.lambda_star.imag() < b.lambda_star.imag();
        if (a.n != b.n) return a.n < b.n;
        if (a.eps != b.eps) return a.eps > b.eps;
        if (a.m != b.m) return a.m < b.m;
        return a.del > b.del;
    });
    return nodes;
}

namespace {

struct DetTerms {
    Complex det;
    double scale;
};

DetTerms det_terms(Complex lambda, const StringParams& p) {
    double om = p.omega;
    double pre = 1.0 - om * om;
    Complex a = lambda / (1.0 - om);
    Complex b = -lambda / (1.0 + om);
    Complex ea = 1.0 - std::exp(2.0 * kPi * a);
    Complex eb = 1.0 - std::exp(2.0 * kPi * b);
    Complex load = lambda * p.d + p.k;

    Complex det = (b - a) * ea * eb + (load * (eb - ea) + p.mu * (a * eb - b * ea)) / pre;
    double scale = (std::abs(b - a) +
                    (std::abs(lambda) * p.d + p.k +
                     std::abs(p.mu) * std::max(std::abs(a), std::abs(b))) / pre) *
                   (1.0 + std::abs(ea)) * (1.0 + std::abs(eb));
    return {det, std::max(scale, 1e-300)};
}

}  // namespace

Complex char_det(Complex lambda, const StringParams& params) {
    params.validate();
    DetTerms t = det_terms(lambda, params);
    return t.det / t.scale;
}

Complex char_det_raw(Complex lambda, const StringParams& params) {
    params.validate();
    return det_terms(lambda, params).det;
}

StringSpectrumSlice string_exact_eigs(const StringParams& params,
                                      const std::vector<Complex>& seeds) {
    params.validate();
    StringSpectrumSlice slice;
    slice.omega = params.omega;

    for (std::size_t s = 0; s < seeds.size(); ++s) {
        Complex z = seeds[s];
        bool converged = false;
        for (int it = 0; it < 60; ++it) {
            double h = 1e-7 * (1.0 + std::abs(z));
            Complex df = (det_terms(z + h, params).det - det_terms(z - h, params).det) / (2.0 * h);
            if (df == Complex(0.0, 0.0)) break;
            Complex step = det_terms(z, params).det / df;
            z -= step;
            if (std::abs(step) < 1e-12 * (1.0 + std::abs(z))) {
                converged = true;
                break;
            }
        }
        DetTerms t = det_terms(z, params);
        double residual = std::abs(t.det) / t.scale;
        converged = converged && residual < 1e-9;

        bool dup = false;
        for (auto& r : slice.roots) {
            if (std::abs(r.lambda - z) < 1e-8) {
                dup = true;
                if (residual < r.residual) {
                    r.lambda = z;
                    r.residual = residual;
                    r.converged = converged;
                }
                break;
            }
        }
        if (!dup) slice.roots.push_back({z, residual, converged, static_cast<int>(s)});
    }

    std::sort(slice.roots.begin(), slice.roots.end(), [](const StringRoot& a, const StringRoot& b) {
        if (a.lambda.imag() != b.lambda.imag()) return a.lambda.imag() < b.lambda.imag();
        return a.lambda.real() < b.lambda.real();
    });
    return slice;
}

NodeCoeffs perturbation_coeffs(const MeshNode& node, const StringParams& params, double d_omega) {
    params.validate();
    double n = node.n, m = node.m;
    double eps = node.eps, del = node.del;
    Complex load = params.d * node.lambda_star + params.k;

    NodeCoeffs c;
    c.f_nn = -kI * eps * n * d_omega;
    c.f_mm = -kI * del * m * d_omega;
    c.f_nm = 0.0;
    c.f_mn = 0.0;
    c.e_nn = (load - kI * eps * n * params.mu) / (4.0 * kPi * n * kI);
    c.e_mm = (load - kI * del * m * params.mu) / (4.0 * kPi * m * kI);
    double root_nm = std::sqrt(n * m);
    c.e_nm = (load - kI * eps * n * params.mu) / (4.0 * kPi * kI * root_nm);
    c.e_mn = (load - kI * del * m * params.mu) / (4.0 * kPi * kI * root_nm);
    return c;
}

namespace {

struct Mode {
    int n;
    int sign;
};

Complex mode_u(const Mode& md, double phi) { return string_eigenfunction(md.n, md.sign, phi); }
Complex mode_du(const Mode& md, double phi) {
    return Complex(-md.n * std::sin(md.n * phi), -md.sign * md.n * std::cos(md.n * phi));
}
Complex mode_d2u(const Mode& md, double phi) {
    double nn = static_cast<double>(md.n) * md.n;
    return -nn * mode_u(md, phi);
}

// Periodic trapezoid rule; exact for trigonometric polynomials of degree
// below n_quad.
template <class F>
Complex integrate(F&& f, int n_quad) {
    Complex acc = 0.0;
    double h = 2.0 * kPi / n_quad;
    for (int i = 0; i < n_quad; ++i) acc += f(i * h);
    return acc * h;
}

}  // namespace

NodeCoeffs perturbation_coeffs_quadrature(const MeshNode& node, const StringParams& params,
                                          double d_omega, int n_quad) {
    params.validate();
    Mode a{node.n, node.eps}, b{node.m, node.del};
    Complex lam = node.lambda_star;
    double om = node.omega_star;
    Complex load = params.d * lam + params.k;

    auto norm = [&](const Mode& md) {
        return integrate(
            [&](double phi) {
                return (lam * mode_u(md, phi) + om * mode_du(md, phi)) * std::conj(mode_u(md, phi));
            },
            n_quad);
    };
    // The normalizers sit on the positive imaginary axis; rooting them
    // individually keeps the branch stable where the rooted product would
    // straddle the cut.
    Complex denom = 2.0 * std::sqrt(norm(a)) * std::sqrt(norm(b));

    auto f_of = [&](const Mode& x, const Mode& y, Complex den) {
        Complex i1 = integrate(
            [&](double phi) { return mode_du(x, phi) * std::conj(mode_u(y, phi)); }, n_quad);
        Complex i2 = integrate(
            [&](double phi) { return mode_d2u(x, phi) * std::conj(mode_u(y, phi)); }, n_quad);
        return (2.0 * lam * i1 + 2.0 * om * i2) / den * d_omega;
    };
    auto e_of = [&](const Mode& x, const Mode& y, Complex den) {
        Complex num = load * mode_u(x, 0.0) * std::conj(mode_u(y, 0.0)) +
                      params.mu * mode_du(x, 0.0) * std::conj(mode_u(y, 0.0));
        return num / den;
    };

    NodeCoeffs c;
    Complex den_aa = 2.0 * norm(a);
    Complex den_bb = 2.0 * norm(b);
    c.f_nn = f_of(a, a, den_aa);
    c.f_mm = f_of(b, b, den_bb);
    c.f_nm = f_of(a, b, denom);
    c.f_mn = f_of(b, a, denom);
    c.e_nn = e_of(a, a, den_aa);
    c.e_mm = e_of(b, b, den_bb);
    c.e_nm = e_of(a, b, denom);
    c.e_mn = e_of(b, a, denom);
    return c;
}

std::pair<Complex, Complex> node_split(const MeshNode& node, const StringParams& params,
                                       double d_omega) {
    params.validate();
    double n = node.n, m = node.m;
    double eps = node.eps, del = node.del;
    Complex lam = node.lambda_star;
    Complex load = params.d * lam + params.k;

    Complex center = lam + kI * (eps * n + del * m) * d_omega / 2.0 +
                     kI * (n + m) / (8.0 * kPi * n * m) * load + (eps + del) / (8.0 * kPi) * params.mu;
    Complex half = kI * (eps * n - del * m) * d_omega / 2.0 +
                   kI * (m - n) / (8.0 * kPi * m * n) * load + (eps - del) / (8.0 * kPi) * params.mu;
    Complex c = half * half -
                (load - kI * eps * n * params.mu) * (load - kI * del * m * params.mu) /
                    (16.0 * kPi * kPi * n * m);
    Complex root = std::sqrt(c);
    return {center + root, center - root};
}

NodeBranchPair node_split_trajectory(const MeshNode& node, const StringParams& params,
                                     const std::vector<double>& omegas) {
    NodeBranchPair out;
    out.plus.reserve(omegas.size());
    out.minus.reserve(omegas.size());
    for (double om : omegas) {
        auto [lp, lm] = node_split(node, params, om - node.omega_star);
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

std::pair<Complex, Complex> spring_split(int n, double k, double omega) {
    double shift = k / (4.0 * kPi * n);
    double rad = std::sqrt(n * n * omega * omega + k * k / (16.0 * kPi * kPi * n * n));
    return {Complex(0.0, n + shift + rad), Complex(0.0, n + shift - rad)};
}

DamperSplit damper_bubble(int n, double d, double omega) {
    DamperSplit out;
    out.re_center = -d / (4.0 * kPi);
    out.re_radius = d / (4.0 * kPi);
    out.omega_halfwidth = d / (4.0 * kPi * n);
    double disc = d * d / (16.0 * kPi * kPi) - static_cast<double>(n) * n * omega * omega;
    out.circle_regime = disc >= 0.0;
    Complex root = std::sqrt(Complex(disc, 0.0));
    Complex center(out.re_center, static_cast<double>(n));
    out.lambdas = {center + root, center - root};
    return out;
}

FrictionSplit friction_split(int n, double mu, double omega) {
    FrictionSplit out;
    Complex inner = kI * static_cast<double>(n) * omega + mu / (4.0 * kPi);
    Complex c = inner * inner - mu * mu / (16.0 * kPi * kPi);
    Complex root = std::sqrt(c);
    Complex base(0.0, static_cast<double>(n));
    out.lambdas = {base + root, base - root};

    double rec = c.real(), imc = c.imag();
    double h = std::hypot(rec, imc);
    double x = std::sqrt(std::max(0.5 * (rec + h), 0.0));
    double y = std::sqrt(std::max(0.5 * (h - rec), 0.0));
    if (imc < 0.0) y = -y;
    out.re = {x, -x};
    out.im = {n + y, n - y};
    return out;
}

double friction_re_small_omega(int n, double mu, double omega) {
    return std::sqrt(kPi * n * mu * std::abs(omega)) / (2.0 * kPi);
}

double friction_im_small_omega(int n, double mu, double omega) {
    return n + friction_re_small_omega(n, mu, omega);
}

double friction_re_large_omega(int n, double mu, double omega) {
    double mu3 = mu * mu * mu;
    return mu / (4.0 * kPi) -
           mu3 / (128.0 * kPi * kPi * kPi * static_cast<double>(n) * n * omega * omega);
}

}  // namespace gyrospectra::rstring
