#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "gyrospectra/rotating_string.hpp"
#include "testutil.hpp"

using namespace gyrospectra::rstring;
using gyrospectra::Complex;

namespace {
constexpr double kPi = std::numbers::pi;

double nearest_root_dist(const StringSpectrumSlice& slice, Complex target) {
    double best = 1e300;
    for (const auto& r : slice.roots) best = std::min(best, std::abs(r.lambda - target));
    return best;
}
}  // namespace

TEST_CASE("unloaded spectrum on the mesh lines") {
    auto eigs = unperturbed_string_eigs(2, 0.0);
    REQUIRE(eigs.size() == 8);
    std::multiset<double> ims;
    for (const auto& e : eigs) {
        CHECK(e.lambda.real() == 0.0);
        ims.insert(e.lambda.imag());
    }
    CHECK(ims.count(1.0) == 2);   // each +-i n doubled at rest
    CHECK(ims.count(-1.0) == 2);
    CHECK(ims.count(2.0) == 2);
    CHECK(ims.count(-2.0) == 2);

    eigs = unperturbed_string_eigs(1, 0.2);
    for (const auto& e : eigs) {
        if (e.n == 1 && e.sign == +1) CHECK(e.lambda == Complex(0, 1.2));
        if (e.n == 1 && e.sign == -1) CHECK(e.lambda == Complex(0, 0.8));
    }

    // branch gap is 2 i n omega
    for (int n = 1; n <= 5; ++n) {
        double om = 0.31;
        Complex gap = Complex(0, n * (1 + om)) - Complex(0, n * (1 - om));
        CHECK(std::abs(gap - Complex(0, 2.0 * n * om)) < 1e-15);
    }
}

TEST_CASE("mesh nodes: values and brute-force count") {
    MeshNode nd = make_node(2, +1, 3, -1);
    CHECK(nd.omega_star == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(nd.lambda_star.imag() == doctest::Approx(2.4).epsilon(1e-15));

    nd = make_node(1, +1, 1, -1);
    CHECK(nd.omega_star == 0.0);
    CHECK(nd.lambda_star == Complex(0, 1));

    CHECK_THROWS_AS(make_node(1, +1, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_node(1, +1, 1, +1), std::invalid_argument);  // same line

    // brute force: intersect every pair of lines im = n (1 + s w)
    auto brute_count = [](int n_max, double lo, double hi) {
        int count = 0;
        struct Line {
            int n, s;
        };
        std::vector<Line> lines;
        for (int n = 1; n <= n_max; ++n)
            for (int s : {+1, -1}) lines.push_back({n, s});
        for (std::size_t a = 0; a < lines.size(); ++a) {
            for (std::size_t b = a + 1; b < lines.size(); ++b) {
                double den = lines[a].n * lines[a].s - lines[b].n * lines[b].s;
                if (den == 0.0) continue;
                double om = (lines[b].n - lines[a].n) / den;
                if (om >= lo && om <= hi) ++count;
            }
        }
        return count;
    };
    for (int n_max : {3, 6}) {
        auto nodes = mesh_nodes(n_max, 1e-12, 1.0 - 1e-12);
        CHECK(static_cast<int>(nodes.size()) == brute_count(n_max, 1e-12, 1.0 - 1e-12));
    }
    CHECK(mesh_nodes(10, 0.0, 0.999).size() > mesh_nodes(5, 0.0, 0.999).size());
}

TEST_CASE("characteristic determinant vanishes on the unloaded mesh") {
    StringParams p;
    for (double om : {0.0, 0.2, 0.7}) {
        p.omega = om;
        for (int n = 1; n <= 5; ++n) {
            CHECK(std::abs(char_det(Complex(0, n * (1 + om)), p)) < 1e-12);
            CHECK(std::abs(char_det(Complex(0, n * (1 - om)), p)) < 1e-12);
            CHECK(std::abs(char_det(Complex(0, (n + 0.5) * (1 + om)), p)) > 1e-6);
        }
    }
}

TEST_CASE("determinant conjugate symmetry") {
    testutil::Rng rng(60601);
    StringParams p;
    p.omega = 0.3;
    p.k = 0.2;
    p.d = 0.1;
    p.mu = 0.15;
    for (int t = 0; t < 200; ++t) {
        Complex z(rng.uniform(-0.5, 0.5), rng.uniform(-4, 4));
        CHECK(std::abs(char_det(std::conj(z), p) - std::conj(char_det(z, p))) < 1e-12);
    }
}

TEST_CASE("exact eigenvalues by Newton refinement") {
    StringParams p;
    p.omega = 0.2;
    std::vector<Complex> seeds = {Complex(0, 1.2), Complex(0, 0.8), Complex(0, 2.4)};
    StringSpectrumSlice slice = string_exact_eigs(p, seeds);
    REQUIRE(slice.roots.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(slice.roots[i].converged);
        CHECK(slice.roots[i].residual < 1e-9);
    }
    CHECK(nearest_root_dist(slice, Complex(0, 0.8)) < 1e-12);

    // point damper: the sine mode stays put, the cosine mode is damped
    p = StringParams{};
    p.d = 0.3;
    slice = string_exact_eigs(p, {Complex(0, 1), Complex(-0.3 / (2 * kPi), 1)});
    REQUIRE(slice.roots.size() == 2);
    CHECK(std::abs(slice.roots[1].lambda - Complex(0, 1)) < 1e-10);
    double moved = slice.roots[0].lambda.real();
    CHECK(std::abs(moved - (-0.3 / (2 * kPi))) < 0.05 * 0.3 * 0.3);

    // friction: growth follows the square-root law near the node
    p = StringParams{};
    p.mu = 0.3;
    p.omega = 0.01;
    FrictionSplit fs = friction_split(1, 0.3, 0.01);
    slice = string_exact_eigs(p, {fs.lambdas.first, fs.lambdas.second});
    double s29 = friction_re_small_omega(1, 0.3, 0.01);
    CHECK(s29 == doctest::Approx(0.015450968080927583).epsilon(1e-12));
    bool saw_growth = false;
    for (const auto& r : slice.roots) {
        if (r.lambda.real() > 0.0) {
            saw_growth = true;
            CHECK(std::abs(r.lambda.real() - s29) / s29 < 0.02);
        }
    }
    CHECK(saw_growth);
}

TEST_CASE("duplicate seeds merge") {
    StringParams p;
    p.omega = 0.2;
    StringSpectrumSlice slice =
        string_exact_eigs(p, {Complex(0, 1.2), Complex(1e-10, 1.2), Complex(0, 1.2)});
    CHECK(slice.roots.size() == 1);
}

TEST_CASE("node coefficients: closed form values") {
    StringParams p;
    p.k = 0.3;
    MeshNode node = make_node(1, +1, 1, -1);  // omega* = 0, lambda* = i
    NodeCoeffs c = perturbation_coeffs(node, p, 0.05);
    CHECK(std::abs(c.f_nn - Complex(0, -1) * 1.0 * 0.05) < 1e-15);
    CHECK(std::abs(c.f_mm - Complex(0, +1) * 1.0 * 0.05) < 1e-15);
    CHECK(std::abs(c.f_nm) == 0.0);
    CHECK(std::abs(c.f_mn) == 0.0);
    CHECK(std::abs(c.e_nn - 0.3 / (4.0 * kPi * Complex(0, 1))) < 1e-15);
}

TEST_CASE("node coefficients: quadrature route agrees with closed forms") {
    StringParams p;
    p.k = 0.31;
    p.d = 0.17;
    p.mu = 0.23;
    for (const MeshNode& node :
         {make_node(1, +1, 1, -1), make_node(2, +1, 3, -1), make_node(1, -1, 4, -1),
          make_node(2, +1, 5, +1)}) {
        NodeCoeffs a = perturbation_coeffs(node, p, 0.07);
        NodeCoeffs q = perturbation_coeffs_quadrature(node, p, 0.07);
        for (auto [x, y] : {std::pair{a.f_nn, q.f_nn}, {a.f_nm, q.f_nm}, {a.f_mn, q.f_mn},
                            {a.f_mm, q.f_mm}, {a.e_nn, q.e_nn}, {a.e_nm, q.e_nm},
                            {a.e_mn, q.e_mn}, {a.e_mm, q.e_mm}}) {
            CHECK(std::abs(x - y) < 1e-8 * std::max(1.0, std::abs(x)));
        }
    }
}

TEST_CASE("node splitting reduces to the mesh lines when unloaded") {
    StringParams p;
    for (const MeshNode& node : {make_node(1, +1, 1, -1), make_node(2, +1, 3, -1)}) {
        for (double d_om : {-0.05, 0.02, 0.1}) {
            auto [lp, lm] = node_split(node, p, d_om);
            double om = node.omega_star + d_om;
            Complex line_n(0, node.n * (1.0 + node.eps * om));
            Complex line_m(0, node.m * (1.0 + node.del * om));
            double e1 = std::min(std::abs(lp - line_n), std::abs(lp - line_m));
            double e2 = std::min(std::abs(lm - line_n), std::abs(lm - line_m));
            CHECK(e1 < 1e-13);
            CHECK(e2 < 1e-13);
        }
    }
}

TEST_CASE("node splitting specializes to the spring and damper formulas") {
    MeshNode node = make_node(1, -1, 1, +1);
    StringParams p;
    p.k = 0.3;
    for (double om : {0.0, 0.02, 0.05}) {
        auto [lp, lm] = node_split(node, p, om);
        auto [sp, sm] = spring_split(1, 0.3, om);
        CHECK(std::min(std::abs(lp - sp), std::abs(lp - sm)) < 1e-13);
        CHECK(std::min(std::abs(lm - sp), std::abs(lm - sm)) < 1e-13);
    }
    p = StringParams{};
    p.d = 0.3;
    for (double om : {0.0, 0.005, 0.02}) {
        auto [lp, lm] = node_split(node, p, om);
        DamperSplit ds = damper_bubble(1, 0.3, om);
        CHECK(std::min(std::abs(lp - ds.lambdas.first), std::abs(lp - ds.lambdas.second)) < 1e-13);
        CHECK(std::min(std::abs(lm - ds.lambdas.first), std::abs(lm - ds.lambdas.second)) < 1e-13);
    }
}

TEST_CASE("spring splitting") {
    auto [hi, lo] = spring_split(1, 0.3, 0.0);
    CHECK(std::abs(lo - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(hi - Complex(0, 1.0477464829275686)) < 1e-12);

    // spectral gap at rest halves when the mode number doubles
    auto gap = [](int n, double k) {
        auto [a, b] = spring_split(n, k, 0.0);
        return a.imag() - b.imag();
    };
    CHECK(gap(2, 0.3) == doctest::Approx(0.5 * gap(1, 0.3)).epsilon(1e-12));

    auto [p0, m0] = spring_split(3, 0.0, 0.4);
    CHECK(std::abs(p0 - Complex(0, 3 * 1.4)) < 1e-14);
    CHECK(std::abs(m0 - Complex(0, 3 * 0.6)) < 1e-14);

    // spring-only perturbation keeps every growth rate at zero
    for (double om : {0.0, 0.1, 0.3}) {
        auto [a, b] = spring_split(2, 0.4, om);
        CHECK(a.real() == 0.0);
        CHECK(b.real() == 0.0);
    }
    StringParams p;
    p.k = 0.3;
    StringSpectrumSlice slice = string_exact_eigs(p, {Complex(0, 1.0477464829275686)});
    CHECK(std::abs(slice.roots[0].lambda.real()) < 1e-9);
}

TEST_CASE("damper bubble") {
    DamperSplit ds = damper_bubble(1, 0.3, 0.0);
    CHECK(std::abs(ds.lambdas.first - Complex(0, 1)) < 1e-15);
    CHECK(std::abs(ds.lambdas.second - Complex(-0.3 / (2 * kPi), 1)) < 1e-15);

    CHECK(damper_bubble(2, 0.3, 0.0).omega_halfwidth ==
          doctest::Approx(0.5 * damper_bubble(1, 0.3, 0.0).omega_halfwidth).epsilon(1e-14));

    // ring relation inside, tangency at the origin, no growth anywhere
    double max_re = -1.0;
    for (double om = -0.05; om <= 0.05; om += 0.001) {
        DamperSplit s = damper_bubble(1, 0.3, om);
        for (Complex lam : {s.lambdas.first, s.lambdas.second}) {
            max_re = std::max(max_re, lam.real());
            CHECK(lam.real() <= 1e-15);
            if (s.circle_regime) {
                double lhs = (lam.real() + s.re_radius) * (lam.real() + s.re_radius) + om * om;
                CHECK(std::abs(lhs - s.re_radius * s.re_radius) < 1e-12);
                CHECK(lam.imag() == doctest::Approx(1.0).epsilon(1e-14));
            }
        }
    }
    CHECK(max_re == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("friction splitting closed forms") {
    FrictionSplit fs = friction_split(1, 0.3, 0.0);
    CHECK(std::abs(fs.lambdas.first - Complex(0, 1)) < 1e-15);   // no split at rest
    CHECK(std::abs(fs.lambdas.second - Complex(0, 1)) < 1e-15);

    // literal real/imaginary expressions match the complex split
    for (double om : {0.001, 0.01, 0.1, 0.5}) {
        fs = friction_split(1, 0.3, om);
        double inner = kPi * 1 * om * std::sqrt(4 * kPi * kPi * om * om + 0.09);
        double re_lit = std::sqrt(-2 * kPi * kPi * om * om + inner) / (2 * kPi);
        double im_lit = 1 + std::sqrt(2 * kPi * kPi * om * om + inner) / (2 * kPi);
        CHECK(fs.re.first == doctest::Approx(re_lit).epsilon(1e-12));
        CHECK(fs.im.first == doctest::Approx(im_lit).epsilon(1e-12));
        CHECK(std::abs(fs.lambdas.first - Complex(fs.re.first, fs.im.first)) < 1e-12);
        CHECK(std::abs(fs.lambdas.second - Complex(fs.re.second, fs.im.second)) < 1e-12);

        // recombination identity
        Complex c = (Complex(0, om) + 0.3 / (4 * kPi)) * (Complex(0, om) + 0.3 / (4 * kPi)) -
                    0.09 / (16 * kPi * kPi);
        for (Complex lam : {fs.lambdas.first, fs.lambdas.second}) {
            Complex lhs = (lam - Complex(0, 1)) * (lam - Complex(0, 1));
            CHECK(std::abs(lhs - c) < 1e-10);
        }
    }

    // saturation far from the node
    fs = friction_split(1, 0.3, 50.0);
    CHECK(std::abs(fs.re.first - friction_re_large_omega(1, 0.3, 50.0)) < 1e-8);

    // sqrt(omega) law: log-log slope of the first-order growth
    double s_lo = std::log(friction_split(1, 0.3, 1e-4).re.first);
    double s_hi = std::log(friction_split(1, 0.3, 1e-2).re.first);
    double slope = (s_hi - s_lo) / (std::log(1e-2) - std::log(1e-4));
    CHECK(slope == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("node splitting matches the exact roots at second order") {
    for (const MeshNode& node : {make_node(1, -1, 1, +1), make_node(2, +1, 3, -1)}) {
        std::array<double, 3> errs{};
        std::array<double, 3> scales{0.02, 0.01, 0.005};
        for (int i = 0; i < 3; ++i) {
            double s = scales[i];
            StringParams p;
            p.k = 0.4 * s;
            p.d = 0.3 * s;
            p.mu = 0.2 * s;
            double d_om = 0.6 * s;
            p.omega = node.omega_star + d_om;
            auto [lp, lm] = node_split(node, p, d_om);
            StringSpectrumSlice slice = string_exact_eigs(p, {lp, lm});
            errs[i] = std::max(nearest_root_dist(slice, lp), nearest_root_dist(slice, lm));
        }
        CHECK(errs[0] / errs[1] >= 3.2);
        CHECK(errs[0] / errs[1] <= 4.8);
        CHECK(errs[1] / errs[2] >= 3.2);
        CHECK(errs[1] / errs[2] <= 4.8);
    }
}

TEST_CASE("large-rotation friction law against the exact solver") {
    // away from mesh nodes and with a light load the saturation law holds
    double mu = 0.01, om = 0.42;
    FrictionSplit fs = friction_split(1, mu, om);
    StringParams p;
    p.mu = mu;
    p.omega = om;
    StringSpectrumSlice slice = string_exact_eigs(p, {fs.lambdas.first});
    REQUIRE(!slice.roots.empty());
    double exact_re = slice.roots[0].lambda.real();
    CHECK(std::abs(exact_re - fs.re.first) / fs.re.first < 0.02);
    CHECK(std::abs(fs.re.first - friction_re_large_omega(1, mu, om)) / fs.re.first < 0.001);
}

TEST_CASE("parameter validation") {
    StringParams p;
    p.omega = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.omega = 0.9999999;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = StringParams{};
    p.k = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = StringParams{};
    p.d = -0.1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = StringParams{};
    p.omega = 0.99;
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("eigenfunctions are travelling waves") {
    for (int n : {1, 3}) {
        for (int sign : {+1, -1}) {
            Complex u0 = string_eigenfunction(n, sign, 0.0);
            CHECK(std::abs(u0 - Complex(1, 0)) < 1e-15);
            Complex u = string_eigenfunction(n, sign, 0.7);
            CHECK(std::abs(u - std::exp(Complex(0, -sign * n * 0.7))) < 1e-15);
        }
    }
}
