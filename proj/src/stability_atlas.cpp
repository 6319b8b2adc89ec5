#include "gyrospectra/stability_atlas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace gyrospectra {

namespace {

double env_thread_cap() {
    if (const char* v = std::getenv("GYROSPECTRA_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(v, &end, 10);
        if (end != v && n >= 1) return static_cast<double>(n);
    }
    return 0.0;
}

unsigned scan_threads() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    double cap = env_thread_cap();
    if (cap >= 1.0) return static_cast<unsigned>(std::min<double>(cap, hw));
    return hw;
}

double oracle_max_re(const GyroSystem2D& sys, const ParamPoint& p) {
    QuarticSpectrum s = solve_quartic(char_poly(sys, p));
    double m = s.roots[0].real();
    for (const auto& r : s.roots) m = std::max(m, r.real());
    return m;
}

}  // namespace

CriticalOmega omega_cr_mixed(const GyroSystem2D& sys, double delta, double nu) {
    double beta = sys.beta();
    double trD = sys.tr_d(), detD = sys.det_d();
    nu *= sys.nu_scale();

    if (trD == 0.0 && nu == 0.0) {
        // The generic formula collapses to 0 * (indeterminate); the
        // indefinite-damping expression is exact first order here.
        if (detD < 0.0) return {0.5 * std::abs(delta) * std::sqrt(-detD), CriticalFlag::None};
        return {std::nullopt, CriticalFlag::None};
    }
    if (trD == 0.0) {
        // Formula degenerates to 0, but there is no first-order stability
        // boundary at all (delta trD > 0 is unattainable).
        return {0.0, CriticalFlag::DegenerateTrD};
    }
    double num = nu * nu - delta * delta * beta * beta * detD;
    double den = nu * nu - delta * delta * beta * beta * (0.25 * trD * trD);
    if (den == 0.0) return {std::nullopt, CriticalFlag::PoleAtTrD};
    double radicand = -num / den;
    if (radicand < 0.0) return {std::nullopt, CriticalFlag::None};
    return {std::abs(delta * trD / 4.0) * std::sqrt(radicand), CriticalFlag::None};
}

FreqBand freq_band(const GyroSystem2D& sys, double delta, double nu) {
    double beta = sys.beta();
    double trD = sys.tr_d(), detD = sys.det_d();
    double nu_eff = nu * sys.nu_scale();

    if (nu_eff == 0.0) return {std::make_pair(beta, beta), CriticalFlag::None};
    if (trD == 0.0) {
        // Degenerate case: bound the unstable frequencies by the peak
        // growth rate instead.
        double w = max_re_at_zero(sys, delta, nu);
        return {std::make_pair(beta - w, beta + w), CriticalFlag::DegenerateTrD};
    }
    double num = nu_eff * nu_eff - delta * delta * beta * beta * detD;
    double den = nu_eff * nu_eff - delta * delta * beta * beta * (0.25 * trD * trD);
    if (den == 0.0) return {std::nullopt, CriticalFlag::PoleAtTrD};
    double radicand = -num / den;
    if (radicand < 0.0) return {std::nullopt, CriticalFlag::None};
    double w = std::abs(nu_eff) / (2.0 * beta) * std::sqrt(radicand);
    return {std::make_pair(beta - w, beta + w), CriticalFlag::None};
}

std::vector<double> boundary_nu(const GyroSystem2D& sys, double delta, double omega) {
    double beta = sys.beta();
    double trD = sys.tr_d(), detD = sys.det_d();
    double om = omega * sys.omega_scale();

    double num = delta * delta * detD + 4.0 * om * om;
    double den = delta * delta * trD * trD + 16.0 * om * om;
    if (num < 0.0) return {};
    if (den == 0.0) return {0.0};
    double v = std::abs(delta * beta * trD) * std::sqrt(num / den);
    if (v == 0.0) return {0.0};
    return {-v, v};
}

BoundarySection boundary_section(const GyroSystem2D& sys, double omega, int n_samples,
                                 double delta_max) {
    if (n_samples < 16) throw std::invalid_argument("boundary_section: n_samples must be >= 16");
    double beta = sys.beta();
    double trD = sys.tr_d(), detD = sys.det_d();
    double om = omega * sys.omega_scale();

    BoundarySection sec;
    sec.omega = omega;
    sec.tangent_slopes = {beta * trD / 2.0, -beta * trD / 2.0};
    sec.topology = detD < 0.0   ? SectionTopology::Figure8
                   : detD > 0.0 ? SectionTopology::TwoCrossingCurves
                                : SectionTopology::TangentPair;
    double extent = delta_max;
    if (detD < 0.0) extent = std::min(extent, 2.0 * std::abs(om) / std::sqrt(-detD));
    sec.delta_extent = extent;

    sec.points.reserve(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        double delta = -extent + 2.0 * extent * i / (n_samples - 1);
        auto nus = boundary_nu(sys, delta, omega);
        SectionPoint pt{delta, 0.0, 0.0};
        if (nus.size() == 2) {
            pt.nu_plus = nus[1];
            pt.nu_minus = nus[0];
        }
        sec.points.push_back(pt);
    }
    return sec;
}

double max_re_at_zero(const GyroSystem2D& sys, double delta, double nu) {
    double beta = sys.beta();
    double nu_eff = nu * sys.nu_scale();
    SymEigs mu = sym_eigs_2x2(sys.damping());
    double r = 0.25 * (mu.hi - mu.lo) * delta;
    return -0.25 * (mu.hi + mu.lo) * delta +
           std::sqrt(r * r + nu_eff * nu_eff / (4.0 * beta * beta));
}

std::size_t StabilityMap::cells() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.count;
    return n;
}

double StabilityMap::axis_value(std::size_t axis, std::size_t index) const {
    const GridAxis& a = axes[axis];
    if (a.count == 1) return a.lo;
    return a.lo + (a.hi - a.lo) * static_cast<double>(index) / static_cast<double>(a.count - 1);
}

namespace {

void apply_axis(ParamPoint& p, ScanParam which, double v) {
    switch (which) {
        case ScanParam::Omega: p.omega = v; break;
        case ScanParam::Delta: p.delta = v; break;
        case ScanParam::Kappa: p.kappa = v; break;
        case ScanParam::Nu: p.nu = v; break;
    }
}

StabilityVerdict asymptotic_verdict(const GyroSystem2D& sys, const ParamPoint& p, double tol) {
    auto [lp, lm] = asymptotic_eigs(sys, p);
    QuarticSpectrum s;
    s.roots = {lp, lm, std::conj(lp), std::conj(lm)};
    s.residuals = {0.0, 0.0, 0.0, 0.0};
    s.labels = {"a+", "a-", "c+", "c-"};
    return classify(s, tol);
}

}  // namespace

StabilityMap scan_map(const GyroSystem2D& sys, const ParamPoint& base,
                      const std::vector<GridAxis>& axes, Provenance provenance, double tol,
                      std::size_t cell_budget) {
    if (axes.size() < 2 || axes.size() > 3)
        throw std::invalid_argument("scan_map: need two or three axes");
    for (const auto& a : axes)
        if (a.count < 2) throw std::invalid_argument("scan_map: axis resolution must be >= 2");

    StabilityMap map;
    map.axes = axes;
    map.provenance = provenance;
    std::size_t n = map.cells();
    if (n > cell_budget) throw GridTooLarge("scan_map: grid exceeds cell budget");
    map.kinds.resize(n);
    map.max_res.resize(n);

    std::size_t inner = n / axes[0].count;
    auto run_rows = [&](std::size_t row_begin, std::size_t row_end) {
        for (std::size_t r = row_begin; r < row_end; ++r) {
            for (std::size_t j = 0; j < inner; ++j) {
                std::size_t idx = r * inner + j;
                ParamPoint p = base;
                std::size_t rem = idx;
                for (std::size_t ax = axes.size(); ax-- > 0;) {
                    std::size_t k = rem % axes[ax].count;
                    rem /= axes[ax].count;
                    apply_axis(p, axes[ax].param, map.axis_value(ax, k));
                }
                StabilityVerdict v = provenance == Provenance::Oracle
                                         ? classify(solve_quartic(char_poly(sys, p)), tol)
                                         : asymptotic_verdict(sys, p, tol);
                map.kinds[idx] = v.kind;
                map.max_res[idx] = v.max_re;
            }
        }
    };

    unsigned nthreads = std::min<unsigned>(scan_threads(), static_cast<unsigned>(axes[0].count));
    if (nthreads <= 1) {
        run_rows(0, axes[0].count);
    } else {
        std::vector<std::thread> pool;
        std::size_t rows = axes[0].count;
        std::size_t chunk = (rows + nthreads - 1) / nthreads;
        for (unsigned t = 0; t < nthreads; ++t) {
            std::size_t b = t * chunk;
            std::size_t e = std::min(rows, b + chunk);
            if (b >= e) break;
            pool.emplace_back(run_rows, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return map;
}

double find_flutter_boundary(const GyroSystem2D& sys, double delta, double nu,
                             std::pair<double, double> bracket) {
    // Growth rates can touch zero without crossing (trD = 0), so bisect on
    // a strictly positive threshold well below any tolerance of interest.
    constexpr double kThresh = 1e-12;
    ParamPoint p;
    p.delta = delta;
    p.nu = nu;

    auto unstable = [&](double om) {
        p.omega = om;
        return oracle_max_re(sys, p) > kThresh;
    };
    double a = bracket.first, b = bracket.second;
    bool pa = unstable(a), pb = unstable(b);
    if (pa == pb)
        throw NoSignChange("find_flutter_boundary: max Re does not change sign over bracket");
    for (int it = 0; it < 200; ++it) {
        double m = 0.5 * (a + b);
        if (unstable(m) == pa)
            a = m;
        else
            b = m;
        if (b - a <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(b)))
            break;
    }
    return 0.5 * (a + b);
}

std::vector<Segment> marching_squares(const std::vector<std::uint8_t>& field,
                                      const std::vector<double>& xs,
                                      const std::vector<double>& ys) {
    const std::size_t nx = xs.size(), ny = ys.size();
    if (field.size() != nx * ny) throw std::invalid_argument("marching_squares: size mismatch");
    std::vector<Segment> segs;
    auto at = [&](std::size_t i, std::size_t j) { return field[i * ny + j] != 0; };

    for (std::size_t i = 0; i + 1 < nx; ++i) {
        for (std::size_t j = 0; j + 1 < ny; ++j) {
            int code = (at(i, j) << 0) | (at(i + 1, j) << 1) | (at(i + 1, j + 1) << 2) |
                       (at(i, j + 1) << 3);
            if (code == 0 || code == 15) continue;
            double x0 = xs[i], x1 = xs[i + 1], y0 = ys[j], y1 = ys[j + 1];
            double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
            // Edge midpoints: bottom (y0), right (x1), top (y1), left (x0).
            double bx = xm, by = y0;
            double rx = x1, ry = ym;
            double tx = xm, ty = y1;
            double lx = x0, ly = ym;
            switch (code) {
                case 1: case 14: segs.push_back({lx, ly, bx, by}); break;
                case 2: case 13: segs.push_back({bx, by, rx, ry}); break;
                case 3: case 12: segs.push_back({lx, ly, rx, ry}); break;
                case 4: case 11: segs.push_back({tx, ty, rx, ry}); break;
                case 6: case 9:  segs.push_back({bx, by, tx, ty}); break;
                case 7: case 8:  segs.push_back({lx, ly, tx, ty}); break;
                case 5:  // saddle; fixed convention
                    segs.push_back({lx, ly, bx, by});
                    segs.push_back({tx, ty, rx, ry});
                    break;
                case 10:
                    segs.push_back({bx, by, rx, ry});
                    segs.push_back({lx, ly, tx, ty});
                    break;
                default: break;
            }
        }
    }
    return segs;
}

ExactTrajectory exact_trajectory(const GyroSystem2D& sys, const ParamPoint& base,
                                 const std::vector<double>& omegas) {
    ExactTrajectory tr;
    tr.omegas = omegas;
    for (auto& b : tr.branches) b.reserve(omegas.size());

    std::array<int, 4> perm_best{0, 1, 2, 3};
    for (std::size_t s = 0; s < omegas.size(); ++s) {
        ParamPoint p = base;
        p.omega = omegas[s];
        QuarticSpectrum spec = solve_quartic(char_poly(sys, p));
        tr.sample_ok.push_back(spec.converged ? 1 : 0);
        tr.converged = tr.converged && spec.converged;

        std::array<Complex, 4> target;
        if (s == 0) {
            QuarticSpectrum mesh = unperturbed_spectrum(sys.beta(), p.omega * sys.omega_scale());
            target = mesh.roots;
            tr.labels = mesh.labels;
        } else {
            for (int i = 0; i < 4; ++i) target[i] = tr.branches[i].back();
        }

        std::array<int, 4> perm{0, 1, 2, 3};
        double best = std::numeric_limits<double>::infinity();
        do {
            double cost = 0.0;
            for (int i = 0; i < 4; ++i) cost += std::abs(spec.roots[perm[i]] - target[i]);
            if (cost < best) {
                best = cost;
                perm_best = perm;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (int i = 0; i < 4; ++i) tr.branches[i].push_back(spec.roots[perm_best[i]]);
    }
    return tr;
}

}  // namespace gyrospectra
