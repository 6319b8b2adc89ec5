#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gyrospectra/node_perturbation.hpp"

namespace gyrospectra {

struct NoSignChange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GridTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CriticalFlag { None, PoleAtTrD, DegenerateTrD };

struct CriticalOmega {
    std::optional<double> value;
    CriticalFlag flag = CriticalFlag::None;
};

struct FreqBand {
    std::optional<std::pair<double, double>> band;  // (lo, hi), symmetric about beta
    CriticalFlag flag = CriticalFlag::None;
};

/// Critical gyroscopic parameter of the mixed damping/circulatory stability
/// boundary (kappa = 0).  Absent when the radicand is negative (no
/// first-order boundary).  trD = 0 with nu = 0 routes to the
/// indefinite-damping formula (delta/2) sqrt(-detD); trD = 0 with nu != 0
/// degenerates the formula to 0 and is flagged.
CriticalOmega omega_cr_mixed(const GyroSystem2D& sys, double delta, double nu);

/// Frequency band holding the unstable-mode frequencies for |omega| below
/// the critical value.  Present under the same radicand condition; nu = 0
/// degenerates to {beta, beta}.  In the flagged trD = 0 case the band is
/// the max-growth-based bound beta +- max_re_at_zero.
FreqBand freq_band(const GyroSystem2D& sys, double delta, double nu);

/// Circulatory magnitudes on the stability boundary at fixed delta and
/// omega (kappa = 0).  0, 1 or 2 values, ascending.
std::vector<double> boundary_nu(const GyroSystem2D& sys, double delta, double omega);

enum class SectionTopology { TwoCrossingCurves, Figure8, TangentPair };

struct SectionPoint {
    double delta;
    double nu_plus;
    double nu_minus;
};

/// Fixed-omega cross-section of the stability boundary surface in the
/// (delta, nu) plane.
struct BoundarySection {
    double omega;
    std::vector<SectionPoint> points;
    std::pair<double, double> tangent_slopes;  // +- beta trD / 2
    SectionTopology topology;
    double delta_extent;  // half-width of the sampled delta interval
};

/// Samples the boundary curve; for det D < 0 the curve closes at
/// delta^2 = -4 omega^2/detD and the section is a figure-8.
BoundarySection boundary_section(const GyroSystem2D& sys, double omega, int n_samples,
                                 double delta_max = 1.0);

/// Largest first-order growth rate, attained at omega = 0 (kappa = 0).
double max_re_at_zero(const GyroSystem2D& sys, double delta, double nu);

enum class ScanParam { Omega, Delta, Kappa, Nu };

struct GridAxis {
    ScanParam param;
    double lo;
    double hi;
    std::size_t count;  // >= 2
};

enum class Provenance { Oracle, Asymptotic };

/// Dense verdict grid over two or three scan axes.  Values are stored
/// row-major with the last axis fastest.
struct StabilityMap {
    std::vector<GridAxis> axes;
    std::vector<StabilityKind> kinds;
    std::vector<double> max_res;
    Provenance provenance;

    std::size_t cells() const;
    double axis_value(std::size_t axis, std::size_t index) const;
};

/// Classifies every grid cell, either with the exact quartic roots
/// (Provenance::Oracle) or with the first-order node formulas
/// (Provenance::Asymptotic).  Rows are evaluated in parallel
/// (GYROSPECTRA_THREADS caps the pool); the result is independent of the
/// schedule.  Throws GridTooLarge above cell_budget.
StabilityMap scan_map(const GyroSystem2D& sys, const ParamPoint& base,
                      const std::vector<GridAxis>& axes, Provenance provenance,
                      double tol = 1e-8, std::size_t cell_budget = 10'000'000);

/// Bisection on the exact max Re lambda over an omega bracket.  The sign
/// predicate is max_re > 1e-12, which also resolves boundaries the growth
/// rate only touches from above (trD = 0).  Throws NoSignChange.
double find_flutter_boundary(const GyroSystem2D& sys, double delta, double nu,
                             std::pair<double, double> bracket);

/// Line segment in axis coordinates.
struct Segment {
    double x0, y0, x1, y1;
};

/// Marching-squares boundary of a binary field sampled on a 2-D grid
/// (xs.size() * ys.size(), row-major with y fastest).  Crossings are placed
/// at cell-edge midpoints.
std::vector<Segment> marching_squares(const std::vector<std::uint8_t>& field,
                                      const std::vector<double>& xs,
                                      const std::vector<double>& ys);

/// Exact eigenvalue trajectories over an omega sweep with deterministic
/// branch continuation (4-way assignment, cheapest total move).  Branches
/// start labelled against the unperturbed mesh at the first sample.
struct ExactTrajectory {
    std::vector<double> omegas;
    std::array<std::vector<Complex>, 4> branches;
    std::array<std::string, 4> labels;
    std::vector<std::uint8_t> sample_ok;  // per-sample solver convergence
    bool converged = true;
};
ExactTrajectory exact_trajectory(const GyroSystem2D& sys, const ParamPoint& base,
                                 const std::vector<double>& omegas);

}  // namespace gyrospectra
