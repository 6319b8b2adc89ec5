#pragma once

#include <array>
#include <complex>
#include <string>

#include "gyrospectra/gyro_system.hpp"

namespace gyrospectra {

using Complex = std::complex<double>;

/// Monic real quartic a4*x^4 + a3*x^3 + a2*x^2 + a1*x + a0, a4 == 1.
struct QuarticPoly {
    std::array<double, 5> c;  // {a4, a3, a2, a1, a0}

    double a4() const { return c[0]; }
    double a3() const { return c[1]; }
    double a2() const { return c[2]; }
    double a1() const { return c[3]; }
    double a0() const { return c[4]; }

    Complex eval(Complex x) const;
    Complex deriv(Complex x) const;
    double coeff_scale() const;  // max(1, max |a_i|)
};

/// Four roots with per-root residuals |P(root)| and branch tags.
/// Tags are the mesh-branch names at the unperturbed limit and plain
/// continuation indices r1..r4 otherwise.
struct QuarticSpectrum {
    std::array<Complex, 4> roots;
    std::array<double, 4> residuals;
    std::array<std::string, 4> labels;
    bool converged = true;
};

enum class StabilityKind { AsymptoticallyStable, Marginal, Flutter, Divergence };

struct StabilityVerdict {
    StabilityKind kind;
    double max_re;  // NaN when the method does not extract roots
    double tol;
};

const char* to_string(StabilityKind k);

/// Coefficients of the characteristic polynomial of the 2-DOF system at p.
QuarticPoly char_poly(const GyroSystem2D& sys, const ParamPoint& p);

/// Companion-matrix eigenvalues polished by Newton iteration.  Polynomials
/// with zero odd coefficients are solved as quadratics in x^2, which keeps
/// the double roots of the reversible case at full precision.  `converged`
/// is cleared when polishing cannot push a residual below
/// 1e-9 * coeff_scale within 50 iterations; roots and residuals are still
/// reported.
QuarticSpectrum solve_quartic(const QuarticPoly& poly);

/// Spectrum-based classification.  Flutter wins over Divergence when both
/// kinds of unstable root are present.
StabilityVerdict classify(const QuarticSpectrum& spec, double tol = 1e-8);

/// Hurwitz-determinant test; no root extraction.  Guaranteed to agree with
/// classify(solve_quartic(...)) on "asymptotically stable vs not".  The
/// unstable sub-kind is best effort (a0 < 0 forces a real positive root)
/// and max_re is NaN.
StabilityVerdict routh_hurwitz(const QuarticPoly& poly);

/// The four exact eigenvalues of the unperturbed system: straight mesh
/// lines +-i*beta +- i*omega, labelled p+, n+, p-, n-.
QuarticSpectrum unperturbed_spectrum(double beta, double omega);

}  // namespace gyrospectra
