#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "gyrospectra/quartic.hpp"  // Complex

namespace gyrospectra::rstring {

using gyrospectra::Complex;

/// Non-dimensional load on the rotating circular string: rotation speed,
/// point spring, point damper and frictional follower force at the eyelet.
struct StringParams {
    double omega = 0.0;  // |omega| <= 1 - 1e-6 (subcritical)
    double k = 0.0;      // spring, >= 0
    double d = 0.0;      // damper, >= 0
    double mu = 0.0;     // follower force

    void validate() const;  // throws std::invalid_argument
};

/// Crossing of mesh branches (n, eps) and (m, del): a double eigenvalue at
///   omega* = (n - m)/(m del - n eps),   lambda* = i n m (del - eps)/(m del - n eps).
struct MeshNode {
    int n;
    int eps;  // +1 or -1
    int m;
    int del;  // +1 or -1
    double omega_star;
    Complex lambda_star;
};

struct StringRoot {
    Complex lambda;
    double residual;  // normalized |det|
    bool converged;
    int seed_index;
};

struct StringSpectrumSlice {
    double omega;
    std::vector<StringRoot> roots;  // sorted by (Im, Re)
};

struct StringEig {
    int n;     // nonzero, |n| <= n_max
    int sign;  // +1 or -1, branch i n (1 + sign*omega)
    Complex lambda;
};

/// Unloaded spectrum: the straight mesh lines i n (1 +- omega).
std::vector<StringEig> unperturbed_string_eigs(int n_max, double omega);

/// Travelling-wave eigenfunction of branch (n, sign) at angle phi.
Complex string_eigenfunction(int n, int sign, double phi);

/// All mesh nodes with 1 <= n, m <= n_max and omega* in [omega_lo, omega_hi],
/// deduplicated over unordered branch pairs; the conjugate half of the
/// spectrum is implied by symmetry and not enumerated.
std::vector<MeshNode> mesh_nodes(int n_max, double omega_lo, double omega_hi);

/// Node of the crossing between branches (n, eps) and (m, del).
MeshNode make_node(int n, int eps, int m, int del);

/// Characteristic determinant of the loaded string, normalized by its term
/// scale so values are O(1) away from roots and overflow-free.  Vanishes
/// exactly on the mesh lines when the load is zero.
Complex char_det(Complex lambda, const StringParams& params);

/// Unnormalized determinant (entire in lambda); used by the Newton solver.
Complex char_det_raw(Complex lambda, const StringParams& params);

/// Complex-Newton refinement of char_det roots from the given seeds.
/// Centered finite-difference derivative, step 1e-7 (1+|lambda|), at most
/// 60 iterations, convergence when |step| < 1e-12 (1+|lambda|).  Duplicates
/// merge at 1e-8.  Non-convergence is recorded per root, not thrown.
StringSpectrumSlice string_exact_eigs(const StringParams& params,
                                      const std::vector<Complex>& seeds);

/// First-order coefficients at a node; closed forms.
struct NodeCoeffs {
    Complex f_nn, f_nm, f_mn, f_mm;
    Complex e_nn, e_nm, e_mn, e_mm;
};
NodeCoeffs perturbation_coeffs(const MeshNode& node, const StringParams& params,
                               double d_omega);

/// Same coefficients through numerical quadrature of the defining integrals
/// over the eigenfunctions (independent route; trapezoid on the periodic
/// integrands is exact once n_quad exceeds the trig degree).
NodeCoeffs perturbation_coeffs_quadrature(const MeshNode& node, const StringParams& params,
                                          double d_omega, int n_quad = 512);

/// Two-branch splitting of the node double eigenvalue at omega* + d_omega.
std::pair<Complex, Complex> node_split(const MeshNode& node, const StringParams& params,
                                       double d_omega);

/// Branch-continued sweep of node_split over absolute omega samples.
struct NodeBranchPair {
    std::vector<Complex> plus;
    std::vector<Complex> minus;
};
NodeBranchPair node_split_trajectory(const MeshNode& node, const StringParams& params,
                                     const std::vector<double>& omegas);

/// Spring-only splitting at the omega = 0 node of mode n:
///   lambda = i n + i k/(4 pi n) +- i sqrt(n^2 omega^2 + k^2/(16 pi^2 n^2));
/// the minus branch passes through (0, i n).
std::pair<Complex, Complex> spring_split(int n, double k, double omega);

struct DamperSplit {
    std::pair<Complex, Complex> lambdas;
    double re_center;        // -d/(4 pi)
    double re_radius;        // d/(4 pi): Re traces (Re + d/4pi)^2 + n^2 w^2 = (d/4pi)^2
    double omega_halfwidth;  // d/(4 pi n)
    bool circle_regime;      // inside the ring, Im pinned at n
};
DamperSplit damper_bubble(int n, double d, double omega);

struct FrictionSplit {
    std::pair<Complex, Complex> lambdas;
    std::pair<double, double> re;  // +x, -x
    std::pair<double, double> im;  // n + y, n - y
};
/// Friction-only splitting at the omega = 0 node; Re/Im are the closed
/// real-form decomposition of lambda = i n +- sqrt((i n w + mu/4pi)^2 - mu^2/16pi^2).
FrictionSplit friction_split(int n, double mu, double omega);

/// sqrt(|omega|) laws at the node and the saturation law far from it.
double friction_re_small_omega(int n, double mu, double omega);   // sqrt(pi n mu |w|)/(2 pi)
double friction_im_small_omega(int n, double mu, double omega);   // n + same radical
double friction_re_large_omega(int n, double mu, double omega);   // mu/4pi - mu^3/(128 pi^3 n^2 w^2)

}  // namespace gyrospectra::rstring
