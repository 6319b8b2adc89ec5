#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gyrospectra/cli.hpp"
#include "gyrospectra/rotating_string.hpp"

namespace py = pybind11;
using namespace gyrospectra;
namespace rs = gyrospectra::rstring;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectra and stability of perturbed two-dimensional gyroscopic systems "
              "and of a rotating circular string with a pointwise load";

    // ---------------------------------------------------------------- core
    py::class_<GyroSystem2D>(m, "GyroSystem2D")
        .def(py::init<double, const Eigen::Matrix2d&, const Eigen::Matrix2d&>(), py::arg("beta"),
             py::arg("D"), py::arg("K"))
        .def(py::init<double, const Eigen::Matrix2d&, const Eigen::Matrix2d&,
                      const Eigen::Matrix2d&, const Eigen::Matrix2d&>(),
             py::arg("beta"), py::arg("G"), py::arg("D"), py::arg("K"), py::arg("N"))
        .def_property_readonly("beta", &GyroSystem2D::beta)
        .def_property_readonly("damping", &GyroSystem2D::damping)
        .def_property_readonly("stiffness", &GyroSystem2D::stiffness)
        .def_property_readonly("omega_scale", &GyroSystem2D::omega_scale)
        .def_property_readonly("nu_scale", &GyroSystem2D::nu_scale);

    py::class_<ParamPoint>(m, "ParamPoint")
        .def(py::init([](double omega, double delta, double kappa, double nu) {
                 return ParamPoint{omega, delta, kappa, nu};
             }),
             py::arg("omega") = 0.0, py::arg("delta") = 0.0, py::arg("kappa") = 0.0,
             py::arg("nu") = 0.0)
        .def_readwrite("omega", &ParamPoint::omega)
        .def_readwrite("delta", &ParamPoint::delta)
        .def_readwrite("kappa", &ParamPoint::kappa)
        .def_readwrite("nu", &ParamPoint::nu);

    py::class_<QuarticPoly>(m, "QuarticPoly")
        .def(py::init([](std::array<double, 5> c) { return QuarticPoly{c}; }), py::arg("coeffs"))
        .def_readonly("coeffs", &QuarticPoly::c)
        .def("eval", &QuarticPoly::eval);

    py::class_<QuarticSpectrum>(m, "QuarticSpectrum")
        .def_readonly("roots", &QuarticSpectrum::roots)
        .def_readonly("residuals", &QuarticSpectrum::residuals)
        .def_readonly("labels", &QuarticSpectrum::labels)
        .def_readonly("converged", &QuarticSpectrum::converged);

    py::enum_<StabilityKind>(m, "StabilityKind")
        .value("AsymptoticallyStable", StabilityKind::AsymptoticallyStable)
        .value("Marginal", StabilityKind::Marginal)
        .value("Flutter", StabilityKind::Flutter)
        .value("Divergence", StabilityKind::Divergence);

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_readonly("kind", &StabilityVerdict::kind)
        .def_readonly("max_re", &StabilityVerdict::max_re)
        .def_readonly("tol", &StabilityVerdict::tol);

    m.def("char_poly", &char_poly, py::arg("sys"), py::arg("p"));
    m.def("solve_quartic", &solve_quartic, py::arg("poly"));
    m.def("classify", &classify, py::arg("spectrum"), py::arg("tol") = 1e-8);
    m.def("routh_hurwitz", &routh_hurwitz, py::arg("poly"));
    m.def("unperturbed_spectrum", &unperturbed_spectrum, py::arg("beta"), py::arg("omega"));

    // ------------------------------------------------------ node splitting
    py::class_<NodeBasis>(m, "NodeBasis")
        .def_readonly("u1", &NodeBasis::u1)
        .def_readonly("u2", &NodeBasis::u2)
        .def_readonly("f", &NodeBasis::f)
        .def_readonly("eps", &NodeBasis::eps);

    py::class_<SplitC>(m, "SplitC")
        .def_readonly("value", &SplitC::value)
        .def_readonly("re", &SplitC::re)
        .def_readonly("im", &SplitC::im)
        .def_readonly("mu1", &SplitC::mu1)
        .def_readonly("mu2", &SplitC::mu2)
        .def_readonly("rho1", &SplitC::rho1)
        .def_readonly("rho2", &SplitC::rho2);

    py::class_<BubbleGeometry>(m, "BubbleGeometry")
        .def_readonly("radius", &BubbleGeometry::radius)
        .def_readonly("depth", &BubbleGeometry::depth)
        .def_readonly("exceptional_omegas", &BubbleGeometry::exceptional_omegas)
        .def_readonly("exceptional_re", &BubbleGeometry::exceptional_re)
        .def_readonly("omega_cr", &BubbleGeometry::omega_cr)
        .def_readonly("latent", &BubbleGeometry::latent)
        .def_readonly("degenerate", &BubbleGeometry::degenerate);

    py::enum_<Definiteness>(m, "Definiteness")
        .value("Definite", Definiteness::Definite)
        .value("Semidefinite", Definiteness::Semidefinite)
        .value("Indefinite", Definiteness::Indefinite);

    py::class_<ConservativeHyperbola>(m, "ConservativeHyperbola")
        .def_readonly("asymptote_center", &ConservativeHyperbola::asymptote_center)
        .def_readonly("beta1", &ConservativeHyperbola::beta1)
        .def_readonly("beta2", &ConservativeHyperbola::beta2)
        .def_readonly("cls", &ConservativeHyperbola::cls);

    m.def("node_basis", &node_basis, py::arg("sys"), py::arg("p"));
    m.def("split_c", &split_c, py::arg("sys"), py::arg("p"));
    m.def("asymptotic_eigs", &asymptotic_eigs, py::arg("sys"), py::arg("p"));
    m.def(
        "re_im_curves",
        [](const GyroSystem2D& sys, const ParamPoint& p) {
            ReImPair r = re_im_curves(sys, p);
            return std::make_pair(r.re, r.im);
        },
        py::arg("sys"), py::arg("p"));
    m.def("conservative_hyperbola", &conservative_hyperbola, py::arg("sys"), py::arg("kappa"));
    m.def("dissipative_bubble", &dissipative_bubble, py::arg("sys"), py::arg("delta"));
    m.def(
        "circulatory_split",
        [](double beta, double omega, double nu) {
            std::vector<std::pair<std::string, Complex>> out;
            for (const auto& e : circulatory_split(beta, omega, nu))
                out.emplace_back(e.label, e.lambda);
            return out;
        },
        py::arg("beta"), py::arg("omega"), py::arg("nu"));
    m.def("complex_trajectory_residual", &complex_trajectory_residual, py::arg("lambda_"),
          py::arg("sys"), py::arg("p"));
    m.def(
        "asymptotic_trajectory",
        [](const GyroSystem2D& sys, const ParamPoint& base, const std::vector<double>& omegas) {
            BranchPair b = asymptotic_trajectory(sys, base, omegas);
            return std::make_pair(b.plus, b.minus);
        },
        py::arg("sys"), py::arg("base"), py::arg("omegas"));

    // --------------------------------------------------------------- atlas
    py::enum_<CriticalFlag>(m, "CriticalFlag")
        .value("NONE", CriticalFlag::None)
        .value("PoleAtTrD", CriticalFlag::PoleAtTrD)
        .value("DegenerateTrD", CriticalFlag::DegenerateTrD);

    py::class_<CriticalOmega>(m, "CriticalOmega")
        .def_readonly("value", &CriticalOmega::value)
        .def_readonly("flag", &CriticalOmega::flag);

    py::class_<FreqBand>(m, "FreqBand")
        .def_readonly("band", &FreqBand::band)
        .def_readonly("flag", &FreqBand::flag);

    py::enum_<SectionTopology>(m, "SectionTopology")
        .value("TwoCrossingCurves", SectionTopology::TwoCrossingCurves)
        .value("Figure8", SectionTopology::Figure8)
        .value("TangentPair", SectionTopology::TangentPair);

    py::class_<SectionPoint>(m, "SectionPoint")
        .def_readonly("delta", &SectionPoint::delta)
        .def_readonly("nu_plus", &SectionPoint::nu_plus)
        .def_readonly("nu_minus", &SectionPoint::nu_minus);

    py::class_<BoundarySection>(m, "BoundarySection")
        .def_readonly("omega", &BoundarySection::omega)
        .def_readonly("points", &BoundarySection::points)
        .def_readonly("tangent_slopes", &BoundarySection::tangent_slopes)
        .def_readonly("topology", &BoundarySection::topology)
        .def_readonly("delta_extent", &BoundarySection::delta_extent);

    py::enum_<ScanParam>(m, "ScanParam")
        .value("Omega", ScanParam::Omega)
        .value("Delta", ScanParam::Delta)
        .value("Kappa", ScanParam::Kappa)
        .value("Nu", ScanParam::Nu);

    py::class_<GridAxis>(m, "GridAxis")
        .def(py::init([](ScanParam param, double lo, double hi, std::size_t count) {
                 return GridAxis{param, lo, hi, count};
             }),
             py::arg("param"), py::arg("lo"), py::arg("hi"), py::arg("count"))
        .def_readwrite("param", &GridAxis::param)
        .def_readwrite("lo", &GridAxis::lo)
        .def_readwrite("hi", &GridAxis::hi)
        .def_readwrite("count", &GridAxis::count);

    py::enum_<Provenance>(m, "Provenance")
        .value("Oracle", Provenance::Oracle)
        .value("Asymptotic", Provenance::Asymptotic);

    py::class_<StabilityMap>(m, "StabilityMap")
        .def_readonly("axes", &StabilityMap::axes)
        .def_readonly("kinds", &StabilityMap::kinds)
        .def_readonly("max_res", &StabilityMap::max_res)
        .def_readonly("provenance", &StabilityMap::provenance)
        .def("cells", &StabilityMap::cells)
        .def("axis_value", &StabilityMap::axis_value);

    m.def("omega_cr_mixed", &omega_cr_mixed, py::arg("sys"), py::arg("delta"), py::arg("nu"));
    m.def("freq_band", &freq_band, py::arg("sys"), py::arg("delta"), py::arg("nu"));
    m.def("boundary_nu", &boundary_nu, py::arg("sys"), py::arg("delta"), py::arg("omega"));
    m.def("boundary_section", &boundary_section, py::arg("sys"), py::arg("omega"),
          py::arg("n_samples"), py::arg("delta_max") = 1.0);
    m.def("max_re_at_zero", &max_re_at_zero, py::arg("sys"), py::arg("delta"), py::arg("nu"));
    m.def("scan_map", &scan_map, py::arg("sys"), py::arg("base"), py::arg("axes"),
          py::arg("provenance"), py::arg("tol") = 1e-8,
          py::arg("cell_budget") = std::size_t{10'000'000});
    m.def("find_flutter_boundary", &find_flutter_boundary, py::arg("sys"), py::arg("delta"),
          py::arg("nu"), py::arg("bracket"));
    m.def(
        "exact_trajectory",
        [](const GyroSystem2D& sys, const ParamPoint& base, const std::vector<double>& omegas) {
            ExactTrajectory t = exact_trajectory(sys, base, omegas);
            return py::make_tuple(t.omegas, t.branches, t.labels, t.converged);
        },
        py::arg("sys"), py::arg("base"), py::arg("omegas"));

    // -------------------------------------------------------------- string
    py::class_<rs::StringParams>(m, "StringParams")
        .def(py::init([](double omega, double k, double d, double mu) {
                 rs::StringParams p{omega, k, d, mu};
                 p.validate();
                 return p;
             }),
             py::arg("omega") = 0.0, py::arg("k") = 0.0, py::arg("d") = 0.0, py::arg("mu") = 0.0)
        .def_readwrite("omega", &rs::StringParams::omega)
        .def_readwrite("k", &rs::StringParams::k)
        .def_readwrite("d", &rs::StringParams::d)
        .def_readwrite("mu", &rs::StringParams::mu);

    py::class_<rs::MeshNode>(m, "MeshNode")
        .def_readonly("n", &rs::MeshNode::n)
        .def_readonly("eps", &rs::MeshNode::eps)
        .def_readonly("m", &rs::MeshNode::m)
        .def_readonly("del_", &rs::MeshNode::del)
        .def_readonly("omega_star", &rs::MeshNode::omega_star)
        .def_readonly("lambda_star", &rs::MeshNode::lambda_star);

    py::class_<rs::StringRoot>(m, "StringRoot")
        .def_readonly("lambda_", &rs::StringRoot::lambda)
        .def_readonly("residual", &rs::StringRoot::residual)
        .def_readonly("converged", &rs::StringRoot::converged)
        .def_readonly("seed_index", &rs::StringRoot::seed_index);

    py::class_<rs::StringSpectrumSlice>(m, "StringSpectrumSlice")
        .def_readonly("omega", &rs::StringSpectrumSlice::omega)
        .def_readonly("roots", &rs::StringSpectrumSlice::roots);

    py::class_<rs::StringEig>(m, "StringEig")
        .def_readonly("n", &rs::StringEig::n)
        .def_readonly("sign", &rs::StringEig::sign)
        .def_readonly("lambda_", &rs::StringEig::lambda);

    py::class_<rs::NodeCoeffs>(m, "NodeCoeffs")
        .def_readonly("f_nn", &rs::NodeCoeffs::f_nn)
        .def_readonly("f_nm", &rs::NodeCoeffs::f_nm)
        .def_readonly("f_mn", &rs::NodeCoeffs::f_mn)
        .def_readonly("f_mm", &rs::NodeCoeffs::f_mm)
        .def_readonly("e_nn", &rs::NodeCoeffs::e_nn)
        .def_readonly("e_nm", &rs::NodeCoeffs::e_nm)
        .def_readonly("e_mn", &rs::NodeCoeffs::e_mn)
        .def_readonly("e_mm", &rs::NodeCoeffs::e_mm);

    py::class_<rs::DamperSplit>(m, "DamperSplit")
        .def_readonly("lambdas", &rs::DamperSplit::lambdas)
        .def_readonly("re_center", &rs::DamperSplit::re_center)
        .def_readonly("re_radius", &rs::DamperSplit::re_radius)
        .def_readonly("omega_halfwidth", &rs::DamperSplit::omega_halfwidth)
        .def_readonly("circle_regime", &rs::DamperSplit::circle_regime);

    py::class_<rs::FrictionSplit>(m, "FrictionSplit")
        .def_readonly("lambdas", &rs::FrictionSplit::lambdas)
        .def_readonly("re", &rs::FrictionSplit::re)
        .def_readonly("im", &rs::FrictionSplit::im);

    m.def("unperturbed_string_eigs", &rs::unperturbed_string_eigs, py::arg("n_max"),
          py::arg("omega"));
    m.def("string_eigenfunction", &rs::string_eigenfunction, py::arg("n"), py::arg("sign"),
          py::arg("phi"));
    m.def("mesh_nodes", &rs::mesh_nodes, py::arg("n_max"), py::arg("omega_lo"),
          py::arg("omega_hi"));
    m.def("make_node", &rs::make_node, py::arg("n"), py::arg("eps"), py::arg("m"), py::arg("del_"));
    m.def("char_det", &rs::char_det, py::arg("lambda_"), py::arg("params"));
    m.def("string_exact_eigs", &rs::string_exact_eigs, py::arg("params"), py::arg("seeds"));
    m.def("perturbation_coeffs", &rs::perturbation_coeffs, py::arg("node"), py::arg("params"),
          py::arg("d_omega"));
    m.def("perturbation_coeffs_quadrature", &rs::perturbation_coeffs_quadrature, py::arg("node"),
          py::arg("params"), py::arg("d_omega"), py::arg("n_quad") = 512);
    m.def("node_split", &rs::node_split, py::arg("node"), py::arg("params"), py::arg("d_omega"));
    m.def("spring_split", &rs::spring_split, py::arg("n"), py::arg("k"), py::arg("omega"));
    m.def("damper_bubble", &rs::damper_bubble, py::arg("n"), py::arg("d"), py::arg("omega"));
    m.def("friction_split", &rs::friction_split, py::arg("n"), py::arg("mu"), py::arg("omega"));
    m.def("friction_re_small_omega", &rs::friction_re_small_omega, py::arg("n"), py::arg("mu"),
          py::arg("omega"));
    m.def("friction_im_small_omega", &rs::friction_im_small_omega, py::arg("n"), py::arg("mu"),
          py::arg("omega"));
    m.def("friction_re_large_omega", &rs::friction_re_large_omega, py::arg("n"), py::arg("mu"),
          py::arg("omega"));

    m.attr("__version__") = "0.1.0";
}
