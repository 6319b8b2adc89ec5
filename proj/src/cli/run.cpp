#include <algorithm>
#include <cmath>

#include "gyrospectra/cli.hpp"
#include "gyrospectra/rotating_string.hpp"
#include "table.hpp"

namespace gyrospectra::cli {

namespace {

namespace rs = gyrospectra::rstring;

GyroSystem2D system_from(const RunConfig& cfg) {
    double beta = cfg.get_double("beta");
    Eigen::Matrix2d d = parse_matrix(cfg.get_or("d", "0,0,0,0"), MatrixRole::Symmetric, "d");
    Eigen::Matrix2d k = parse_matrix(cfg.get_or("k", "0,0,0,0"), MatrixRole::Symmetric, "k");
    Eigen::Matrix2d g =
        parse_matrix(cfg.get_or("g", "0,1,-1,0"), MatrixRole::SkewSymmetric, "g");
    Eigen::Matrix2d n =
        parse_matrix(cfg.get_or("n", "0,1,-1,0"), MatrixRole::SkewSymmetric, "n");
    try {
        return GyroSystem2D(beta, g, d, k, n);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

// Scalar parameter value; keys holding a range (an axis of some scan) read
// as zero here and are overridden per cell.
double scalar_or_zero(const RunConfig& cfg, const std::string& key) {
    if (!cfg.has(key)) return 0.0;
    if (cfg.get(key).find(':') != std::string::npos) return 0.0;
    return cfg.get_double(key);
}

ParamPoint base_point(const RunConfig& cfg) {
    ParamPoint p;
    p.delta = scalar_or_zero(cfg, "delta");
    p.kappa = scalar_or_zero(cfg, "kappa");
    p.nu = scalar_or_zero(cfg, "nu");
    p.omega = cfg.get_double_or("omega-base", 0.0);
    return p;
}

std::string out_path(const RunConfig& cfg, const std::string& format) {
    return cfg.get_or("out", cfg.get("command") + "." + format);
}

int cmd_mesh2d(const RunConfig& cfg) {
    double beta = cfg.get_double("beta");
    Range range = parse_range(cfg.get("omega"));

    Table t;
    t.columns = {"omega", "re1", "re2", "re3", "re4", "im1", "im2", "im3", "im4"};
    QuarticSpectrum probe = unperturbed_spectrum(beta, 0.0);
    t.meta["branches"] =
        probe.labels[0] + ";" + probe.labels[1] + ";" + probe.labels[2] + ";" + probe.labels[3];
    for (double om : range.linspace()) {
        QuarticSpectrum s = unperturbed_spectrum(beta, om);
        t.add_row({om, s.roots[0].real(), s.roots[1].real(), s.roots[2].real(), s.roots[3].real(),
                   s.roots[0].imag(), s.roots[1].imag(), s.roots[2].imag(), s.roots[3].imag()});
    }
    std::string format = cfg.get_or("format", "csv");
    write_table(t, cfg, out_path(cfg, format), format);
    return 0;
}

int cmd_trajectory(const RunConfig& cfg) {
    GyroSystem2D sys = system_from(cfg);
    ParamPoint base = base_point(cfg);
    Range range = parse_range(cfg.get("omega"));

    ExactTrajectory tr = exact_trajectory(sys, base, range.linspace());
    Table t;
    t.columns = {"omega", "re1", "re2", "re3", "re4", "im1", "im2", "im3", "im4"};
    t.meta["branches"] = tr.labels[0] + ";" + tr.labels[1] + ";" + tr.labels[2] + ";" + tr.labels[3];
    for (std::size_t i = 0; i < tr.omegas.size(); ++i) {
        t.add_row({tr.omegas[i], tr.branches[0][i].real(), tr.branches[1][i].real(),
                   tr.branches[2][i].real(), tr.branches[3][i].real(), tr.branches[0][i].imag(),
                   tr.branches[1][i].imag(), tr.branches[2][i].imag(), tr.branches[3][i].imag()});
        t.status.push_back(tr.sample_ok[i] ? "ok" : "nonconverged");
    }
    std::string format = cfg.get_or("format", "csv");
    write_table(t, cfg, out_path(cfg, format), format);
    return tr.converged ? 0 : 3;
}

ScanParam scan_param_from(const std::string& name) {
    if (name == "omega") return ScanParam::Omega;
    if (name == "delta") return ScanParam::Delta;
    if (name == "kappa") return ScanParam::Kappa;
    if (name == "nu") return ScanParam::Nu;
    throw ConfigError("unknown scan axis '" + name + "'");
}

int cmd_stability_map(const RunConfig& cfg) {
    GyroSystem2D sys = system_from(cfg);
    ParamPoint base = base_point(cfg);

    std::vector<std::string> axis_names;
    {
        std::string axes = cfg.get("axes");
        std::size_t pos = 0;
        while (true) {
            std::size_t next = axes.find(',', pos);
            axis_names.push_back(axes.substr(pos, next == std::string::npos ? next : next - pos));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
    }
    if (axis_names.size() < 2 || axis_names.size() > 3)
        throw ConfigError("stability-map needs two or three axes");

    std::vector<GridAxis> axes;
    for (const auto& name : axis_names) {
        Range r = parse_range(cfg.get(name));
        axes.push_back({scan_param_from(name), r.lo, r.hi, r.count});
    }
    Provenance prov = Provenance::Oracle;
    std::string prov_text = cfg.get_or("provenance", "oracle");
    if (prov_text == "asymptotic")
        prov = Provenance::Asymptotic;
    else if (prov_text != "oracle")
        throw ConfigError("provenance must be oracle or asymptotic");

    double tol = cfg.get_double_or("tol", 1e-8);
    double budget = cfg.get_double_or("cell-budget", 1e7);
    StabilityMap map;
    try {
        map = scan_map(sys, base, axes, prov, tol, static_cast<std::size_t>(budget));
    } catch (const GridTooLarge& e) {
        throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    Table t;
    for (const auto& name : axis_names) t.columns.push_back(name);
    t.columns.push_back("kind");
    t.columns.push_back("max_re");
    t.meta["kinds"] = "0:asymptotically-stable;1:marginal;2:flutter;3:divergence";
    t.meta["provenance"] = prov_text;

    std::size_t inner = map.cells() / axes[0].count;
    for (std::size_t idx = 0; idx < map.cells(); ++idx) {
        std::vector<double> row;
        std::size_t rem = idx;
        std::vector<std::size_t> ix(axes.size());
        for (std::size_t ax = axes.size(); ax-- > 0;) {
            ix[ax] = rem % axes[ax].count;
            rem /= axes[ax].count;
        }
        for (std::size_t ax = 0; ax < axes.size(); ++ax) row.push_back(map.axis_value(ax, ix[ax]));
        row.push_back(static_cast<double>(map.kinds[idx]));
        row.push_back(map.max_res[idx]);
        t.add_row(std::move(row));
    }
    (void)inner;
    std::string format = cfg.get_or("format", "csv");
    write_table(t, cfg, out_path(cfg, format), format);

    if (cfg.has("boundary-out")) {
        if (axes.size() != 2) throw ConfigError("boundary extraction needs exactly two axes");
        std::string mode = cfg.get_or("boundary-of", "stable");
        std::vector<std::uint8_t> field(map.cells());
        for (std::size_t i = 0; i < map.cells(); ++i) {
            bool inside = mode == "flutter"
                              ? map.kinds[i] == StabilityKind::Flutter
                              : map.kinds[i] == StabilityKind::AsymptoticallyStable;
            field[i] = inside ? 1 : 0;
        }
        std::vector<double> xs(axes[0].count), ys(axes[1].count);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = map.axis_value(0, i);
        for (std::size_t j = 0; j < ys.size(); ++j) ys[j] = map.axis_value(1, j);
        auto segs = marching_squares(field, xs, ys);
        Table bt;
        bt.columns = {"x0", "y0", "x1", "y1"};
        bt.meta["x_axis"] = axis_names[0];
        bt.meta["y_axis"] = axis_names[1];
        bt.meta["boundary_of"] = mode;
        for (const auto& s : segs) bt.add_row({s.x0, s.y0, s.x1, s.y1});
        write_table(bt, cfg, cfg.get("boundary-out"), format);
    }
    return 0;
}

int cmd_boundary_section(const RunConfig& cfg) {
    GyroSystem2D sys = system_from(cfg);
    double omega = cfg.get_double("omega");
    int samples = cfg.get_int_or("samples", 401);
    double dmax = cfg.get_double_or("delta-max", 1.0);

    BoundarySection sec;
    try {
        sec = boundary_section(sys, omega, samples, dmax);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    Table t;
    t.columns = {"delta", "nu_plus", "nu_minus"};
    const char* topo = sec.topology == SectionTopology::Figure8          ? "figure-8"
                       : sec.topology == SectionTopology::TangentPair    ? "tangent-pair"
                                                                         : "two-crossing-curves";
    t.meta["topology"] = topo;
    t.meta["slope_plus"] = format_double(sec.tangent_slopes.first);
    t.meta["slope_minus"] = format_double(sec.tangent_slopes.second);
    t.meta["delta_extent"] = format_double(sec.delta_extent);
    for (const auto& p : sec.points) t.add_row({p.delta, p.nu_plus, p.nu_minus});
    std::string format = cfg.get_or("format", "csv");
    write_table(t, cfg, out_path(cfg, format), format);
    return 0;
}

int cmd_string_mesh(const RunConfig& cfg) {
    int nmax = cfg.get_int_or("nmax", 30);
    Range range = parse_range(cfg.get("omega"));
    if (nmax < 1) throw ConfigError("nmax must be >= 1");

    Table t;
    t.columns = {"omega"};
    for (int n = 1; n <= nmax; ++n) {
        t.columns.push_back("im_" + std::to_string(n) + "p");
        t.columns.push_back("im_" + std::to_string(n) + "m");
    }
    t.meta["nmax"] = std::to_string(nmax);
    for (double om : range.linspace()) {
        std::vector<double> row{om};
        for (int n = 1; n <= nmax; ++n) {
            row.push_back(n * (1.0 + om));
            row.push_back(n * (1.0 - om));
        }
        t.add_row(std::move(row));
    }
    std::string format = cfg.get_or("format", "csv");
    std::string main_path = out_path(cfg, format);
    write_table(t, cfg, main_path, format);

    Table nodes;
    nodes.columns = {"n", "eps", "m", "del", "omega_star", "im_lambda_star"};
    for (const auto& nd : rs::mesh_nodes(nmax, range.lo, range.hi))
        nodes.add_row({static_cast<double>(nd.n), static_cast<double>(nd.eps),
                       static_cast<double>(nd.m), static_cast<double>(nd.del), nd.omega_star,
                       nd.lambda_star.imag()});
    std::string nodes_path = cfg.get_or("nodes-out", main_path + ".nodes." + format);
    write_table(nodes, cfg, nodes_path, format);
    return 0;
}

rs::MeshNode node_from(const RunConfig& cfg) {
    if (cfg.has("nmode")) {
        int n = cfg.get_int_or("nmode", 1);
        if (n < 1) throw ConfigError("nmode must be >= 1");
        return rs::make_node(n, -1, n, +1);
    }
    std::string text = cfg.get("node");
    std::array<std::string, 4> part;
    std::size_t pos = 0, nparts = 0;
    while (nparts < 4) {
        std::size_t next = text.find(',', pos);
        part[nparts++] = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    if (nparts != 4) throw ConfigError("node must be n,eps,m,del");
    auto sign_of = [](const std::string& s) -> int {
        if (s == "+" || s == "+1" || s == "1") return +1;
        if (s == "-" || s == "-1") return -1;
        throw ConfigError("branch sign must be + or -, got '" + s + "'");
    };
    try {
        return rs::make_node(std::stoi(part[0]), sign_of(part[1]), std::stoi(part[2]),
                             sign_of(part[3]));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

int cmd_string_split(const RunConfig& cfg) {
    rs::MeshNode node = node_from(cfg);
    rs::StringParams params;
    params.k = cfg.get_double_or("spring", 0.0);
    params.d = cfg.get_double_or("damp", 0.0);
    params.mu = cfg.get_double_or("mu", 0.0);
    Range range = parse_range(cfg.get("omega"));
    bool exact = cfg.get_int_or("exact", 1) != 0;

    Table t;
    t.columns = {"omega", "asym_re_p", "asym_im_p", "asym_re_m", "asym_im_m"};
    if (exact) {
        t.columns.insert(t.columns.end(), {"exact_re_p", "exact_im_p", "exact_re_m", "exact_im_m",
                                           "resid_p", "resid_m"});
    }
    t.meta["node"] = std::to_string(node.n) + (node.eps > 0 ? "+" : "-") + " x " +
                     std::to_string(node.m) + (node.del > 0 ? "+" : "-");
    t.meta["omega_star"] = format_double(node.omega_star);

    bool all_ok = true;
    auto omegas = range.linspace();
    rs::NodeBranchPair asym = rs::node_split_trajectory(node, params, omegas);
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        params.omega = omegas[i];
        try {
            params.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        Complex ap = asym.plus[i], am = asym.minus[i];
        std::vector<double> row{omegas[i], ap.real(), ap.imag(), am.real(), am.imag()};
        bool ok = true;
        if (exact) {
            rs::StringSpectrumSlice slice = rs::string_exact_eigs(params, {ap, am});
            Complex ep = ap, em = am;
            double rp = 0.0, rm = 0.0;
            if (!slice.roots.empty()) {
                auto nearest = [&](Complex target) {
                    const rs::StringRoot* best = &slice.roots[0];
                    for (const auto& r : slice.roots)
                        if (std::abs(r.lambda - target) < std::abs(best->lambda - target)) best = &r;
                    return best;
                };
                const rs::StringRoot* bp = nearest(ap);
                const rs::StringRoot* bm = nearest(am);
                ep = bp->lambda;
                em = bm->lambda;
                rp = bp->residual;
                rm = bm->residual;
                ok = bp->converged && bm->converged;
            } else {
                ok = false;
            }
            row.insert(row.end(), {ep.real(), ep.imag(), em.real(), em.imag(), rp, rm});
        }
        t.add_row(std::move(row));
        t.status.push_back(ok ? "ok" : "nonconverged");
        all_ok = all_ok && ok;
    }
    std::string format = cfg.get_or("format", "csv");
    write_table(t, cfg, out_path(cfg, format), format);
    return all_ok ? 0 : 3;
}

int cmd_compare(const RunConfig& cfg) {
    GyroSystem2D sys = system_from(cfg);
    ParamPoint base = base_point(cfg);

    std::string sweep = cfg.get("sweep");
    std::size_t eq = sweep.find('=');
    if (eq == std::string::npos) throw ConfigError("sweep must be param=lo:hi[:count]");
    std::string param = sweep.substr(0, eq);
    std::string range_text = sweep.substr(eq + 1);
    if (std::count(range_text.begin(), range_text.end(), ':') == 1)
        range_text += ":" + std::to_string(cfg.get_int_or("sweep-count", 9));
    Range range = parse_range(range_text);

    bool joint = param == "scale";
    if (!joint && param != "delta" && param != "kappa" && param != "nu" && param != "omega")
        throw ConfigError("sweep parameter must be one of delta, kappa, nu, omega, scale");

    ComparisonReport rep = compare_sweep(sys, base, param, range, joint);

    Table t;
    t.columns = {"value",       "asym_re_p",   "asym_im_p",   "asym_re_m",  "asym_im_m",
                 "oracle_re_p", "oracle_im_p", "oracle_re_m", "oracle_im_m", "abs_err"};
    t.meta["sweep_param"] = param;
    t.meta["exponent"] = format_double(rep.exponent);
    t.meta["fit_residual"] = format_double(rep.fit_residual);
    for (const auto& s : rep.samples) {
        t.add_row({s.value, s.asym_plus.real(), s.asym_plus.imag(), s.asym_minus.real(),
                   s.asym_minus.imag(), s.oracle_plus.real(), s.oracle_plus.imag(),
                   s.oracle_minus.real(), s.oracle_minus.imag(), s.abs_err});
        t.status.push_back("ok");
    }
    std::string format = cfg.get_or("format", "csv");
    write_table(t, cfg, out_path(cfg, format), format);
    return 0;
}

}  // namespace

ComparisonReport compare_sweep(const GyroSystem2D& sys, const ParamPoint& base,
                               const std::string& sweep_param, const Range& range,
                               bool joint_scale) {
    ComparisonReport rep;
    for (double v : range.geomspace()) {
        ParamPoint p = base;
        if (joint_scale) {
            p.delta *= v;
            p.kappa *= v;
            p.nu *= v;
            p.omega *= v;
        } else if (sweep_param == "delta") {
            p.delta = v;
        } else if (sweep_param == "kappa") {
            p.kappa = v;
        } else if (sweep_param == "nu") {
            p.nu = v;
        } else if (sweep_param == "omega") {
            p.omega = v;
        } else {
            throw ConfigError("unknown sweep parameter '" + sweep_param + "'");
        }

        auto [ap, am] = asymptotic_eigs(sys, p);
        QuarticSpectrum s = solve_quartic(char_poly(sys, p));
        auto nearest = [&](Complex target) {
            Complex best = s.roots[0];
            for (const auto& r : s.roots)
                if (std::abs(r - target) < std::abs(best - target)) best = r;
            return best;
        };
        ComparisonSample sample;
        sample.value = v;
        sample.asym_plus = ap;
        sample.asym_minus = am;
        sample.oracle_plus = nearest(ap);
        sample.oracle_minus = nearest(am);
        sample.abs_err =
            std::max(std::abs(ap - sample.oracle_plus), std::abs(am - sample.oracle_minus));
        rep.samples.push_back(sample);
    }

    // log-log least squares for the error order
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& s : rep.samples) {
        if (!(s.abs_err > 0.0)) continue;
        double x = std::log(s.value), y = std::log(s.abs_err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n >= 2) {
        double denom = n * sxx - sx * sx;
        rep.exponent = (n * sxy - sx * sy) / denom;
        double icept = (sy - rep.exponent * sx) / n;
        double rss = 0.0;
        for (const auto& s : rep.samples) {
            if (!(s.abs_err > 0.0)) continue;
            double r = std::log(s.abs_err) - (icept + rep.exponent * std::log(s.value));
            rss += r * r;
        }
        rep.fit_residual = std::sqrt(rss / n);
    } else {
        rep.exponent = 0.0;
        rep.fit_residual = 0.0;
    }
    return rep;
}

std::string column_schema(const std::string& command) {
    if (command == "mesh2d")
        return "mesh2d: omega, re1..re4, im1..im4\n"
               "  unperturbed eigenvalues; column order follows the branch labels in the\n"
               "  'branches' meta line (p+;n+;p-;n-).\n";
    if (command == "trajectory")
        return "trajectory: omega, re1..re4, im1..im4, status\n"
               "  exact eigenvalue branches, continuation-paired; branch order in the\n"
               "  'branches' meta line.  status: ok | nonconverged.\n";
    if (command == "stability-map")
        return "stability-map: <axis1>, <axis2>[, <axis3>], kind, max_re\n"
               "  kind: 0 asymptotically-stable, 1 marginal, 2 flutter, 3 divergence.\n"
               "  with boundary-out: x0, y0, x1, y1 marching-squares segments.\n";
    if (command == "boundary-section")
        return "boundary-section: delta, nu_plus, nu_minus\n"
               "  meta: topology, slope_plus, slope_minus, delta_extent.\n";
    if (command == "string-mesh")
        return "string-mesh: omega, im_1p, im_1m, ..., im_<nmax>p, im_<nmax>m\n"
               "  nodes file: n, eps, m, del, omega_star, im_lambda_star.\n";
    if (command == "string-split")
        return "string-split: omega, asym_re_p, asym_im_p, asym_re_m, asym_im_m\n"
               "  [, exact_re_p, exact_im_p, exact_re_m, exact_im_m, resid_p, resid_m], status\n";
    if (command == "compare")
        return "compare: value, asym_re_p, asym_im_p, asym_re_m, asym_im_m,\n"
               "  oracle_re_p, oracle_im_p, oracle_re_m, oracle_im_m, abs_err, status\n"
               "  meta: exponent (fitted error order), fit_residual.\n";
    throw ConfigError("unknown command '" + command + "'");
}

int run(const RunConfig& config) {
    std::string command = config.get("command");
    if (command == "run") {
        RunConfig inner = load_config_file(config.get("config"));
        for (const auto& [k, v] : config.entries())
            if (k != "command" && k != "config") inner.set(k, v);
        return run(inner);
    }
    if (command == "mesh2d") return cmd_mesh2d(config);
    if (command == "trajectory") return cmd_trajectory(config);
    if (command == "stability-map") return cmd_stability_map(config);
    if (command == "boundary-section") return cmd_boundary_section(config);
    if (command == "string-mesh") return cmd_string_mesh(config);
    if (command == "string-split") return cmd_string_split(config);
    if (command == "compare") return cmd_compare(config);
    throw ConfigError("unknown command '" + command + "'");
}

}  // namespace gyrospectra::cli
