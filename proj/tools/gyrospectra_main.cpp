#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gyrospectra/cli.hpp"

namespace cli = gyrospectra::cli;

namespace {

struct CommandState {
    cli::RunConfig config;
    std::string config_file;
    bool schema = false;
};

// Registers an option that lands in the flat key=value config when given.
void add_key(CLI::App* app, CommandState& st, const std::string& flag, const std::string& key,
             const std::string& help) {
    auto setter = [&st, key](const std::string& v) { st.config.set(key, v); };
    app->add_option_function<std::string>(flag, setter, help);
}

void add_common(CLI::App* app, CommandState& st) {
    add_key(app, st, "--out", "out", "output path (default <command>.<format>)");
    add_key(app, st, "--format", "format", "csv | json (default csv)");
    app->add_option("--config", st.config_file, "flat key=value file or emitted JSON result");
    app->add_flag("--schema", st.schema, "print the output column documentation and exit");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra and stability charts of perturbed gyroscopic systems"};
    app.require_subcommand(0, 1);

    std::vector<std::pair<CLI::App*, std::unique_ptr<CommandState>>> states;
    auto make_cmd = [&](const std::string& name, const std::string& desc) {
        CLI::App* sub = app.add_subcommand(name, desc);
        states.emplace_back(sub, std::make_unique<CommandState>());
        CommandState& st = *states.back().second;
        st.config.set("command", name);
        add_common(sub, st);
        return std::pair<CLI::App*, CommandState*>(sub, &st);
    };

    {
        auto [sub, st] = make_cmd("mesh2d", "unperturbed spectral mesh of the 2-DOF system");
        add_key(sub, *st, "--beta", "beta", "base frequency (> 0)");
        add_key(sub, *st, "--omega", "omega", "gyroscopic parameter range lo:hi:count");
    }
    {
        auto [sub, st] = make_cmd("trajectory", "exact eigenvalue branches over an omega sweep");
        add_key(sub, *st, "--beta", "beta", "base frequency");
        add_key(sub, *st, "--omega", "omega", "range lo:hi:count");
        add_key(sub, *st, "--delta", "delta", "damping scale");
        add_key(sub, *st, "--kappa", "kappa", "stiffness scale");
        add_key(sub, *st, "--nu", "nu", "circulatory scale");
        add_key(sub, *st, "--d", "d", "damping matrix a,b,c,d (symmetric)");
        add_key(sub, *st, "--k", "k", "stiffness matrix a,b,c,d (symmetric)");
        add_key(sub, *st, "--g", "g", "gyroscopic matrix (skew; default 0,1,-1,0)");
        add_key(sub, *st, "--n", "n", "circulatory matrix (skew; default 0,1,-1,0)");
    }
    {
        auto [sub, st] = make_cmd("stability-map", "verdict grid over two or three parameters");
        add_key(sub, *st, "--beta", "beta", "base frequency");
        add_key(sub, *st, "--d", "d", "damping matrix");
        add_key(sub, *st, "--k", "k", "stiffness matrix");
        add_key(sub, *st, "--axes", "axes", "axis names, e.g. delta,omega");
        add_key(sub, *st, "--omega", "omega", "range when an axis, else fixed via --omega-base");
        add_key(sub, *st, "--delta", "delta", "range or scalar");
        add_key(sub, *st, "--kappa", "kappa", "range or scalar");
        add_key(sub, *st, "--nu", "nu", "range or scalar");
        add_key(sub, *st, "--omega-base", "omega-base", "fixed omega when not an axis");
        add_key(sub, *st, "--provenance", "provenance", "oracle | asymptotic");
        add_key(sub, *st, "--tol", "tol", "marginal band half-width (default 1e-8)");
        add_key(sub, *st, "--cell-budget", "cell-budget", "max grid cells (default 1e7)");
        add_key(sub, *st, "--boundary-out", "boundary-out", "write marching-squares segments here");
        add_key(sub, *st, "--boundary-of", "boundary-of", "stable | flutter (default stable)");
    }
    {
        auto [sub, st] = make_cmd("boundary-section",
                                  "fixed-omega cross-section of the stability boundary");
        add_key(sub, *st, "--beta", "beta", "base frequency");
        add_key(sub, *st, "--d", "d", "damping matrix");
        add_key(sub, *st, "--omega", "omega", "section omega (scalar)");
        add_key(sub, *st, "--samples", "samples", "sample count (default 401)");
        add_key(sub, *st, "--delta-max", "delta-max", "half-width of the delta interval");
    }
    {
        auto [sub, st] = make_cmd("string-mesh", "spectral mesh and node keyboard of the string");
        add_key(sub, *st, "--nmax", "nmax", "mode truncation (default 30)");
        add_key(sub, *st, "--omega", "omega", "range lo:hi:count");
        add_key(sub, *st, "--nodes-out", "nodes-out", "node list path (default <out>.nodes.<format>)");
    }
    {
        auto [sub, st] = make_cmd("string-split", "asymptotic vs exact splitting at a mesh node");
        add_key(sub, *st, "--node", "node", "node as n,eps,m,del (signs + or -)");
        add_key(sub, *st, "--nmode", "nmode", "shorthand for the omega=0 node of mode n");
        add_key(sub, *st, "--spring", "spring", "spring coefficient k");
        add_key(sub, *st, "--damp", "damp", "damper coefficient d");
        add_key(sub, *st, "--mu", "mu", "friction coefficient");
        add_key(sub, *st, "--omega", "omega", "absolute omega range lo:hi:count");
        add_key(sub, *st, "--exact", "exact", "1: refine exact roots (default), 0: asymptotic only");
    }
    {
        auto [sub, st] = make_cmd("compare", "error-order sweep of asymptotics against the oracle");
        add_key(sub, *st, "--beta", "beta", "base frequency");
        add_key(sub, *st, "--d", "d", "damping matrix");
        add_key(sub, *st, "--k", "k", "stiffness matrix");
        add_key(sub, *st, "--sweep", "sweep", "param=lo:hi[:count]; param in delta,kappa,nu,omega,scale");
        add_key(sub, *st, "--sweep-count", "sweep-count", "samples when count omitted (default 9)");
        add_key(sub, *st, "--delta", "delta", "base damping scale");
        add_key(sub, *st, "--kappa", "kappa", "base stiffness scale");
        add_key(sub, *st, "--nu", "nu", "base circulatory scale");
        add_key(sub, *st, "--omega-base", "omega-base", "base omega");
    }
    {
        make_cmd("run", "re-execute a saved configuration (out/format may be overridden)");
    }

    CLI11_PARSE(app, argc, argv);

    for (auto& [sub, st] : states) {
        if (!sub->parsed()) continue;
        try {
            const std::string command = st->config.get("command");
            if (st->schema) {
                std::cout << cli::column_schema(command);
                return 0;
            }
            cli::RunConfig cfg;
            if (command == "run") {
                if (st->config_file.empty()) throw cli::ConfigError("run requires --config");
                cfg = cli::load_config_file(st->config_file);
                for (const auto& [k, v] : st->config.entries())
                    if (k != "command") cfg.set(k, v);
                if (cfg.get_or("command", "run") == "run")
                    throw cli::ConfigError("config file does not name a command");
            } else {
                if (!st->config_file.empty()) cfg = cli::load_config_file(st->config_file);
                for (const auto& [k, v] : st->config.entries()) cfg.set(k, v);
            }
            return cli::run(cfg);
        } catch (const cli::ConfigError& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const std::invalid_argument& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        }
    }

    std::cout << app.help();
    return 0;
}
