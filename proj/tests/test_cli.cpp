#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gyrospectra/cli.hpp"

using namespace gyrospectra::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("gyrospectra_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix parsing and constraint names") {
    Eigen::Matrix2d d = parse_matrix("1,0,0,3", MatrixRole::Symmetric, "d");
    CHECK(d(0, 0) == 1.0);
    CHECK(d(1, 1) == 3.0);

    Eigen::Matrix2d g = parse_matrix("0,1,-1,0", MatrixRole::SkewSymmetric, "g");
    CHECK(g(0, 1) == 1.0);

    CHECK_THROWS_WITH_AS(parse_matrix("1,2,3,4", MatrixRole::Symmetric, "d"),
                         "d: not symmetric", ConfigError);
    CHECK_THROWS_WITH_AS(parse_matrix("1,1,-1,0", MatrixRole::SkewSymmetric, "g"),
                         "g: not skew-symmetric", ConfigError);
    CHECK_THROWS_AS(parse_matrix("0,0,0,0", MatrixRole::SkewSymmetric, "g"), ConfigError);
    CHECK_THROWS_AS(parse_matrix("1,2,3", MatrixRole::Symmetric, "d"), ConfigError);
    CHECK_THROWS_AS(parse_matrix("1,2,x,4", MatrixRole::Symmetric, "d"), ConfigError);
}

TEST_CASE("range parsing") {
    Range r = parse_range("-2:2:401");
    CHECK(r.lo == -2.0);
    CHECK(r.hi == 2.0);
    CHECK(r.count == 401);
    CHECK(r.linspace().size() == 401);
    CHECK(r.linspace()[200] == 0.0);

    r = parse_range("1e-4:1e-1:4");
    auto g = r.geomspace();
    CHECK(g[0] == doctest::Approx(1e-4));
    CHECK(g[1] == doctest::Approx(1e-3));
    CHECK(g[3] == doctest::Approx(1e-1));

    CHECK_THROWS_AS(parse_range("1:2"), ConfigError);
    CHECK_THROWS_AS(parse_range("1:2:1"), ConfigError);
    CHECK_THROWS_AS(parse_range("a:2:5"), ConfigError);
}

TEST_CASE("config files: flat text and emitted JSON") {
    TempDir tmp;
    {
        std::ofstream out(tmp.file("cfg.txt"));
        out << "# comment\n";
        out << "command=mesh2d\n";
        out << "beta = 1.5\n";
        out << "omega=-1:1:5\n";
    }
    RunConfig cfg = load_config_file(tmp.file("cfg.txt"));
    CHECK(cfg.get("command") == "mesh2d");
    CHECK(cfg.get_double("beta") == 1.5);
    CHECK(cfg.get_or("missing", "x") == "x");
    CHECK_THROWS_AS(cfg.get("missing"), ConfigError);
    CHECK(cfg.get_int_or("missing", 7) == 7);

    {
        std::ofstream out(tmp.file("bad.txt"));
        out << "no equals sign here\n";
    }
    CHECK_THROWS_AS(load_config_file(tmp.file("bad.txt")), ConfigError);
    CHECK_THROWS_AS(load_config_file(tmp.file("nonexistent.txt")), ConfigError);
}

TEST_CASE("emitted JSON re-runs to byte-identical CSV") {
    TempDir tmp;
    RunConfig direct;
    direct.set("command", "mesh2d");
    direct.set("beta", "1");
    direct.set("omega", "-2:2:101");
    direct.set("format", "csv");
    direct.set("out", tmp.file("direct.csv"));
    REQUIRE(run(direct) == 0);

    RunConfig as_json = direct;
    as_json.set("format", "json");
    as_json.set("out", tmp.file("result.json"));
    REQUIRE(run(as_json) == 0);

    RunConfig rerun;
    rerun.set("command", "run");
    rerun.set("config", tmp.file("result.json"));
    rerun.set("format", "csv");
    rerun.set("out", tmp.file("rerun.csv"));
    REQUIRE(run(rerun) == 0);

    CHECK(slurp(tmp.file("direct.csv")) == slurp(tmp.file("rerun.csv")));
}

TEST_CASE("trajectory output is deterministic across runs") {
    TempDir tmp;
    RunConfig cfg;
    cfg.set("command", "trajectory");
    cfg.set("beta", "1");
    cfg.set("omega", "-0.3:0.3:121");
    cfg.set("delta", "0.1");
    cfg.set("nu", "0.02");
    cfg.set("d", "1,0,0,3");
    cfg.set("out", tmp.file("a.csv"));
    REQUIRE(run(cfg) == 0);
    cfg.set("out", tmp.file("b.csv"));
    REQUIRE(run(cfg) == 0);
    std::string a = slurp(tmp.file("a.csv"));
    CHECK(a == slurp(tmp.file("b.csv")));
    CHECK(a.find("nonconverged") == std::string::npos);
}

TEST_CASE("compare command fits the quadratic error order") {
    TempDir tmp;
    RunConfig cfg;
    cfg.set("command", "compare");
    cfg.set("beta", "1");
    cfg.set("d", "1,0,0,3");
    cfg.set("sweep", "delta=1e-4:1e-1");
    cfg.set("format", "json");
    cfg.set("out", tmp.file("cmp.json"));
    REQUIRE(run(cfg) == 0);
    std::string body = slurp(tmp.file("cmp.json"));
    std::size_t pos = body.find("\"exponent\": \"");
    REQUIRE(pos != std::string::npos);
    double expo = std::stod(body.substr(pos + 13));
    CHECK(expo == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("compare_sweep reports errors against the oracle") {
    gyrospectra::GyroSystem2D sys(1.0, Eigen::Matrix2d::Identity(), Eigen::Matrix2d::Zero());
    gyrospectra::ParamPoint base;
    ComparisonReport rep = compare_sweep(sys, base, "delta", Range{1e-4, 1e-2, 5}, false);
    REQUIRE(rep.samples.size() == 5);
    for (std::size_t i = 1; i < rep.samples.size(); ++i)
        CHECK(rep.samples[i].abs_err >= rep.samples[i - 1].abs_err);
    CHECK(rep.exponent == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("stability-map command with boundary extraction") {
    TempDir tmp;
    RunConfig cfg;
    cfg.set("command", "stability-map");
    cfg.set("beta", "1");
    cfg.set("d", "1,0,0,-1");
    cfg.set("axes", "delta,omega");
    cfg.set("delta", "0:0.1:41");
    cfg.set("omega", "-0.06:0.06:41");
    cfg.set("provenance", "oracle");
    cfg.set("boundary-out", tmp.file("seg.csv"));
    cfg.set("boundary-of", "flutter");
    cfg.set("out", tmp.file("map.csv"));
    REQUIRE(run(cfg) == 0);

    std::string map_text = slurp(tmp.file("map.csv"));
    CHECK(map_text.find("delta,omega,kind,max_re") != std::string::npos);
    std::string segs = slurp(tmp.file("seg.csv"));
    CHECK(segs.find("x0,y0,x1,y1") != std::string::npos);
    CHECK(std::count(segs.begin(), segs.end(), '\n') > 5);
}

TEST_CASE("string commands write branch, node and split tables") {
    TempDir tmp;
    RunConfig cfg;
    cfg.set("command", "string-mesh");
    cfg.set("nmax", "5");
    cfg.set("omega", "0:0.999:50");
    cfg.set("out", tmp.file("mesh.csv"));
    cfg.set("nodes-out", tmp.file("nodes.csv"));
    REQUIRE(run(cfg) == 0);
    CHECK(slurp(tmp.file("mesh.csv")).find("im_5m") != std::string::npos);
    std::string nodes = slurp(tmp.file("nodes.csv"));
    CHECK(nodes.find("omega_star") != std::string::npos);
    CHECK(std::count(nodes.begin(), nodes.end(), '\n') > 10);

    RunConfig sp;
    sp.set("command", "string-split");
    sp.set("nmode", "1");
    sp.set("spring", "0.3");
    sp.set("omega", "-0.1:0.1:21");
    sp.set("out", tmp.file("split.csv"));
    REQUIRE(run(sp) == 0);
    std::string split = slurp(tmp.file("split.csv"));
    CHECK(split.find("exact_re_p") != std::string::npos);
    CHECK(split.find("nonconverged") == std::string::npos);
}

TEST_CASE("config errors are reported as such") {
    RunConfig cfg;
    cfg.set("command", "mesh2d");  // beta missing
    cfg.set("omega", "0:1:5");
    CHECK_THROWS_AS(run(cfg), ConfigError);

    cfg.set("beta", "1");
    cfg.set("format", "yaml");
    CHECK_THROWS_AS(run(cfg), ConfigError);

    RunConfig bad;
    bad.set("command", "frobnicate");
    CHECK_THROWS_AS(run(bad), ConfigError);

    RunConfig traj;
    traj.set("command", "trajectory");
    traj.set("beta", "1");
    traj.set("omega", "0:1:5");
    traj.set("d", "1,2,3,4");
    CHECK_THROWS_AS(run(traj), ConfigError);
}

TEST_CASE("column documentation") {
    for (const char* cmd : {"mesh2d", "trajectory", "stability-map", "boundary-section",
                            "string-mesh", "string-split", "compare"}) {
        CHECK(!column_schema(cmd).empty());
    }
    CHECK_THROWS_AS(column_schema("nope"), ConfigError);
}
