#include "systolekit/cli.hpp"
#include "systolekit/json_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace systolekit;
namespace fs = std::filesystem;
using io::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("systolekit-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        const fs::path p = path / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string at(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream captured;
    auto* old = std::cout.rdbuf(captured.rdbuf());
    int code = cli::run(args);
    std::cout.rdbuf(old);
    return {code, captured.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kCircle2 =
    R"({"dim": 1,
        "simplices": [[0,1],[1,2],[0,2]],
        "edge_lengths": [[0,1,0.6666666666666666],[1,2,0.6666666666666666],[0,2,0.6666666666666666]]})";

const char* kIdZ =
    R"({"presentation": {"generators": ["a"], "relators": [], "oracle": "free"},
        "tree_edges": [[0,1],[1,2]],
        "edge_words": {"0-2": "a"}})";

} // namespace

TEST_CASE("systole subcommand prints the circle perimeter") {
    TempDir dir;
    auto mesh = dir.file("circle2.json", kCircle2);
    auto phi = dir.file("id-z.json", kIdZ);
    auto res = run_cli({"systole", "--mesh", mesh, "--phi", phi, "--subdivision", "6"});
    CHECK(res.exit_code == 0);
    CHECK(res.out == "2\n");
}

TEST_CASE("ratio subcommand emits sigma = 1 for the circle") {
    TempDir dir;
    auto mesh = dir.file("circle2.json", kCircle2);
    auto phi = dir.file("id-z.json", kIdZ);
    auto out = dir.at("ratio.json");
    auto res = run_cli({"ratio", "--mesh", mesh, "--phi", phi, "--out", out});
    CHECK(res.exit_code == 0);
    auto report = json::parse(read_file(out));
    CHECK(report["systolic_ratio"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report["config"]["subcommand"] == "ratio");
}

TEST_CASE("volume and validate subcommands") {
    TempDir dir;
    auto mesh = dir.file(
        "sphere.json",
        R"({"dim": 2,
            "simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]],
            "edge_lengths": [[0,1,1],[0,2,1],[0,3,1],[1,2,1],[1,3,1],[2,3,1]]})");
    auto vres = run_cli({"volume", "--mesh", mesh});
    CHECK(vres.exit_code == 0);
    CHECK(vres.out.substr(0, 7) == "1.73205");

    auto out = dir.at("validate.json");
    auto res = run_cli({"validate", "--mesh", mesh, "--out", out});
    CHECK(res.exit_code == 0);
    auto report = json::parse(read_file(out));
    CHECK(report["orientable"] == true);
    CHECK(report["fundamental_cycle_boundary_zero"] == true);
}

TEST_CASE("domain errors exit 1 with a machine-readable object") {
    TempDir dir;
    auto mesh = dir.file(
        "branching.json",
        R"({"dim": 2,
            "simplices": [[0,1,2],[0,1,3],[0,1,4]],
            "edge_lengths": [[0,1,1],[0,2,1],[0,3,1],[0,4,1],[1,2,1],[1,3,1],[1,4,1]]})");
    auto res = run_cli({"validate", "--mesh", mesh});
    CHECK(res.exit_code == 1);
    auto err = json::parse(res.out);
    CHECK(err["error"] == "BranchingViolation");
}

TEST_CASE("malformed input exits 2") {
    TempDir dir;
    auto broken = dir.file("broken.json", "{ not json");
    CHECK(run_cli({"volume", "--mesh", broken}).exit_code == 2);
    CHECK(run_cli({"no-such-subcommand"}).exit_code == 2);
    CHECK(run_cli({"volume", "--mesh", dir.at("missing.json")}).exit_code == 2);
}

TEST_CASE("net and extend pipeline reproduces the hexagon") {
    TempDir dir;
    auto mesh = dir.file("circle2.json", kCircle2);
    auto netfile = dir.file("net3.json", R"({"alpha": 0.3334, "nodes": [0,1,2]})");
    auto out = dir.at("ext.json");
    auto res = run_cli({"extend", "--mesh", mesh, "--net", netfile, "--eps",
                        "0.3333333333333333", "--subdivision", "6", "--out", out});
    CHECK(res.exit_code == 0);
    auto report = json::parse(read_file(out));
    CHECK(report["census"] == json::array({6, 6}));
    CHECK(report["ambient_dim"] == 3);
    CHECK(report["cells"].size() == 12);

    auto netout = dir.at("net.json");
    auto nres = run_cli({"net", "--mesh", mesh, "--alpha", "0.34", "--subdivision", "6",
                         "--out", netout});
    CHECK(nres.exit_code == 0);
    auto netj = json::parse(read_file(netout));
    CHECK(netj["covering_radius"].get<double>() <= 0.34);
}

TEST_CASE("fill and iso-check run the LP") {
    TempDir dir;
    auto complexf = dir.file("square.json",
                             R"({"ambient_dim": 2, "cells": [{"spec": "*,*"}]})");
    auto chainf = dir.file("z.json",
                           R"({"degree": 1,
                               "coefficients": [["*,0", 1], ["1,*", 1], ["*,1", -1], ["0,*", -1]]})");
    auto out = dir.at("fill.json");
    auto res = run_cli({"fill", "--complex", complexf, "--chain", chainf, "--out", out});
    CHECK(res.exit_code == 0);
    CHECK(res.out == "1\n");
    auto report = json::parse(read_file(out));
    CHECK(report["volume"] == 1.0);
    CHECK(report["rank_certificate_boundary"] == true);

    auto ires = run_cli({"iso-check", "--complex", complexf, "--chain", chainf, "--n", "1",
                         "--c1", "0.01"});
    CHECK(ires.exit_code == 0);
    CHECK(ires.out == "pass\n");

    // essential cycle: Infeasible surfaces as a domain error
    auto hexc = dir.file(
        "hex.json",
        R"({"ambient_dim": 3,
            "cells": [{"spec": "0,1,*"}, {"spec": "0,*,1"}, {"spec": "1,0,*"},
                      {"spec": "1,*,0"}, {"spec": "*,0,1"}, {"spec": "*,1,0"}]})");
    auto hexz = dir.file(
        "hexz.json",
        R"({"degree": 1,
            "coefficients": [["0,*,1", -1], ["*,0,1", 1], ["1,0,*", -1],
                             ["1,*,0", 1], ["*,1,0", -1], ["0,1,*", 1]]})");
    auto fres = run_cli({"fill", "--complex", hexc, "--chain", hexz});
    CHECK(fres.exit_code == 1);
    CHECK(json::parse(fres.out)["error"] == "Infeasible");
}

TEST_CASE("constants prints the feasible A") {
    TempDir dir;
    auto out = dir.at("constants.json");
    auto res = run_cli({"constants", "--n", "2", "--c1", "1", "--c2", "1", "--out", out});
    CHECK(res.exit_code == 0);
    auto report = json::parse(read_file(out));
    CHECK(report["constants"][0]["alpha_n"].get<double>() == doctest::Approx(0.125));
    CHECK(report["constants"][0]["beta_n"].get<double>() == doctest::Approx(10.0));
    CHECK(report["constants"][1]["alpha_n"].get<double>() ==
          doctest::Approx(1.0 / 144.0));
    CHECK(report["A"]["value"].get<double>() == doctest::Approx(1.0 / 288.0));
    CHECK(report["A"]["maximal"] == true);
}

TEST_CASE("hausdorff and nerve subcommands") {
    TempDir dir;
    auto mesh = dir.file("circle2.json", kCircle2);
    auto hout = dir.at("hausdorff.json");
    auto res = run_cli({"hausdorff", "--mesh", mesh, "--a", "0", "--b", "1",
                        "--subdivision", "6", "--out", hout});
    CHECK(res.exit_code == 0);
    CHECK(json::parse(read_file(hout))["hausdorff_distance"].get<double>() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    auto out = dir.at("nerve.json");
    auto nres = run_cli({"nerve", "--mesh", mesh, "--r0", "0.5", "--A", "1",
                         "--subdivision", "6", "--out", out});
    CHECK(nres.exit_code == 0);
    auto report = json::parse(read_file(out));
    CHECK(report["counts"][0] == 2);
    CHECK(report["counts"][1] == 1);
    CHECK(report["bound"]["count_ok"] == true);
}

TEST_CASE("embed-report and regularity produce verdict documents") {
    TempDir dir;
    auto mesh = dir.file("circle2.json", kCircle2);
    auto netfile = dir.file("net3.json", R"({"alpha": 0.3334, "nodes": [0,1,2]})");
    auto phi = dir.file("id-z.json", kIdZ);

    auto eout = dir.at("embed.json");
    auto eres = run_cli({"embed-report", "--mesh", mesh, "--net", netfile, "--eps",
                         "0.3333333333333333", "--subdivision", "6", "--out", eout});
    CHECK(eres.exit_code == 0);
    auto ereport = json::parse(read_file(eout));
    CHECK(ereport["injectivity"]["far_collision"] == false);
    CHECK(ereport["distortion"]["upper_bound_ok"] == true);
    CHECK(ereport["images"].size() == 18);

    auto rout = dir.at("reg.json");
    auto csv = dir.at("profiles.csv");
    auto rres = run_cli({"regularity", "--mesh", mesh, "--phi", phi, "--eps", "0.2", "--A",
                         "1", "--subdivision", "6", "--out", rout, "--csv", csv});
    CHECK(rres.exit_code == 0);
    auto rreport = json::parse(read_file(rout));
    CHECK(rreport["systole"].get<double>() == doctest::Approx(2.0));
    CHECK(rreport["regular"] == true);
    CHECK(rreport["coarea_ok"] == true);
    auto csv_text = read_file(csv);
    CHECK(csv_text.substr(0, 33) == "radius,volume,lower_bound,verdict");
}

TEST_CASE("artifacts are byte-identical across worker counts") {
    TempDir dir;
    auto mesh = dir.file("circle2.json", kCircle2);
    auto phi = dir.file("id-z.json", kIdZ);
    auto out1 = dir.at("r1.json");
    auto out4 = dir.at("r4.json");
    CHECK(run_cli({"regularity", "--mesh", mesh, "--phi", phi, "--eps", "0.2", "--A", "1",
                   "--subdivision", "6", "--workers", "1", "--out", out1})
              .exit_code == 0);
    CHECK(run_cli({"regularity", "--mesh", mesh, "--phi", phi, "--eps", "0.2", "--A", "1",
                   "--subdivision", "6", "--workers", "4", "--out", out4})
              .exit_code == 0);
    // byte-identical: worker count and artifact paths are not embedded
    CHECK(read_file(out1) == read_file(out4));
}
