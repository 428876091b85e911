#include "systolekit/cli.hpp"

#include "systolekit/chains.hpp"
#include "systolekit/cubical.hpp"
#include "systolekit/errors.hpp"
#include "systolekit/homotopy.hpp"
#include "systolekit/json_io.hpp"
#include "systolekit/mesh.hpp"
#include "systolekit/metric.hpp"
#include "systolekit/parallel.hpp"
#include "systolekit/regularity.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace systolekit::cli {

namespace {

using io::json;

bool log_enabled() {
    static const char* env = std::getenv("SYSTOLEKIT_LOG");
    return env && std::string(env) != "off" && std::string(env) != "";
}

void log(const std::string& msg) {
    if (log_enabled()) std::cerr << "[systolekit] " << msg << "\n";
}

struct RunConfig {
    std::string subcommand;
    std::string mesh_path, phi_path, pi_path, net_path, complex_path, chain_path;
    std::string out_path, csv_path;
    double eps = 0.25;
    double alpha = 0.25;
    double delta = 1.0;
    double snap = 1e-9;
    double A_n = 0.0;
    double shift_a = 0.0;
    double R0 = 0.5;
    double lp_tol = 1e-9;
    std::vector<double> C; // C[d-1] = C_d override, dims 1..6
    int n = 2;
    int subdivision = 4;
    int stride = 1;
    int workers = 0;
    int dim_cap = 8;
    std::string nodes_a, nodes_b, centers, radii;

    // The embedded config carries everything that affects the computation.
    // Worker count and artifact paths are execution plumbing: leaving them
    // out keeps artifacts byte-identical across worker counts and
    // destinations.
    json to_json() const {
        json j;
        j["subcommand"] = subcommand;
        if (!mesh_path.empty()) j["mesh"] = mesh_path;
        if (!phi_path.empty()) j["phi"] = phi_path;
        if (!pi_path.empty()) j["pi"] = pi_path;
        if (!net_path.empty()) j["net"] = net_path;
        if (!complex_path.empty()) j["complex"] = complex_path;
        if (!chain_path.empty()) j["chain"] = chain_path;
        j["eps"] = eps;
        j["alpha"] = alpha;
        j["delta"] = delta;
        j["snap"] = snap;
        j["A_n"] = A_n;
        j["shift_a"] = shift_a;
        j["R0"] = R0;
        j["lp_tol"] = lp_tol;
        j["C"] = C;
        j["n"] = n;
        j["subdivision"] = subdivision;
        j["stride"] = stride;
        j["dim_cap"] = dim_cap;
        if (!nodes_a.empty()) j["nodes_a"] = nodes_a;
        if (!nodes_b.empty()) j["nodes_b"] = nodes_b;
        if (!centers.empty()) j["centers"] = centers;
        if (!radii.empty()) j["radii"] = radii;
        return j;
    }
};

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            fail("MalformedInput", "bad integer '" + tok + "' in list");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            fail("MalformedInput", "bad number '" + tok + "' in list");
        }
    }
    return out;
}

void emit(const RunConfig& cfg, json report, const std::string& stdout_line = "") {
    report["config"] = cfg.to_json();
    const std::string text = report.dump(2) + "\n";
    if (!cfg.out_path.empty()) {
        io::write_text_file(cfg.out_path, text);
        if (!stdout_line.empty()) std::cout << stdout_line << "\n";
    } else if (!stdout_line.empty()) {
        std::cout << stdout_line << "\n";
    } else {
        std::cout << text;
    }
}

struct LoadedSystoleProblem {
    io::MeshData mesh;
    metric::GeodesicGraph graph;
    homotopy::GroupPresentation pi;
    homotopy::EdgeHomomorphism phi;
};

LoadedSystoleProblem load_systole_problem(const RunConfig& cfg) {
    LoadedSystoleProblem p;
    p.mesh = io::load_mesh(io::load_json_file(cfg.mesh_path));
    mesh::validate_pseudomanifold(p.mesh.complex, p.mesh.dim);
    auto hom = io::load_homomorphism(io::load_json_file(cfg.phi_path));
    if (!cfg.pi_path.empty())
        p.pi = io::load_presentation(io::load_json_file(cfg.pi_path));
    else if (hom.has_presentation)
        p.pi = hom.pi;
    else
        fail("MalformedInput", "no group presentation given (embed one in the phi file "
                               "or pass --pi)");
    p.phi = hom.phi;
    homotopy::validate_homomorphism(p.mesh.complex, p.pi, p.phi);
    log("building geodesic graph at level " + std::to_string(cfg.subdivision));
    p.graph = metric::build_geodesic_graph(p.mesh.complex, p.mesh.metric, p.mesh.dim,
                                           cfg.subdivision);
    return p;
}

std::string format_double(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

int run_validate(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    auto V = mesh::validate_pseudomanifold(data.complex, data.dim);
    mesh::check_metric(data.complex, data.metric, /*allow_degenerate=*/true);
    json report;
    report["dim"] = V.dim;
    report["orientable"] = V.orientable;
    json counts = json::array();
    for (int d = 0; d <= data.complex.dim(); ++d) counts.push_back(data.complex.cells(d).size());
    report["cell_counts"] = counts;
    if (V.orientable) {
        report["fundamental_cycle"] = V.orientation;
        report["fundamental_cycle_boundary_zero"] =
            mesh::fundamental_cycle_boundary(V).empty();
    }
    emit(cfg, report, V.orientable ? "valid orientable pseudomanifold"
                                   : "valid non-orientable pseudomanifold");
    return 0;
}

int run_volume(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    const double vol = mesh::total_volume(data.complex, data.metric, data.dim);
    json report;
    report["total_volume"] = vol;
    emit(cfg, report, format_double(vol));
    return 0;
}

int run_systole(const RunConfig& cfg, bool ratio) {
    auto p = load_systole_problem(cfg);
    auto sys = homotopy::relative_systole(p.graph, p.pi, p.phi);
    json report;
    report["normality"] = [&] {
        switch (homotopy::normality_status(p.pi, p.phi)) {
            case homotopy::Normality::Verified: return "verified";
            case homotopy::Normality::Failed: return "failed";
            default: return "assumed";
        }
    }();
    report["subdivision"] = cfg.subdivision;
    if (sys.status == homotopy::SystoleResult::Status::Infinite) {
        if (ratio) fail("InfiniteSystole", "systolic ratio of an infinite systole");
        report["systole"] = "inf";
        emit(cfg, report, "inf");
        return 0;
    }
    if (sys.status == homotopy::SystoleResult::Status::LowerBound)
        fail("SearchCutoffExceeded",
             "certified lower bound " + format_double(sys.value));
    report["systole"] = sys.value;
    report["base_node"] = sys.base;
    report["deck_word"] = homotopy::format_word(p.pi, sys.deck);
    if (ratio) {
        const double vol = mesh::total_volume(p.mesh.complex, p.mesh.metric, p.mesh.dim);
        const double sigma = homotopy::systolic_ratio(vol, p.mesh.dim, sys);
        report["total_volume"] = vol;
        report["systolic_ratio"] = sigma;
        emit(cfg, report, format_double(sigma));
    } else {
        emit(cfg, report, format_double(sys.value));
    }
    return 0;
}

int run_net(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    auto g = metric::build_geodesic_graph(data.complex, data.metric, data.dim,
                                          cfg.subdivision);
    auto net = metric::alpha_dense_net(g, cfg.alpha);
    emit(cfg, io::net_to_json(net),
         "net of " + std::to_string(net.points.size()) + " points, covering radius " +
             format_double(net.covering_radius));
    return 0;
}

int run_extend(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    auto g = metric::build_geodesic_graph(data.complex, data.metric, data.dim,
                                          cfg.subdivision);
    auto net = io::load_net(io::load_json_file(cfg.net_path));
    cubical::ExtensionParams params{cfg.eps, cfg.delta, cfg.snap};
    auto K = cubical::build_extension(g, net, params);
    json report = io::complex_to_json(K);
    report["census"] = K.census();
    emit(cfg, report,
         "extension with " + std::to_string(K.cells.size()) + " cells, dim " +
             std::to_string(K.dim()));
    return 0;
}

int run_embed_report(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    auto g = metric::build_geodesic_graph(data.complex, data.metric, data.dim,
                                          cfg.subdivision);
    auto net = io::load_net(io::load_json_file(cfg.net_path));
    cubical::ExtensionParams params{cfg.eps, cfg.delta, cfg.snap};
    const auto images = cubical::embed_all(g, net, params);
    auto injectivity = cubical::injectivity_check(g, net, params, cfg.stride);
    auto distortion = metric::net_distortion_report(g, net, cfg.stride);
    json report;
    json image_rows = json::array();
    for (std::size_t v = 0; v < images.size(); ++v)
        image_rows.push_back(json::array({static_cast<int>(v), images[v]}));
    report["images"] = image_rows;
    report["lipschitz_constant"] = 1.0 / (1.0 - 2.0 * cfg.eps);
    report["injectivity"] = {
        {"min_separation_far", injectivity.min_separation_far},
        {"far_pairs", injectivity.far_pairs},
        {"near_pairs", injectivity.near_pairs},
        {"far_collision", injectivity.far_collision},
        {"collisions_near", injectivity.collisions_near},
    };
    report["distortion"] = {
        {"eta", distortion.eta},
        {"upper_bound_ok", distortion.upper_bound_ok},
        {"worst_upper_violation", distortion.worst_upper_violation},
        {"pairs_checked", distortion.pairs_checked},
        {"fp_tolerance", distortion.fp_tolerance},
    };
    emit(cfg, report);
    return 0;
}

int run_fill(const RunConfig& cfg) {
    auto K = io::load_complex(io::load_json_file(cfg.complex_path));
    auto z = io::load_chain(io::load_json_file(cfg.chain_path));
    auto result = chains::filling_lp(z, K);
    json report;
    report["volume"] = result.volume;
    report["tube_radius"] = result.tube_radius;
    report["filler"] = io::chain_to_json(result.filler);
    report["rank_certificate_boundary"] = chains::boundary_rank_certificate(z, K);
    emit(cfg, report, format_double(result.volume));
    return 0;
}

int run_iso_check(const RunConfig& cfg) {
    auto K = io::load_complex(io::load_json_file(cfg.complex_path));
    auto z = io::load_chain(io::load_json_file(cfg.chain_path));
    const double C = cfg.C.empty() ? 1.0 : cfg.C[std::min<std::size_t>(cfg.n, cfg.C.size()) - 1];
    auto consts = chains::isoperimetric_constants(cfg.n, C);
    auto result = chains::filling_lp(z, K);
    auto verdict = chains::isoperimetric_check(z, result, consts, cfg.lp_tol);
    json report;
    report["alpha_n"] = consts.alpha_n;
    report["beta_n"] = consts.beta_n;
    report["C_n"] = consts.C_n;
    report["filling_volume"] = result.volume;
    report["tube_radius"] = result.tube_radius;
    report["volume_bound"] = verdict.volume_bound;
    report["tube_bound"] = verdict.tube_bound;
    report["status"] = verdict.status == chains::IsoVerdict::Status::Pass ? "pass"
                       : verdict.status == chains::IsoVerdict::Status::Fail
                           ? "fail"
                           : "hypothesis-not-met";
    emit(cfg, report, report["status"].get<std::string>());
    return 0;
}

int run_regularity(const RunConfig& cfg) {
    auto p = load_systole_problem(cfg);
    auto sys = homotopy::relative_systole(p.graph, p.pi, p.phi);
    if (!sys.finite()) fail("InfiniteSystole", "regularity needs a finite systole");
    std::vector<metric::NodeId> centers;
    if (!cfg.centers.empty())
        for (int c : parse_int_list(cfg.centers)) centers.push_back(c);
    else
        for (metric::NodeId v : p.graph.vertex_node) centers.push_back(v);
    std::vector<double> radii;
    if (!cfg.radii.empty()) {
        radii = parse_double_list(cfg.radii);
    } else {
        const int steps = 16;
        for (int i = 1; i <= steps; ++i)
            radii.push_back(cfg.eps + (sys.value / 2.0 - cfg.eps) * i / steps);
    }
    // per-center checks are independent; results merge by center index
    std::vector<metric::BallGrowthProfile> profiles(centers.size());
    std::vector<regularity::CoareaSample> coarea(centers.size());
    parallel::for_chunks(centers.size(), 1, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t i = lo; i < hi; ++i) {
            profiles[i] = metric::ball_volume_profile(p.graph, centers[i], radii);
            coarea[i] = regularity::coarea_check(p.graph, centers[i], radii);
        }
    });
    auto report_data = regularity::epsilon_regular_verdict(profiles, sys.value, cfg.eps,
                                                           cfg.A_n, p.mesh.dim, cfg.shift_a);

    json report;
    report["systole"] = sys.value;
    report["A_n"] = cfg.A_n;
    report["eps"] = cfg.eps;
    report["shift_a"] = cfg.shift_a;
    report["gromov_constant"] = cfg.A_n > 0 ? regularity::gromov_constant(cfg.A_n, p.mesh.dim) : 0.0;
    const double vol = mesh::total_volume(p.mesh.complex, p.mesh.metric, p.mesh.dim);
    report["total_volume"] = vol;
    report["systolic_ratio"] = homotopy::systolic_ratio(vol, p.mesh.dim, sys);
    report["regular"] = report_data.regular;
    report["shifted_regular"] = report_data.shifted_regular;
    json rows = json::array();
    for (const auto& row : report_data.rows)
        rows.push_back({{"center", row.center},
                        {"radius", row.radius},
                        {"volume", row.volume},
                        {"bound", row.bound},
                        {"pass", row.pass},
                        {"shifted_bound", row.shifted_bound},
                        {"shifted_pass", row.shifted_pass}});
    report["rows"] = rows;
    json coarea_rows = json::array();
    bool coarea_ok = true;
    for (std::size_t i = 0; i < coarea.size(); ++i) {
        coarea_ok = coarea_ok && coarea[i].ok;
        coarea_rows.push_back({{"center", centers[i]}, {"ok", coarea[i].ok}});
    }
    report["coarea_ok"] = coarea_ok;
    report["coarea"] = coarea_rows;
    if (!cfg.csv_path.empty()) {
        std::ostringstream csv;
        io::write_profile_csv(csv, profiles, cfg.A_n, p.mesh.dim);
        io::write_text_file(cfg.csv_path, csv.str());
    }
    emit(cfg, report, report_data.regular ? "regular" : "not-regular");
    return 0;
}

int run_nerve(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    auto g = metric::build_geodesic_graph(data.complex, data.metric, data.dim,
                                          cfg.subdivision);
    std::vector<metric::NodeId> centers;
    if (!cfg.centers.empty())
        for (int c : parse_int_list(cfg.centers)) centers.push_back(c);
    else
        centers = regularity::max_packing(g, cfg.R0);
    auto nerve = regularity::nerve_of_cover(g, centers, cfg.R0, cfg.dim_cap);
    json report;
    report["R0"] = cfg.R0;
    report["centers"] = centers;
    report["counts"] = nerve.counts;
    report["dimension_cap"] = nerve.dimension_cap;
    if (cfg.A_n > 0) {
        std::vector<double> radii{cfg.R0};
        std::vector<metric::BallGrowthProfile> profiles;
        for (metric::NodeId c : centers)
            profiles.push_back(metric::ball_volume_profile(g, c, radii));
        const double vol = mesh::total_volume(data.complex, data.metric, data.dim);
        auto verdict = regularity::nerve_count_bound_check(nerve, vol, cfg.A_n, cfg.R0,
                                                           data.dim, profiles);
        report["bound"] = {{"N0", verdict.N0},
                           {"vertex_bound", verdict.vertex_bound},
                           {"count_ok", verdict.count_ok},
                           {"ball_volume_sum", verdict.ball_volume_sum},
                           {"sum_ok", verdict.sum_ok},
                           {"per_ball_ok", verdict.per_ball_ok}};
    }
    emit(cfg, report, "N0=" + std::to_string(nerve.counts[0]));
    return 0;
}

int run_hausdorff(const RunConfig& cfg) {
    auto data = io::load_mesh(io::load_json_file(cfg.mesh_path));
    auto g = metric::build_geodesic_graph(data.complex, data.metric, data.dim,
                                          cfg.subdivision);
    auto a = parse_int_list(cfg.nodes_a);
    auto b = parse_int_list(cfg.nodes_b);
    std::vector<metric::NodeId> na(a.begin(), a.end()), nb(b.begin(), b.end());
    const double d = metric::hausdorff_distance(g, na, nb);
    json report;
    report["hausdorff_distance"] = d;
    emit(cfg, report, format_double(d));
    return 0;
}

int run_constants(const RunConfig& cfg) {
    json report;
    json dims = json::array();
    std::ostringstream line;
    for (int d = 1; d <= cfg.n; ++d) {
        const double C = cfg.C[d - 1];
        auto k = chains::isoperimetric_constants(d, C);
        dims.push_back({{"n", d}, {"C_n", C}, {"alpha_n", k.alpha_n}, {"beta_n", k.beta_n}});
        line << "n=" << d << " alpha=" << k.alpha_n << " beta=" << k.beta_n << "  ";
    }
    report["constants"] = dims;
    if (cfg.n >= 2) {
        auto cert = chains::regularity_constant_A(cfg.n, cfg.C[cfg.n - 2], cfg.C[cfg.n - 1]);
        report["A"] = {{"value", cert.A},
                       {"slack_a1", cert.slack_a1},
                       {"slack_a2", cert.slack_a2},
                       {"slack_a3", cert.slack_a3},
                       {"slack_strict", cert.slack_strict},
                       {"bisection_tol", cert.bisection_tol},
                       {"maximal", cert.maximal}};
        line << "A=" << cert.A;
    }
    emit(cfg, report, line.str());
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args) {
    RunConfig cfg;
    cfg.C.assign(6, 1.0);

    CLI::App app{"systolekit: systolic geometry on PL pseudomanifolds"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
        sub->add_option("--out", cfg.out_path, "output artifact path");
        sub->add_option("--subdivision", cfg.subdivision, "geodesic subdivision level");
        sub->add_option("--lp-tol", cfg.lp_tol, "LP comparison tolerance");
        sub->add_option("--snap", cfg.snap, "face classification snap tolerance");
    };

    auto* validate = app.add_subcommand("validate", "check the pseudomanifold axioms");
    validate->add_option("--mesh", cfg.mesh_path)->required();
    add_common(validate);

    auto* volume = app.add_subcommand("volume", "total PL volume");
    volume->add_option("--mesh", cfg.mesh_path)->required();
    add_common(volume);

    auto* systole = app.add_subcommand("systole", "relative systole");
    systole->add_option("--mesh", cfg.mesh_path)->required();
    systole->add_option("--phi", cfg.phi_path)->required();
    systole->add_option("--pi", cfg.pi_path);
    add_common(systole);

    auto* ratio = app.add_subcommand("ratio", "systolic ratio");
    ratio->add_option("--mesh", cfg.mesh_path)->required();
    ratio->add_option("--phi", cfg.phi_path)->required();
    ratio->add_option("--pi", cfg.pi_path);
    add_common(ratio);

    auto* net = app.add_subcommand("net", "greedy alpha-dense net");
    net->add_option("--mesh", cfg.mesh_path)->required();
    net->add_option("--alpha", cfg.alpha)->required();
    add_common(net);

    auto* extend = app.add_subcommand("extend", "build the cubical extension");
    extend->add_option("--mesh", cfg.mesh_path)->required();
    extend->add_option("--net", cfg.net_path)->required();
    extend->add_option("--eps", cfg.eps)->required();
    extend->add_option("--delta", cfg.delta);
    add_common(extend);

    auto* embed = app.add_subcommand("embed-report", "embedding diagnostics");
    embed->add_option("--mesh", cfg.mesh_path)->required();
    embed->add_option("--net", cfg.net_path)->required();
    embed->add_option("--eps", cfg.eps)->required();
    embed->add_option("--delta", cfg.delta);
    embed->add_option("--stride", cfg.stride);
    add_common(embed);

    auto* fill = app.add_subcommand("fill", "LP filling volume");
    fill->add_option("--complex", cfg.complex_path)->required();
    fill->add_option("--chain", cfg.chain_path)->required();
    add_common(fill);

    auto* iso = app.add_subcommand("iso-check", "isoperimetric verdict for a cycle");
    iso->add_option("--complex", cfg.complex_path)->required();
    iso->add_option("--chain", cfg.chain_path)->required();
    iso->add_option("--n", cfg.n);
    iso->add_option("--c1", cfg.C[0]);
    iso->add_option("--c2", cfg.C[1]);
    iso->add_option("--c3", cfg.C[2]);
    iso->add_option("--c4", cfg.C[3]);
    iso->add_option("--c5", cfg.C[4]);
    iso->add_option("--c6", cfg.C[5]);
    add_common(iso);

    auto* reg = app.add_subcommand("regularity", "ball growth + coarea verdicts");
    reg->add_option("--mesh", cfg.mesh_path)->required();
    reg->add_option("--phi", cfg.phi_path)->required();
    reg->add_option("--pi", cfg.pi_path);
    reg->add_option("--eps", cfg.eps)->required();
    reg->add_option("--A", cfg.A_n)->required();
    reg->add_option("--a", cfg.shift_a);
    reg->add_option("--centers", cfg.centers);
    reg->add_option("--radii", cfg.radii);
    reg->add_option("--csv", cfg.csv_path);
    add_common(reg);

    auto* nerve = app.add_subcommand("nerve", "nerve of the doubled-ball cover");
    nerve->add_option("--mesh", cfg.mesh_path)->required();
    nerve->add_option("--r0", cfg.R0)->required();
    nerve->add_option("--centers", cfg.centers);
    nerve->add_option("--A", cfg.A_n);
    nerve->add_option("--dim-cap", cfg.dim_cap);
    add_common(nerve);

    auto* hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance of node sets");
    hausdorff->add_option("--mesh", cfg.mesh_path)->required();
    hausdorff->add_option("--a", cfg.nodes_a)->required();
    hausdorff->add_option("--b", cfg.nodes_b)->required();
    add_common(hausdorff);

    auto* consts = app.add_subcommand("constants", "isoperimetric constants and feasible A");
    consts->add_option("--n", cfg.n)->required();
    consts->add_option("--c1", cfg.C[0]);
    consts->add_option("--c2", cfg.C[1]);
    consts->add_option("--c3", cfg.C[2]);
    consts->add_option("--c4", cfg.C[3]);
    consts->add_option("--c5", cfg.C[4]);
    consts->add_option("--c6", cfg.C[5]);
    add_common(consts);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    parallel::set_workers(cfg.workers);
    try {
        if (app.got_subcommand(validate)) { cfg.subcommand = "validate"; return run_validate(cfg); }
        if (app.got_subcommand(volume)) { cfg.subcommand = "volume"; return run_volume(cfg); }
        if (app.got_subcommand(systole)) { cfg.subcommand = "systole"; return run_systole(cfg, false); }
        if (app.got_subcommand(ratio)) { cfg.subcommand = "ratio"; return run_systole(cfg, true); }
        if (app.got_subcommand(net)) { cfg.subcommand = "net"; return run_net(cfg); }
        if (app.got_subcommand(extend)) { cfg.subcommand = "extend"; return run_extend(cfg); }
        if (app.got_subcommand(embed)) { cfg.subcommand = "embed-report"; return run_embed_report(cfg); }
        if (app.got_subcommand(fill)) { cfg.subcommand = "fill"; return run_fill(cfg); }
        if (app.got_subcommand(iso)) { cfg.subcommand = "iso-check"; return run_iso_check(cfg); }
        if (app.got_subcommand(reg)) { cfg.subcommand = "regularity"; return run_regularity(cfg); }
        if (app.got_subcommand(nerve)) { cfg.subcommand = "nerve"; return run_nerve(cfg); }
        if (app.got_subcommand(hausdorff)) { cfg.subcommand = "hausdorff"; return run_hausdorff(cfg); }
        if (app.got_subcommand(consts)) { cfg.subcommand = "constants"; return run_constants(cfg); }
    } catch (const Error& e) {
        json err;
        err["error"] = e.code();
        err["detail"] = e.what();
        std::cout << err.dump(2) << "\n";
        return e.code() == "MalformedInput" ? 2 : 1;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "InternalError";
        err["detail"] = e.what();
        std::cout << err.dump(2) << "\n";
        return 1;
    }
    return 2;
}

} // namespace systolekit::cli
