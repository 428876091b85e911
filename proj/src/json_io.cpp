#include "systolekit/json_io.hpp"

#include "systolekit/errors.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

namespace systolekit::io {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("MalformedInput", "cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail("MalformedInput", "JSON parse error in '" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("MalformedInput", "cannot write file '" + path + "'");
    out << content;
}

namespace {

[[noreturn]] void bad(const std::string& what) { fail("MalformedInput", what); }

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) bad(std::string("missing field '") + name + "'");
    return *it;
}

} // namespace

MeshData load_mesh(const json& j) {
    MeshData data;
    if (!j.is_object()) bad("mesh document must be an object");
    data.dim = field(j, "dim").get<int>();
    std::vector<mesh::Simplex> simplices;
    for (const auto& s : field(j, "simplices")) {
        mesh::Simplex simplex;
        for (const auto& v : s) simplex.push_back(v.get<int>());
        simplices.push_back(std::move(simplex));
    }
    data.complex = mesh::SimplicialComplex::from_simplices(simplices);
    for (const auto& e : field(j, "edge_lengths")) {
        if (!e.is_array() || e.size() != 3) bad("edge_lengths entries must be [u, v, len]");
        data.metric.set(e[0].get<int>(), e[1].get<int>(), e[2].get<double>());
    }
    return data;
}

homotopy::GroupPresentation load_presentation(const json& j) {
    homotopy::GroupPresentation pi;
    for (const auto& g : field(j, "generators")) pi.generators.push_back(g.get<std::string>());
    const std::string kind = field(j, "oracle").get<std::string>();
    if (kind == "free")
        pi.oracle = homotopy::OracleKind::Free;
    else if (kind == "free_abelian")
        pi.oracle = homotopy::OracleKind::FreeAbelian;
    else if (kind == "custom")
        pi.oracle = homotopy::OracleKind::Custom;
    else
        bad("oracle must be free|free_abelian|custom");
    if (auto it = j.find("relators"); it != j.end())
        for (const auto& r : *it) pi.relators.push_back(homotopy::parse_word(pi, r.get<std::string>()));
    pi.validate();
    return pi;
}

HomomorphismData load_homomorphism(const json& j) {
    HomomorphismData data;
    if (auto it = j.find("presentation"); it != j.end()) {
        data.pi = load_presentation(*it);
        data.has_presentation = true;
    }
    for (const auto& e : field(j, "tree_edges")) {
        if (!e.is_array() || e.size() != 2) bad("tree_edges entries must be [u, v]");
        data.phi.tree_edges.push_back(mesh::edge_key(e[0].get<int>(), e[1].get<int>()));
    }
    for (const auto& [key, value] : field(j, "edge_words").items()) {
        const auto dash = key.find('-');
        if (dash == std::string::npos) bad("edge_words keys must look like 'u-v'");
        int u = 0, v = 0;
        try {
            u = std::stoi(key.substr(0, dash));
            v = std::stoi(key.substr(dash + 1));
        } catch (const std::exception&) {
            bad("edge_words key '" + key + "' is not a vertex pair");
        }
        if (!data.has_presentation) bad("edge_words require a presentation");
        homotopy::Word w = homotopy::parse_word(data.pi, value.get<std::string>());
        if (u > v) w = w.inverse(); // stored for the low->high direction
        data.phi.edge_words[mesh::edge_key(u, v)] = std::move(w);
    }
    return data;
}

json net_to_json(const metric::EpsilonNet& net) {
    json j;
    j["alpha"] = net.alpha;
    j["covering_radius"] = net.covering_radius;
    if (std::isfinite(net.packing_radius))
        j["packing_radius"] = net.packing_radius;
    else
        j["packing_radius"] = nullptr;
    j["nodes"] = net.points;
    return j;
}

metric::EpsilonNet load_net(const json& j) {
    metric::EpsilonNet net;
    for (const auto& v : field(j, "nodes")) net.points.push_back(v.get<int>());
    if (net.points.empty()) bad("net has no nodes");
    if (auto it = j.find("alpha"); it != j.end()) net.alpha = it->get<double>();
    if (auto it = j.find("covering_radius"); it != j.end())
        net.covering_radius = it->get<double>();
    return net;
}

json complex_to_json(const cubical::CubeComplex& K) {
    json j;
    j["ambient_dim"] = K.ambient_dim;
    json cells = json::array();
    for (const auto& cell : K.cells) // set order = lexicographic tag order
        cells.push_back(json{{"spec", cell.to_string()}});
    j["cells"] = cells;
    return j;
}

cubical::CubeComplex load_complex(const json& j) {
    cubical::CubeComplex K;
    K.ambient_dim = field(j, "ambient_dim").get<int>();
    for (const auto& c : field(j, "cells")) {
        cubical::CubeCell cell = cubical::CubeCell::parse(field(c, "spec").get<std::string>());
        if (cell.ambient_dim() != K.ambient_dim) bad("cell spec dimension mismatch");
        K.insert_with_faces(cell);
    }
    return K;
}

json chain_to_json(const chains::CubicalChain& c) {
    json j;
    j["degree"] = c.degree;
    json coeffs = json::array();
    for (const auto& [cell, k] : c.coeffs)
        coeffs.push_back(json::array({cell.to_string(), static_cast<double>(k)}));
    j["coefficients"] = coeffs;
    return j;
}

chains::CubicalChain load_chain(const json& j) {
    chains::CubicalChain c;
    c.degree = field(j, "degree").get<int>();
    if (auto it = j.find("ambient_dim"); it != j.end()) c.ambient_dim = it->get<int>();
    const auto& coeffs = field(j, "coefficients");
    for (const auto& entry : coeffs) {
        if (!entry.is_array() || entry.size() != 2) bad("coefficients entries must be [spec, value]");
        cubical::CubeCell cell = cubical::CubeCell::parse(entry[0].get<std::string>());
        if (c.ambient_dim == 0) c.ambient_dim = cell.ambient_dim();
        chains::Rational k;
        if (entry[1].is_number_integer())
            k = entry[1].get<long long>();
        else
            k = chains::Rational(entry[1].get<double>()); // exact binary expansion
        c.add(cell, k);
    }
    if (c.ambient_dim == 0) bad("chain has no cells to infer the ambient dimension from");
    return c;
}

void write_profile_csv(std::ostream& out,
                       std::span<const metric::BallGrowthProfile> profiles, double A_n,
                       int n) {
    out << "radius,volume,lower_bound,verdict\n";
    for (const auto& profile : profiles) {
        for (std::size_t i = 0; i < profile.radii.size(); ++i) {
            const double bound = A_n * std::pow(profile.radii[i], n);
            out << profile.radii[i] << "," << profile.volumes[i] << "," << bound << ","
                << (profile.volumes[i] >= bound ? "pass" : "fail") << "\n";
        }
    }
}

} // namespace systolekit::io
