#pragma once

#include "systolekit/chains.hpp"
#include "systolekit/cubical.hpp"
#include "systolekit/homotopy.hpp"
#include "systolekit/mesh.hpp"
#include "systolekit/metric.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace systolekit::io {

using nlohmann::json;

/// Parses a file as JSON; parse errors surface as MalformedInput (exit 2).
json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

struct MeshData {
    mesh::SimplicialComplex complex;
    mesh::PLMetric metric;
    int dim = 0;
};

/// {"dim": n, "simplices": [[v...],...], "edge_lengths": [[u,v,len],...]}
MeshData load_mesh(const json& j);

/// {"generators": [...], "relators": [...], "oracle": "free|free_abelian"}
homotopy::GroupPresentation load_presentation(const json& j);

struct HomomorphismData {
    homotopy::GroupPresentation pi;
    homotopy::EdgeHomomorphism phi;
    bool has_presentation = false;
};

/// {"tree_edges": [[u,v],...], "edge_words": {"u-v": "a b^-1", ...},
///  "presentation": {...} (optional)}
HomomorphismData load_homomorphism(const json& j);

json net_to_json(const metric::EpsilonNet& net);
metric::EpsilonNet load_net(const json& j);

/// {"ambient_dim": N, "cells": [{"spec": "0,*,1"}, ...]} in lexicographic
/// spec order.
json complex_to_json(const cubical::CubeComplex& K);
cubical::CubeComplex load_complex(const json& j);

/// {"degree": k, "coefficients": [["cell-spec", value], ...]}
json chain_to_json(const chains::CubicalChain& c);
chains::CubicalChain load_chain(const json& j);

/// CSV rows radius,volume,lower_bound,verdict; profiles are emitted in
/// order, lower bound A_n R^n.
void write_profile_csv(std::ostream& out,
                       std::span<const metric::BallGrowthProfile> profiles, double A_n,
                       int n);

} // namespace systolekit::io
