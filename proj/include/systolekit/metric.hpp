#pragma once

#include "systolekit/mesh.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace systolekit::metric {

using mesh::Simplex;
using mesh::VertexId;
using NodeId = int;

/// Barycentric grid point: (vertex, numerator) pairs with positive
/// numerators summing to the subdivision level. Shared faces produce
/// identical keys from every coface.
struct NodeKey {
    std::vector<std::pair<VertexId, int>> parts;
    auto operator<=>(const NodeKey&) const = default;
};

/// Metric graph approximating the length metric of a PL pseudomanifold.
/// Nodes are the level-k barycentric grid points of the top simplices; arcs
/// are all intra-simplex chords with their flat lengths. Also carries the
/// Freudenthal pieces of each top simplex for ball-volume estimates.
/// Immutable after construction.
struct GeodesicGraph {
    int level = 0;
    int mesh_dim = 0;
    double total_volume = 0.0;
    double min_arc_length = 0.0;
    double max_piece_diameter = 0.0;
    double max_piece_volume = 0.0;

    std::vector<NodeKey> keys;                     // NodeId -> key
    std::vector<VertexId> node_anchor;             // support vertex with max weight
    std::vector<NodeId> vertex_node;               // mesh vertex order -> NodeId
    std::vector<VertexId> vertex_ids;              // mesh vertex order -> VertexId

    // CSR adjacency
    std::vector<std::size_t> adj_offset;
    std::vector<NodeId> adj_node;
    std::vector<double> adj_length;

    // Freudenthal pieces, grouped by top simplex: pieces of simplex s are
    // [piece_offset[s], piece_offset[s+1]), each with mesh_dim+1 corners.
    std::vector<std::size_t> piece_offset;
    std::vector<NodeId> piece_corners;
    std::vector<double> piece_volume;              // per top simplex (equal within)
    std::vector<double> piece_diameter;            // per top simplex (max over pieces)

    int node_count() const { return static_cast<int>(keys.size()); }
    NodeId node_of_vertex(VertexId v) const;
};

GeodesicGraph build_geodesic_graph(const mesh::SimplicialComplex& complex,
                                   const mesh::PLMetric& metric, int n, int level);

/// Single-source shortest-path distances. Throws DisconnectedPair only from
/// distance(); fields report +inf for unreachable nodes.
std::vector<double> distance_field(const GeodesicGraph& g, NodeId source);
std::vector<double> distance_field(const GeodesicGraph& g, std::span<const NodeId> sources);
double distance(const GeodesicGraph& g, NodeId v, NodeId w);
double diameter(const GeodesicGraph& g);

struct EpsilonNet {
    std::vector<NodeId> points;
    double alpha = 0.0;            // requested covering radius
    double covering_radius = 0.0;  // achieved
    double packing_radius = std::numeric_limits<double>::infinity(); // min pairwise dist / 2
};

/// Greedy farthest-point net with covering radius <= alpha. Starts at the
/// lowest node index; argmax ties break to the lowest index.
EpsilonNet alpha_dense_net(const GeodesicGraph& g, double alpha);

/// Covering radius of an arbitrary point set (net certificates).
double covering_radius(const GeodesicGraph& g, std::span<const NodeId> points);

struct BallGrowthProfile {
    NodeId center = 0;
    std::vector<double> radii;
    std::vector<double> volumes;
    std::vector<double> error_bounds; // straddling pieces x max piece volume
};

/// Ball volumes by barycenter membership of the Freudenthal pieces.
BallGrowthProfile ball_volume_profile(const GeodesicGraph& g, NodeId center,
                                      std::span<const double> radii);

double hausdorff_distance(const GeodesicGraph& g, std::span<const NodeId> a,
                          std::span<const NodeId> b);

struct DistortionReport {
    double eta = 0.0;                  // max of dist - ||I0(v)-I0(v')||_inf over near pairs
    double worst_upper_violation = 0.0; // max of ||I0(v)-I0(v')||_inf - dist (should be ~0)
    bool upper_bound_ok = true;
    std::size_t pairs_checked = 0;
    double fp_tolerance = 0.0;
};

/// Samples node pairs with dist < 1/2 and reports the additive distortion of
/// the clamped coordinate map against the graph metric. `stride` subsamples
/// sources and targets deterministically.
DistortionReport net_distortion_report(const GeodesicGraph& g, const EpsilonNet& net,
                                       int stride = 1);

/// Clamped distances min(dist(v, net_i), 1) for all nodes v; row-major
/// [node][net point]. The raw coordinate matrix of the Kuratowski-style map.
std::vector<std::vector<double>> coordinate_matrix(const GeodesicGraph& g,
                                                   const EpsilonNet& net);

} // namespace systolekit::metric
