#pragma once

#include "systolekit/errors.hpp"
#include "systolekit/metric.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace systolekit::cubical {

using metric::EpsilonNet;
using metric::GeodesicGraph;
using metric::NodeId;

enum class Tag : std::int8_t { Zero = 0, One = 1, Free = 2 };

/// Axis cell of [0,1]^N: per coordinate fixed at 0, fixed at 1, or free.
struct CubeCell {
    std::vector<Tag> spec;

    int ambient_dim() const { return static_cast<int>(spec.size()); }
    int dim() const;
    bool is_face_of(const CubeCell& other) const;
    bool contains_point(std::span<const double> p, double tol = 0.0) const;
    /// "0,*,1" with '*' for free coordinates.
    std::string to_string() const;
    static CubeCell parse(const std::string& text);

    auto operator<=>(const CubeCell&) const = default;
};

/// Set of axis cells of [0,1]^N, closed under faces; cells are kept in
/// lexicographic tag order (0 < 1 < *), which fixes the export order.
struct CubeComplex {
    int ambient_dim = 0;
    std::set<CubeCell> cells;

    void insert_with_faces(const CubeCell& cell);
    bool contains(const CubeCell& cell) const { return cells.count(cell) > 0; }
    int dim() const;
    /// Cell counts indexed by dimension.
    std::vector<std::size_t> census() const;
    std::vector<CubeCell> cells_of_dim(int d) const;
};

struct ExtensionParams {
    double eps = 0.25;   // retraction collar, in (0, 1/2)
    double delta = 1.0;  // distance clamp; coordinates are min(dist, delta)/delta
    double snap = 1e-9;  // face-classification snap for the floating pipeline
};

/// Piecewise-affine retraction of [0,1]: 0 on [0,eps], 1 on [1-eps,1],
/// affine with slope 1/(1-2eps) between. Plateaus are exact by construction.
template <class T>
T retract_scalar(const T& t, const T& eps) {
    if (t < T(0) || t > T(1)) fail("OutOfRange", "retract_scalar argument outside [0,1]");
    if (!(eps > T(0)) || !(eps < T(1) / T(2)))
        fail("OutOfRange", "retraction parameter outside (0, 1/2)");
    if (t <= eps) return T(0);
    if (t >= T(1) - eps) return T(1);
    return (t - eps) / (T(1) - T(2) * eps);
}

/// Coordinatewise retraction of a point of the unit cube.
template <class T>
std::vector<T> retract_point(std::span<const T> p, const T& eps) {
    std::vector<T> out;
    out.reserve(p.size());
    for (const T& t : p) out.push_back(retract_scalar(t, eps));
    return out;
}

/// Clamped, rescaled distance coordinates min(d_i, delta)/delta.
template <class T>
std::vector<T> clamp_coordinates(std::span<const T> dists, const T& delta) {
    std::vector<T> out;
    out.reserve(dists.size());
    for (const T& d : dists) out.push_back(d >= delta ? T(1) : d / delta);
    return out;
}

/// Smallest face of [0,1]^N containing p: coordinates within tol of 0 or 1
/// are fixed there, the rest are free.
CubeCell minimal_face(std::span<const double> p, double tol = 0.0);

/// Distance fields from the net points (row per net point).
struct NetFields {
    std::vector<std::vector<double>> rows;
};
NetFields compute_net_fields(const GeodesicGraph& g, const EpsilonNet& net);

std::vector<double> coordinate_map(const NetFields& fields, NodeId v,
                                   const ExtensionParams& params);
std::vector<double> coordinate_map(const GeodesicGraph& g, const EpsilonNet& net, NodeId v,
                                   const ExtensionParams& params);

/// J = R_eps o I_0 (no snapping; Lipschitz with constant 1/(1-2 eps)).
std::vector<double> embed(const NetFields& fields, NodeId v, const ExtensionParams& params);
std::vector<double> embed(const GeodesicGraph& g, const EpsilonNet& net, NodeId v,
                          const ExtensionParams& params);

/// Embedded images of all nodes, row per node.
std::vector<std::vector<double>> embed_all(const GeodesicGraph& g, const EpsilonNet& net,
                                           const ExtensionParams& params);

/// Union of the minimal faces of J(v) over all graph nodes, closed under
/// faces. Every sampled image must have a zero coordinate (within snap) once
/// the net is eps-dense; otherwise NetTooSparse.
CubeComplex build_extension(const GeodesicGraph& g, const EpsilonNet& net,
                            const ExtensionParams& params);

struct InjectivityReport {
    /// min ||J(v)-J(v')||_inf over sampled pairs with dist >= 2 eps
    double min_separation_far = std::numeric_limits<double>::infinity();
    std::size_t far_pairs = 0;
    /// near pairs (dist < 2 eps) whose images coincide within collision_tol
    std::vector<std::pair<NodeId, NodeId>> collisions_near;
    std::size_t near_pairs = 0;
    double collision_tol = 1e-12;
    bool far_collision = false; // any far pair within collision_tol
};

InjectivityReport injectivity_check(const GeodesicGraph& g, const EpsilonNet& net,
                                    const ExtensionParams& params, int stride = 1);

/// Length-metric distance in the complex: shortest path through level-s
/// grid points of the cells, arcs joining points in a common cell with their
/// l-infinity lengths. Always >= ||p-q||_inf. Throws PointNotInComplex.
double cube_distance(const CubeComplex& K, std::span<const double> p,
                     std::span<const double> q, int subdiv = 4);

/// Same metric between two cells (min over their points).
double cube_set_distance(const CubeComplex& K, const CubeCell& a, const CubeCell& b,
                         int subdiv = 4);

/// Periodic lift of a circle extension to the line: the covering model used
/// to exercise the face-separation lemma. Coordinates are indexed by the
/// lifted net points (period-major), restricted to a finite window of
/// `periods` periods starting at 0.
struct LineModelParams {
    double period = 2.0;
    std::vector<double> net_base;   // net positions in [0, period)
    double eps = 1.0 / 3.0;
    int periods = 6;
    int samples_per_period = 120;
    double snap = 1e-9;
};

struct LiftedLineExtension {
    LineModelParams params;
    CubeComplex complex;

    std::vector<double> lift_coordinates(double x) const;
    std::vector<double> lift_embed(double x) const;
    CubeCell lift_minimal_face(double x) const;
};

LiftedLineExtension build_line_extension(const LineModelParams& params);

struct SeparationReport {
    int m = 0;
    double min_separation = std::numeric_limits<double>::infinity();
    std::size_t pairs = 0;
    double tolerance = 0.0;
    bool ok = true;
};

/// Verifies dist(K(x), K(x')) >= m - tol for all given position pairs with
/// |x - x'| >= m (pairs below m are skipped).
SeparationReport face_separation_check(const LiftedLineExtension& model, int m,
                                       std::span<const std::pair<double, double>> pairs,
                                       int subdiv = 4, double tol = 1e-9);

} // namespace systolekit::cubical
