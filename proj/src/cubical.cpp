#include "systolekit/cubical.hpp"

#include "systolekit/kernels.hpp"
#include "systolekit/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>

namespace systolekit::cubical {

int CubeCell::dim() const {
    int d = 0;
    for (Tag t : spec)
        if (t == Tag::Free) ++d;
    return d;
}

bool CubeCell::is_face_of(const CubeCell& other) const {
    if (spec.size() != other.spec.size()) return false;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (other.spec[i] == Tag::Free) continue;
        if (spec[i] != other.spec[i]) return false;
    }
    return true;
}

bool CubeCell::contains_point(std::span<const double> p, double tol) const {
    if (p.size() != spec.size()) return false;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        switch (spec[i]) {
            case Tag::Zero:
                if (std::fabs(p[i]) > tol) return false;
                break;
            case Tag::One:
                if (std::fabs(p[i] - 1.0) > tol) return false;
                break;
            case Tag::Free:
                if (p[i] < -tol || p[i] > 1.0 + tol) return false;
                break;
        }
    }
    return true;
}

std::string CubeCell::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < spec.size(); ++i) {
        if (i) os << ",";
        os << (spec[i] == Tag::Zero ? "0" : spec[i] == Tag::One ? "1" : "*");
    }
    return os.str();
}

CubeCell CubeCell::parse(const std::string& text) {
    CubeCell cell;
    std::istringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok == "0")
            cell.spec.push_back(Tag::Zero);
        else if (tok == "1")
            cell.spec.push_back(Tag::One);
        else if (tok == "*")
            cell.spec.push_back(Tag::Free);
        else
            fail("MalformedInput", "bad cell spec token '" + tok + "'");
    }
    if (cell.spec.empty()) fail("MalformedInput", "empty cell spec");
    return cell;
}

void CubeComplex::insert_with_faces(const CubeCell& cell) {
    if (static_cast<int>(cell.spec.size()) != ambient_dim)
        fail("MalformedInput", "cell ambient dimension mismatch");
    if (cell.dim() > 20) fail("MalformedInput", "cell dimension too large to close under faces");
    // enumerate all faces: each free coordinate stays free or fixes to 0/1
    std::vector<std::size_t> free_idx;
    for (std::size_t i = 0; i < cell.spec.size(); ++i)
        if (cell.spec[i] == Tag::Free) free_idx.push_back(i);
    const std::size_t f = free_idx.size();
    std::vector<int> choice(f, 0); // 0=free, 1=zero, 2=one
    for (;;) {
        CubeCell face = cell;
        for (std::size_t i = 0; i < f; ++i)
            if (choice[i] == 1)
                face.spec[free_idx[i]] = Tag::Zero;
            else if (choice[i] == 2)
                face.spec[free_idx[i]] = Tag::One;
        cells.insert(std::move(face));
        std::size_t pos = 0;
        while (pos < f && choice[pos] == 2) choice[pos++] = 0;
        if (pos == f) break;
        ++choice[pos];
    }
}

int CubeComplex::dim() const {
    int d = -1;
    for (const CubeCell& c : cells) d = std::max(d, c.dim());
    return d;
}

std::vector<std::size_t> CubeComplex::census() const {
    std::vector<std::size_t> counts(std::max(dim() + 1, 0), 0);
    for (const CubeCell& c : cells) ++counts[c.dim()];
    return counts;
}

std::vector<CubeCell> CubeComplex::cells_of_dim(int d) const {
    std::vector<CubeCell> out;
    for (const CubeCell& c : cells)
        if (c.dim() == d) out.push_back(c);
    return out;
}

CubeCell minimal_face(std::span<const double> p, double tol) {
    CubeCell cell;
    cell.spec.reserve(p.size());
    for (double x : p) {
        if (std::fabs(x) <= tol)
            cell.spec.push_back(Tag::Zero);
        else if (std::fabs(x - 1.0) <= tol)
            cell.spec.push_back(Tag::One);
        else
            cell.spec.push_back(Tag::Free);
    }
    return cell;
}

NetFields compute_net_fields(const GeodesicGraph& g, const EpsilonNet& net) {
    NetFields fields;
    fields.rows.resize(net.points.size());
    parallel::for_chunks(net.points.size(), 1, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t i = lo; i < hi; ++i)
            fields.rows[i] = metric::distance_field(g, net.points[i]);
    });
    return fields;
}

std::vector<double> coordinate_map(const NetFields& fields, NodeId v,
                                   const ExtensionParams& params) {
    if (params.delta <= 0) fail("OutOfRange", "clamp delta must be positive");
    std::vector<double> coords;
    coords.reserve(fields.rows.size());
    for (const auto& row : fields.rows) {
        const double d = row[v];
        coords.push_back(d >= params.delta ? 1.0 : d / params.delta);
    }
    return coords;
}

std::vector<double> coordinate_map(const GeodesicGraph& g, const EpsilonNet& net, NodeId v,
                                   const ExtensionParams& params) {
    return coordinate_map(compute_net_fields(g, net), v, params);
}

std::vector<double> embed(const NetFields& fields, NodeId v, const ExtensionParams& params) {
    auto coords = coordinate_map(fields, v, params);
    return retract_point<double>(coords, params.eps);
}

std::vector<double> embed(const GeodesicGraph& g, const EpsilonNet& net, NodeId v,
                          const ExtensionParams& params) {
    return embed(compute_net_fields(g, net), v, params);
}

std::vector<std::vector<double>> embed_all(const GeodesicGraph& g, const EpsilonNet& net,
                                           const ExtensionParams& params) {
    const auto fields = compute_net_fields(g, net);
    std::vector<std::vector<double>> out(g.node_count());
    parallel::for_chunks(out.size(), 256, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t v = lo; v < hi; ++v)
            out[v] = embed(fields, static_cast<NodeId>(v), params);
    });
    return out;
}

CubeComplex build_extension(const GeodesicGraph& g, const EpsilonNet& net,
                            const ExtensionParams& params) {
    const auto images = embed_all(g, net, params);
    CubeComplex K;
    K.ambient_dim = static_cast<int>(net.points.size());
    for (std::size_t v = 0; v < images.size(); ++v) {
        const double least = kernels::min_value(images[v]);
        if (least > params.snap)
            fail("NetTooSparse",
                 "image of node " + std::to_string(v) +
                     " has no zero coordinate; the net is not eps-dense");
        K.insert_with_faces(minimal_face(images[v], params.snap));
    }
    return K;
}

InjectivityReport injectivity_check(const GeodesicGraph& g, const EpsilonNet& net,
                                    const ExtensionParams& params, int stride) {
    if (stride < 1) stride = 1;
    InjectivityReport rep;
    const auto fields = compute_net_fields(g, net);
    const std::size_t n = g.keys.size();
    std::vector<std::vector<double>> images(n);
    for (std::size_t v = 0; v < n; ++v) images[v] = embed(fields, static_cast<NodeId>(v), params);
    for (std::size_t v = 0; v < n; v += stride) {
        const auto dfield = metric::distance_field(g, static_cast<NodeId>(v));
        for (std::size_t w = v + stride; w < n; w += stride) {
            const double d = dfield[w];
            const double sep = kernels::chebyshev(images[v], images[w]);
            if (d >= 2.0 * params.eps) {
                ++rep.far_pairs;
                rep.min_separation_far = std::min(rep.min_separation_far, sep);
                if (sep <= rep.collision_tol) rep.far_collision = true;
            } else {
                ++rep.near_pairs;
                if (sep <= rep.collision_tol)
                    rep.collisions_near.emplace_back(static_cast<NodeId>(v),
                                                     static_cast<NodeId>(w));
            }
        }
    }
    return rep;
}

namespace {

// Shortest-path metric over grid points of the complex's cells. Grid
// coordinates are integer multiples of 1/s, keyed exactly.
struct CubeGraph {
    int subdiv;
    std::vector<std::vector<double>> coords;              // node -> point
    std::map<std::vector<int>, int> index;                // scaled coords -> node
    std::vector<std::vector<std::pair<int, double>>> adj; // l-inf weighted arcs
    std::vector<std::vector<int>> cell_nodes;             // per cell of K (set order)

    static double linf(std::span<const double> a, std::span<const double> b) {
        return kernels::chebyshev(a, b);
    }
};

CubeGraph build_cube_graph(const CubeComplex& K, int subdiv) {
    CubeGraph cg;
    cg.subdiv = subdiv;
    cg.cell_nodes.reserve(K.cells.size());
    for (const CubeCell& cell : K.cells) {
        std::vector<std::size_t> free_idx;
        for (std::size_t i = 0; i < cell.spec.size(); ++i)
            if (cell.spec[i] == Tag::Free) free_idx.push_back(i);
        const std::size_t f = free_idx.size();
        std::vector<int> grid(f, 0);
        std::vector<int> nodes;
        for (;;) {
            std::vector<int> key(cell.spec.size());
            for (std::size_t i = 0; i < cell.spec.size(); ++i)
                key[i] = cell.spec[i] == Tag::One ? subdiv : 0;
            for (std::size_t i = 0; i < f; ++i) key[free_idx[i]] = grid[i];
            auto it = cg.index.find(key);
            int id;
            if (it != cg.index.end()) {
                id = it->second;
            } else {
                id = static_cast<int>(cg.coords.size());
                cg.index.emplace(key, id);
                std::vector<double> pt(key.size());
                for (std::size_t i = 0; i < key.size(); ++i)
                    pt[i] = static_cast<double>(key[i]) / subdiv;
                cg.coords.push_back(std::move(pt));
                cg.adj.emplace_back();
            }
            nodes.push_back(id);
            std::size_t pos = 0;
            while (pos < f && grid[pos] == subdiv) grid[pos++] = 0;
            if (pos == f) break;
            ++grid[pos];
        }
        // all-pairs arcs inside the cell (cells are l-inf convex)
        for (std::size_t i = 0; i < nodes.size(); ++i)
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                const double w = CubeGraph::linf(cg.coords[nodes[i]], cg.coords[nodes[j]]);
                cg.adj[nodes[i]].emplace_back(nodes[j], w);
                cg.adj[nodes[j]].emplace_back(nodes[i], w);
            }
        cg.cell_nodes.push_back(std::move(nodes));
    }
    return cg;
}

std::vector<double> cube_graph_distances(const CubeGraph& cg, std::span<const int> sources,
                                         std::span<const double> source_dist) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(cg.coords.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const double d0 = source_dist.empty() ? 0.0 : source_dist[i];
        if (d0 < dist[sources[i]]) {
            dist[sources[i]] = d0;
            heap.emplace(d0, sources[i]);
        }
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (const auto& [w, len] : cg.adj[v]) {
            if (d + len < dist[w]) {
                dist[w] = d + len;
                heap.emplace(d + len, w);
            }
        }
    }
    return dist;
}

} // namespace

double cube_distance(const CubeComplex& K, std::span<const double> p,
                     std::span<const double> q, int subdiv) {
    if (static_cast<int>(p.size()) != K.ambient_dim ||
        static_cast<int>(q.size()) != K.ambient_dim)
        fail("MalformedInput", "point dimension does not match the complex");
    const double tol = 1e-9;
    CubeGraph cg = build_cube_graph(K, subdiv);
    std::vector<int> pcells, qcells;
    {
        int ci = 0;
        for (const CubeCell& cell : K.cells) {
            if (cell.contains_point(p, tol)) pcells.push_back(ci);
            if (cell.contains_point(q, tol)) qcells.push_back(ci);
            ++ci;
        }
    }
    if (pcells.empty()) fail("PointNotInComplex", "first point lies in no cell");
    if (qcells.empty()) fail("PointNotInComplex", "second point lies in no cell");
    // direct arc when a common cell contains both
    double best = std::numeric_limits<double>::infinity();
    for (int ci : pcells)
        if (std::find(qcells.begin(), qcells.end(), ci) != qcells.end())
            best = CubeGraph::linf(p, q);
    // p connects to the grid nodes of its cells, q likewise
    std::vector<int> sources;
    std::vector<double> source_dist;
    for (int ci : pcells)
        for (int node : cg.cell_nodes[ci]) {
            sources.push_back(node);
            source_dist.push_back(CubeGraph::linf(p, cg.coords[node]));
        }
    auto dist = cube_graph_distances(cg, sources, source_dist);
    for (int ci : qcells)
        for (int node : cg.cell_nodes[ci])
            best = std::min(best, dist[node] + CubeGraph::linf(q, cg.coords[node]));
    return best;
}

double cube_set_distance(const CubeComplex& K, const CubeCell& a, const CubeCell& b,
                         int subdiv) {
    if (!K.contains(a) || !K.contains(b))
        fail("PointNotInComplex", "cell is not part of the complex");
    CubeGraph cg = build_cube_graph(K, subdiv);
    int ai = -1, bi = -1, ci = 0;
    for (const CubeCell& cell : K.cells) {
        if (cell == a) ai = ci;
        if (cell == b) bi = ci;
        ++ci;
    }
    auto dist = cube_graph_distances(cg, cg.cell_nodes[ai], {});
    double best = std::numeric_limits<double>::infinity();
    for (int node : cg.cell_nodes[bi]) best = std::min(best, dist[node]);
    return best;
}

std::vector<double> LiftedLineExtension::lift_coordinates(double x) const {
    std::vector<double> coords;
    coords.reserve(static_cast<std::size_t>(params.periods) * params.net_base.size());
    for (int p = 0; p < params.periods; ++p)
        for (double base : params.net_base) {
            const double d = std::fabs(x - (p * params.period + base));
            coords.push_back(std::min(d, 1.0));
        }
    return coords;
}

std::vector<double> LiftedLineExtension::lift_embed(double x) const {
    auto coords = lift_coordinates(x);
    return retract_point<double>(coords, params.eps);
}

CubeCell LiftedLineExtension::lift_minimal_face(double x) const {
    auto J = lift_embed(x);
    return minimal_face(J, params.snap);
}

LiftedLineExtension build_line_extension(const LineModelParams& params) {
    if (params.periods < 1 || params.net_base.empty() || params.samples_per_period < 2)
        fail("MalformedInput", "bad line model parameters");
    LiftedLineExtension model;
    model.params = params;
    model.complex.ambient_dim =
        params.periods * static_cast<int>(params.net_base.size());
    const int total = params.periods * params.samples_per_period;
    const double step = params.period / params.samples_per_period;
    for (int i = 0; i <= total; ++i)
        model.complex.insert_with_faces(model.lift_minimal_face(i * step));
    return model;
}

SeparationReport face_separation_check(const LiftedLineExtension& model, int m,
                                       std::span<const std::pair<double, double>> pairs,
                                       int subdiv, double tol) {
    if (m < 1) fail("MalformedInput", "separation parameter m must be >= 1");
    SeparationReport rep;
    rep.m = m;
    rep.tolerance = tol;
    for (const auto& [x, y] : pairs) {
        if (std::fabs(x - y) < m) continue;
        const CubeCell cx = model.lift_minimal_face(x);
        const CubeCell cy = model.lift_minimal_face(y);
        const double sep = cube_set_distance(model.complex, cx, cy, subdiv);
        rep.min_separation = std::min(rep.min_separation, sep);
        ++rep.pairs;
        if (sep < m - tol) rep.ok = false;
    }
    return rep;
}

} // namespace systolekit::cubical
