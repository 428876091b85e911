#include "systolekit/metric.hpp"

#include "systolekit/errors.hpp"
#include "systolekit/kernels.hpp"
#include "systolekit/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace systolekit::metric {

namespace {

// Flat coordinates of a simplex's vertices from its edge lengths: Gram matrix
// relative to vertex 0, then a symmetric eigendecomposition (robust for
// degenerate simplices, where Cholesky would fail).
Eigen::MatrixXd embed_simplex(const Simplex& s, const mesh::PLMetric& metric) {
    const int n = static_cast<int>(s.size()) - 1;
    Eigen::MatrixXd gram(n, n);
    for (int i = 1; i <= n; ++i) {
        const double d0i = metric(s[0], s[i]);
        for (int j = i; j <= n; ++j) {
            const double d0j = metric(s[0], s[j]);
            const double dij = (i == j) ? 0.0 : metric(s[i], s[j]);
            gram(i - 1, j - 1) = gram(j - 1, i - 1) = 0.5 * (d0i * d0i + d0j * d0j - dij * dij);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd coords(n + 1, n);
    coords.row(0).setZero();
    coords.bottomRows(n) = es.eigenvectors() * lambda.asDiagonal();
    return coords;
}

// Weakly decreasing integer vectors in [0, level]^n (staircase bases).
void enumerate_bases(int n, int level, std::vector<int>& cur,
                     std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    const int hi = cur.empty() ? level - 1 : cur.back();
    for (int b = hi; b >= 0; --b) {
        cur.push_back(b);
        enumerate_bases(n, level, cur, out);
        cur.pop_back();
    }
}

bool weakly_decreasing(const std::vector<int>& u, int level) {
    if (u[0] > level) return false;
    for (std::size_t i = 1; i < u.size(); ++i)
        if (u[i] > u[i - 1]) return false;
    return true;
}

// Kuhn/Freudenthal pieces of the level-subdivided n-simplex, in staircase
// coordinates; each piece is a list of n+1 integer staircase points.
std::vector<std::vector<std::vector<int>>> freudenthal_pieces(int n, int level) {
    std::vector<std::vector<std::vector<int>>> pieces;
    if (n == 0) return pieces;
    std::vector<std::vector<int>> bases;
    std::vector<int> cur;
    enumerate_bases(n, level, cur, bases);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (const auto& b : bases) {
        std::vector<int> p = perm;
        do {
            std::vector<std::vector<int>> corners{b};
            std::vector<int> u = b;
            bool ok = true;
            for (int m = 0; m < n; ++m) {
                u[p[m]] += 1;
                if (!weakly_decreasing(u, level)) {
                    ok = false;
                    break;
                }
                corners.push_back(u);
            }
            if (ok) pieces.push_back(std::move(corners));
        } while (std::next_permutation(p.begin(), p.end()));
    }
    return pieces;
}

// staircase point -> barycentric numerators (length n+1, summing to level)
std::vector<int> staircase_to_bary(const std::vector<int>& u, int level) {
    const int n = static_cast<int>(u.size());
    std::vector<int> bary(n + 1);
    bary[0] = level - u[0];
    for (int j = 1; j < n; ++j) bary[j] = u[j - 1] - u[j];
    bary[n] = u[n - 1];
    return bary;
}

} // namespace

NodeId GeodesicGraph::node_of_vertex(VertexId v) const {
    auto it = std::lower_bound(vertex_ids.begin(), vertex_ids.end(), v);
    if (it == vertex_ids.end() || *it != v)
        fail("MalformedInput", "no mesh vertex " + std::to_string(v));
    return vertex_node[it - vertex_ids.begin()];
}

GeodesicGraph build_geodesic_graph(const mesh::SimplicialComplex& complex,
                                   const mesh::PLMetric& metric, int n, int level) {
    if (level < 1) fail("MalformedInput", "subdivision level must be >= 1");
    GeodesicGraph g;
    g.level = level;
    g.mesh_dim = n;

    const auto& top = complex.cells(n);
    if (top.empty()) fail("MalformedInput", "complex has no top simplices");

    // collect node keys: vertices first (in id order), then grid points
    std::map<NodeKey, NodeId> index;
    for (VertexId v : complex.vertices()) {
        NodeKey key{{{v, level}}};
        NodeId id = static_cast<NodeId>(g.keys.size());
        index.emplace(std::move(key), id);
        g.keys.push_back({{{v, level}}});
        g.vertex_node.push_back(id);
        g.vertex_ids.push_back(v);
    }

    // barycentric numerator grids per top simplex
    std::vector<std::vector<int>> grid_bary; // all numerator vectors, n+1 entries
    {
        std::vector<int> cur(n + 1, 0);
        // enumerate all b >= 0 with sum == level
        std::vector<std::vector<int>> stack;
        std::function<void(int, int)> rec = [&](int pos, int rem) {
            if (pos == n) {
                cur[pos] = rem;
                grid_bary.push_back(cur);
                return;
            }
            for (int b = rem; b >= 0; --b) {
                cur[pos] = b;
                rec(pos + 1, rem - b);
            }
        };
        rec(0, level);
    }

    auto key_of = [&](const Simplex& s, const std::vector<int>& bary) {
        NodeKey key;
        for (std::size_t i = 0; i < bary.size(); ++i)
            if (bary[i] > 0) key.parts.emplace_back(s[i], bary[i]);
        return key;
    };

    std::vector<std::vector<NodeId>> simplex_nodes(top.size());
    std::map<NodeKey, NodeId> grid_index;
    std::vector<NodeKey> extra;
    for (std::size_t ti = 0; ti < top.size(); ++ti) {
        simplex_nodes[ti].reserve(grid_bary.size());
        for (const auto& bary : grid_bary) {
            NodeKey key = key_of(top[ti], bary);
            auto it = index.find(key);
            if (it != index.end()) {
                simplex_nodes[ti].push_back(it->second);
                continue;
            }
            auto git = grid_index.find(key);
            if (git != grid_index.end()) {
                simplex_nodes[ti].push_back(git->second);
            } else {
                // placeholder id; final ids assigned after sorting
                NodeId placeholder = static_cast<NodeId>(index.size() + extra.size());
                (void)placeholder;
                grid_index.emplace(key, -1);
                extra.push_back(key);
                simplex_nodes[ti].push_back(-1);
            }
        }
    }
    std::sort(extra.begin(), extra.end());
    for (const NodeKey& key : extra) {
        grid_index[key] = static_cast<NodeId>(g.keys.size());
        g.keys.push_back(key);
    }
    // resolve placeholders
    for (std::size_t ti = 0; ti < top.size(); ++ti)
        for (std::size_t pi = 0; pi < grid_bary.size(); ++pi)
            if (simplex_nodes[ti][pi] < 0)
                simplex_nodes[ti][pi] = grid_index.at(key_of(top[ti], grid_bary[pi]));

    // anchors: support vertex with the largest weight, ties to lowest vertex id
    g.node_anchor.resize(g.keys.size());
    for (std::size_t i = 0; i < g.keys.size(); ++i) {
        const auto& parts = g.keys[i].parts;
        VertexId best = parts[0].first;
        int bw = parts[0].second;
        for (const auto& [v, w] : parts)
            if (w > bw) { best = v; bw = w; }
        g.node_anchor[i] = best;
    }

    // arcs: all pairs inside each top simplex, flat chord lengths
    std::map<std::pair<NodeId, NodeId>, double> arcs;
    const auto pieces_template = freudenthal_pieces(n, level);
    g.piece_offset.push_back(0);
    g.total_volume = 0.0;
    double min_arc = std::numeric_limits<double>::infinity();
    for (std::size_t ti = 0; ti < top.size(); ++ti) {
        const Simplex& s = top[ti];
        Eigen::MatrixXd vcoords = embed_simplex(s, metric);
        const int m = static_cast<int>(grid_bary.size());
        Eigen::MatrixXd pcoords(m, n);
        for (int pi = 0; pi < m; ++pi) {
            Eigen::RowVectorXd c = Eigen::RowVectorXd::Zero(n);
            for (int i = 0; i <= n; ++i)
                c += (static_cast<double>(grid_bary[pi][i]) / level) * vcoords.row(i);
            pcoords.row(pi) = c;
        }
        for (int pi = 0; pi < m; ++pi) {
            for (int qi = pi + 1; qi < m; ++qi) {
                NodeId a = simplex_nodes[ti][pi], b = simplex_nodes[ti][qi];
                if (a == b) continue;
                double len = (pcoords.row(pi) - pcoords.row(qi)).norm();
                auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
                auto it = arcs.find(key);
                if (it == arcs.end())
                    arcs.emplace(key, len);
                else
                    it->second = std::min(it->second, len);
                if (len > 0) min_arc = std::min(min_arc, len);
            }
        }

        // pieces
        const double svol = mesh::simplex_volume(s, metric);
        double pvol = svol;
        for (int i = 0; i < n; ++i) pvol /= level;
        g.piece_volume.push_back(pvol);
        g.max_piece_volume = std::max(g.max_piece_volume, pvol);
        g.total_volume += svol;
        std::map<std::vector<int>, int> bary_to_pi;
        for (int pi = 0; pi < m; ++pi) bary_to_pi[grid_bary[pi]] = pi;
        double diam = 0.0;
        for (const auto& piece : pieces_template) {
            std::vector<int> pidx;
            for (const auto& u : piece) {
                const auto bary = staircase_to_bary(u, level);
                int pi = bary_to_pi.at(bary);
                pidx.push_back(pi);
                g.piece_corners.push_back(simplex_nodes[ti][pi]);
            }
            for (std::size_t i = 0; i < pidx.size(); ++i)
                for (std::size_t j = i + 1; j < pidx.size(); ++j)
                    diam = std::max(diam, (pcoords.row(pidx[i]) - pcoords.row(pidx[j])).norm());
        }
        g.piece_diameter.push_back(diam);
        g.max_piece_diameter = std::max(g.max_piece_diameter, diam);
        g.piece_offset.push_back(g.piece_corners.size() / (n + 1));
    }
    g.min_arc_length = std::isfinite(min_arc) ? min_arc : 0.0;

    // CSR
    std::vector<std::vector<std::pair<NodeId, double>>> adj(g.keys.size());
    for (const auto& [key, len] : arcs) {
        adj[key.first].emplace_back(key.second, len);
        adj[key.second].emplace_back(key.first, len);
    }
    g.adj_offset.push_back(0);
    for (auto& nb : adj) {
        std::sort(nb.begin(), nb.end());
        for (auto& [node, len] : nb) {
            g.adj_node.push_back(node);
            g.adj_length.push_back(len);
        }
        g.adj_offset.push_back(g.adj_node.size());
    }
    return g;
}

std::vector<double> distance_field(const GeodesicGraph& g, NodeId source) {
    return distance_field(g, std::span<const NodeId>(&source, 1));
}

std::vector<double> distance_field(const GeodesicGraph& g, std::span<const NodeId> sources) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.keys.size(), inf);
    using Item = std::pair<double, NodeId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (NodeId s : sources) {
        if (s < 0 || s >= g.node_count()) fail("MalformedInput", "node id out of range");
        dist[s] = 0.0;
        heap.emplace(0.0, s);
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        for (std::size_t i = g.adj_offset[v]; i < g.adj_offset[v + 1]; ++i) {
            const NodeId w = g.adj_node[i];
            const double nd = d + g.adj_length[i];
            if (nd < dist[w]) {
                dist[w] = nd;
                heap.emplace(nd, w);
            }
        }
    }
    return dist;
}

double distance(const GeodesicGraph& g, NodeId v, NodeId w) {
    if (v == w) return 0.0;
    auto field = distance_field(g, v);
    double d = field[w];
    if (!std::isfinite(d))
        fail("DisconnectedPair", "nodes " + std::to_string(v) + " and " + std::to_string(w) +
                                     " are not connected (invalid pseudomanifold upstream)");
    return d;
}

double diameter(const GeodesicGraph& g) {
    const std::size_t n = g.keys.size();
    std::vector<double> ecc(n, 0.0);
    parallel::for_chunks(n, 16, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t v = lo; v < hi; ++v) {
            auto field = distance_field(g, static_cast<NodeId>(v));
            ecc[v] = kernels::max_value(field);
        }
    });
    return kernels::max_value(ecc);
}

EpsilonNet alpha_dense_net(const GeodesicGraph& g, double alpha) {
    if (alpha <= 0) fail("MalformedInput", "alpha must be positive");
    EpsilonNet net;
    net.alpha = alpha;
    net.points.push_back(0);
    std::vector<double> cover = distance_field(g, NodeId{0});
    while (true) {
        const std::size_t far = kernels::argmax(cover);
        const double r = cover[far];
        if (r <= alpha) {
            net.covering_radius = r;
            break;
        }
        net.points.push_back(static_cast<NodeId>(far));
        auto field = distance_field(g, static_cast<NodeId>(far));
        kernels::min_inplace(cover, field);
    }
    if (net.points.size() >= 2) {
        double sep = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < net.points.size(); ++i) {
            auto field = distance_field(g, net.points[i]);
            for (std::size_t j = i + 1; j < net.points.size(); ++j)
                sep = std::min(sep, field[net.points[j]]);
        }
        net.packing_radius = sep / 2.0;
    }
    return net;
}

double covering_radius(const GeodesicGraph& g, std::span<const NodeId> points) {
    if (points.empty()) fail("EmptySet", "covering radius of an empty set");
    auto field = distance_field(g, points);
    return kernels::max_value(field);
}

BallGrowthProfile ball_volume_profile(const GeodesicGraph& g, NodeId center,
                                      std::span<const double> radii) {
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (radii[i] < radii[i - 1]) fail("MalformedInput", "radii must be non-decreasing");
    BallGrowthProfile profile;
    profile.center = center;
    profile.radii.assign(radii.begin(), radii.end());
    const auto field = distance_field(g, center);

    const int corners = g.mesh_dim + 1;
    const std::size_t nsimp = g.piece_volume.size();
    // per-simplex barycenter distances
    std::vector<std::vector<double>> dbary(nsimp);
    for (std::size_t si = 0; si < nsimp; ++si) {
        const std::size_t lo = g.piece_offset[si], hi = g.piece_offset[si + 1];
        dbary[si].reserve(hi - lo);
        for (std::size_t p = lo; p < hi; ++p) {
            double sum = 0.0;
            for (int c = 0; c < corners; ++c)
                sum += field[g.piece_corners[p * corners + c]];
            dbary[si].push_back(sum / corners);
        }
    }
    for (double r : radii) {
        double vol = 0.0;
        std::size_t straddle = 0;
        for (std::size_t si = 0; si < nsimp; ++si) {
            const std::size_t inside = kernels::count_leq(dbary[si], r);
            vol += static_cast<double>(inside) * g.piece_volume[si];
            const double diam = g.piece_diameter[si];
            straddle += kernels::count_leq(dbary[si], r + diam) -
                        kernels::count_leq(dbary[si], r - diam);
        }
        profile.volumes.push_back(vol);
        profile.error_bounds.push_back(static_cast<double>(straddle) * g.max_piece_volume);
    }
    return profile;
}

double hausdorff_distance(const GeodesicGraph& g, std::span<const NodeId> a,
                          std::span<const NodeId> b) {
    if (a.empty() || b.empty()) fail("EmptySet", "Hausdorff distance of an empty set");
    auto from_b = distance_field(g, b);
    auto from_a = distance_field(g, a);
    std::vector<double> da(a.size()), db(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) da[i] = from_b[a[i]];
    for (std::size_t i = 0; i < b.size(); ++i) db[i] = from_a[b[i]];
    return std::max(kernels::max_value(da), kernels::max_value(db));
}

std::vector<std::vector<double>> coordinate_matrix(const GeodesicGraph& g,
                                                   const EpsilonNet& net) {
    const std::size_t n = g.keys.size(), m = net.points.size();
    std::vector<std::vector<double>> coords(n, std::vector<double>(m));
    std::vector<std::vector<double>> fields(m);
    parallel::for_chunks(m, 1, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t i = lo; i < hi; ++i)
            fields[i] = distance_field(g, net.points[i]);
    });
    for (std::size_t v = 0; v < n; ++v)
        for (std::size_t i = 0; i < m; ++i)
            coords[v][i] = std::min(fields[i][v], 1.0);
    return coords;
}

DistortionReport net_distortion_report(const GeodesicGraph& g, const EpsilonNet& net,
                                       int stride) {
    if (stride < 1) stride = 1;
    DistortionReport rep;
    rep.fp_tolerance = 1e-12;
    const auto coords = coordinate_matrix(g, net);
    const std::size_t n = g.keys.size();
    for (std::size_t v = 0; v < n; v += stride) {
        const auto field = distance_field(g, static_cast<NodeId>(v));
        for (std::size_t w = v + stride; w < n; w += stride) {
            const double d = field[w];
            if (!(d < 0.5)) continue; // the remark only controls pairs below 1/2
            const double c = kernels::chebyshev(coords[v], coords[w]);
            rep.eta = std::max(rep.eta, d - c);
            if (c > d) {
                rep.worst_upper_violation = std::max(rep.worst_upper_violation, c - d);
                if (c - d > rep.fp_tolerance) rep.upper_bound_ok = false;
            }
            ++rep.pairs_checked;
        }
    }
    return rep;
}

} // namespace systolekit::metric
