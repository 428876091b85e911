#pragma once

// Shared mesh models for the test suites: circles, grid tori, pillows, and
// their edge homomorphisms.

#include "systolekit/homotopy.hpp"
#include "systolekit/mesh.hpp"
#include "systolekit/metric.hpp"

#include <cmath>
#include <vector>

namespace models {

using systolekit::homotopy::EdgeHomomorphism;
using systolekit::homotopy::GroupPresentation;
using systolekit::homotopy::OracleKind;
using systolekit::homotopy::Word;
using systolekit::mesh::PLMetric;
using systolekit::mesh::Simplex;
using systolekit::mesh::SimplicialComplex;
using systolekit::metric::GeodesicGraph;
using systolekit::metric::NodeId;

struct CircleModel {
    SimplicialComplex complex;
    PLMetric metric;
    double perimeter = 1.0;
    int m = 3; // vertex count; vertex i sits at arc position i * perimeter / m
};

inline CircleModel circle(double perimeter, int m) {
    CircleModel model;
    model.perimeter = perimeter;
    model.m = m;
    std::vector<Simplex> edges;
    for (int i = 0; i + 1 < m; ++i) edges.push_back({i, i + 1});
    edges.push_back({0, m - 1});
    model.complex = SimplicialComplex::from_simplices(edges);
    for (const Simplex& e : model.complex.cells(1))
        model.metric.set(e[0], e[1], perimeter / m);
    return model;
}

/// Arc position of a geodesic-graph node on the circle, in [0, perimeter).
inline double circle_position(const GeodesicGraph& g, NodeId v, const CircleModel& model) {
    const auto& parts = g.keys[v].parts;
    const double h = model.perimeter / model.m;
    if (parts.size() == 1) return parts[0].first * h;
    const auto [u, wu] = parts[0];
    const auto [w, ww] = parts[1];
    double index;
    if (w == u + 1)
        index = u + static_cast<double>(ww) / g.level;
    else // wrap edge {0, m-1}: weight on vertex 0 moves past m-1
        index = (model.m - 1) + static_cast<double>(wu) / g.level;
    double pos = index * h;
    if (pos >= model.perimeter) pos -= model.perimeter;
    return pos;
}

inline NodeId circle_node_at(const GeodesicGraph& g, const CircleModel& model, double pos,
                             double tol = 1e-9) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
        double d = std::fabs(circle_position(g, v, model) - pos);
        d = std::min(d, model.perimeter - d);
        if (d <= tol) return v;
    }
    return -1;
}

inline double circle_dist(double x, double y, double perimeter) {
    double d = std::fabs(x - y);
    return std::min(d, perimeter - d);
}

/// Identity homomorphism of the circle onto the free group <a>.
inline std::pair<GroupPresentation, EdgeHomomorphism> circle_identity(const CircleModel& model) {
    GroupPresentation pi;
    pi.generators = {"a"};
    pi.oracle = OracleKind::Free;
    EdgeHomomorphism phi;
    for (int i = 0; i + 1 < model.m; ++i) phi.tree_edges.push_back({i, i + 1});
    phi.edge_words[{0, model.m - 1}] = Word::generator(0, 1).inverse(); // 0 -> m-1 is -x
    return {pi, phi};
}

struct TorusModel {
    SimplicialComplex complex;
    PLMetric metric;
    double a = 1.0, b = 1.0;
    int m = 3; // m x m vertex grid
    int vertex(int i, int j) const { return m * ((i + m) % m) + ((j + m) % m); }
};

/// Flat a x b torus triangulated on an m x m grid (m >= 3), i along a.
inline TorusModel torus(double a, double b, int m = 3) {
    TorusModel model;
    model.a = a;
    model.b = b;
    model.m = m;
    std::vector<Simplex> tris;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Simplex t1{model.vertex(i, j), model.vertex(i + 1, j), model.vertex(i + 1, j + 1)};
            Simplex t2{model.vertex(i, j), model.vertex(i, j + 1), model.vertex(i + 1, j + 1)};
            std::sort(t1.begin(), t1.end());
            std::sort(t2.begin(), t2.end());
            tris.push_back(t1);
            tris.push_back(t2);
        }
    model.complex = SimplicialComplex::from_simplices(tris);
    const double ha = a / m, hb = b / m;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            auto set = [&](int u, int v, double len) {
                if (!model.metric.has(u, v)) model.metric.set(u, v, len);
            };
            set(model.vertex(i, j), model.vertex(i + 1, j), ha);
            set(model.vertex(i, j), model.vertex(i, j + 1), hb);
            set(model.vertex(i, j), model.vertex(i + 1, j + 1), std::hypot(ha, hb));
        }
    return model;
}

/// Z^2 homomorphism of the grid torus by the seam cocycle: edges crossing the
/// i-seam carry x, the j-seam y; the spanning tree stays inside the chart.
inline std::pair<GroupPresentation, EdgeHomomorphism> torus_identity(const TorusModel& model) {
    GroupPresentation pi;
    pi.generators = {"x", "y"};
    pi.oracle = OracleKind::FreeAbelian;
    EdgeHomomorphism phi;
    const int m = model.m;
    for (int j = 0; j + 1 < m; ++j)
        phi.tree_edges.push_back(systolekit::mesh::edge_key(model.vertex(0, j), model.vertex(0, j + 1)));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i + 1 < m; ++i)
            phi.tree_edges.push_back(
                systolekit::mesh::edge_key(model.vertex(i, j), model.vertex(i + 1, j)));

    auto coords = [&](int v) { return std::pair<int, int>{v / m, v % m}; };
    auto directed_word = [&](int from, int to) {
        auto [fi, fj] = coords(from);
        auto [ti, tj] = coords(to);
        Word w;
        if (std::abs(ti - fi) == m - 1) w.append(0, fi == m - 1 ? 1 : -1);
        if (std::abs(tj - fj) == m - 1) w.append(1, fj == m - 1 ? 1 : -1);
        return w;
    };
    for (const Simplex& e : model.complex.cells(1)) {
        if (phi.is_tree_edge(e[0], e[1])) continue;
        Word w = directed_word(e[0], e[1]);
        if (!w.is_identity()) phi.edge_words[{e[0], e[1]}] = w;
    }
    return {pi, phi};
}

struct PillowModel {
    SimplicialComplex complex;
    PLMetric metric;
    double a = 1.0, b = 1.0;
    int mx = 2, my = 1;
};

/// Two a x b rectangular sheets sewn along their boundary: a flat "pillow"
/// 2-sphere; with b << a it develops a long thin profile.
inline PillowModel pillow(double a, double b, int mx, int my) {
    PillowModel model;
    model.a = a;
    model.b = b;
    model.mx = mx;
    model.my = my;
    const int w = mx + 1, h = my + 1;
    // sheet 0 uses ids i*h+j; sheet 1 duplicates interior vertices only
    std::vector<std::vector<int>> back(w, std::vector<int>(h));
    int next = w * h;
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < h; ++j) {
            const bool boundary = i == 0 || j == 0 || i == w - 1 || j == h - 1;
            back[i][j] = boundary ? i * h + j : next++;
        }
    std::vector<Simplex> tris;
    auto add = [&](int p, int q, int r) {
        Simplex t{p, q, r};
        std::sort(t.begin(), t.end());
        tris.push_back(t);
    };
    // Each cell's diagonal must touch an interior vertex: otherwise a corner
    // cell would produce the same all-boundary triangle on both sheets.
    auto interior = [&](int i, int j) { return i > 0 && j > 0 && i < w - 1 && j < h - 1; };
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j) {
            const bool main_diag = interior(i, j) || interior(i + 1, j + 1);
            auto front_id = [&](int x, int y) { return x * h + y; };
            auto back_id = [&](int x, int y) { return back[x][y]; };
            auto emit = [&](auto id) {
                if (main_diag) {
                    add(id(i, j), id(i + 1, j), id(i + 1, j + 1));
                    add(id(i, j), id(i, j + 1), id(i + 1, j + 1));
                } else {
                    add(id(i + 1, j), id(i, j), id(i, j + 1));
                    add(id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
                }
            };
            emit(front_id);
            emit(back_id);
        }
    model.complex = SimplicialComplex::from_simplices(tris);
    const double ha = a / mx, hb = b / my;
    auto front_pos = [&](int v) {
        return std::pair<double, double>{(v / h) * ha, (v % h) * hb};
    };
    std::vector<std::pair<double, double>> pos(next);
    for (int i = 0; i < w; ++i)
        for (int j = 0; j < h; ++j) {
            pos[i * h + j] = front_pos(i * h + j);
            pos[back[i][j]] = {i * ha, j * hb};
        }
    for (const Simplex& e : model.complex.cells(1)) {
        const auto [x1, y1] = pos[e[0]];
        const auto [x2, y2] = pos[e[1]];
        model.metric.set(e[0], e[1], std::hypot(x1 - x2, y1 - y2));
    }
    return model;
}

} // namespace models
