#include "systolekit/mesh.hpp"

#include "systolekit/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace systolekit::mesh {

namespace {

std::string simplex_str(const Simplex& s) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < s.size(); ++i)
        os << (i ? "," : "") << s[i];
    os << "]";
    return os.str();
}

} // namespace

SimplicialComplex SimplicialComplex::from_simplices(const std::vector<Simplex>& generators) {
    std::set<Simplex> all;
    // close under faces: every subset of a generator is a cell
    for (Simplex g : generators) {
        std::sort(g.begin(), g.end());
        for (std::size_t i = 1; i < g.size(); ++i)
            if (g[i] == g[i - 1])
                fail("MalformedInput", "simplex with repeated vertex " + simplex_str(g));
        const std::size_t k = g.size();
        for (std::size_t mask = 1; mask < (1u << k); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) face.push_back(g[i]);
            all.insert(std::move(face));
        }
    }
    SimplicialComplex c;
    for (const Simplex& s : all) {
        const int d = static_cast<int>(s.size()) - 1;
        if (d >= static_cast<int>(c.by_dim_.size())) c.by_dim_.resize(d + 1);
        c.by_dim_[d].push_back(s);
    }
    if (!c.by_dim_.empty())
        for (const Simplex& v : c.by_dim_[0])
            c.vertices_.push_back(v[0]);
    return c;
}

const std::vector<Simplex>& SimplicialComplex::cells(int d) const {
    static const std::vector<Simplex> empty;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[d];
}

bool SimplicialComplex::contains(const Simplex& s) const { return index_of(s) >= 0; }

int SimplicialComplex::index_of(const Simplex& s) const {
    const int d = static_cast<int>(s.size()) - 1;
    if (d < 0 || d >= static_cast<int>(by_dim_.size())) return -1;
    const auto& v = by_dim_[d];
    auto it = std::lower_bound(v.begin(), v.end(), s);
    if (it == v.end() || *it != s) return -1;
    return static_cast<int>(it - v.begin());
}

void PLMetric::set(VertexId u, VertexId v, double length) {
    if (length <= 0.0) fail("MetricInfeasible", "nonpositive edge length");
    lengths_[edge_key(u, v)] = length;
}

bool PLMetric::has(VertexId u, VertexId v) const {
    return lengths_.count(edge_key(u, v)) > 0;
}

double PLMetric::operator()(VertexId u, VertexId v) const {
    auto it = lengths_.find(edge_key(u, v));
    if (it == lengths_.end())
        fail("MetricInfeasible", "missing length for edge " +
                                     std::to_string(u) + "-" + std::to_string(v));
    return it->second;
}

double PLMetric::max_length() const {
    double m = 0.0;
    for (const auto& [e, len] : lengths_)
        m = std::max(m, len);
    return m;
}

namespace {

// facets (codim-1 faces) of a sorted simplex, with the index of the dropped vertex
std::vector<std::pair<Simplex, int>> facets(const Simplex& s) {
    std::vector<std::pair<Simplex, int>> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.emplace_back(std::move(f), static_cast<int>(i));
    }
    return out;
}

} // namespace

Pseudomanifold validate_pseudomanifold(const SimplicialComplex& complex, int n) {
    if (n < 1) fail("MalformedInput", "pseudomanifold dimension must be >= 1");
    if (complex.dim() != n)
        fail("HomogeneityViolation",
             "complex has dimension " + std::to_string(complex.dim()) +
                 ", expected " + std::to_string(n));
    const auto& top = complex.cells(n);
    if (top.empty()) fail("HomogeneityViolation", "no top-dimensional simplex");

    // homogeneity: every simplex is a face of some n-simplex
    std::set<Simplex> covered;
    for (const Simplex& t : top) {
        const std::size_t k = t.size();
        for (std::size_t mask = 1; mask < (1u << k); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) face.push_back(t[i]);
            covered.insert(std::move(face));
        }
    }
    for (int d = 0; d < n; ++d)
        for (const Simplex& s : complex.cells(d))
            if (!covered.count(s))
                fail("HomogeneityViolation",
                     "simplex " + simplex_str(s) + " is not a face of any top simplex");

    // non-branching: every (n-1)-simplex has exactly two top cofaces
    std::map<Simplex, std::vector<std::pair<int, int>>> cofaces; // facet -> (top idx, dropped pos)
    for (std::size_t ti = 0; ti < top.size(); ++ti)
        for (auto& [f, pos] : facets(top[ti]))
            cofaces[f].emplace_back(static_cast<int>(ti), pos);
    for (const auto& [f, cf] : cofaces)
        if (cf.size() != 2)
            fail("BranchingViolation",
                 "(n-1)-simplex " + simplex_str(f) + " has " +
                     std::to_string(cf.size()) + " cofaces, expected 2");

    // strong connectivity of the dual graph + orientability via sign propagation.
    // Adjacent tops induce opposite orientations on their shared facet:
    // sign(s) * (-1)^i = -sign(t) * (-1)^j.
    std::vector<int> sign(top.size(), 0);
    sign[0] = 1;
    std::deque<int> queue{0};
    std::size_t reached = 1;
    bool orientable = true;
    std::vector<std::vector<std::pair<int, int>>> nbr(top.size()); // (other top, relative sign)
    for (const auto& [f, cf] : cofaces) {
        auto [a, ia] = cf[0];
        auto [b, ib] = cf[1];
        int rel = -(((ia + ib) % 2 == 0) ? 1 : -1); // sign(b) = rel * sign(a)
        nbr[a].emplace_back(b, rel);
        nbr[b].emplace_back(a, rel);
    }
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        for (auto [other, rel] : nbr[cur]) {
            int want = rel * sign[cur];
            if (sign[other] == 0) {
                sign[other] = want;
                ++reached;
                queue.push_back(other);
            } else if (sign[other] != want) {
                orientable = false;
            }
        }
    }
    if (reached != top.size()) {
        for (std::size_t ti = 0; ti < top.size(); ++ti)
            if (sign[ti] == 0)
                fail("NotStronglyConnected",
                     "top simplex " + simplex_str(top[ti]) +
                         " is not connected to " + simplex_str(top[0]) +
                         " through (n-1)-faces");
    }

    Pseudomanifold V;
    V.complex = complex;
    V.dim = n;
    V.orientable = orientable;
    if (orientable) V.orientation = sign;
    return V;
}

double simplex_volume(const Simplex& simplex, const PLMetric& metric, bool allow_degenerate) {
    const int k = static_cast<int>(simplex.size()) - 1;
    if (k == 0) return 0.0;
    double max_edge = 0.0;
    Eigen::MatrixXd cm(k + 2, k + 2);
    cm.setZero();
    for (int i = 0; i <= k; ++i) {
        cm(0, i + 1) = 1.0;
        cm(i + 1, 0) = 1.0;
        for (int j = i + 1; j <= k; ++j) {
            double len = metric(simplex[i], simplex[j]);
            max_edge = std::max(max_edge, len);
            cm(i + 1, j + 1) = len * len;
            cm(j + 1, i + 1) = len * len;
        }
    }
    // vol^2 = (-1)^(k+1) det(CM) / (2^k (k!)^2)
    double det = cm.determinant();
    double factorial = 1.0;
    for (int i = 2; i <= k; ++i) factorial *= i;
    double vol2 = ((k + 1) % 2 == 0 ? 1.0 : -1.0) * det / (std::ldexp(1.0, k) * factorial * factorial);
    const double tol = 1e-12 * std::pow(max_edge, 2 * k);
    if (vol2 < -tol)
        fail("MetricInfeasible",
             "Cayley-Menger determinant certifies no flat realization of " + simplex_str(simplex));
    if (vol2 <= tol) {
        if (!allow_degenerate)
            fail("MetricInfeasible", "degenerate simplex " + simplex_str(simplex));
        return 0.0;
    }
    return std::sqrt(vol2);
}

void check_metric(const SimplicialComplex& complex, const PLMetric& metric,
                  bool allow_degenerate) {
    for (const Simplex& e : complex.cells(1))
        metric(e[0], e[1]); // throws if missing
    for (int d = 2; d <= complex.dim(); ++d)
        for (const Simplex& s : complex.cells(d))
            simplex_volume(s, metric, allow_degenerate);
}

double total_volume(const SimplicialComplex& complex, const PLMetric& metric, int n) {
    double total = 0.0;
    if (n == 1) {
        for (const Simplex& e : complex.cells(1))
            total += metric(e[0], e[1]);
        return total;
    }
    for (const Simplex& s : complex.cells(n))
        total += simplex_volume(s, metric);
    return total;
}

double total_volume(const Pseudomanifold& V, const PLMetric& metric) {
    return total_volume(V.complex, metric, V.dim);
}

std::map<Simplex, long long> fundamental_cycle_boundary(const Pseudomanifold& V) {
    std::map<Simplex, long long> bd;
    const auto& top = V.complex.cells(V.dim);
    for (std::size_t ti = 0; ti < top.size(); ++ti) {
        const long long s = V.orientation.empty() ? 1 : V.orientation[ti];
        int pos = 0;
        for (auto& [f, i] : facets(top[ti])) {
            (void)pos;
            bd[f] += s * ((i % 2 == 0) ? 1 : -1);
        }
    }
    std::erase_if(bd, [](const auto& kv) { return kv.second == 0; });
    return bd;
}

} // namespace systolekit::mesh
