#include "systolekit/homotopy.hpp"

#include "systolekit/errors.hpp"
#include "systolekit/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <queue>
#include <sstream>
#include <unordered_map>

namespace systolekit::homotopy {

Word Word::generator(int g, int exp) {
    Word w;
    w.append(g, exp);
    return w;
}

void Word::append(int g, int exp) {
    if (exp == 0) return;
    if (!syllables_.empty() && syllables_.back().first == g) {
        syllables_.back().second += exp;
        if (syllables_.back().second == 0) syllables_.pop_back();
        return;
    }
    syllables_.emplace_back(g, exp);
}

Word Word::operator*(const Word& rhs) const {
    Word out = *this;
    for (const auto& [g, e] : rhs.syllables_) out.append(g, e);
    return out;
}

Word Word::inverse() const {
    Word out;
    for (auto it = syllables_.rbegin(); it != syllables_.rend(); ++it)
        out.append(it->first, -it->second);
    return out;
}

std::vector<std::int64_t> Word::exponents(int ngens) const {
    std::vector<std::int64_t> exps(ngens, 0);
    for (const auto& [g, e] : syllables_) {
        if (g < 0 || g >= ngens) fail("MalformedInput", "generator index out of range");
        exps[g] += e;
    }
    return exps;
}

int GroupPresentation::generator_index(const std::string& name) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
        if (generators[i] == name) return static_cast<int>(i);
    return -1;
}

void GroupPresentation::validate() const {
    if (oracle == OracleKind::Free && !relators.empty())
        fail("MalformedInput", "free oracle admits no relators");
    if (oracle == OracleKind::FreeAbelian) {
        for (const Word& r : relators) {
            auto exps = r.exponents(static_cast<int>(generators.size()));
            for (auto e : exps)
                if (e != 0)
                    fail("MalformedInput",
                         "free_abelian oracle admits commutator relators only");
        }
    }
}

bool word_is_trivial(const GroupPresentation& pi, const Word& w) {
    switch (pi.oracle) {
        case OracleKind::Free:
            return w.is_identity();
        case OracleKind::FreeAbelian: {
            for (auto e : w.exponents(static_cast<int>(pi.generators.size())))
                if (e != 0) return false;
            return true;
        }
        case OracleKind::Custom:
            if (!pi.custom_is_trivial)
                fail("UndecidableOracle", "custom oracle without a decision routine");
            return pi.custom_is_trivial(w);
    }
    return false;
}

Word parse_word(const GroupPresentation& pi, const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::string name = tok;
        int exp = 1;
        if (auto pos = tok.find('^'); pos != std::string::npos) {
            name = tok.substr(0, pos);
            try {
                exp = std::stoi(tok.substr(pos + 1));
            } catch (const std::exception&) {
                fail("MalformedInput", "bad exponent in word token '" + tok + "'");
            }
        }
        int g = pi.generator_index(name);
        if (g < 0) fail("MalformedInput", "unknown generator '" + name + "'");
        w.append(g, exp);
    }
    return w;
}

std::string format_word(const GroupPresentation& pi, const Word& w) {
    if (w.is_identity()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : w.syllables()) {
        if (!first) os << " ";
        first = false;
        os << pi.generators.at(g);
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

Word EdgeHomomorphism::word(VertexId from, VertexId to) const {
    const auto key = mesh::edge_key(from, to);
    if (is_tree_edge(from, to)) return Word{};
    auto it = edge_words.find(key);
    if (it == edge_words.end()) return Word{};
    return from < to ? it->second : it->second.inverse();
}

bool EdgeHomomorphism::is_tree_edge(VertexId u, VertexId v) const {
    const auto key = mesh::edge_key(u, v);
    return std::find(tree_edges.begin(), tree_edges.end(), key) != tree_edges.end();
}

bool EdgeHomomorphism::image_is_trivial(const GroupPresentation& pi) const {
    for (const auto& [edge, w] : edge_words)
        if (!word_is_trivial(pi, w)) return false;
    return true;
}

void validate_homomorphism(const mesh::SimplicialComplex& complex,
                           const GroupPresentation& pi, const EdgeHomomorphism& phi) {
    pi.validate();
    // tree edges are edges of the complex and span all vertices
    std::map<VertexId, VertexId> parent;
    for (VertexId v : complex.vertices()) parent[v] = v;
    std::function<VertexId(VertexId)> find = [&](VertexId v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& [u, v] : phi.tree_edges) {
        if (!complex.contains({std::min(u, v), std::max(u, v)}))
            fail("MalformedInput", "tree edge " + std::to_string(u) + "-" +
                                       std::to_string(v) + " is not an edge of the complex");
        VertexId ru = find(u), rv = find(v);
        if (ru == rv)
            fail("MalformedInput", "tree edges contain a cycle");
        parent[ru] = rv;
    }
    VertexId root = find(complex.vertices().front());
    for (VertexId v : complex.vertices())
        if (find(v) != root)
            fail("MalformedInput", "spanning tree does not reach vertex " + std::to_string(v));
    for (const auto& [edge, w] : phi.edge_words) {
        (void)w;
        if (!complex.contains({edge.first, edge.second}))
            fail("MalformedInput", "edge word on non-edge " + std::to_string(edge.first) +
                                       "-" + std::to_string(edge.second));
        if (phi.is_tree_edge(edge.first, edge.second))
            fail("MalformedInput", "edge word on a tree edge");
    }
    // well defined on pi_1: every 2-simplex boundary word is trivial
    for (const mesh::Simplex& t : complex.cells(2)) {
        Word bd = phi.word(t[0], t[1]) * phi.word(t[1], t[2]) * phi.word(t[2], t[0]);
        if (!word_is_trivial(pi, bd))
            fail("MalformedInput",
                 "edge words are not well defined on pi_1: boundary of [" +
                     std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
                     std::to_string(t[2]) + "] maps to " + format_word(pi, bd));
    }
}

namespace {

// Hermite-style reduction: do the integer vectors span Z^r?
bool spans_full_lattice(std::vector<std::vector<std::int64_t>> rows, int r) {
    if (r == 0) return true;
    int rank = 0;
    for (int col = 0; col < r && rank < static_cast<int>(rows.size()); ++col) {
        // gcd-reduce column `col` below row `rank`
        for (std::size_t i = rank + 1; i < rows.size(); ++i) {
            while (rows[i][col] != 0) {
                if (rows[rank][col] == 0) {
                    std::swap(rows[rank], rows[i]);
                    continue;
                }
                std::int64_t q = rows[i][col] / rows[rank][col];
                for (int c = 0; c < r; ++c) rows[i][c] -= q * rows[rank][c];
                if (rows[i][col] != 0) std::swap(rows[rank], rows[i]);
            }
        }
        if (rows[rank][col] != 0) ++rank;
    }
    if (rank < r) return false;
    // determinant of the triangular basis must be +-1
    __int128 det = 1;
    for (int i = 0; i < r; ++i) det *= rows[i][i];
    return det == 1 || det == -1;
}

} // namespace

Normality normality_status(const GroupPresentation& pi, const EdgeHomomorphism& phi) {
    if (pi.oracle != OracleKind::FreeAbelian) return Normality::Assumed;
    const int r = static_cast<int>(pi.generators.size());
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& [edge, w] : phi.edge_words) {
        (void)edge;
        rows.push_back(w.exponents(r));
    }
    if (rows.empty()) rows.push_back(std::vector<std::int64_t>(r, 0));
    return spans_full_lattice(std::move(rows), r) ? Normality::Verified : Normality::Failed;
}

namespace {

struct StateKey {
    NodeId node;
    std::vector<std::int64_t> word;
    bool operator==(const StateKey&) const = default;
};

struct StateHash {
    std::size_t operator()(const StateKey& s) const {
        std::size_t h = std::hash<int>()(s.node);
        for (auto x : s.word) h ^= std::hash<std::int64_t>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

std::vector<std::int64_t> canonical_key(const GroupPresentation& pi, const Word& w) {
    if (pi.oracle == OracleKind::FreeAbelian)
        return w.exponents(static_cast<int>(pi.generators.size()));
    // free / custom: the freely reduced syllables
    std::vector<std::int64_t> key;
    key.reserve(w.syllables().size() * 2);
    for (const auto& [g, e] : w.syllables()) {
        key.push_back(g);
        key.push_back(e);
    }
    return key;
}

struct ArcWords {
    // cached words for (anchor(u) -> anchor(v)) pairs
    std::map<std::pair<VertexId, VertexId>, Word> cache;
    const GeodesicGraph* g;
    const EdgeHomomorphism* phi;

    const Word& get(NodeId from, NodeId to) {
        const VertexId a = g->node_anchor[from], b = g->node_anchor[to];
        auto it = cache.find({a, b});
        if (it == cache.end())
            it = cache.emplace(std::make_pair(a, b),
                               a == b ? Word{} : phi->word(a, b)).first;
        return it->second;
    }
};

struct LoopHit {
    double length;
    Word deck;
};

// Dijkstra lifted to the ker(phi) covering, stopped at the first nontrivial
// return to the base node. `cutoff` prunes states strictly beyond it.
std::optional<LoopHit> covering_search(const GeodesicGraph& g, const GroupPresentation& pi,
                                       const EdgeHomomorphism& phi, NodeId base,
                                       double cutoff, ArcWords& arc_words) {
    struct Item {
        double dist;
        NodeId node;
        Word word;
        std::vector<std::int64_t> key;
        bool operator>(const Item& o) const { return dist > o.dist; }
    };
    std::unordered_map<StateKey, double, StateHash> dist;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    Word id;
    dist[{base, canonical_key(pi, id)}] = 0.0;
    heap.push({0.0, base, id, canonical_key(pi, id)});
    while (!heap.empty()) {
        Item cur = heap.top();
        heap.pop();
        auto it = dist.find({cur.node, cur.key});
        if (it == dist.end() || cur.dist > it->second) continue;
        if (cur.node == base && !word_is_trivial(pi, cur.word) && cur.dist > 0)
            return LoopHit{cur.dist, cur.word};
        for (std::size_t i = g.adj_offset[cur.node]; i < g.adj_offset[cur.node + 1]; ++i) {
            const NodeId nb = g.adj_node[i];
            const double nd = cur.dist + g.adj_length[i];
            if (nd > cutoff) continue;
            Word nw = cur.word * arc_words.get(cur.node, nb);
            StateKey key{nb, canonical_key(pi, nw)};
            auto dit = dist.find(key);
            if (dit == dist.end() || nd < dit->second) {
                dist[key] = nd;
                heap.push({nd, nb, std::move(nw), std::move(key.word)});
            }
        }
    }
    return std::nullopt;
}

} // namespace

SystoleResult pointwise_systole(const GeodesicGraph& g, const GroupPresentation& pi,
                                const EdgeHomomorphism& phi, NodeId v,
                                const SystoleOptions& opt) {
    SystoleResult res;
    if (phi.image_is_trivial(pi)) {
        res.status = SystoleResult::Status::Infinite;
        return res;
    }
    ArcWords arc_words{{}, &g, &phi};
    auto hit = covering_search(g, pi, phi, v, opt.hard_cutoff, arc_words);
    if (!hit) {
        if (std::isfinite(opt.hard_cutoff))
            fail("SearchCutoffExceeded",
                 "no noncontractile loop through node " + std::to_string(v) +
                     " below cutoff " + std::to_string(opt.hard_cutoff) +
                     " (certified lower bound)");
        fail("DisconnectedPair", "covering search exhausted unexpectedly");
    }
    res.status = SystoleResult::Status::Exact;
    res.value = hit->length;
    res.base = v;
    res.deck = hit->deck;
    return res;
}

SystoleResult relative_systole(const GeodesicGraph& g, const GroupPresentation& pi,
                               const EdgeHomomorphism& phi, const SystoleOptions& opt) {
    SystoleResult res;
    if (phi.image_is_trivial(pi)) {
        res.status = SystoleResult::Status::Infinite;
        return res;
    }
    // First candidate from base 0 fixes the exploration cutoff
    // deterministically; the systole never exceeds it.
    ArcWords seed_words{{}, &g, &phi};
    auto first = covering_search(g, pi, phi, 0, opt.hard_cutoff, seed_words);
    if (!first) {
        res.status = SystoleResult::Status::LowerBound;
        res.value = opt.hard_cutoff;
        return res;
    }
    const double cutoff = std::min(opt.hard_cutoff, opt.cutoff_factor * first->length);

    const int n = g.node_count();
    std::vector<LoopHit> hits(n, LoopHit{std::numeric_limits<double>::infinity(), Word{}});
    hits[0] = *first;
    // Shared upper bound for pruning only; results do not depend on its
    // propagation order.
    std::atomic<double> best{first->length};
    parallel::for_chunks(static_cast<std::size_t>(n) - 1, 8,
                         [&](std::size_t lo, std::size_t hi, std::size_t) {
        ArcWords arc_words{{}, &g, &phi};
        for (std::size_t i = lo; i < hi; ++i) {
            const NodeId v = static_cast<NodeId>(i + 1);
            const double limit = std::min(cutoff, best.load(std::memory_order_relaxed));
            auto hit = covering_search(g, pi, phi, v, limit, arc_words);
            if (hit) {
                hits[v] = *hit;
                double cur = best.load(std::memory_order_relaxed);
                while (hit->length < cur &&
                       !best.compare_exchange_weak(cur, hit->length, std::memory_order_relaxed)) {
                }
            }
        }
    });
    res.status = SystoleResult::Status::Exact;
    res.base = 0;
    res.value = hits[0].length;
    res.deck = hits[0].deck;
    for (int v = 1; v < n; ++v) {
        if (hits[v].length < res.value) {
            res.value = hits[v].length;
            res.base = v;
            res.deck = hits[v].deck;
        }
    }
    return res;
}

double systolic_ratio(double total_volume, int n, const SystoleResult& sys) {
    if (!sys.finite()) fail("InfiniteSystole", "systolic ratio of an infinite systole");
    return total_volume / std::pow(sys.value, n);
}

} // namespace systolekit::homotopy
