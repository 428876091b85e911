#pragma once

#include "systolekit/mesh.hpp"
#include "systolekit/metric.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace systolekit::homotopy {

using mesh::VertexId;
using metric::GeodesicGraph;
using metric::NodeId;

/// Freely reduced word over numbered generators: syllables (generator,
/// exponent) with nonzero exponents and no adjacent equal generators.
class Word {
public:
    Word() = default;
    static Word generator(int g, int exp = 1);

    void append(int g, int exp);
    Word operator*(const Word& rhs) const;
    Word inverse() const;
    bool is_identity() const { return syllables_.empty(); }
    const std::vector<std::pair<int, int>>& syllables() const { return syllables_; }
    auto operator<=>(const Word&) const = default;

    /// Total exponent per generator.
    std::vector<std::int64_t> exponents(int ngens) const;

private:
    std::vector<std::pair<int, int>> syllables_;
};

enum class OracleKind { Free, FreeAbelian, Custom };

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
    OracleKind oracle = OracleKind::Free;
    /// Required for Custom; must be total on the words it will see.
    std::function<bool(const Word&)> custom_is_trivial;

    int generator_index(const std::string& name) const; // -1 if unknown
    /// Checks relators are reduced and consistent with the oracle kind
    /// (free: none; free_abelian: commutators only).
    void validate() const;
};

/// True iff w = 1 in the presented group. Throws UndecidableOracle for
/// Custom without a routine.
bool word_is_trivial(const GroupPresentation& pi, const Word& w);

Word parse_word(const GroupPresentation& pi, const std::string& text);
std::string format_word(const GroupPresentation& pi, const Word& w);

/// Map pi_1(V) -> pi given by words on non-tree edges of the 1-skeleton
/// (tree edges map to the identity). Words are stored for the u->v direction
/// of the normalized key (u < v).
struct EdgeHomomorphism {
    std::vector<std::pair<VertexId, VertexId>> tree_edges;
    std::map<std::pair<VertexId, VertexId>, Word> edge_words;

    Word word(VertexId from, VertexId to) const;
    bool is_tree_edge(VertexId u, VertexId v) const;
    bool image_is_trivial(const GroupPresentation& pi) const;
};

/// Verifies the spanning tree spans every vertex using edges of the complex
/// and that the boundary word of every 2-simplex is trivial (the map is well
/// defined on pi_1).
void validate_homomorphism(const mesh::SimplicialComplex& complex,
                           const GroupPresentation& pi, const EdgeHomomorphism& phi);

enum class Normality { Verified, Failed, Assumed };

/// Surjectivity of the induced map: decided by integer linear algebra for
/// free_abelian oracles, recorded as Assumed otherwise.
Normality normality_status(const GroupPresentation& pi, const EdgeHomomorphism& phi);

struct SystoleOptions {
    /// Exploration cutoff = cutoff_factor * (first candidate loop found).
    double cutoff_factor = 3.0;
    double hard_cutoff = std::numeric_limits<double>::infinity();
};

struct SystoleResult {
    enum class Status { Exact, LowerBound, Infinite };
    Status status = Status::Infinite;
    /// Systole value; the certified lower bound for LowerBound; +inf for
    /// Infinite.
    double value = std::numeric_limits<double>::infinity();
    NodeId base = -1;
    Word deck;

    bool finite() const { return status == Status::Exact; }
};

/// Relative systole over the geodesic graph: shortest loop through a node
/// whose edge-word image is nontrivial, computed by lifting Dijkstra to the
/// covering associated with ker(phi). Deterministic for any worker count.
SystoleResult relative_systole(const GeodesicGraph& g, const GroupPresentation& pi,
                               const EdgeHomomorphism& phi, const SystoleOptions& opt = {});

/// Shortest nontrivial loop based at v. Throws SearchCutoffExceeded if the
/// hard cutoff prunes the search before a loop is found.
SystoleResult pointwise_systole(const GeodesicGraph& g, const GroupPresentation& pi,
                                const EdgeHomomorphism& phi, NodeId v,
                                const SystoleOptions& opt = {});

/// vol / sys^n. Throws InfiniteSystole.
double systolic_ratio(double total_volume, int n, const SystoleResult& sys);

} // namespace systolekit::homotopy
