#pragma once

#include <map>
#include <utility>
#include <vector>

namespace systolekit::mesh {

using VertexId = int;
/// Strictly sorted vertex ids.
using Simplex = std::vector<VertexId>;

inline std::pair<VertexId, VertexId> edge_key(VertexId u, VertexId v) {
    return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
}

/// Finite simplicial complex, closed under faces, simplices canonicalized
/// (strictly sorted vertex lists, lexicographic order per dimension, no
/// duplicates). Immutable after construction.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Builds the complex generated by the given simplices (any dimensions):
    /// sorts vertex lists, closes under faces, deduplicates. Rejects vertex
    /// lists with repeated entries.
    static SimplicialComplex from_simplices(const std::vector<Simplex>& generators);

    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    const std::vector<Simplex>& cells(int d) const;
    const std::vector<VertexId>& vertices() const { return vertices_; }
    bool contains(const Simplex& s) const;
    /// Index of s among cells(dim(s)), or -1.
    int index_of(const Simplex& s) const;

private:
    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<VertexId> vertices_;
};

struct Pseudomanifold {
    SimplicialComplex complex;
    int dim = 0;
    bool orientable = false;
    /// Signs of the fundamental cycle, one per top cell; empty when not
    /// orientable.
    std::vector<int> orientation;
};

/// Global edge-length table; shared faces agree by construction.
class PLMetric {
public:
    void set(VertexId u, VertexId v, double length);
    bool has(VertexId u, VertexId v) const;
    double operator()(VertexId u, VertexId v) const; // throws MetricInfeasible if missing
    double max_length() const;
    std::size_t size() const { return lengths_.size(); }
    const std::map<std::pair<VertexId, VertexId>, double>& table() const { return lengths_; }

private:
    std::map<std::pair<VertexId, VertexId>, double> lengths_;
};

/// Checks the three pseudomanifold axioms (dimension homogeneity,
/// non-branching, strong connectivity of the dual graph) and decides
/// orientability by sign propagation over the dual graph. Link conditions
/// beyond the axioms are not checked.
/// Throws HomogeneityViolation / BranchingViolation / NotStronglyConnected.
Pseudomanifold validate_pseudomanifold(const SimplicialComplex& complex, int n);

/// Flat k-volume of a simplex from its edge lengths via the Cayley-Menger
/// determinant. Degenerate data (squared volume within -1e-12 * (max edge)^2k
/// of zero) yields 0 when allow_degenerate; below that, MetricInfeasible.
double simplex_volume(const Simplex& simplex, const PLMetric& metric,
                      bool allow_degenerate = true);

/// Verifies every simplex of the complex has feasible (and, unless
/// allow_degenerate, strictly positive-volume) metric data.
void check_metric(const SimplicialComplex& complex, const PLMetric& metric,
                  bool allow_degenerate = false);

double total_volume(const SimplicialComplex& complex, const PLMetric& metric, int n);
double total_volume(const Pseudomanifold& V, const PLMetric& metric);

/// Integer boundary of the signed top-cell chain; used to certify that the
/// fundamental cycle of an orientable pseudomanifold is a cycle.
std::map<Simplex, long long> fundamental_cycle_boundary(const Pseudomanifold& V);

} // namespace systolekit::mesh
