#pragma once

#include "systolekit/homotopy.hpp"
#include "systolekit/metric.hpp"

#include <optional>
#include <span>
#include <vector>

namespace systolekit::regularity {

using metric::BallGrowthProfile;
using metric::GeodesicGraph;
using metric::NodeId;

/// (R - alpha)^n / (c^{n-1} n^n).
double growth_lower_bound(double alpha, double c, int n, double R);

struct GrowthCheck {
    bool h1_ok = true;          // v(R) >= integral of a from alpha to R (trapezoid)
    bool h2_ok = true;          // v(R) <= c a(R)^{n/(n-1)}  (n = 1: a(R) >= 1)
    bool conclusion_ok = true;  // where both hypotheses held so far
    int first_h1_violation = -1;
    int first_h2_violation = -1;
    int first_conclusion_violation = -1;
    bool flagged() const { return !(h1_ok && h2_ok && conclusion_ok); }
};

/// Grid check of the growth lemma: verifies both hypotheses and, wherever
/// they have held from the left endpoint on, the conclusion bound. Any
/// conclusion failure under passing hypotheses (beyond tolerance) signals an
/// implementation bug, not input data. Throws GridTooCoarse for < 3 samples.
GrowthCheck growth_lemma_check(std::span<const double> grid, std::span<const double> a,
                               std::span<const double> v, double alpha, double c, int n,
                               double tol = 1e-9);

struct CoareaSample {
    std::vector<double> radii;
    std::vector<double> sphere_volumes; // centered differences of the profile
    std::vector<double> ball_volumes;
    std::vector<double> integrals;      // trapezoid of sphere_volumes
    std::vector<double> tolerances;     // per-radius quadrature tolerance
    bool ok = true;                     // ball >= integral - tolerance everywhere
    BallGrowthProfile profile;
};

/// Eilenberg-style coarea check with f = dist(center, .): sphere volumes by
/// finite differencing of the ball profile, inequality verified within the
/// accumulated quadrature tolerance.
CoareaSample coarea_check(const GeodesicGraph& g, NodeId center,
                          std::span<const double> radii);

struct RegularityRow {
    NodeId center;
    double radius;
    double volume;
    double bound;         // A_n R^n
    double shifted_bound; // A_n (R - a)^n
    bool pass;
    bool shifted_pass;
};

struct RegularityReport {
    double sys = 0.0;
    double eps = 0.0;
    double A_n = 0.0;
    double shift_a = 0.0;
    int n = 0;
    std::vector<RegularityRow> rows;
    bool regular = true;         // conjunction over rows of `pass`
    bool shifted_regular = true; // conjunction of the (R-a)^n variant
};

/// Ball-growth regularity verdict: vol(B(R)) >= A_n R^n for every center and
/// every profile radius in [eps, sys/2]; also evaluates the shifted variant
/// A_n (R-a)^n. Throws BadRange when eps >= sys/2.
RegularityReport epsilon_regular_verdict(std::span<const BallGrowthProfile> profiles,
                                         double sys, double eps, double A_n, int n,
                                         double shift_a = 0.0);

struct FillingRegularInput {
    double R = 0.0;
    double ball_volume = 0.0;
    double boundary_volume = 0.0;
    /// +inf encodes an infeasible (homologically essential) boundary.
    double filling_volume = 0.0;
    bool filling_known = false;
};

struct FillingRegularRow {
    double R;
    bool defining_ok;   // ball <= (1+eps) * filling
    double growth_bound; // (R-eps)^n / ((2 c_n)^{n-1} n^n)
    bool growth_ok;
};

struct FillingRegularVerdict {
    std::vector<FillingRegularRow> rows;
    bool filling_regular = true;
    bool growth_ok = true;
    double c_n = 0.0;
};

/// Filling-regularity of a ball family, plus the derived growth bound
/// cross-checked against the profile. Throws MissingFilling.
FillingRegularVerdict filling_regular_check(std::span<const FillingRegularInput> inputs,
                                            double eps, int n, double ambient_c_n,
                                            double tol = 1e-9);

struct NerveComplex {
    std::vector<NodeId> centers;
    double R0 = 0.0;
    int dimension_cap = 0;
    /// simplices[d] lists the d-simplices as sorted center-index tuples.
    std::vector<std::vector<std::vector<int>>> simplices;
    std::vector<std::size_t> counts; // N_k for k = 0..dimension_cap
};

/// Nerve of the doubled-ball cover: a simplex per tuple of centers whose
/// open 2R0-balls share a sampled node. Downward closed by construction.
NerveComplex nerve_of_cover(const GeodesicGraph& g, std::span<const NodeId> centers,
                            double R0, int dimension_cap = 8);

/// Greedy maximal packing: nodes pairwise >= 2 R0 apart (within tol, which
/// absorbs shortest-path rounding), swept in index order.
std::vector<NodeId> max_packing(const GeodesicGraph& g, double R0, double tol = 1e-9);

struct NerveBoundVerdict {
    std::size_t N0 = 0;
    double vertex_bound = 0.0; // total_vol / (A_n R0^n)
    bool count_ok = true;      // N0 <= vertex_bound
    double ball_volume_sum = 0.0;
    bool sum_ok = true;        // sum of ball volumes <= total volume (packing)
    bool per_ball_ok = true;   // each ball volume >= A_n R0^n (within error bars)
};

NerveBoundVerdict nerve_count_bound_check(const NerveComplex& nerve, double total_vol,
                                          double A_n, double R0, int n,
                                          std::span<const BallGrowthProfile> profiles);

/// A_n / 2^n. Throws NonpositiveInput.
double gromov_constant(double A_n, int n);

struct MonotonicityVerdict {
    double sys_base = 0.0;
    double sys_derived = 0.0;
    bool ok = false;
};

/// sys(V'', f'', g'') >= sys(V, f, g) for a cycle in the extension.
MonotonicityVerdict systole_monotonicity_check(const homotopy::SystoleResult& base,
                                               const homotopy::SystoleResult& derived,
                                               double tol = 1e-9);

} // namespace systolekit::regularity
