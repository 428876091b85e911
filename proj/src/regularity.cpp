#include "systolekit/regularity.hpp"

#include "systolekit/errors.hpp"
#include "systolekit/kernels.hpp"
#include "systolekit/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace systolekit::regularity {

double growth_lower_bound(double alpha, double c, int n, double R) {
    if (n < 1 || c <= 0 || alpha < 0 || R < alpha)
        fail("DomainError", "growth_lower_bound needs 0 <= alpha <= R, c > 0, n >= 1");
    return std::pow(R - alpha, n) / (std::pow(c, n - 1) * std::pow(n, n));
}

GrowthCheck growth_lemma_check(std::span<const double> grid, std::span<const double> a,
                               std::span<const double> v, double alpha, double c, int n,
                               double tol) {
    if (grid.size() < 3) fail("GridTooCoarse", "need at least 3 samples");
    if (a.size() != grid.size() || v.size() != grid.size())
        fail("MalformedInput", "sample arrays must match the grid");
    if (c <= 0 || n < 1) fail("DomainError", "need c > 0 and n >= 1");

    GrowthCheck check;
    double integral = 0.0;
    bool hyp_ok_so_far = true;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) integral += 0.5 * (a[i] + a[i - 1]) * (grid[i] - grid[i - 1]);
        const bool h1 = v[i] >= integral - tol;
        // n = 1 limiting form of H2: a(R) >= 1 wherever v is positive.
        const bool h2 = (n == 1)
                            ? (v[i] <= tol || a[i] >= 1.0 - tol)
                            : (v[i] <= c * std::pow(a[i], static_cast<double>(n) / (n - 1)) + tol);
        if (!h1 && check.first_h1_violation < 0) {
            check.h1_ok = false;
            check.first_h1_violation = static_cast<int>(i);
        }
        if (!h2 && check.first_h2_violation < 0) {
            check.h2_ok = false;
            check.first_h2_violation = static_cast<int>(i);
        }
        hyp_ok_so_far = hyp_ok_so_far && h1 && h2;
        if (hyp_ok_so_far) {
            const double bound = growth_lower_bound(alpha, c, n, std::max(grid[i], alpha));
            if (v[i] < bound - tol && check.first_conclusion_violation < 0) {
                check.conclusion_ok = false;
                check.first_conclusion_violation = static_cast<int>(i);
            }
        }
    }
    return check;
}

CoareaSample coarea_check(const GeodesicGraph& g, NodeId center,
                          std::span<const double> radii) {
    CoareaSample sample;
    sample.profile = metric::ball_volume_profile(g, center, radii);
    sample.radii.assign(radii.begin(), radii.end());
    sample.ball_volumes = sample.profile.volumes;
    const std::size_t k = radii.size();
    sample.sphere_volumes.resize(k, 0.0);
    if (k >= 2) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t lo = (i == 0) ? 0 : i - 1;
            const std::size_t hi = (i + 1 == k) ? i : i + 1;
            const double dr = sample.radii[hi] - sample.radii[lo];
            sample.sphere_volumes[i] =
                dr > 0 ? (sample.ball_volumes[hi] - sample.ball_volumes[lo]) / dr : 0.0;
        }
    }
    sample.integrals.resize(k, 0.0);
    sample.tolerances.resize(k, 0.0);
    double integral = 0.0;
    double err_sum = sample.profile.error_bounds.empty() ? 0.0 : sample.profile.error_bounds[0];
    for (std::size_t i = 0; i < k; ++i) {
        if (i > 0) {
            integral += 0.5 * (sample.sphere_volumes[i] + sample.sphere_volumes[i - 1]) *
                        (sample.radii[i] - sample.radii[i - 1]);
            err_sum += sample.profile.error_bounds[i];
        }
        sample.integrals[i] = integral;
        // Telescoping residual of differencing-then-integrating plus the
        // accumulated profile error bars.
        const std::size_t hi = (i + 1 < k) ? i + 1 : i;
        const double residual = 0.25 * (sample.ball_volumes[hi] -
                                        sample.ball_volumes[i > 0 ? i - 1 : 0]) +
                                (k > 1 ? 0.5 * sample.ball_volumes[1] : 0.0);
        sample.tolerances[i] = residual + err_sum;
        if (sample.ball_volumes[i] < integral - sample.tolerances[i]) sample.ok = false;
    }
    return sample;
}

RegularityReport epsilon_regular_verdict(std::span<const BallGrowthProfile> profiles,
                                         double sys, double eps, double A_n, int n,
                                         double shift_a) {
    if (!(eps < sys / 2.0)) fail("BadRange", "need eps < sys/2");
    if (A_n < 0) fail("NonpositiveInput", "A_n must be nonnegative");
    RegularityReport report;
    report.sys = sys;
    report.eps = eps;
    report.A_n = A_n;
    report.shift_a = shift_a;
    report.n = n;
    for (const auto& profile : profiles) {
        for (std::size_t i = 0; i < profile.radii.size(); ++i) {
            const double R = profile.radii[i];
            if (R < eps || R > sys / 2.0) continue;
            RegularityRow row;
            row.center = profile.center;
            row.radius = R;
            row.volume = profile.volumes[i];
            row.bound = A_n * std::pow(R, n);
            row.shifted_bound = R > shift_a ? A_n * std::pow(R - shift_a, n) : 0.0;
            row.pass = row.volume >= row.bound;
            row.shifted_pass = row.volume >= row.shifted_bound;
            report.regular = report.regular && row.pass;
            report.shifted_regular = report.shifted_regular && row.shifted_pass;
            report.rows.push_back(row);
        }
    }
    return report;
}

FillingRegularVerdict filling_regular_check(std::span<const FillingRegularInput> inputs,
                                            double eps, int n, double ambient_c_n,
                                            double tol) {
    if (ambient_c_n <= 0) fail("NonpositiveInput", "ambient isoperimetric constant");
    FillingRegularVerdict verdict;
    verdict.c_n = 1.0 / (std::pow(2.0 * ambient_c_n, n - 1) * std::pow(n, n));
    for (const auto& in : inputs) {
        if (!in.filling_known)
            fail("MissingFilling", "no filling data at R = " + std::to_string(in.R));
        FillingRegularRow row;
        row.R = in.R;
        row.defining_ok = in.ball_volume <= (1.0 + eps) * in.filling_volume + tol;
        row.growth_bound =
            in.R > eps ? verdict.c_n * std::pow(in.R - eps, n) : 0.0;
        row.growth_ok = !row.defining_ok || in.ball_volume >= row.growth_bound - tol;
        verdict.filling_regular = verdict.filling_regular && row.defining_ok;
        verdict.growth_ok = verdict.growth_ok && row.growth_ok;
        verdict.rows.push_back(row);
    }
    return verdict;
}

NerveComplex nerve_of_cover(const GeodesicGraph& g, std::span<const NodeId> centers,
                            double R0, int dimension_cap) {
    NerveComplex nerve;
    nerve.centers.assign(centers.begin(), centers.end());
    nerve.R0 = R0;
    nerve.dimension_cap = dimension_cap;
    const int m = static_cast<int>(centers.size());
    std::vector<std::vector<double>> fields(m);
    parallel::for_chunks(m, 1, [&](std::size_t lo, std::size_t hi, std::size_t) {
        for (std::size_t i = lo; i < hi; ++i)
            fields[i] = metric::distance_field(g, centers[i]);
    });
    const double rho = 2.0 * R0; // doubled balls, open
    const std::size_t nnodes = g.keys.size();
    auto tuple_intersects = [&](const std::vector<int>& tup) {
        for (std::size_t node = 0; node < nnodes; ++node) {
            bool inside = true;
            for (int ci : tup)
                if (!(fields[ci][node] < rho)) {
                    inside = false;
                    break;
                }
            if (inside) return true;
        }
        return false;
    };
    nerve.simplices.resize(dimension_cap + 1);
    nerve.counts.assign(dimension_cap + 1, 0);
    for (int i = 0; i < m; ++i) nerve.simplices[0].push_back({i});
    nerve.counts[0] = nerve.simplices[0].size();
    for (int d = 1; d <= dimension_cap; ++d) {
        for (const auto& simplex : nerve.simplices[d - 1]) {
            for (int next = simplex.back() + 1; next < m; ++next) {
                std::vector<int> tup = simplex;
                tup.push_back(next);
                // downward closure pruning: every facet dropping one of the
                // first d entries must already be a simplex
                bool facets_ok = true;
                if (d >= 2) {
                    for (int drop = 0; drop < d && facets_ok; ++drop) {
                        std::vector<int> facet;
                        for (int i2 = 0; i2 <= d; ++i2)
                            if (i2 != drop) facet.push_back(tup[i2]);
                        facets_ok = std::binary_search(nerve.simplices[d - 1].begin(),
                                                       nerve.simplices[d - 1].end(), facet);
                    }
                }
                if (facets_ok && tuple_intersects(tup)) nerve.simplices[d].push_back(tup);
            }
        }
        std::sort(nerve.simplices[d].begin(), nerve.simplices[d].end());
        nerve.counts[d] = nerve.simplices[d].size();
        if (nerve.counts[d] == 0) break;
    }
    return nerve;
}

std::vector<NodeId> max_packing(const GeodesicGraph& g, double R0, double tol) {
    if (R0 <= 0) fail("NonpositiveInput", "packing radius");
    std::vector<NodeId> centers;
    std::vector<double> cover(g.keys.size(), std::numeric_limits<double>::infinity());
    for (int v = 0; v < g.node_count(); ++v) {
        if (cover[v] < 2.0 * R0 - tol) continue;
        centers.push_back(v);
        auto field = metric::distance_field(g, v);
        kernels::min_inplace(cover, field);
    }
    return centers;
}

NerveBoundVerdict nerve_count_bound_check(const NerveComplex& nerve, double total_vol,
                                          double A_n, double R0, int n,
                                          std::span<const BallGrowthProfile> profiles) {
    NerveBoundVerdict verdict;
    verdict.N0 = nerve.counts.empty() ? 0 : nerve.counts[0];
    if (verdict.N0 == 0) return verdict; // vacuous
    const double floor = A_n * std::pow(R0, n);
    verdict.vertex_bound = floor > 0 ? total_vol / floor
                                     : std::numeric_limits<double>::infinity();
    verdict.count_ok = static_cast<double>(verdict.N0) <= verdict.vertex_bound;
    double err = 0.0;
    for (const auto& profile : profiles) {
        double vol = 0.0, bar = 0.0;
        for (std::size_t i = 0; i < profile.radii.size(); ++i)
            if (profile.radii[i] <= R0) {
                vol = profile.volumes[i];
                bar = profile.error_bounds[i];
            }
        verdict.ball_volume_sum += vol;
        err += bar;
        if (vol + bar < floor) verdict.per_ball_ok = false;
    }
    verdict.sum_ok = verdict.ball_volume_sum <= total_vol + err;
    return verdict;
}

double gromov_constant(double A_n, int n) {
    if (A_n <= 0 || n < 1) fail("NonpositiveInput", "gromov_constant needs A_n > 0, n >= 1");
    return A_n / std::pow(2.0, n);
}

MonotonicityVerdict systole_monotonicity_check(const homotopy::SystoleResult& base,
                                               const homotopy::SystoleResult& derived,
                                               double tol) {
    MonotonicityVerdict v;
    v.sys_base = base.value;
    v.sys_derived = derived.value;
    v.ok = derived.value >= base.value - tol;
    return v;
}

} // namespace systolekit::regularity
