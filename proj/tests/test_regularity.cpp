#include "systolekit/chains.hpp"
#include "systolekit/errors.hpp"
#include "systolekit/regularity.hpp"

#include "models.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace systolekit;
using namespace models;

TEST_CASE("growth lower bound evaluates the closed form") {
    CHECK(regularity::growth_lower_bound(0.0, 1.0, 2, 2.0) == doctest::Approx(1.0));
    CHECK(regularity::growth_lower_bound(0.7, 3.0, 2, 0.7) == 0.0);
    CHECK(regularity::growth_lower_bound(0.25, 5.0, 1, 2.0) ==
          doctest::Approx(1.75)); // c-exponent vanishes at n = 1
    CHECK_THROWS_AS(regularity::growth_lower_bound(1.0, 1.0, 2, 0.5), Error);
    CHECK_THROWS_AS(regularity::growth_lower_bound(0.0, -1.0, 2, 1.0), Error);
}

namespace {

struct Family {
    std::vector<double> grid, a, v;
};

Family power_family(int n, double beta, int points) {
    Family f;
    for (int i = 0; i < points; ++i) {
        const double t = beta * i / (points - 1);
        f.grid.push_back(t);
        f.a.push_back(n * std::pow(t, n - 1));
        f.v.push_back(std::pow(t, n));
    }
    return f;
}

} // namespace

TEST_CASE("growth lemma check on the power family") {
    // a(t) = n t^(n-1), v(t) = t^n, c = 1, n = 2. Exact evaluation: the
    // trapezoid of a linear integrand is exact, so H1 holds with equality;
    // H2 reads t^2 <= (2t)^2 and holds; the conclusion t^2 >= t^2/4 holds.
    auto f = power_family(2, 2.0, 101);
    auto check = regularity::growth_lemma_check(f.grid, f.a, f.v, 0.0, 1.0, 2, 1e-9);
    CHECK(check.h1_ok);
    CHECK(check.h2_ok);
    CHECK(check.conclusion_ok);
    CHECK_FALSE(check.flagged());
}

TEST_CASE("growth lemma check in dimension one") {
    // a = 1, v = t: conclusion holds with equality
    Family f;
    for (int i = 0; i <= 50; ++i) {
        f.grid.push_back(i / 50.0);
        f.a.push_back(1.0);
        f.v.push_back(i / 50.0);
    }
    auto check = regularity::growth_lemma_check(f.grid, f.a, f.v, 0.0, 1.0, 1, 1e-9);
    CHECK_FALSE(check.flagged());

    // doubling v keeps H1 and the conclusion
    for (auto& v : f.v) v *= 2.0;
    auto doubled = regularity::growth_lemma_check(f.grid, f.a, f.v, 0.0, 1.0, 1, 1e-9);
    CHECK(doubled.h1_ok);
    CHECK(doubled.conclusion_ok);
}

TEST_CASE("corrupted profiles are flagged") {
    auto f = power_family(2, 2.0, 101);
    for (auto& v : f.v) v *= 0.5;
    auto check = regularity::growth_lemma_check(f.grid, f.a, f.v, 0.0, 1.0, 2, 1e-9);
    CHECK(check.flagged());
    CHECK_FALSE(check.h1_ok); // halving v breaks the integral bound
    CHECK(check.first_h1_violation > 0);
}

TEST_CASE("randomized families satisfying both hypotheses satisfy the conclusion") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> bump(1.0, 1.4);
    int tested = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 2);
        const double c = 2.0 + (rng() % 100) / 50.0;
        Family f;
        const int points = 100;
        double integral = 0.0;
        double prev_a = 0.0, prev_t = 0.0;
        bool feasible = true;
        for (int i = 0; i < points; ++i) {
            const double t = 2.0 * i / (points - 1);
            const double a = n * std::pow(t, n - 1) * bump(rng);
            if (i > 0) integral += 0.5 * (a + prev_a) * (t - prev_t);
            const double v = integral; // H1 with equality on the same grid
            if (v > c * std::pow(a, static_cast<double>(n) / (n - 1)) + 1e-12) feasible = false;
            f.grid.push_back(t);
            f.a.push_back(a);
            f.v.push_back(v);
            prev_a = a;
            prev_t = t;
        }
        if (!feasible) continue;
        ++tested;
        auto check = regularity::growth_lemma_check(f.grid, f.a, f.v, 0.0, c, n, 1e-9);
        CAPTURE(trial);
        CHECK(check.h1_ok);
        CHECK(check.h2_ok);
        CHECK(check.conclusion_ok);
    }
    CHECK(tested >= 40);
}

TEST_CASE("grid too coarse is rejected") {
    std::vector<double> grid{0.0, 1.0}, a{1.0, 1.0}, v{0.0, 1.0};
    CHECK_THROWS_AS(regularity::growth_lemma_check(grid, a, v, 0.0, 1.0, 2, 1e-9), Error);
}

TEST_CASE("coarea on the circle holds with equality slack") {
    auto model = circle(2.0, 3);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 8);
    std::vector<double> radii;
    for (int i = 0; i <= 20; ++i) radii.push_back(i * 0.05);
    auto sample = regularity::coarea_check(g, 0, radii);
    CHECK(sample.ok);
    CHECK(sample.ball_volumes[0] == 0.0);
    CHECK(sample.integrals[0] == 0.0);
}

TEST_CASE("coarea survives ball wrapping on the torus") {
    auto model = torus(1.0, 1.0, 3);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 2, 4);
    std::vector<double> radii;
    for (int i = 0; i <= 16; ++i) radii.push_back(i * 0.05); // beyond injectivity radius
    auto sample = regularity::coarea_check(g, 0, radii);
    CHECK(sample.ok);
}

TEST_CASE("epsilon regularity on the circle") {
    auto model = circle(2.0, 3);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 8);
    std::vector<double> radii;
    for (int i = 3; i <= 10; ++i) radii.push_back(i * 0.1);
    std::vector<metric::BallGrowthProfile> profiles{
        metric::ball_volume_profile(g, 0, radii)};
    // vol B(R) = 2R up to one arc of granularity per side; A = 1.5 leaves
    // room for that slack at R >= 0.3
    auto report = regularity::epsilon_regular_verdict(profiles, 2.0, 0.1, 1.5, 1, 0.0);
    CHECK(report.regular);
    CHECK(report.rows.size() > 0);
    // A_n = 0 is always regular
    CHECK(regularity::epsilon_regular_verdict(profiles, 2.0, 0.1, 0.0, 1, 0.0).regular);
    CHECK_THROWS_AS(regularity::epsilon_regular_verdict(profiles, 2.0, 1.5, 1.0, 1, 0.0),
                    Error); // BadRange
}

TEST_CASE("epsilon regularity is monotone in A_n") {
    auto model = circle(2.0, 3);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 6);
    std::vector<double> radii{0.2, 0.4, 0.6, 0.8};
    std::vector<metric::BallGrowthProfile> profiles{
        metric::ball_volume_profile(g, 0, radii)};
    for (double A : {0.5, 1.0, 1.5}) {
        auto strong = regularity::epsilon_regular_verdict(profiles, 2.0, 0.1, A, 1, 0.0);
        auto weak = regularity::epsilon_regular_verdict(profiles, 2.0, 0.1, A / 2, 1, 0.0);
        if (strong.regular) CHECK(weak.regular);
    }
}

TEST_CASE("thin pillows fail the growth bound inside the tube") {
    // 4 x 0.001 pillow: balls grow like 4 b R once they wrap the waist
    auto model = pillow(4.0, 0.001, 8, 2);
    auto V = mesh::validate_pseudomanifold(model.complex, 2);
    CHECK(V.orientable);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 2, 2);
    // center near the middle of the strip
    metric::NodeId center = g.node_of_vertex(model.complex.vertices().size() / 2);
    std::vector<double> radii{1.0, 2.0};
    std::vector<metric::BallGrowthProfile> profiles{
        metric::ball_volume_profile(g, center, radii)};
    const double A = 1.0 / 288.0; // the feasible constant at C_1 = C_2 = 1
    auto report =
        regularity::epsilon_regular_verdict(profiles, 4.0, 0.5, A, 2, 0.0);
    CHECK_FALSE(report.regular);
    bool failed_at_2 = false;
    for (const auto& row : report.rows)
        if (row.radius == 2.0 && !row.pass) failed_at_2 = true;
    CHECK(failed_at_2);
}

TEST_CASE("theorem-B shifted bound is evaluated alongside") {
    auto model = circle(2.0, 3);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 6);
    std::vector<double> radii{0.5, 0.9};
    std::vector<metric::BallGrowthProfile> profiles{
        metric::ball_volume_profile(g, 0, radii)};
    auto report = regularity::epsilon_regular_verdict(profiles, 2.0, 0.2, 1.8, 1, 0.3);
    for (const auto& row : report.rows) {
        CHECK(row.shifted_bound <= row.bound);
        if (row.pass) CHECK(row.shifted_pass);
    }
}

TEST_CASE("filling regularity: pass, vacuous pass, and the cheap-shortcut failure") {
    std::vector<regularity::FillingRegularInput> inputs;
    // single square ball, boundary fills with the square itself
    inputs.push_back({0.5, 1.0, 4.0, 1.0, true});
    auto verdict = regularity::filling_regular_check(inputs, 0.25, 2, 1.0, 1e-9);
    CHECK(verdict.filling_regular);

    // essential boundary: infinite filling volume, vacuous pass
    inputs.clear();
    inputs.push_back({0.5, 3.0, 6.0, std::numeric_limits<double>::infinity(), true});
    CHECK(regularity::filling_regular_check(inputs, 0.25, 2, 1.0, 1e-9).filling_regular);

    // cube-surface shortcut: the 5-face cap's boundary fills with 1 face
    auto K = [&] {
        cubical::CubeComplex k;
        k.ambient_dim = 3;
        for (const char* s : {"*,*,0", "*,*,1", "*,0,*", "*,1,*", "0,*,*", "1,*,*"})
            k.insert_with_faces(cubical::CubeCell::parse(s));
        return k;
    }();
    chains::CubicalChain cap;
    cap.ambient_dim = 3;
    cap.degree = 2;
    for (const char* s : {"*,*,1", "*,0,*", "*,1,*", "0,*,*", "1,*,*"})
        cap.add(cubical::CubeCell::parse(s), 1);
    // orient so that the boundary is the bottom square's boundary
    chains::CubicalChain bottom;
    bottom.ambient_dim = 3;
    bottom.degree = 2;
    bottom.add(cubical::CubeCell::parse("*,*,0"), 1);
    auto z = chains::boundary(bottom);
    auto fill = chains::filling_lp(z, K);
    CHECK(fill.volume == doctest::Approx(1.0)); // the bottom face itself
    inputs.clear();
    inputs.push_back({0.5, 5.0, chains::chain_volume(z), fill.volume, true});
    auto bad = regularity::filling_regular_check(inputs, 0.25, 2, 1.0, 1e-9);
    CHECK_FALSE(bad.filling_regular); // 5 > (1+eps) * 1

    // missing data is an error
    inputs.push_back({0.75, 1.0, 4.0, 0.0, false});
    CHECK_THROWS_AS(regularity::filling_regular_check(inputs, 0.25, 2, 1.0, 1e-9), Error);
}

TEST_CASE("nerve of three pairwise-overlapping balls is the triangle boundary") {
    auto model = circle(3.0, 3); // centers at 0, 1, 2
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 8);
    std::vector<metric::NodeId> centers{0, 1, 2};
    auto nerve = regularity::nerve_of_cover(g, centers, 0.35, 4); // 2R0 = 0.7
    CHECK(nerve.counts[0] == 3);
    CHECK(nerve.counts[1] == 3);
    CHECK(nerve.counts[2] == 0);
    // downward closed: every edge's endpoints are vertices
    for (const auto& e : nerve.simplices[1]) CHECK(e.size() == 2);

    auto disjoint = regularity::nerve_of_cover(g, centers, 0.2, 4); // 2R0 = 0.4
    CHECK(disjoint.counts[0] == 3);
    CHECK(disjoint.counts[1] == 0);
}

TEST_CASE("perimeter-2 packing and nerve bound") {
    auto model = circle(2.0, 3);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 6);
    auto centers = regularity::max_packing(g, 0.5);
    REQUIRE(centers.size() == 2); // exhaustive packing: {0, antipode}
    CHECK(centers[0] == 0);
    auto field = metric::distance_field(g, centers[0]);
    CHECK(field[centers[1]] == doctest::Approx(1.0).epsilon(1e-9));

    auto nerve = regularity::nerve_of_cover(g, centers, 0.5, 4);
    CHECK(nerve.counts[0] == 2);
    CHECK(nerve.counts[1] == 1);

    std::vector<double> radii{0.5};
    std::vector<metric::BallGrowthProfile> profiles;
    for (auto c : centers) profiles.push_back(metric::ball_volume_profile(g, c, radii));
    auto verdict = regularity::nerve_count_bound_check(nerve, 2.0, 1.0, 0.5, 1, profiles);
    CHECK(verdict.N0 == 2);
    CHECK(verdict.vertex_bound == doctest::Approx(4.0));
    CHECK(verdict.count_ok);
    CHECK(verdict.sum_ok);
    CHECK(verdict.per_ball_ok);

    // an inconsistent A_n claim fails the arithmetic
    auto bad = regularity::nerve_count_bound_check(nerve, 2.0, 10.0, 0.5, 1, profiles);
    CHECK_FALSE(bad.count_ok);

    // empty nerve is a vacuous pass
    regularity::NerveComplex empty;
    CHECK(regularity::nerve_count_bound_check(empty, 2.0, 1.0, 0.5, 1, {}).count_ok);
}

TEST_CASE("gromov constant chain") {
    CHECK(regularity::gromov_constant(1.0, 2) == doctest::Approx(0.25));
    CHECK(regularity::gromov_constant(2.0, 1) == doctest::Approx(1.0));
    CHECK(regularity::gromov_constant(0.5, 3) >
          regularity::gromov_constant(0.25, 3)); // monotone in A_n
    CHECK_THROWS_AS(regularity::gromov_constant(0.0, 2), Error);

    // round circle: A_1 = 2 gives C_1 = 1 and sigma = 1, with equality
    auto model = circle(2.0, 3);
    auto [pi, phi] = circle_identity(model);
    auto g = metric::build_geodesic_graph(model.complex, model.metric, 1, 4);
    auto sys = homotopy::relative_systole(g, pi, phi);
    const double sigma =
        homotopy::systolic_ratio(mesh::total_volume(model.complex, model.metric, 1), 1, sys);
    CHECK(sigma == doctest::Approx(regularity::gromov_constant(2.0, 1)).epsilon(1e-12));
}

TEST_CASE("systole monotonicity verdicts") {
    homotopy::SystoleResult base, derived;
    base.status = homotopy::SystoleResult::Status::Exact;
    base.value = 2.0;
    derived.status = homotopy::SystoleResult::Status::Exact;
    derived.value = 6.0;
    CHECK(regularity::systole_monotonicity_check(base, derived).ok);
    CHECK(regularity::systole_monotonicity_check(base, base).ok); // identity embedding
    derived.value = 1.0;
    CHECK_FALSE(regularity::systole_monotonicity_check(base, derived).ok);
}
