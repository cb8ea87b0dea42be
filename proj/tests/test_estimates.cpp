#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyharm/errors.hpp"
#include "polyharm/estimates.hpp"
#include "polyharm/singular.hpp"

using namespace polyharm;

namespace {

const double pi = std::numbers::pi;

// ∫_cone |x - x0|^{-(alpha+2)} d(x) dx for the standard cone, m = 1, in
// cone coordinates x = e1 + t(-cos g, sin g ω); t = u²/2 smooths t = 0.
double cone_norm_oracle(int n, double alpha) {
    const int nu = 400, ng = 200;
    const double gmax = pi / 6.0, umax = 1.0;
    const double sphere = n == 3 ? 2.0 * pi : 4.0 * pi;  // |S^{n-2}|
    auto simpson_w = [](int i, int steps) { return (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0); };
    double total = 0.0;
    for (int i = 0; i <= nu; ++i) {
        const double u = umax * i / nu;
        const double t = 0.5 * u * u;
        if (t == 0.0) continue;
        double inner = 0.0;
        for (int j = 0; j <= ng; ++j) {
            const double g = gmax * j / ng;
            const double x1 = 1.0 - t * std::cos(g), xr = t * std::sin(g);
            const double d = 1.0 - std::sqrt(x1 * x1 + xr * xr);
            inner += simpson_w(j, ng) * d * std::pow(std::sin(g), n - 2);
        }
        inner *= gmax / (3.0 * ng);
        total += simpson_w(i, nu) * inner * std::pow(t, -(alpha + 2.0) + n - 1) * u;
    }
    return sphere * total * umax / (3.0 * nu);
}

}  // namespace

TEST_CASE("trend classification") {
    CHECK(classify_trend({1, 2, 4}) == Trend::Inconclusive);
    CHECK(classify_trend({1, 2, 4, 8}) == Trend::Growing);
    CHECK(classify_trend({1, 2, 3, 3.9}) == Trend::Inconclusive);
    CHECK(classify_trend({1, 2, 2.05, 2.1}) == Trend::Bounded);
    CHECK(classify_trend({1, 1.1, 1.3, 1.2}) == Trend::Bounded);
    CHECK(classify_trend({3, 1, 5, 1}) == Trend::Inconclusive);
}

TEST_CASE("case names") {
    for (auto c : {EstimateCase::Prop21_1, EstimateCase::Prop21_2, EstimateCase::Prop23, EstimateCase::Lemma})
        CHECK(parse_estimate_case(to_string(c)) == c);
    CHECK_THROWS_AS(parse_estimate_case("prop99"), ParameterError);
}

TEST_CASE("hypotheses are named when violated") {
    CHECK_THROWS_WITH_AS(check_estimate_hypotheses(EstimateCase::Prop21_1, {3, 1, 1, 1}),
                         doctest::Contains("n <= m"), ParameterError);
    CHECK_THROWS_WITH_AS(check_estimate_hypotheses(EstimateCase::Prop23, {3, 1, 1, 1, 2.5}),
                         doctest::Contains("k <"), ParameterError);
    CHECK_THROWS_WITH_AS(check_estimate_hypotheses(EstimateCase::Prop21_2, {3, 1, 1, 10}),
                         doctest::Contains("2m/(n+m)"), ParameterError);
    CHECK_THROWS_AS(check_estimate_hypotheses(EstimateCase::Lemma, {3, 1, 2, 4, 1, 1.5, 0.5}), ParameterError);
    CHECK_NOTHROW(check_estimate_hypotheses(EstimateCase::Lemma, {3, 1, 2, 4, 1, 0.5, 0.5}));
    CHECK_NOTHROW(check_estimate_hypotheses(EstimateCase::Prop23, {3, 1, 1, 1, 1.5}));
}

TEST_CASE("bounded estimate on a short ladder") {
    StudyOptions opt;
    opt.levels = {0, 1, 2, 3};
    const auto rep = verify_estimate(EstimateCase::Prop23, {3, 1, 1, 1, 1.5}, default_rhs_family(1), opt);
    CHECK(rep.levels.size() == 4);
    CHECK(rep.trend == Trend::Bounded);
    REQUIRE(rep.empirical_c.has_value());
    CHECK(*rep.empirical_c > 0.0);
    // d^{-m+0.1} is in L1 with weight d^m
    CHECK(rep.rhs_names.size() == 4);
}

TEST_CASE("falsification window and refusals") {
    const auto [lo, hi] = falsification_window(4, 1, 1.0, kInfinity);
    CHECK(lo == 0.0);
    CHECK(hi == doctest::Approx(3.0));
    CHECK_THROWS_AS(falsification_window(3, 1, 2.0, 2.0), ParameterError);
    CHECK_THROWS_AS(falsify_estimate(3, 1, 1.0, kInfinity), ParameterError);
    CHECK_THROWS_AS(falsify_estimate(2, 2, 1.0, kInfinity), ParameterError);
}

TEST_CASE("cone data norm matches an independent quadrature") {
    const double o3 = cone_norm_oracle(3, 1.0), o4 = cone_norm_oracle(4, 1.5);
    CHECK(o3 == doctest::Approx(0.38294).epsilon(1e-4));
    CHECK(o4 == doctest::Approx(0.11887).epsilon(1e-4));
    const auto region = ConeRegion::standard();
    for (auto [n, alpha, oracle] : {std::tuple{3, 1.0, o3}, std::tuple{4, 1.5, o4}}) {
        const BallProblem problem(n, 1);
        const auto grid = build_grid(problem, 1, singular_grading(n));
        const double got =
            weighted_norm_of_axisymmetric(grid, singular_rhs_function(problem, alpha, region), 1.0, 1);
        CHECK(got == doctest::Approx(oracle).epsilon(5e-3));
    }
}

TEST_CASE("lemma constant for h = 1") {
    const BallProblem problem(3, 1);
    const GreenOperator op(GreenKernel(problem), std::make_shared<const QuadratureGrid>(build_grid(problem, 3, {})));
    const auto one = SampledField::constant(op.grid_ptr(), 1.0);
    // u/d = (1 + |x|)/6, smallest at the centre; ∫ d = π/3
    const double c = verify_lemma_x(op, one);
    CHECK(c > 0.0);
    CHECK(c == doctest::Approx(1.0 / (2.0 * pi)).epsilon(0.1));
    CHECK_THROWS_AS(verify_lemma_x(op, one.scaled(-1.0)), ParameterError);
    CHECK_THROWS_AS(verify_lemma_x(op, one.scaled(0.0)), ParameterError);
}
