#include <doctest.h>

#include <cmath>

#include "polyharm/errors.hpp"
#include "polyharm/singular.hpp"

using namespace polyharm;

namespace {

std::shared_ptr<const QuadratureGrid> focused_grid(int n, int m, int level) {
    return std::make_shared<const QuadratureGrid>(build_grid(BallProblem(n, m), level, singular_grading(n)));
}

}  // namespace

TEST_CASE("cone data") {
    const BallProblem problem(3, 1);
    const auto region = ConeRegion::standard();
    CHECK_THROWS_AS(singular_rhs_function(problem, 2.0, region), ParameterError);
    CHECK_THROWS_AS(singular_rhs_function(problem, 0.0, region), ParameterError);
    const auto f = singular_rhs_function(problem, 1.0, region);
    CHECK(f(Point{0.0, 0.0, 0.0, 0.0}) == 0.0);
    CHECK(f(Point{0.9, 0.3, 0.0, 0.0}) == 0.0);
    // homogeneous of degree -(1 + 2) along the axis
    CHECK(f(Point{0.9, 0.0, 0.0, 0.0}) == doctest::Approx(1000.0));
    CHECK(f(Point{0.8, 0.0, 0.0, 0.0}) == doctest::Approx(125.0));
}

TEST_CASE("axisymmetric sampling on the vertex-focused grid matches full sampling") {
    const BallProblem problem(3, 1);
    const auto grid = focused_grid(3, 1, 1);
    const auto region = ConeRegion::standard();
    const auto fast = build_singular_rhs(problem, 1.0, region, grid);
    const auto full = SampledField::sample(grid, singular_rhs_function(problem, 1.0, region));
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(fast[i] == doctest::Approx(full[i]).epsilon(1e-9));
    CHECK_THROWS_AS(build_singular_rhs(BallProblem(3, 2), 0.5, region, grid), DomainError);
}

TEST_CASE("pointwise lower bound scales with u") {
    const BallProblem problem(2, 1);
    const auto grid = focused_grid(2, 1, 2);
    const auto region = ConeRegion::standard();
    const GreenOperator op(GreenKernel(problem), grid);
    const auto u = op.apply(build_singular_rhs(problem, 0.5, region, grid));
    const double c = verify_pointwise_lower_bound(u, 0.5, region);
    CHECK(c > 0.0);
    CHECK(verify_pointwise_lower_bound(u.scaled(3.0), 0.5, region) == doctest::Approx(3.0 * c));
}

TEST_CASE("construction refuses the bounded regime") {
    CHECK_THROWS_AS(construct_counterexample(1.5, 1.5, 1, 3, focused_grid(3, 1, 0)), NotApplicableError);
}

TEST_CASE("symmetric exponents give a symmetric system") {
    const BallProblem problem(3, 1);
    const GreenOperator op(GreenKernel(problem), focused_grid(3, 1, 1));
    const auto s = construct_counterexample(3.0, 3.0, op);
    CHECK(s.alpha == doctest::Approx(1.0));
    CHECK(s.u.min() > 0.0);
    const auto st = system_stats(s, op);
    CHECK(st.sup_a > 0.0);
    CHECK(std::isfinite(st.sup_a));
    CHECK(st.sup_a <= 2.0 * st.sup_b);
    CHECK(st.sup_b <= 2.0 * st.sup_a);
    CHECK(st.c_u > 0.0);
    const auto [ru, rv] = verify_system_residual(s, op);
    CHECK(ru < 1e-10);
    CHECK(rv < 1e-10);

    auto faulty = s;
    faulty.a = s.a.scaled(2.0);
    CHECK(verify_system_residual(faulty, op).first == doctest::Approx(1.0).epsilon(1e-6));

    auto zero = s;
    zero.u = s.u.scaled(0.0);
    CHECK_THROWS_AS(verify_system_residual(zero, op), InvariantViolation);
}

TEST_CASE("probe points lie in the closed cone") {
    const auto region = ConeRegion::standard();
    const auto pts = cone_probe_points(region, 0.05);
    REQUIRE(!pts.empty());
    for (const auto& x : pts) {
        const double t = distance(x, region.x0);
        CHECK(t >= 0.05);
        CHECK(t <= region.cap_radius + 1e-15);
        CHECK(norm(x) < 1.0);
    }
}
