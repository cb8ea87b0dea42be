#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <cstring>
#include <numbers>

#include "polyharm/errors.hpp"
#include "polyharm/grid.hpp"
#include "polyharm/numerics.hpp"

using namespace polyharm;
namespace fs = std::filesystem;

namespace {

double weighted_sum(const QuadratureGrid& g, double (*f)(const Point&)) {
    CompensatedSum s;
    for (std::size_t i = 0; i < g.size(); ++i) s.add(g.weight(i) * f(g.node(i)));
    return s.value();
}

fs::path fresh_dir(const std::string& tag) {
    auto dir = fs::temp_directory_path() / ("polyharm-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("weights sum to the ball volume") {
    for (int n : {2, 3, 4}) {
        const BallProblem problem(n, 1);
        for (int level : {0, 1, 2}) {
            const auto g = build_grid(problem, level, {});
            CHECK(weighted_sum(g, [](const Point&) { return 1.0; }) ==
                  doctest::Approx(problem.volume()).epsilon(1e-12));
        }
    }
}

TEST_CASE("boundary distance integrates to pi/3 over the 3-ball") {
    const auto g = build_grid(BallProblem(3, 1), 2, {});
    CHECK(weighted_sum(g, [](const Point& x) { return 1.0 - norm(x); }) ==
          doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-10));
}

TEST_CASE("polynomial integrands converge monotonically") {
    const BallProblem problem(3, 1);
    const double pi = std::numbers::pi;
    // ∫ x1² = 4π/15, ∫ x1⁴ = 4π/35, ∫ x1² x2² = 4π/105
    const double exact[] = {4.0 * pi / 15.0, 4.0 * pi / 35.0, 4.0 * pi / 105.0};
    double prev[] = {1.0, 1.0, 1.0};
    for (int level : {1, 2, 3, 4}) {
        const auto g = build_grid(problem, level, {});
        const double got[] = {
            weighted_sum(g, [](const Point& x) { return x[0] * x[0]; }),
            weighted_sum(g, [](const Point& x) { return std::pow(x[0], 4); }),
            weighted_sum(g, [](const Point& x) { return x[0] * x[0] * x[1] * x[1]; }),
        };
        for (int k = 0; k < 3; ++k) {
            const double err = std::abs(got[k] - exact[k]) / exact[k];
            CHECK(err < prev[k]);
            if (level == 4) CHECK(err < 1e-3);
            prev[k] = err;
        }
    }
}

TEST_CASE("nodes lie in the open ball and spacing halves with the level") {
    const BallProblem problem(3, 1);
    double prev = 0.0;
    std::size_t prev_size = 0;
    for (int level : {0, 1, 2, 3}) {
        const auto g = build_grid(problem, level, {});
        for (const auto& x : g.nodes()) CHECK(norm(x) < 1.0);
        if (level > 0) {
            CHECK(g.spacing() == doctest::Approx(prev / 2.0));
            CHECK(g.size() > prev_size);
        }
        prev = g.spacing();
        prev_size = g.size();
    }
}

TEST_CASE("invalid grid requests") {
    const BallProblem problem(3, 1);
    CHECK_THROWS_AS(build_grid(problem, -1, {}), ParameterError);
    CHECK_THROWS_AS(build_grid(problem, 1, Grading{0.5, {}}), ParameterError);
    CHECK_THROWS_AS(build_grid(problem, 1, Grading{2.0, Point{0.5, 0.0, 0.0, 0.0}}), ParameterError);
}

TEST_CASE("focused grid moves its pole") {
    const Point focus{0.0, 1.0, 0.0, 0.0};
    const auto g = build_grid(BallProblem(3, 1), 1, Grading{2.0, focus});
    CHECK(distance(g.pole(), focus) < 1e-14);
    CHECK(weighted_sum(g, [](const Point&) { return 1.0; }) ==
          doctest::Approx(4.0 * std::numbers::pi / 3.0).epsilon(1e-12));
}

TEST_CASE("ring rule integrates axisymmetric functions") {
    for (int n : {2, 3, 4}) {
        const BallProblem problem(n, 1);
        const auto g = build_grid(problem, 1, {});
        CompensatedSum vol, x1sq;
        for (std::size_t ring = 0; ring < g.ring_count(); ++ring) {
            g.visit_ring(ring, 4, [&](const Point& y, double w) {
                vol.add(w);
                x1sq.add(w * y[0] * y[0]);
            });
        }
        CHECK(vol.value() == doctest::Approx(problem.volume()).epsilon(1e-12));
        // ∫ x1² = |B| / (n + 2)
        CHECK(x1sq.value() == doctest::Approx(problem.volume() / (n + 2)).epsilon(1e-9));
    }
}

TEST_CASE("cell rule covers the cell") {
    const auto g = build_grid(BallProblem(3, 1), 1, {});
    for (std::size_t i : {std::size_t{0}, g.size() / 2, g.size() - 1}) {
        double w = 0.0;
        g.visit_cell(i, 3, [&](const Point&, double wy) { w += wy; });
        CHECK(w == doctest::Approx(g.weight(i)).epsilon(1e-10));
    }
}

TEST_CASE("grid cache round trip is bitwise exact") {
    const auto dir = fresh_dir("grid-cache");
    const BallProblem problem(3, 1);
    const auto built = build_grid(problem, 2, {});
    const auto first = cached_grid(problem, 2, {}, dir.string());
    const auto second = cached_grid(problem, 2, {}, dir.string());
    REQUIRE(first->size() == built.size());
    REQUIRE(second->size() == built.size());
    for (std::size_t i = 0; i < built.size(); ++i) {
        CHECK(std::memcmp(&second->node(i), &built.node(i), sizeof(Point)) == 0);
        CHECK(std::memcmp(&second->weights()[i], &built.weights()[i], sizeof(double)) == 0);
    }
    fs::remove_all(dir);
}

TEST_CASE("corrupted cache files are rebuilt") {
    const auto dir = fresh_dir("grid-corrupt");
    const BallProblem problem(2, 1);
    const auto built = build_grid(problem, 1, {});
    cached_grid(problem, 1, {}, dir.string());
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        ++files;
        std::ofstream(entry.path(), std::ios::binary | std::ios::trunc) << "garbage";
    }
    REQUIRE(files > 0);
    const auto g = cached_grid(problem, 1, {}, dir.string());
    REQUIRE(g->size() == built.size());
    for (std::size_t i = 0; i < built.size(); ++i) CHECK(g->weight(i) == built.weight(i));
    // and the rewritten file reads back
    auto copy = build_grid(problem, 1, {});
    for (const auto& entry : fs::directory_iterator(dir)) CHECK(read_grid_cache(copy, entry.path().string()));
    fs::remove_all(dir);
}
