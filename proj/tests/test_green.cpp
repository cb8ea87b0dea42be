#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyharm/errors.hpp"
#include "polyharm/green.hpp"
#include "polyharm/numerics.hpp"

using namespace polyharm;

namespace {

const double pi = std::numbers::pi;

// |y| x - y/|y|
double image_distance(const Point& x, const Point& y) {
    const double ry = norm(y);
    return norm(ry * x - (1.0 / ry) * y);
}

Point random_point(UniformStream& rng, int n, double radius) {
    for (;;) {
        Point x{};
        for (int i = 0; i < n; ++i) x[i] = radius * (2.0 * rng.next() - 1.0);
        if (norm(x) < radius) return x;
    }
}

}  // namespace

TEST_CASE("laplacian kernel matches the image formula in 3D") {
    const GreenKernel g(BallProblem(3, 1));
    UniformStream rng(7);
    for (int i = 0; i < 500; ++i) {
        const Point x = random_point(rng, 3, 0.99), y = random_point(rng, 3, 0.99);
        const double expected = (1.0 / distance(x, y) - 1.0 / image_distance(x, y)) / (4.0 * pi);
        CHECK(eval_green(g, x, y) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("laplacian kernel matches the image formula in 2D") {
    const GreenKernel g(BallProblem(2, 1));
    UniformStream rng(8);
    for (int i = 0; i < 500; ++i) {
        const Point x = random_point(rng, 2, 0.99), y = random_point(rng, 2, 0.99);
        const double expected = std::log(image_distance(x, y) / distance(x, y)) / (2.0 * pi);
        CHECK(eval_green(g, x, y) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("normalisation constant") {
    for (int n : {2, 3, 4}) {
        for (int m : {1, 2, 3}) {
            const double en = std::pow(pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
            const double f = std::tgamma(m);
            const double k = 1.0 / (n * en * std::pow(4.0, m - 1) * f * f);
            CHECK(GreenKernel(BallProblem(n, m)).normalization() == doctest::Approx(k).epsilon(1e-14));
        }
    }
}

TEST_CASE("fundamental constant") {
    for (auto [n, m] : {std::pair{3, 1}, std::pair{4, 1}}) {
        const double c = std::tgamma(n / 2.0 - m) / (std::pow(4.0, m) * std::pow(pi, n / 2.0) * std::tgamma(m));
        const GreenKernel g(BallProblem(n, m));
        CHECK(g.fundamental_constant() == doctest::Approx(c).epsilon(1e-12));
        // and G |x-y|^{n-2m} tends to it near the diagonal
        const Point x{0.1, 0.2, 0.0, 0.0};
        const Point y{0.1 + 1e-6, 0.2, 0.0, 0.0};
        CHECK(g.value(x, y) * std::pow(1e-6, n - 2 * m) == doctest::Approx(c).epsilon(1e-4));
    }
}

TEST_CASE("kernel is symmetric and positive") {
    UniformStream rng(11);
    for (int n : {2, 3, 4}) {
        for (int m : {1, 2, 3}) {
            const GreenKernel g(BallProblem(n, m));
            for (int i = 0; i < 200; ++i) {
                const Point x = random_point(rng, n, 0.999), y = random_point(rng, n, 0.999);
                const double gxy = eval_green(g, x, y), gyx = eval_green(g, y, x);
                CHECK(gxy > 0.0);
                CHECK(gxy == doctest::Approx(gyx).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("inner integral near and far branches agree with quadrature") {
    // ∫_1^A (v²-1)^{m-1} v^{1-n} dv by composite Simpson
    auto simpson = [](int m, int n, double a) {
        const int steps = 20000;
        const double h = (a - 1.0) / steps;
        double s = 0.0;
        for (int i = 0; i <= steps; ++i) {
            const double v = 1.0 + i * h;
            const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            s += w * std::pow(v * v - 1.0, m - 1) * std::pow(v, 1 - n);
        }
        return s * h / 3.0;
    };
    for (int n : {2, 3, 4}) {
        for (int m : {2, 3}) {
            const GreenKernel g(BallProblem(n, m));
            for (double a : {1.01, 1.5, 1.99, 2.5, 10.0}) {
                CHECK(g.inner_integral(a, a - 1.0) == doctest::Approx(simpson(m, n, a)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("checked evaluation errors") {
    const GreenKernel g(BallProblem(3, 1));
    const Point x{0.1, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(eval_green(g, x, x), SingularityError);
    CHECK_THROWS_AS(eval_green(g, x, Point{1.0, 0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(eval_green(g, Point{0.8, 0.8, 0.0, 0.0}, x), DomainError);
}

TEST_CASE("lower bounds hold on sampled pairs") {
    PairSampling sampling;
    sampling.counts = {500, 2000};
    for (auto [n, m] : {std::pair{3, 1}, std::pair{2, 1}, std::pair{2, 2}}) {
        const GreenKernel g(BallProblem(n, m));
        const auto bound = lower_bound_for(g.green_case());
        const auto report = verify_green_lower_bound(g, bound, sampling);
        REQUIRE(report.min_ratio.size() == 2);
        CHECK(report.overall_min() > 0.0);
        CHECK(report.samples.back() == 2000);
    }
    const GreenKernel g(BallProblem(3, 1));
    CHECK_THROWS_AS(verify_green_lower_bound(g, LowerBound::G3, sampling), ParameterError);
}

TEST_CASE("pair stream is deterministic") {
    const auto a = sample_pairs(3, 100, 5), b = sample_pairs(3, 100, 5);
    REQUIRE(a.size() == 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].first == b[i].first);
        CHECK(a[i].second == b[i].second);
        CHECK(norm(a[i].first) < 1.0);
    }
}
