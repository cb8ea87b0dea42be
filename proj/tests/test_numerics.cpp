#include <doctest.h>

#include <cmath>
#include <vector>

#include "polyharm/numerics.hpp"

using namespace polyharm;

TEST_CASE("compensated sum recovers small terms lost by naive summation") {
    std::vector<double> xs{1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(xs) == 2.0);
    double naive = 0.0;
    for (double x : xs) naive += x;
    CHECK(naive != 2.0);
}

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int count : {1, 3, 6, 10}) {
        const auto rule = gauss_legendre(count);
        REQUIRE(rule.nodes.size() == static_cast<std::size_t>(count));
        for (int deg = 0; deg <= 2 * count - 1; ++deg) {
            double s = 0.0;
            for (int i = 0; i < count; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("uniform stream is reproducible and lies in [0, 1)") {
    UniformStream a(42), b(42), c(43);
    bool differs = false;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.next();
        CHECK(x == b.next());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differs = differs || x != c.next();
    }
    CHECK(differs);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
}
