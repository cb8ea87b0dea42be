#include <doctest.h>

#include <cmath>
#include <string>

#include "polyharm/errors.hpp"
#include "polyharm/exponents.hpp"

using namespace polyharm;

namespace {

bool names(const std::vector<std::string>& v, const std::string& what) {
    for (const auto& s : v)
        if (s.find(what) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("exponents") {
    const auto e = compute_exponents(1.5, 1.5, 1);
    CHECK(e.alpha == doctest::Approx(4.0));
    CHECK(e.beta == doctest::Approx(4.0));
    const auto s = compute_exponents(3.0, 2.0, 2);
    CHECK(s.swapped);
    CHECK(s.p == 2.0);
    CHECK(s.q == 3.0);
    CHECK(s.alpha == doctest::Approx(4.0 * 3.0 / 5.0));
    CHECK(s.beta == doctest::Approx(4.0 * 4.0 / 5.0));
    CHECK_THROWS_AS(compute_exponents(1.0, 1.0, 1), ParameterError);
    CHECK_THROWS_AS(compute_exponents(0.5, 1.5, 1), ParameterError);
    CHECK_THROWS_AS(compute_exponents(-1.0, 4.0, 1), ParameterError);
}

TEST_CASE("regimes") {
    CHECK(classify_regime(compute_exponents(1.5, 1.5, 1), 3, 1) == Regime::Bounded);
    CHECK(classify_regime(compute_exponents(2.0, 2.0, 1), 3, 1) == Regime::Border);
    CHECK(classify_regime(compute_exponents(3.0, 3.0, 1), 3, 1) == Regime::Singular);
    CHECK(classify_regime(compute_exponents(3.0, 3.0, 2), 2, 2) == Regime::LowDimension);
    CHECK(to_string(Regime::Singular) == "singular");
}

TEST_CASE("worked trace without rounds") {
    const auto t = run_bootstrap(1.5, 1.5, 1, 3);
    CHECK(t.terminated);
    CHECK(t.epsilon == doctest::Approx(0.05));
    CHECK(t.initial_k == doctest::Approx(1.95).epsilon(1e-12));
    CHECK(t.rounds.empty());
    CHECK(t.k1_final == doctest::Approx(3.357143).epsilon(1e-6));
    CHECK(std::isinf(t.k2_final));
    CHECK(validate_trace(t).empty());
}

TEST_CASE("worked trace with one round") {
    const auto t = run_bootstrap(1.2, 1.2, 1, 4);
    CHECK(t.initial_k == doctest::Approx(1.633333).epsilon(1e-6));
    REQUIRE(t.rounds.size() == 1);
    CHECK(t.rounds[0].eta == doctest::Approx(0.997333).epsilon(1e-6));
    CHECK(t.rounds[0].rho == doctest::Approx(0.86).epsilon(1e-12));
    CHECK(t.rounds[0].k1 == doctest::Approx(2.825836).epsilon(1e-6));
    CHECK(t.rounds[0].k2 == doctest::Approx(3.628555).epsilon(1e-6));
    CHECK(t.k_bar == doctest::Approx(1.899225).epsilon(1e-6));
    CHECK(t.k1_final == doctest::Approx(3.656690).epsilon(1e-6));
    CHECK(bootstrap_growth_delta(t) == doctest::Approx(1.0 / 0.86 - 1.0));
}

TEST_CASE("low dimension gives a trivial trace") {
    const auto t = run_bootstrap(1.5, 1.5, 2, 2);
    CHECK(t.low_dimension);
    CHECK(t.rounds.empty());
}

TEST_CASE("bootstrap refuses non-bounded regimes") {
    CHECK_THROWS_AS(run_bootstrap(3.0, 3.0, 1, 3), NotApplicableError);
    CHECK_THROWS_AS(run_bootstrap(2.0, 2.0, 1, 3), NotApplicableError);
}

TEST_CASE("validator catches injected faults") {
    auto t = run_bootstrap(1.2, 1.2, 1, 4);
    auto bad = t;
    bad.rounds[0].rho = 1.01;
    CHECK(names(validate_trace(bad), "rho < 1"));
    bad = t;
    bad.rounds[0].k1 = bad.q;
    CHECK(names(validate_trace(bad), "k1 > q"));
    bad = t;
    bad.k1_final = bad.q;
    CHECK(!validate_trace(bad).empty());
}

TEST_CASE("epsilon override") {
    BootstrapRules rules;
    rules.epsilon_numerator = 0.2;
    const auto t = run_bootstrap(1.5, 1.5, 1, 3, rules);
    CHECK(t.initial_k == doctest::Approx(1.9).epsilon(1e-12));
    CHECK(validate_trace(t).empty());
}

TEST_CASE("seeded scan terminates everywhere") {
    for (auto [n, m] : {std::pair{3, 1}, std::pair{4, 1}, std::pair{3, 2}}) {
        const auto pts = bounded_scan_points(n, m, 100, 99);
        REQUIRE(pts.size() == 100);
        for (auto [p, q] : pts) {
            CHECK(classify_regime(compute_exponents(p, q, m), n, m) == Regime::Bounded);
            const auto t = run_bootstrap(p, q, m, n);
            CHECK(t.terminated);
            CHECK(validate_trace(t).empty());
        }
    }
    CHECK_THROWS_AS(bounded_scan_points(2, 2, 10, 1), ParameterError);
}
