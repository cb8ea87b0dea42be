#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "polyharm/errors.hpp"
#include "polyharm/solver.hpp"

using namespace polyharm;

namespace {

std::shared_ptr<const QuadratureGrid> grid_for(const BallProblem& problem, int level) {
    return std::make_shared<const QuadratureGrid>(build_grid(problem, level, {}));
}

// (-Δ)^m (1 - s)^m with s = |x|², using Δ s^k = 2k(2k - 2 + n) s^{k-1}.
// Returns the coefficient vector in powers of s.
std::vector<double> apply_polyharmonic(int n, int m) {
    std::vector<double> c(m + 1, 0.0);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
        c[j] = (j % 2 ? -1.0 : 1.0) * binom;
        binom = binom * (m - j) / (j + 1);
    }
    for (int step = 0; step < m; ++step) {
        std::vector<double> d(c.size(), 0.0);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = -c[k] * 2.0 * k * (2.0 * k - 2.0 + n);
        c = d;
    }
    return c;
}

}  // namespace

TEST_CASE("closed-form solution for constant data") {
    for (int n : {2, 3, 4}) {
        for (int m : {1, 2, 3}) {
            const auto c = apply_polyharmonic(n, m);
            for (std::size_t k = 1; k < c.size(); ++k) CHECK(c[k] == 0.0);
            // u = (1-s)^m / c0 solves (-Δ)^m u = 1
            const BallProblem problem(n, m);
            const Point x{0.3, 0.1, 0.0, 0.0};
            const double s = norm2(x);
            CHECK(constant_rhs_solution(problem, x) == doctest::Approx(std::pow(1.0 - s, m) / c[0]).epsilon(1e-14));
        }
    }
}

TEST_CASE("zero data gives zero") {
    const BallProblem problem(3, 1);
    const GreenOperator op(GreenKernel(problem), grid_for(problem, 1));
    const auto u = op.apply(SampledField::constant(op.grid_ptr(), 0.0));
    CHECK(u.max_abs() == 0.0);
}

TEST_CASE("apply is linear, positive and monotone") {
    const BallProblem problem(3, 2);
    const GreenOperator op(GreenKernel(problem), grid_for(problem, 1));
    const auto f = SampledField::sample(op.grid_ptr(), [](const Point& x) { return 1.0 + x[0] + 0.5 * x[1]; });
    const auto g = SampledField::sample(op.grid_ptr(), [](const Point& x) { return std::exp(x[2]); });
    const auto combo = f.combine(g, [](double a, double b) { return 2.0 * a - 3.0 * b; });
    const auto uf = op.apply(f), ug = op.apply(g), uc = op.apply(combo);
    for (std::size_t i = 0; i < uc.size(); ++i)
        CHECK(uc[i] == doctest::Approx(2.0 * uf[i] - 3.0 * ug[i]).epsilon(1e-12).scale(uf.max_abs()));
    CHECK(uf.min() > 0.0);
    const auto uh = op.apply(f.combine(g, [](double a, double b) { return a + b; }));
    for (std::size_t i = 0; i < uh.size(); ++i) CHECK(uh[i] >= uf[i]);
    for (std::size_t i = 0; i < op.grid().size(); i += 37) CHECK(op.coefficient(i, (i * 7) % op.grid().size()) > 0.0);
}

TEST_CASE("symmetry-specialised paths agree with the general sum") {
    for (int n : {2, 3, 4}) {
        const BallProblem problem(n, 1);
        const GreenOperator op(GreenKernel(problem), grid_for(problem, 0));
        const auto& g = op.grid();
        const auto base = SampledField::sample(op.grid_ptr(), [](const Point& x) { return 1.0 + norm2(x); });
        std::vector<double> vals(base.values().begin(), base.values().end());
        const auto general = op.apply(SampledField(op.grid_ptr(), vals, Provenance::ConstructedRhs, Symmetry::General));
        const auto axi = op.apply(SampledField(op.grid_ptr(), vals, Provenance::ConstructedRhs, Symmetry::Axisymmetric));
        const auto rad = op.apply(SampledField(op.grid_ptr(), vals, Provenance::ConstructedRhs, Symmetry::Radial));
        // rings are congruent under rotations about the pole axis
        for (std::size_t i = 0; i < general.size(); ++i) CHECK(axi[i] == doctest::Approx(general[i]).epsilon(1e-11));
        // the shell path copies the value at its representative
        for (std::size_t s = 0; s < g.shell_count(); ++s) {
            const std::size_t rep = g.shell_representative(s);
            CHECK(rad[rep] == doctest::Approx(general[rep]).epsilon(1e-11));
            for (std::size_t k = 0; k < g.polar_count() * g.azimuth_count(); ++k) CHECK(rad[rep + k] == rad[rep]);
        }
    }
}

TEST_CASE("constant data converges with order at least one") {
    for (auto [n, m] : {std::pair{3, 1}, std::pair{2, 1}, std::pair{3, 2}, std::pair{2, 2}}) {
        const BallProblem problem(n, m);
        const double scale = constant_rhs_solution(problem, Point{});
        std::vector<double> err, h;
        for (int level : {1, 2, 3}) {
            const GreenOperator op(GreenKernel(problem), grid_for(problem, level));
            const auto u = op.apply(SampledField::constant(op.grid_ptr(), 1.0));
            double e = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i)
                e = std::max(e, std::abs(u[i] - constant_rhs_solution(problem, op.grid().node(i))));
            err.push_back(e / scale);
            h.push_back(op.grid().spacing());
        }
        const double order = std::log(err.front() / err.back()) / std::log(h.front() / h.back());
        CHECK(order >= 1.0);
        CHECK(err.back() < 1e-2);
    }
}

TEST_CASE("point evaluation at the centre") {
    const BallProblem problem(3, 1);
    const GreenOperator op(GreenKernel(problem), grid_for(problem, 3));
    const auto f = SampledField::constant(op.grid_ptr(), 1.0);
    CHECK(op.evaluate_at(Point{}, f) == doctest::Approx(1.0 / 6.0).epsilon(1e-2));
    CHECK_THROWS_AS(op.evaluate_at(Point{1.0, 0.0, 0.0, 0.0}, f), DomainError);
}

TEST_CASE("biharmonic solve") {
    const BallProblem problem(3, 2);
    const GreenOperator op(GreenKernel(problem), grid_for(problem, 3));
    const auto f = SampledField::constant(op.grid_ptr(), 1.0);
    const double exact = constant_rhs_solution(problem, Point{});
    CHECK(op.evaluate_at(Point{}, f) == doctest::Approx(exact).epsilon(5e-3));
}

TEST_CASE("dense dump") {
    const BallProblem problem(2, 1);
    const GreenOperator op(GreenKernel(problem), grid_for(problem, 0));
    const auto path = (std::filesystem::temp_directory_path() / "polyharm-dense.bin").string();
    op.write_dense(path);
    std::ifstream in(path, std::ios::binary);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("polyharm-kernel v1", 0) == 0);
    const auto pos = in.tellg();
    in.seekg(0, std::ios::end);
    CHECK(static_cast<std::size_t>(in.tellg() - pos) == op.grid().size() * op.grid().size() * sizeof(double));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(op.write_dense(path, 10), ParameterError);
}

TEST_CASE("fields on another grid are rejected") {
    const BallProblem problem(3, 1);
    const GreenOperator op(GreenKernel(problem), grid_for(problem, 0));
    const auto other = SampledField::constant(grid_for(problem, 0), 1.0);
    CHECK_THROWS_AS(op.apply(other), DomainError);
}
