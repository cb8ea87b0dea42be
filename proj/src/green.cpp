#include "polyharm/green.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {

std::string to_string(GreenCase c) {
    switch (c) {
    case GreenCase::Subcritical: return "subcritical";
    case GreenCase::Critical: return "critical";
    case GreenCase::Supercritical: return "supercritical";
    }
    return "?";
}

std::string to_string(LowerBound b) {
    switch (b) {
    case LowerBound::G1: return "g1";
    case LowerBound::G2: return "g2";
    case LowerBound::G3: return "g3";
    }
    return "?";
}

LowerBound lower_bound_for(GreenCase c) {
    switch (c) {
    case GreenCase::Subcritical: return LowerBound::G1;
    case GreenCase::Critical: return LowerBound::G2;
    default: return LowerBound::G3;
    }
}

GreenKernel::GreenKernel(const BallProblem& problem) : problem_(problem) {
    const int n = problem.n();
    const int m = problem.m();
    const int e = 2 * m - n;
    case_ = e < 0 ? GreenCase::Subcritical : (e == 0 ? GreenCase::Critical : GreenCase::Supercritical);
    // k = 1 / (n e_n 4^{m-1} ((m-1)!)^2)
    const double fact = std::tgamma(static_cast<double>(m));
    k_ = 1.0 / (problem.sphere_area() * std::pow(4.0, m - 1) * fact * fact);
    half_power_ = e >= 0 ? e / 2 : -((-e + 1) / 2);
    odd_power_ = (e % 2) != 0;

    for (int j = 0; j < m; ++j) {
        // C(m-1, j) (-1)^{m-1-j}
        double binom = 1.0;
        for (int i = 0; i < j; ++i) binom = binom * (m - 1 - i) / (i + 1);
        coeff_[j] = ((m - 1 - j) % 2 == 0 ? 1.0 : -1.0) * binom;
        exponent_[j] = 2 * j + 2 - n;
    }
    if (case_ == GreenCase::Subcritical) {
        // every exponent is negative, so ∫_1^∞ converges
        double tail = 0.0;
        for (int j = 0; j < m; ++j) tail += -coeff_[j] / exponent_[j];
        fundamental_ = k_ * tail;
    }
}

double GreenKernel::inner_integral_near(double am1) const {
    const auto& rule = gauss_legendre_cached(10);
    const int m = problem_.m();
    const int n = problem_.n();
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double vm1 = 0.5 * am1 * (1.0 + rule.nodes[i]);
        const double v = 1.0 + vm1;
        sum += rule.weights[i] * ipow(vm1 * (v + 1.0), m - 1) * ipow(v, 1 - n);
    }
    return 0.5 * am1 * sum;
}

double GreenKernel::inner_integral_expanded(double a) const {
    double sum = 0.0;
    for (int j = 0; j < problem_.m(); ++j) {
        const int e = exponent_[j];
        sum += coeff_[j] * (e == 0 ? std::log(a) : (ipow(a, e) - 1.0) / e);
    }
    return sum;
}

double GreenKernel::singular_part(double r) const {
    switch (case_) {
    case GreenCase::Subcritical: return fundamental_ * distance_power(r * r);
    case GreenCase::Critical: return -k_ * std::log(r);
    default: return 0.0;
    }
}

double GreenKernel::singular_ball_integral(double volume) const {
    const int n = problem_.n();
    const double rho = std::pow(volume / problem_.volume(), 1.0 / n);
    switch (case_) {
    case GreenCase::Subcritical: {
        const int two_m = 2 * problem_.m();
        return fundamental_ * problem_.sphere_area() * std::pow(rho, two_m) / two_m;
    }
    case GreenCase::Critical: return k_ * volume * (-std::log(rho) + 1.0 / n);
    default: return 0.0;
    }
}

double GreenKernel::regular_diagonal(const Point& x) const {
    const double s = 1.0 - norm2(x);
    if (case_ == GreenCase::Critical) {
        double sum = std::log(s);
        for (int j = 0; j + 1 < problem_.m(); ++j) sum -= coeff_[j] / exponent_[j];
        return k_ * sum;
    }
    const int e = 2 * problem_.m() - problem_.n();
    return k_ * std::pow(s, e) / e;
}

double eval_green(const GreenKernel& kernel, const Point& x, const Point& y) {
    kernel.problem().check_point(x);
    kernel.problem().check_point(y);
    if (!(norm(x) < 1.0) || !(norm(y) < 1.0)) throw DomainError("Green function arguments must lie in the open ball");
    if (distance(x, y) < kDiagonalGuard) throw SingularityError("Green function evaluated on the diagonal");
    return kernel.value(x, y);
}

double lower_bound_rhs(const BallProblem& problem, LowerBound bound, const Point& x, const Point& y) {
    const int n = problem.n();
    const int m = problem.m();
    const double dx = 1.0 - norm(x);
    const double dy = 1.0 - norm(y);
    const double r = distance(x, y);
    switch (bound) {
    case LowerBound::G1:
        return std::pow(r, 2 * m - n) * std::min(1.0, std::pow(dx * dy, m) / std::pow(r, 2 * m));
    case LowerBound::G2: return std::log1p(std::pow(dx * dy, m) / std::pow(r, 2 * m));
    case LowerBound::G3:
        return std::pow(dx * dy, m - 0.5 * n) * std::min(1.0, std::pow(dx * dy, 0.5 * n) / std::pow(r, n));
    }
    return 0.0;
}

namespace {

Point random_direction(UniformStream& rng, int n) {
    // Box-Muller on deterministic uniforms
    Point p{};
    for (;;) {
        for (int i = 0; i < n; i += 2) {
            const double u1 = 1.0 - rng.next();
            const double u2 = rng.next();
            const double rad = std::sqrt(-2.0 * std::log(u1));
            p[i] = rad * std::cos(2.0 * std::numbers::pi * u2);
            if (i + 1 < n) p[i + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
        }
        const double len = norm(p);
        if (len > 1e-12) return (1.0 / len) * p;
    }
}

}  // namespace

std::vector<std::pair<Point, Point>> sample_pairs(int n, std::size_t count, std::uint64_t seed) {
    UniformStream rng(seed);
    std::vector<std::pair<Point, Point>> pairs;
    pairs.reserve(count);
    auto bulk = [&] { return std::pow(rng.next(), 1.0 / n) * random_direction(rng, n); };
    auto near_boundary = [&] { return (1.0 - std::pow(10.0, -6.0 * rng.next())) * random_direction(rng, n); };
    while (pairs.size() < count) {
        const std::size_t kind = pairs.size() % 4;
        Point x{}, y{};
        switch (kind) {
        case 0:
            x = bulk();
            y = bulk();
            break;
        case 1:  // near diagonal at every scale
            x = rng.next() < 0.5 ? bulk() : near_boundary();
            y = x + std::pow(10.0, -7.0 * rng.next()) * random_direction(rng, n);
            break;
        case 2:
            x = near_boundary();
            y = near_boundary();
            break;
        default: {  // boundary pair at comparable separation
            x = near_boundary();
            const double dx = 1.0 - norm(x);
            y = x + dx * std::pow(10.0, 2.0 * rng.next() - 1.0) * random_direction(rng, n);
            break;
        }
        }
        if (!(norm(y) < 1.0) || !(norm(x) < 1.0) || distance(x, y) < 10 * kDiagonalGuard) continue;
        pairs.emplace_back(x, y);
    }
    return pairs;
}

double MinRatioReport::overall_min() const {
    return min_ratio.empty() ? 0.0 : *std::min_element(min_ratio.begin(), min_ratio.end());
}

double MinRatioReport::last_variation() const {
    if (min_ratio.size() < 2) return 0.0;
    const double a = min_ratio[min_ratio.size() - 2];
    const double b = min_ratio.back();
    return std::abs(b - a) / std::abs(a);
}

MinRatioReport verify_green_lower_bound(const GreenKernel& kernel, LowerBound bound,
                                        const PairSampling& sampling) {
    if (bound != lower_bound_for(kernel.green_case()))
        throw ParameterError("lower bound " + to_string(bound) + " does not apply to the " +
                             to_string(kernel.green_case()) + " case (2m vs n)");
    if (sampling.counts.empty()) throw ParameterError("pair sampling needs at least one level");
    if (!std::is_sorted(sampling.counts.begin(), sampling.counts.end()))
        throw ParameterError("pair sample sizes must be nondecreasing");
    const auto& problem = kernel.problem();
    const auto pairs = sample_pairs(problem.n(), sampling.counts.back(), sampling.seed);

    MinRatioReport report;
    report.bound = bound;
    double running = std::numeric_limits<double>::infinity();
    std::size_t done = 0;
    for (std::size_t count : sampling.counts) {
        for (; done < count; ++done) {
            const auto& [x, y] = pairs[done];
            const double ratio = kernel.value(x, y) / lower_bound_rhs(problem, bound, x, y);
            running = std::min(running, ratio);
        }
        report.samples.push_back(count);
        report.min_ratio.push_back(running);
    }
    return report;
}

}  // namespace polyharm
