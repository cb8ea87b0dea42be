#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "polyharm/geometry.hpp"

namespace polyharm {

enum class GreenCase { Subcritical, Critical, Supercritical };  // 2m<n, 2m=n, 2m>n

std::string to_string(GreenCase c);

// Boggio's Green function of (-Δ)^m with Dirichlet data on the unit ball,
//   G(x,y) = k |x-y|^{2m-n} ∫_1^{A(x,y)} (v²-1)^{m-1} v^{1-n} dv,
//   A² = 1 + (1-|x|²)(1-|y|²)/|x-y|².
// The inner integral is expanded per (m, n) when the kernel is built.
class GreenKernel {
public:
    explicit GreenKernel(const BallProblem& problem);

    const BallProblem& problem() const noexcept { return problem_; }
    double normalization() const noexcept { return k_; }
    GreenCase green_case() const noexcept { return case_; }

    // Unchecked evaluation for x ≠ y inside the ball.
    double value(const Point& x, const Point& y) const {
        const double d2 = norm2(x - y);
        const double t = (1.0 - norm2(x)) * (1.0 - norm2(y)) / d2;
        const double a = std::sqrt(1.0 + t);
        const double am1 = t / (1.0 + a);
        return k_ * distance_power(d2) * inner_integral(a, am1);
    }

    // Leading singular part S(|x-y|): c|x-y|^{2m-n} (2m<n), k log(1/|x-y|)
    // (2m=n), zero (2m>n, bounded kernel).
    double singular_part(double r) const;
    // ∫ S over a ball of the given volume centred at the singularity.
    double singular_ball_integral(double volume) const;
    // lim_{y→x} G(x,y) - S(|x-y|).
    double regular_diagonal(const Point& x) const;
    // lim_{y→x} G(x,y) |x-y|^{n-2m} for 2m<n: the fundamental-solution constant.
    double fundamental_constant() const noexcept { return fundamental_; }

    // ∫_1^A (v²-1)^{m-1} v^{1-n} dv given A and A-1 (both, for accuracy).
    double inner_integral(double a, double am1) const {
        const int m = problem_.m();
        const int n = problem_.n();
        if (m == 1) {
            switch (n) {
            case 2: return std::log1p(am1);
            case 3: return am1 / a;
            default: return 0.5 * am1 * (a + 1.0) / (a * a);
            }
        }
        if (a < 2.0) return inner_integral_near(am1);
        return inner_integral_expanded(a);
    }

private:
    double distance_power(double d2) const {
        // |x-y|^{2m-n} from |x-y|²
        double p = ipow(d2, half_power_);
        if (odd_power_) p *= std::sqrt(d2);
        return p;
    }
    static double ipow(double x, int e) {
        double base = e < 0 ? 1.0 / x : x;
        unsigned k = static_cast<unsigned>(e < 0 ? -e : e);
        double r = 1.0;
        while (k) {
            if (k & 1u) r *= base;
            base *= base;
            k >>= 1u;
        }
        return r;
    }
    double inner_integral_near(double am1) const;
    double inner_integral_expanded(double a) const;

    BallProblem problem_;
    GreenCase case_;
    double k_;
    double fundamental_ = 0.0;
    int half_power_;   // floor((2m-n)/2)
    bool odd_power_;
    // (v²-1)^{m-1} = Σ_j coeff_[j] v^{2j}; exponent_[j] = 2j+2-n
    std::array<double, BallProblem::kMaxOrder> coeff_{};
    std::array<int, BallProblem::kMaxOrder> exponent_{};
};

// Checked evaluation: DomainError for |x| >= 1 or |y| >= 1,
// SingularityError for |x - y| < 1e-9.
double eval_green(const GreenKernel& kernel, const Point& x, const Point& y);

inline constexpr double kDiagonalGuard = 1e-9;

enum class LowerBound { G1, G2, G3 };

std::string to_string(LowerBound b);
LowerBound lower_bound_for(GreenCase c);

// Right-hand side of the pointwise lower bound without its constant.
double lower_bound_rhs(const BallProblem& problem, LowerBound bound, const Point& x, const Point& y);

struct PairSampling {
    // Nested sample sizes, one per level; later levels extend earlier ones.
    std::vector<std::size_t> counts{2000, 8000, 32000, 128000};
    std::uint64_t seed = 20240531;
};

struct MinRatioReport {
    LowerBound bound = LowerBound::G1;
    std::vector<std::size_t> samples;
    std::vector<double> min_ratio;  // per level

    double overall_min() const;
    // |last - previous| / previous over the final two levels.
    double last_variation() const;
};

// Minimum of G/RHS over near-diagonal, near-boundary and bulk pairs.
// ParameterError if the bound does not match the sign of 2m - n.
MinRatioReport verify_green_lower_bound(const GreenKernel& kernel, LowerBound bound,
                                        const PairSampling& sampling);

// Deterministic pair stream used by the verifier; exposed for tests.
std::vector<std::pair<Point, Point>> sample_pairs(int n, std::size_t count, std::uint64_t seed);

}  // namespace polyharm
