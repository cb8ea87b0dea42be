#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace polyharm {

// p, q normalised so that p <= q, with
//   alpha = 2m(p+1)/(pq-1),  beta = 2m(q+1)/(pq-1).
struct ExponentParams {
    double p = 0.0;
    double q = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    int m = 1;
    bool swapped = false;
};

// ParameterError unless p, q > 0 and pq > 1.
ExponentParams compute_exponents(double p, double q, int m);

enum class Regime {
    LowDimension,  // n <= m: every solution is bounded
    Bounded,       // max(alpha, beta) > n - m
    Singular,      // max(alpha, beta) < n - m
    Border,        // equality, left open
};

std::string to_string(Regime r);

// Equality is decided with a 1e-12 relative tolerance.
Regime classify_regime(const ExponentParams& params, int n, int m);

// Deterministic choices inside the exponent bootstrap.
struct BootstrapRules {
    // initial k = (n+m)/(n-m) - epsilon_numerator/(n-m)
    double epsilon_numerator = 0.1;
    // rho = L + rho_blend (1 - L), L the largest lower bound on rho
    double rho_blend = 0.5;
    // 1/k1 = A + k1_closeness (upper - A) inside a round
    double k1_closeness = 0.1;
    // strict inequalities must hold with this relative margin
    double slack = 1e-12;
    int max_rounds = 1000;
};

struct BootstrapRound {
    double k = 0.0;
    double eta = 0.0;
    double rho = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;  // +inf allowed
};

struct BootstrapTrace {
    double p = 0.0;  // normalised, p <= q
    double q = 0.0;
    int m = 1;
    int n = 2;
    bool swapped = false;
    bool low_dimension = false;  // n <= m: nothing to iterate
    double epsilon = 0.0;
    double initial_k = 0.0;
    std::vector<BootstrapRound> rounds;
    double k_bar = 0.0;
    double k1_final = 0.0;  // +inf allowed
    double k2_final = 0.0;  // always +inf once terminated
    bool terminated = false;
    std::string failure;
};

// Iterates k -> k/rho until k exceeds (n+m)pq/(2m(q+1)), then closes with
// k1 > (n+m)q/(2m) and k2 = ∞. NotApplicableError when the regime is not
// bounded, ParameterError when the initial-k window is empty,
// InvariantViolation if the produced trace fails validate_trace.
BootstrapTrace run_bootstrap(double p, double q, int m, int n, const BootstrapRules& rules = {});

// Re-checks every inequality of the trace from its stored numbers alone.
// Returns the names of the violated conditions (empty on success).
std::vector<std::string> validate_trace(const BootstrapTrace& trace, double slack = 1e-12);

// `count` seeded (p, q) pairs in [0.5, 6]² that fall in the bounded regime
// for (n, m), at least 1e-6 away from the border. Needs n > m.
std::vector<std::pair<double, double>> bounded_scan_points(int n, int m, std::size_t count, std::uint64_t seed);

// Per-round growth bound: 1/rho_0 - 1.
double bootstrap_growth_delta(const BootstrapTrace& trace);

}  // namespace polyharm
