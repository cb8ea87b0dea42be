#include "polyharm/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// a < b with a relative margin
bool lt(double a, double b, double slack) {
    const double scale = std::max({1.0, std::abs(a), std::isfinite(b) ? std::abs(b) : 0.0});
    return a < b - slack * scale;
}

double inverse(double k) { return std::isinf(k) ? 0.0 : 1.0 / k; }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

ExponentParams compute_exponents(double p, double q, int m) {
    if (!(p > 0.0) || !(q > 0.0)) throw ParameterError("exponents p, q must be positive");
    if (!(p * q > 1.0)) throw ParameterError("exponents must satisfy pq > 1 (pq = " + fmt(p * q) + ")");
    if (m < 1) throw ParameterError("order m must be >= 1");
    ExponentParams e;
    e.m = m;
    e.swapped = p > q;
    e.p = std::min(p, q);
    e.q = std::max(p, q);
    const double denom = e.p * e.q - 1.0;
    e.alpha = 2.0 * m * (e.p + 1.0) / denom;
    e.beta = 2.0 * m * (e.q + 1.0) / denom;
    return e;
}

std::string to_string(Regime r) {
    switch (r) {
    case Regime::LowDimension: return "low_dimension";
    case Regime::Bounded: return "bounded";
    case Regime::Singular: return "singular";
    case Regime::Border: return "border";
    }
    return "?";
}

Regime classify_regime(const ExponentParams& params, int n, int m) {
    if (params.m != m) throw ParameterError("exponents were computed for a different order m");
    if (n <= m) return Regime::LowDimension;
    const double top = std::max(params.alpha, params.beta);
    const double gap = n - m;
    if (std::abs(top - gap) <= 1e-12 * std::max(1.0, gap)) return Regime::Border;
    return top > gap ? Regime::Bounded : Regime::Singular;
}

BootstrapTrace run_bootstrap(double p_in, double q_in, int m, int n, const BootstrapRules& rules) {
    const ExponentParams e = compute_exponents(p_in, q_in, m);
    const Regime regime = classify_regime(e, n, m);

    BootstrapTrace trace;
    trace.p = e.p;
    trace.q = e.q;
    trace.m = m;
    trace.n = n;
    trace.swapped = e.swapped;
    if (regime == Regime::LowDimension) {
        trace.low_dimension = true;
        trace.terminated = true;
        trace.initial_k = trace.k_bar = trace.k1_final = trace.k2_final = kInf;
        return trace;
    }
    if (regime != Regime::Bounded)
        throw NotApplicableError("bootstrap needs max(alpha,beta) > n-m; got max(alpha,beta) = " +
                                 fmt(std::max(e.alpha, e.beta)) + " vs n-m = " + fmt(n - m) + " (" +
                                 to_string(regime) + ")");

    const double p = e.p, q = e.q;
    const double big_k = static_cast<double>(n + m) / (n - m);
    const double two = 2.0 * m / (n + m);
    const double lower_strict = std::max((n + m) / e.beta, p / (1.0 / q + two));

    trace.epsilon = rules.epsilon_numerator / (n - m);
    double k = std::max(big_k - trace.epsilon, p);
    if (!lt(lower_strict, k, rules.slack)) k = std::max(0.5 * (lower_strict + big_k), p);
    if (!lt(k, big_k, rules.slack) || !lt(lower_strict, k, rules.slack))
        throw ParameterError("no admissible initial k: window (" + fmt(std::max(lower_strict, p)) + ", " +
                             fmt(big_k) + ") is empty");
    trace.initial_k = k;

    const double threshold = (n + m) * p * q / (2.0 * m * (q + 1.0));
    while (k <= threshold) {
        if (static_cast<int>(trace.rounds.size()) >= rules.max_rounds) {
            trace.failure = "round limit reached";
            break;
        }
        BootstrapRound r;
        r.k = k;
        r.eta = two * (q + 1.0) * k - (p * q - 1.0);
        const double floor_rho = std::max({(n - m) * p / (n + m), 1.0 - r.eta, 0.0});
        r.rho = floor_rho + rules.rho_blend * (1.0 - floor_rho);
        const double a = std::max(p / k - two, 0.0);
        const double upper = std::min(r.rho / k, 1.0 / q);
        r.k1 = 1.0 / (a + rules.k1_closeness * (upper - a));
        const double low2 = std::max(q / r.k1 - two, 0.0);
        r.k2 = 1.0 / (0.5 * (low2 + r.rho / k));
        trace.rounds.push_back(r);
        k /= r.rho;
    }
    trace.k_bar = k;
    trace.terminated = trace.failure.empty();
    if (trace.terminated) {
        const double a = p / k - two;
        const double low_k1 = (n + m) * q / (2.0 * m);
        if (a < 0.0)
            trace.k1_final = kInf;
        else if (a == 0.0)
            trace.k1_final = 2.0 * low_k1;
        else
            trace.k1_final = 0.5 * (low_k1 + 1.0 / a);
        trace.k2_final = kInf;
    }

    const auto violations = validate_trace(trace, rules.slack);
    if (!violations.empty()) {
        std::string msg = "bootstrap trace violates:";
        for (const auto& v : violations) msg += " [" + v + "]";
        throw InvariantViolation(msg);
    }
    return trace;
}

std::vector<std::pair<double, double>> bounded_scan_points(int n, int m, std::size_t count, std::uint64_t seed) {
    if (n <= m) throw ParameterError("scan needs n > m");
    UniformStream rng(seed);
    std::vector<std::pair<double, double>> out;
    while (out.size() < count) {
        const double p = 0.5 + 5.5 * rng.next();
        const double q = 0.5 + 5.5 * rng.next();
        if (p * q <= 1.0 + 1e-6) continue;
        const auto e = compute_exponents(p, q, m);
        if (std::max(e.alpha, e.beta) > n - m + 1e-6) out.emplace_back(p, q);
    }
    return out;
}

double bootstrap_growth_delta(const BootstrapTrace& trace) {
    if (trace.rounds.empty()) return 0.0;
    return 1.0 / trace.rounds.front().rho - 1.0;
}

std::vector<std::string> validate_trace(const BootstrapTrace& t, double slack) {
    std::vector<std::string> bad;
    if (t.low_dimension) {
        if (t.n > t.m) bad.push_back("low-dimension trace requires n <= m");
        return bad;
    }
    auto need = [&](bool ok, const std::string& name) {
        if (!ok) bad.push_back(name);
    };
    const double p = t.p, q = t.q;
    const int n = t.n, m = t.m;
    need(p > 0 && q >= p && p * q > 1.0, "0 < p <= q, pq > 1");
    need(n > m, "n > m");
    if (!bad.empty()) return bad;

    const double beta = 2.0 * m * (q + 1.0) / (p * q - 1.0);
    const double big_k = static_cast<double>(n + m) / (n - m);
    const double two = 2.0 * m / (n + m);
    const double threshold = (n + m) * p * q / (2.0 * m * (q + 1.0));

    need(t.initial_k >= p, "initial k >= p");
    need(lt(t.initial_k, big_k, slack), "initial k < (n+m)/(n-m)");
    need(lt(p / t.initial_k - two, 1.0 / q, slack), "p/k - 2m/(n+m) < 1/q");
    need(t.rounds.empty() || t.rounds.front().k == t.initial_k, "first round starts at the initial k");

    const double delta = bootstrap_growth_delta(t);
    for (std::size_t j = 0; j < t.rounds.size(); ++j) {
        const auto& r = t.rounds[j];
        const std::string at = " (round " + std::to_string(j) + ")";
        const double eta = two * (q + 1.0) * r.k - (p * q - 1.0);
        const double a = p / r.k - two;
        const double inv_k1 = inverse(r.k1);
        const double inv_k2 = inverse(r.k2);
        need(std::abs(eta - r.eta) <= 1e-12 * std::max(1.0, std::abs(eta)), "eta = 2m(q+1)k/(n+m) - (pq-1)" + at);
        need(lt((n + m) / beta, r.k, slack), "k > (n+m)/beta" + at);
        need(r.k <= threshold, "k <= (n+m)pq/(2m(q+1)) while iterating" + at);
        need(lt((n - m) * p / (n + m), r.rho, slack), "rho > (n-m)p/(n+m)" + at);
        need(lt(r.rho, 1.0, slack), "rho < 1" + at);
        need(lt(1.0 - r.eta, r.rho, slack), "rho > 1 - eta" + at);
        need(lt((p - r.rho) / r.k, two, slack), "(p-rho)/k < 2m/(n+m)" + at);
        need(lt(a, 1.0 / q, slack), "p/k - 2m/(n+m) < 1/q" + at);
        need(lt(a, inv_k1, slack), "1/k1 > p/k - 2m/(n+m)" + at);
        need(lt(inv_k1, std::min(r.rho / r.k, 1.0 / q), slack), "1/k1 < min(rho/k, 1/q)" + at);
        need(lt(q, r.k1, slack), "k1 > q" + at);
        need(lt(r.k, r.k1, slack), "k1 > k" + at);
        need(lt(q * inv_k1 - two, inv_k2, slack) && lt(0.0, inv_k2, slack) == !std::isinf(r.k2),
             "1/k2 > max(q/k1 - 2m/(n+m), 0)" + at);
        need(lt(inv_k2, r.rho / r.k, slack), "1/k2 < rho/k" + at);
        need(lt(r.k, r.k1, slack) && lt(r.k, r.k2, slack), "k2 > k1 > k" + at);
        need(lt(r.k / r.rho, std::min(r.k1, r.k2), slack), "min(k1, k2) > k/rho" + at);
        const double next = j + 1 < t.rounds.size() ? t.rounds[j + 1].k : t.k_bar;
        need(std::abs(next - r.k / r.rho) <= 1e-12 * next, "next k = k/rho" + at);
        need(next / r.k >= 1.0 + delta - 1e-12, "k grows by at least 1+delta" + at);
    }
    if (t.rounds.empty()) need(t.k_bar == t.initial_k, "k_bar equals initial k without rounds");

    need(t.terminated, "terminated");
    if (!t.terminated) return bad;
    const double a_bar = p / t.k_bar - two;
    need(lt(threshold, t.k_bar, slack), "k_bar > (n+m)pq/(2m(q+1))");
    need(lt((n + m) * q / (2.0 * m), t.k1_final, slack), "final k1 > (n+m)q/(2m)");
    need(lt(q * inverse(t.k1_final) - two, 0.0, slack), "q/k1 - 2m/(n+m) < 0 (k2 = inf admissible)");
    need(lt(a_bar, inverse(t.k1_final), slack), "1/k1 > p/k_bar - 2m/(n+m) (final)");
    need(lt(q, t.k1_final, slack), "k1 > q (final)");
    need(std::isinf(t.k2_final), "final k2 = inf");
    return bad;
}

}  // namespace polyharm
