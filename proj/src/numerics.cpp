#include "polyharm/numerics.hpp"

#include <map>
#include <mutex>
#include <numbers>

namespace polyharm {

GaussRule gauss_legendre(int count) {
    GaussRule rule;
    rule.nodes.resize(count);
    rule.weights.resize(count);
    for (int i = 0; i < count; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= count; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = count * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // ascending order
        rule.nodes[count - 1 - i] = x;
        rule.weights[count - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& gauss_legendre_cached(int count) {
    static std::mutex mutex;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(count);
    if (it == cache.end()) it = cache.emplace(count, gauss_legendre(count)).first;
    return it->second;
}

}  // namespace polyharm
