#include "polyharm/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"
#include "polyharm/singular.hpp"

namespace polyharm {
namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

// (∫ |f|^p d^s)^{1/p} finite for f = d^γ ?
bool integrable(double gamma, double p, double s) {
    if (std::isinf(p)) return gamma >= 0.0;
    return gamma * p + s > -1.0;
}

// power of d multiplying |f|^p in the data norm of each case
double data_weight(EstimateCase c, const EstimateParams& ps) {
    switch (c) {
    case EstimateCase::Prop21_1:
    case EstimateCase::Prop23: return ps.m;
    case EstimateCase::Prop21_2: return ps.m;
    case EstimateCase::Lemma: return (ps.m - (1.0 - ps.theta) * ps.n * ps.alpha) * ps.p;
    }
    return ps.m;
}

double data_power(EstimateCase c, const EstimateParams& ps) {
    return c == EstimateCase::Prop21_2 || c == EstimateCase::Lemma ? ps.p : 1.0;
}

}  // namespace

std::string to_string(EstimateCase c) {
    switch (c) {
    case EstimateCase::Prop21_1: return "prop21_1";
    case EstimateCase::Prop21_2: return "prop21_2";
    case EstimateCase::Prop23: return "prop23";
    case EstimateCase::Lemma: return "lemma";
    }
    return "?";
}

EstimateCase parse_estimate_case(const std::string& name) {
    for (auto c : {EstimateCase::Prop21_1, EstimateCase::Prop21_2, EstimateCase::Prop23, EstimateCase::Lemma})
        if (to_string(c) == name) return c;
    throw ParameterError("unknown estimate case '" + name + "' (prop21_1, prop21_2, prop23, lemma)");
}

std::string to_string(Trend t) {
    switch (t) {
    case Trend::Bounded: return "bounded";
    case Trend::Growing: return "growing";
    case Trend::Inconclusive: return "inconclusive";
    }
    return "?";
}

Trend classify_trend(const std::vector<double>& r) {
    if (r.size() < 4) return Trend::Inconclusive;
    bool increasing = true;
    for (std::size_t i = 1; i < r.size(); ++i) increasing = increasing && r[i] > r[i - 1];
    if (increasing && r.back() >= 4.0 * r.front()) return Trend::Growing;
    const double a = r[r.size() - 2], b = r.back();
    if (std::abs(b - a) <= 0.1 * std::max(std::abs(a), std::abs(b))) return Trend::Bounded;
    return Trend::Inconclusive;
}

std::vector<RhsProfile> default_rhs_family(int m) {
    const double gamma = -m + 0.1;
    return {
        {"one", [](const Point&) { return 1.0; }, std::nullopt},
        {"one_plus_r", [](const Point& x) { return 1.0 + norm(x); }, std::nullopt},
        {"gaussian", [](const Point& x) { return std::exp(-norm2(x)); }, std::nullopt},
        {"boundary_power", [gamma](const Point& x) { return std::pow(1.0 - norm(x), gamma); }, gamma},
    };
}

void check_estimate_hypotheses(EstimateCase c, const EstimateParams& ps) {
    const BallProblem problem(ps.n, ps.m);
    (void)problem;
    const int n = ps.n, m = ps.m;
    auto exponents_ordered = [&] {
        if (!(ps.p >= 1.0)) throw ParameterError("need p >= 1 (p = " + fmt(ps.p) + ")");
        if (!(ps.q >= ps.p)) throw ParameterError("need p <= q (p = " + fmt(ps.p) + ", q = " + fmt(ps.q) + ")");
    };
    switch (c) {
    case EstimateCase::Prop21_1:
        if (n > m) throw ParameterError("prop21_1 needs n <= m (n = " + std::to_string(n) + ", m = " +
                                        std::to_string(m) + ")");
        break;
    case EstimateCase::Prop21_2: {
        exponents_ordered();
        const double gap = inv(ps.p) - inv(ps.q);
        if (!(gap < 2.0 * m / (n + m)))
            throw ParameterError("prop21_2 needs 1/p - 1/q < 2m/(n+m) (" + fmt(gap) + " vs " +
                                 fmt(2.0 * m / (n + m)) + ")");
        break;
    }
    case EstimateCase::Prop23:
        if (!(ps.k >= 1.0)) throw ParameterError("prop23 needs k >= 1");
        if (n > m && !(ps.k < static_cast<double>(n + m) / (n - m)))
            throw ParameterError("prop23 needs k < (n+m)/(n-m) = " + fmt(static_cast<double>(n + m) / (n - m)));
        break;
    case EstimateCase::Lemma: {
        exponents_ordered();
        const double gap = inv(ps.p) - inv(ps.q);
        const double top = std::min(2.0 * m / n, 1.0);
        if (!(gap < top)) throw ParameterError("lemma needs 1/p - 1/q < min(2m/n, 1)");
        if (!(ps.alpha > gap) || !(ps.alpha <= top))
            throw ParameterError("lemma needs alpha in (1/p - 1/q, min(2m/n, 1)] = (" + fmt(gap) + ", " +
                                 fmt(top) + "]");
        if (!(ps.theta >= 0.0 && ps.theta <= 1.0)) throw ParameterError("lemma needs theta in [0, 1]");
        break;
    }
    }
}

EstimateReport verify_estimate(EstimateCase c, const EstimateParams& ps, const std::vector<RhsProfile>& family,
                               const StudyOptions& options) {
    check_estimate_hypotheses(c, ps);
    if (options.levels.empty()) throw ParameterError("estimate study needs at least one level");
    const BallProblem problem(ps.n, ps.m);
    const GreenKernel kernel(problem);

    EstimateReport report;
    report.estimate_id = to_string(c);
    report.params = ps;

    const double fp = data_power(c, ps);
    const double fs = data_weight(c, ps);
    std::vector<const RhsProfile*> used;
    for (const auto& prof : family) {
        if (prof.boundary_power && !integrable(*prof.boundary_power, fp, fs)) continue;
        used.push_back(&prof);
        report.rhs_names.push_back(prof.name);
    }
    if (used.empty()) throw ParameterError("no right-hand side of the family has a finite data norm");

    for (int level : options.levels) {
        auto grid = cached_grid(problem, level, Grading{}, options.cache_dir);
        const GreenOperator op(kernel, grid);
        LevelRatio lv;
        lv.level = level;
        lv.nodes = grid->size();
        for (const RhsProfile* prof : used) {
            const auto f = SampledField::sample_radial(grid, prof->f);
            if (c == EstimateCase::Prop23 && !(f.min() > 0.0))
                throw ParameterError("prop23 needs a positive right-hand side ('" + prof->name + "')");
            const auto u = op.apply(f);
            double top = 0.0, bottom = 0.0;
            switch (c) {
            case EstimateCase::Prop21_1:
                top = u.max_abs();
                bottom = weighted_norm(f, 1.0, ps.m);
                break;
            case EstimateCase::Prop21_2:
                top = weighted_norm(u, ps.q, ps.m);
                bottom = weighted_norm(f, ps.p, ps.m);
                break;
            case EstimateCase::Prop23:
                top = weighted_norm(u, ps.k, ps.m);
                bottom = weighted_norm(u, 1.0, ps.m);
                break;
            case EstimateCase::Lemma:
                top = power_weighted_lebesgue_norm(u, ps.q, -ps.m + ps.theta * ps.n * ps.alpha);
                bottom = power_weighted_lebesgue_norm(f, ps.p, ps.m - (1.0 - ps.theta) * ps.n * ps.alpha);
                break;
            }
            if (!(bottom > 0.0)) throw InvariantViolation("data norm vanished for '" + prof->name + "'");
            const double ratio = top / bottom;
            if (ratio > lv.ratio) {
                lv.ratio = ratio;
                lv.rhs_norm = bottom;
            }
        }
        report.levels.push_back(lv);
    }
    std::vector<double> ratios;
    for (const auto& lv : report.levels) ratios.push_back(lv.ratio);
    report.trend = classify_trend(ratios);
    if (report.trend == Trend::Bounded) report.empirical_c = *std::max_element(ratios.begin(), ratios.end());
    return report;
}

std::pair<double, double> falsification_window(int n, int m, double p, double q) {
    const double lo = std::max(0.0, (n + m) * inv(q));
    const double hi = std::min((n + m) / p - 2.0 * m, static_cast<double>(n - m));
    if (!(lo < hi))
        throw ParameterError("empty cone-exponent window (" + fmt(lo) + ", " + fmt(hi) + ")");
    return {lo, hi};
}

EstimateReport falsify_estimate(int n, int m, double p, double q, const StudyOptions& options, bool exploratory) {
    const BallProblem problem(n, m);
    if (n <= m) throw ParameterError("falsification needs n > m");
    if (!(p >= 1.0) || !(q >= p)) throw ParameterError("falsification needs 1 <= p <= q");
    const double gap = inv(p) - inv(q);
    const double proved = 2.0 * m / (n - m);
    const double remark = 2.0 * m / (n + m);
    if (!(gap > proved)) {
        if (!exploratory)
            throw ParameterError("falsification needs 1/p - 1/q > 2m/(n-m) (" + fmt(gap) + " vs " + fmt(proved) +
                                 ")");
        if (!(gap > remark))
            throw ParameterError("exploratory falsification needs 1/p - 1/q > 2m/(n+m) (" + fmt(gap) + " vs " +
                                 fmt(remark) + ")");
    }
    if (options.levels.empty()) throw ParameterError("falsification needs at least one level");
    const auto [lo, hi] = falsification_window(n, m, p, q);
    const double alpha = 0.5 * (lo + hi);

    const GreenKernel kernel(problem);
    EstimateReport report;
    report.estimate_id = "falsify";
    report.params.n = n;
    report.params.m = m;
    report.params.p = p;
    report.params.q = q;
    report.params.alpha = alpha;
    report.exploratory = !(gap > proved);
    report.rhs_names = {"cone_singular"};
    const ConeRegion region = ConeRegion::standard();
    for (int level : options.levels) {
        auto grid = cached_grid(problem, level, singular_grading(n), options.cache_dir);
        const GreenOperator op(kernel, grid);
        const auto f = build_singular_rhs(problem, alpha, region, grid);
        const auto u = op.apply(f);
        LevelRatio lv;
        lv.level = level;
        lv.nodes = grid->size();
        lv.rhs_norm = std::isinf(p) ? f.max_abs()
                                    : weighted_norm_of_axisymmetric(*grid, singular_rhs_function(problem, alpha, region), p, m);
        lv.ratio = weighted_norm(u, q, m) / lv.rhs_norm;
        report.levels.push_back(lv);
    }
    std::vector<double> ratios;
    for (const auto& lv : report.levels) ratios.push_back(lv.ratio);
    report.trend = classify_trend(ratios);
    if (report.trend == Trend::Bounded) report.empirical_c = *std::max_element(ratios.begin(), ratios.end());
    if (report.levels.size() >= 2) {
        const double a = report.levels[report.levels.size() - 2].rhs_norm, b = report.levels.back().rhs_norm;
        report.rhs_norm_variation = std::abs(b / a - 1.0);
    }
    return report;
}

double verify_lemma_x(const GreenOperator& op, const SampledField& h) {
    if (h.grid_ptr() != op.grid_ptr()) throw DomainError("field and operator use different grids");
    if (h.min() < 0.0) throw ParameterError("lemma needs h >= 0");
    if (!(h.max() > 0.0)) throw ParameterError("lemma needs h not identically zero");
    const int m = op.kernel().problem().m();
    const double mass = weighted_norm(h, 1.0, m);
    if (!std::isfinite(mass)) throw ParameterError("h is not in the weighted L1 space");
    const auto v = op.apply(h);
    const auto& g = op.grid();
    double c = kInfinity;
    for (std::size_t i = 0; i < g.size(); ++i)
        c = std::min(c, v[i] / std::pow(distance_to_boundary(g.node(i)), m));
    return c / mass;
}

double verify_lemma_x(const GreenKernel& kernel, const SampledField& h) {
    return verify_lemma_x(GreenOperator(kernel, h.grid_ptr()), h);
}

}  // namespace polyharm
