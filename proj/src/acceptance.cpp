#include "polyharm/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "polyharm/errors.hpp"
#include "polyharm/numerics.hpp"

namespace polyharm {
namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double variation(double previous, double last) { return std::abs(last - previous) / std::abs(previous); }

CriterionResult make(int id, std::string name) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    r.data = Json::object();
    return r;
}

void verdict(CriterionResult& r, bool ok, std::string detail) {
    r.status = ok ? Status::Pass : Status::Fail;
    r.detail = std::move(detail);
}

void skip(CriterionResult& r, std::string why) {
    r.status = Status::Skip;
    r.detail = std::move(why);
}

Point random_ball_point(UniformStream& rng, int n) {
    for (;;) {
        Point x{};
        for (int i = 0; i < n; ++i) x[i] = 2.0 * rng.next() - 1.0;
        if (norm2(x) < 1.0) return x;
    }
}

// m = 1, n = 3 by reflection in the sphere
double image_green(const Point& x, const Point& y) {
    const double ny2 = norm2(y);
    const Point star = (1.0 / ny2) * y;
    return (1.0 / distance(x, y) - 1.0 / (std::sqrt(ny2) * distance(x, star))) / (4.0 * std::numbers::pi);
}

CriterionResult green_oracle(const RunConfig& cfg) {
    auto r = make(1, "green kernel matches the image formula (m=1, n=3)");
    const GreenKernel kernel(BallProblem(3, 1));
    UniformStream rng(cfg.seed);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Point x = random_ball_point(rng, 3);
        const Point y = random_ball_point(rng, 3);
        worst = std::max(worst, rel(eval_green(kernel, x, y), image_green(x, y)));
    }
    r.data["pairs"] = 1000;
    r.data["max_relative_error"] = worst;
    verdict(r, worst <= 1e-10, "max relative error " + fmt(worst) + " (tolerance 1e-10)");
    return r;
}

CriterionResult solve_oracles(const RunConfig& cfg) {
    auto r = make(2, "constant right-hand side reproduces u(0) for m=1,2 and n=2,3");
    if (cfg.levels.size() < 3) {
        skip(r, "needs a ladder of at least 3 levels");
        return r;
    }
    bool ok = true;
    std::string detail;
    Json cases = Json::array();
    for (auto [n, m] : {std::pair{2, 1}, {3, 1}, {2, 2}, {3, 2}}) {
        const BallProblem problem(n, m);
        const GreenKernel kernel(problem);
        const double exact = m == 1 ? 1.0 / (2.0 * n) : 1.0 / (8.0 * n * (n + 2));
        std::vector<double> errors;
        for (int level : cfg.levels) {
            auto grid = cached_grid(problem, level, Grading{}, cfg.cache_dir);
            const GreenOperator op(kernel, grid);
            errors.push_back(rel(op.evaluate_at(Point{}, SampledField::constant(grid, 1.0)), exact));
        }
        bool decreasing = true;
        for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
        const bool good = decreasing && errors.back() <= 0.02;
        ok = ok && good;
        cases.push_back({{"n", n}, {"m", m}, {"exact", exact}, {"relative_errors", errors}});
        detail += "(" + std::to_string(n) + "," + std::to_string(m) + ") err " + fmt(errors.back()) +
                  (decreasing ? "" : " not decreasing") + "; ";
    }
    r.data["cases"] = cases;
    verdict(r, ok, detail + "tolerance 2%");
    return r;
}

CriterionResult lower_bounds(const RunConfig& cfg) {
    auto r = make(3, "green lower bounds g1/g2/g3 have a stable positive constant");
    struct Case {
        int n, m;
        LowerBound b;
    };
    bool ok = true;
    std::string detail;
    Json cases = Json::array();
    PairSampling sampling;
    sampling.seed = cfg.seed;
    for (Case c : {Case{3, 1, LowerBound::G1}, Case{4, 1, LowerBound::G1}, Case{2, 1, LowerBound::G2},
                   Case{4, 2, LowerBound::G2}, Case{2, 2, LowerBound::G3}, Case{3, 2, LowerBound::G3}}) {
        const BallProblem problem(c.n, c.m);
        const auto rep = verify_green_lower_bound(GreenKernel(problem), c.b, sampling);
        const bool good = rep.overall_min() > 0.0 && rep.last_variation() < 0.2;
        ok = ok && good;
        cases.push_back(to_json(rep, problem));
        detail += to_string(c.b) + "(" + std::to_string(c.n) + "," + std::to_string(c.m) + ") var " +
                  fmt(rep.last_variation()) + "; ";
    }
    r.data["cases"] = cases;
    verdict(r, ok, detail + "tolerance 20%");
    return r;
}

CriterionResult eigenpairs(const RunConfig& cfg) {
    auto r = make(4, "principal eigenvalue on the 3-ball and the disk, sandwich constants");
    const int level = *std::max_element(cfg.levels.begin(), cfg.levels.end());
    // first zero of J_0, squared
    const double disk = 5.783185962946784;
    bool ok = true;
    std::string detail;
    Json cases = Json::array();
    for (auto [n, target] : {std::pair{3, std::numbers::pi * std::numbers::pi}, {2, disk}}) {
        const BallProblem problem(n, 1);
        auto grid = cached_grid(problem, level, Grading{}, cfg.cache_dir);
        const GreenOperator op(GreenKernel(problem), grid);
        const auto pair = principal_eigenpair(op, {cfg.eigen_tol, cfg.residual_tol, cfg.max_iters});
        const auto sw = verify_sandwich(pair);
        const double err = rel(pair.eigenvalue, target);
        const bool good = err <= 0.01 && sw.c1 > 0.0 && sw.c2 > 0.0 && sw.c2 / sw.c1 <= 10.0;
        ok = ok && good;
        Json j = eigen_json(problem, level, pair, sw);
        j["target"] = target;
        cases.push_back(j);
        detail += "n=" + std::to_string(n) + " lambda " + fmt(pair.eigenvalue) + " err " + fmt(err) + " c2/c1 " +
                  fmt(sw.c2 / sw.c1) + "; ";
    }
    r.data["cases"] = cases;
    verdict(r, ok, detail + "tolerance 1%, c2/c1 <= 10");
    return r;
}

CriterionResult bounded_studies(const RunConfig& cfg) {
    auto r = make(5, "a priori estimates stay bounded under refinement");
    if (cfg.levels.size() < 4) {
        skip(r, "trend rules need at least 4 levels");
        return r;
    }
    StudyOptions opt{cfg.levels, cfg.cache_dir};
    struct Case {
        EstimateCase c;
        EstimateParams p;
    };
    const std::vector<Case> cases{
        {EstimateCase::Prop23, {3, 1, 1.0, 1.0, 1.5}},
        {EstimateCase::Prop21_2, {3, 1, 2.0, 2.0}},
        {EstimateCase::Prop21_1, {2, 2, 1.0, 1.0}},
        {EstimateCase::Lemma, {3, 1, 2.0, 4.0, 1.0, 0.5, 0.5}},
    };
    bool ok = true;
    std::string detail;
    Json reports = Json::array();
    for (const auto& c : cases) {
        const auto rep = verify_estimate(c.c, c.p, default_rhs_family(c.p.m), opt);
        ok = ok && rep.trend == Trend::Bounded;
        reports.push_back(to_json(rep));
        detail += rep.estimate_id + " " + to_string(rep.trend) + "; ";
    }
    r.data["reports"] = reports;
    verdict(r, ok, detail);
    return r;
}

CriterionResult falsification(const RunConfig& cfg) {
    auto r = make(6, "falsification n=4, m=1, p=1, q=inf grows while the data norm settles");
    const auto ladder = falsification_levels(cfg.levels);
    if (ladder.size() < 4) {
        skip(r, "trend rules need at least 4 levels");
        return r;
    }
    const auto rep = falsify_estimate(4, 1, 1.0, kInfinity, {ladder, cfg.cache_dir});
    const double growth = rep.levels.back().ratio / rep.levels.front().ratio;
    const double var = rep.rhs_norm_variation.value_or(kInfinity);
    r.data["report"] = to_json(rep);
    verdict(r, rep.trend == Trend::Growing && var < 0.05,
            "trend " + to_string(rep.trend) + ", growth x" + fmt(growth) + ", data norm variation " + fmt(var) +
                " (tolerance 5%)");
    return r;
}

CriterionResult lemma_x(const RunConfig& cfg) {
    auto r = make(7, "interior lower bound v/d^m >= C int h d^m");
    const int level = *std::max_element(cfg.levels.begin(), cfg.levels.end());
    const BallProblem problem(3, 1);
    const GreenKernel kernel(problem);
    auto grid = cached_grid(problem, level, Grading{}, cfg.cache_dir);
    const double c_one = verify_lemma_x(kernel, SampledField::constant(grid, 1.0));
    const double target = 1.0 / (2.0 * std::numbers::pi);
    // small ball centred on the grid axis, so the field is axisymmetric
    auto coarse = cached_grid(problem, std::max(level - 1, 0), Grading{}, cfg.cache_dir);
    const Point centre{0.3, 0.0, 0.0, 0.0};
    const auto bump = SampledField::sample_axisymmetric(
        coarse, [&](const Point& x) { return distance(x, centre) < 0.2 ? 1.0 : 0.0; });
    const double c_bump = verify_lemma_x(kernel, bump);
    const double err = rel(c_one, target);
    r.data["C_constant"] = c_one;
    r.data["target"] = target;
    r.data["C_bump"] = c_bump;
    verdict(r, err <= 0.05 && c_bump > 0.0,
            "C(h=1) " + fmt(c_one) + " vs 1/(2pi), err " + fmt(err) + "; C(bump) " + fmt(c_bump));
    return r;
}

CriterionResult bootstrap_engine(const RunConfig& cfg) {
    auto r = make(8, "bootstrap traces terminate and validate; worked traces reproduce");
    bool ok = true;
    std::string detail;
    Json scans = Json::array();
    for (auto [n, m] : {std::pair{3, 1}, {4, 1}, {3, 2}}) {
        std::size_t worst_rounds = 0, bad = 0;
        for (auto [p, q] : bounded_scan_points(n, m, 200, cfg.seed)) {
            try {
                const auto t = run_bootstrap(p, q, m, n, cfg.rules);
                worst_rounds = std::max(worst_rounds, t.rounds.size());
                const double delta = bootstrap_growth_delta(t);
                bool grows = true;
                for (std::size_t i = 0; i < t.rounds.size(); ++i) {
                    const double next = i + 1 < t.rounds.size() ? t.rounds[i + 1].k : t.k_bar;
                    grows = grows && next / t.rounds[i].k >= 1.0 + delta - 1e-12;
                }
                if (!t.terminated || t.rounds.size() > 100 || !validate_trace(t).empty() || !grows) ++bad;
            } catch (const Error&) {
                ++bad;
            }
        }
        ok = ok && bad == 0;
        scans.push_back({{"n", n}, {"m", m}, {"points", 200}, {"failures", bad}, {"max_rounds", worst_rounds}});
        detail += "(" + std::to_string(n) + "," + std::to_string(m) + ") " + std::to_string(bad) +
                  " bad, max rounds " + std::to_string(worst_rounds) + "; ";
    }
    r.data["scans"] = scans;

    // Hand-computed traces under the default rules.
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::abs(b); };
    const auto t1 = run_bootstrap(1.5, 1.5, 1, 3);
    // k = 2 - 0.05; threshold 1.8 already exceeded; A = 1.5/1.95 - 1/2
    const double a1 = 1.5 / 1.95 - 0.5;
    const bool ex1 = close(t1.initial_k, 1.95) && t1.rounds.empty() && close(t1.k1_final, 0.5 * (3.0 + 1.0 / a1)) &&
                     std::isinf(t1.k2_final);
    const auto t2 = run_bootstrap(1.2, 1.2, 1, 4);
    // k = 49/30 < 18/11; eta = 2.2 k 2/5 - 0.44; rho = (1 + 0.72)/2
    const double k = 49.0 / 30.0;
    const double eta = 0.4 * 2.2 * k - 0.44;
    const double a2 = 1.2 / k - 0.4;
    const double up = std::min(0.86 / k, 1.0 / 1.2);
    const double k1 = 1.0 / (a2 + 0.1 * (up - a2));
    const double k2 = 1.0 / (0.5 * (std::max(1.2 / k1 - 0.4, 0.0) + 0.86 / k));
    const double kbar = k / 0.86;
    const double k1_final = 0.5 * (5.0 * 1.2 / 2.0 + 1.0 / (1.2 / kbar - 0.4));
    bool ex2 = t2.rounds.size() == 1 && close(t2.initial_k, k);
    if (ex2) {
        const auto& rd = t2.rounds[0];
        ex2 = close(rd.eta, eta) && close(rd.rho, 0.86) && close(rd.k1, k1) && close(rd.k2, k2) &&
              close(t2.k_bar, kbar) && close(t2.k1_final, k1_final) && std::isinf(t2.k2_final);
    }
    r.data["worked_examples"] = {{"n3_m1_p1.5", ex1}, {"n4_m1_p1.2", ex2}};
    ok = ok && ex1 && ex2;
    detail += std::string("worked traces ") + (ex1 && ex2 ? "exact" : "differ");
    verdict(r, ok, detail);
    return r;
}

CriterionResult singular_pipeline(const RunConfig& cfg) {
    auto r = make(9, "p=2, q=3 cone construction: bounded a, b and unbounded u");
    if (cfg.levels.size() < 3) {
        skip(r, "needs a ladder of at least 3 levels");
        return r;
    }
    const std::vector<int> ladder(cfg.levels.begin(), cfg.levels.begin() + 3);
    const auto study = singular_study(2.0, 3.0, 1, 3, ladder, cfg.cache_dir);
    const auto& a = study.levels[1].stats;
    const auto& b = study.levels[2].stats;
    const double var_a = variation(a.sup_a, b.sup_a);
    const double var_b = variation(a.sup_b, b.sup_b);
    double growth = kInfinity, residual = 0.0;
    for (double g : study.growth) growth = std::min(growth, g);
    for (const auto& l : study.levels) residual = std::max({residual, l.residual_u, l.residual_v});

    // a -> 2a must be caught by the residual
    const BallProblem problem(3, 1);
    auto grid = cached_grid(problem, ladder[1], singular_grading(3), cfg.cache_dir);
    const GreenOperator op(GreenKernel(problem), grid);
    auto system = construct_counterexample(2.0, 3.0, op);
    system.a = system.a.scaled(2.0);
    const double fault = verify_system_residual(system, op).first;

    r.data["study"] = to_json(study);
    r.data["fault_residual"] = fault;
    verdict(r, var_a <= 0.2 && var_b <= 0.2 && growth >= 2.0 && residual <= 1e-2 && fault > 0.5,
            "sup a var " + fmt(var_a) + ", sup b var " + fmt(var_b) + ", min growth x" + fmt(growth) +
                ", residual " + fmt(residual) + ", fault residual " + fmt(fault));
    return r;
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
    }
    return "?";
}

bool AcceptanceReport::passed() const {
    return std::none_of(criteria.begin(), criteria.end(),
                        [](const CriterionResult& c) { return c.status == Status::Fail; });
}

std::vector<int> falsification_levels(const std::vector<int>& ladder) {
    std::vector<int> out;
    for (int l : ladder) out.push_back(std::max(l - 1, 0));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

AcceptanceReport run_acceptance(const RunConfig& cfg, const std::function<void(const CriterionResult&)>& on_result) {
    validate_config(cfg);
    using Fn = CriterionResult (*)(const RunConfig&);
    const Fn battery[] = {green_oracle,    solve_oracles, lower_bounds,     eigenpairs,       bounded_studies,
                          falsification,   lemma_x,       bootstrap_engine, singular_pipeline};
    AcceptanceReport report;
    for (Fn fn : battery) {
        CriterionResult res;
        try {
            res = fn(cfg);
        } catch (const Error& e) {
            const int id = static_cast<int>(report.criteria.size()) + 1;
            res = make(id, "criterion " + std::to_string(id));
            verdict(res, false, std::string("error: ") + e.what());
        }
        if (on_result) on_result(res);
        report.criteria.push_back(std::move(res));
    }
    auto det = make(10, "repeated suite runs are byte-identical");
    skip(det, "compared across whole runs by the acceptance driver");
    if (on_result) on_result(det);
    report.criteria.push_back(std::move(det));
    return report;
}

Json to_json(const AcceptanceReport& report, const RunConfig& cfg) {
    Json j;
    j["seed"] = cfg.seed;
    j["levels"] = cfg.levels;
    Json list = Json::array();
    for (const auto& c : report.criteria)
        list.push_back({{"id", c.id}, {"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail},
                        {"data", c.data}});
    j["criteria"] = list;
    j["passed"] = report.passed();
    return j;
}

}  // namespace polyharm
