#include "polyharm/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polyharm/acceptance.hpp"
#include "polyharm/config.hpp"
#include "polyharm/errors.hpp"
#include "polyharm/report.hpp"

namespace polyharm {
namespace {

std::function<double(const Point&)> rhs_profile(const std::string& name, int m) {
    if (name == "const") return [](const Point&) { return 1.0; };
    for (const auto& prof : default_rhs_family(m))
        if (prof.name == name) return prof.f;
    throw ParameterError("unknown rhs '" + name + "'");
}

LowerBound parse_bound(const std::string& s) {
    if (s == "g1") return LowerBound::G1;
    if (s == "g2") return LowerBound::G2;
    return LowerBound::G3;
}

struct Emitted {
    std::string body;
};

Emitted emit_json(const Json& j) { return {dump_json(j)}; }

Emitted cmd_regimes(const RunConfig& c) {
    const auto e = compute_exponents(c.p, c.q, c.m);
    const auto regime = classify_regime(e, c.n, c.m);
    if (c.format == "csv") {
        std::string s = "p,q,m,n,alpha,beta,regime\n";
        s += format_double(c.p) + "," + format_double(c.q) + "," + std::to_string(c.m) + "," + std::to_string(c.n) +
             "," + format_double(e.swapped ? e.beta : e.alpha) + "," + format_double(e.swapped ? e.alpha : e.beta) +
             "," + to_string(regime) + "\n";
        return {s};
    }
    return emit_json(regimes_json(e, c.n, c.m, regime));
}

Emitted cmd_bootstrap(const RunConfig& c) {
    const auto t = run_bootstrap(c.p, c.q, c.m, c.n, c.rules);
    if (c.format == "csv") return {bootstrap_csv(t)};
    return emit_json(to_json(t));
}

Emitted cmd_green(const RunConfig& c) {
    const BallProblem problem(c.n, c.m);
    const GreenKernel kernel(problem);
    const LowerBound bound = c.bound.empty() ? lower_bound_for(kernel.green_case()) : parse_bound(c.bound);
    PairSampling sampling;
    sampling.seed = c.seed;
    const auto rep = verify_green_lower_bound(kernel, bound, sampling);
    if (c.format == "csv") {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < rep.samples.size(); ++i)
            rows.push_back({static_cast<double>(rep.samples[i]), rep.min_ratio[i]});
        return {to_csv({"samples", "min_ratio"}, rows)};
    }
    Json j = to_json(rep, problem);
    j["normalization"] = kernel.normalization();
    return emit_json(j);
}

// one value per shell (radial fields) or per node
std::vector<std::vector<double>> shell_rows(const SampledField& u) {
    const auto& g = u.grid();
    std::vector<std::vector<double>> rows;
    for (std::size_t s = 0; s < g.shell_count(); ++s) rows.push_back({g.shell_radius(s), u[g.shell_representative(s)]});
    return rows;
}

Emitted cmd_solve(const RunConfig& c) {
    const BallProblem problem(c.n, c.m);
    const GreenKernel kernel(problem);
    auto grid = cached_grid(problem, c.level, Grading{}, c.cache_dir);
    const GreenOperator op(kernel, grid);
    if (!c.dump_kernel.empty()) op.write_dense(c.dump_kernel);
    const auto f = SampledField::sample_radial(grid, rhs_profile(c.rhs, c.m));
    const auto u = op.apply(f);
    if (c.format == "csv") return {to_csv({"r", "u"}, shell_rows(u))};
    Json j;
    j["n"] = c.n;
    j["m"] = c.m;
    j["level"] = c.level;
    j["nodes"] = grid->size();
    j["rhs"] = c.rhs;
    const double u0 = op.evaluate_at(Point{}, f);
    j["u0"] = u0;
    j["max_u"] = u.max();
    j["min_u"] = u.min();
    if (c.rhs == "const") {
        const double exact = constant_rhs_solution(problem, Point{});
        double worst = 0.0;
        for (std::size_t i = 0; i < grid->size(); ++i)
            worst = std::max(worst, std::abs(u[i] - constant_rhs_solution(problem, grid->node(i))));
        j["u0_exact"] = exact;
        j["u0_relative_error"] = std::abs(u0 - exact) / exact;
        j["max_relative_error"] = worst / exact;
    }
    return emit_json(j);
}

Emitted cmd_eigen(const RunConfig& c) {
    const BallProblem problem(c.n, c.m);
    auto grid = cached_grid(problem, c.level, Grading{}, c.cache_dir);
    const GreenOperator op(GreenKernel(problem), grid);
    const auto pair = principal_eigenpair(op, {c.eigen_tol, c.residual_tol, c.max_iters});
    const auto sw = verify_sandwich(pair);
    if (c.format == "csv") return {to_csv({"r", "phi"}, shell_rows(pair.eigenfunction))};
    return emit_json(eigen_json(problem, c.level, pair, sw));
}

Emitted cmd_estimate(const RunConfig& c) {
    const StudyOptions opt{c.levels, c.cache_dir};
    EstimateReport rep;
    if (c.estimate_case == "falsify") {
        rep = falsify_estimate(c.n, c.m, c.p, c.q, opt, c.exploratory);
    } else {
        const auto kind = parse_estimate_case(c.estimate_case);
        EstimateParams ps{c.n, c.m, c.p, c.q, c.k, c.theta, c.alpha};
        rep = verify_estimate(kind, ps, default_rhs_family(c.m), opt);
    }
    if (c.format == "csv") return {estimate_csv(rep)};
    return emit_json(to_json(rep));
}

Emitted cmd_singular(const RunConfig& c) {
    const auto study = singular_study(c.p, c.q, c.m, c.n, c.levels, c.cache_dir);
    if (!c.profile_csv.empty()) {
        std::ofstream os(c.profile_csv, std::ios::trunc);
        if (!os) throw Error("cannot write profile to " + c.profile_csv);
        os << axis_profile_csv(study);
    }
    if (c.format == "csv") return {singular_csv(study)};
    return emit_json(to_json(study));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    cfg.cache_dir = default_cache_dir();
    CLI::App app{"Polyharmonic Dirichlet problems on the unit ball", "polyharm"};
    app.fallthrough();
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "flat `key = value` file; keys are flag names");

    app.add_option("--n", cfg.n, "dimension (2..4)");
    app.add_option("--m", cfg.m, "order of (-Δ)^m (1..3)");
    app.add_option("--p", cfg.p, "exponent p");
    app.add_option("--q", cfg.q, "exponent q (inf allowed)");
    app.add_option("--level", cfg.level, "grid level");
    app.add_option("--levels", cfg.levels, "refinement ladder")->delimiter(',');
    app.add_option("--rhs", cfg.rhs, "const|one_plus_r|gaussian|boundary_power");
    app.add_option("--case", cfg.estimate_case, "prop21_1|prop21_2|prop23|lemma|falsify");
    app.add_option("--bound", cfg.bound, "g1|g2|g3");
    app.add_option("--k", cfg.k, "integrability exponent (prop23)");
    app.add_option("--theta", cfg.theta, "lemma theta");
    app.add_option("--alpha", cfg.alpha, "lemma alpha");
    app.add_flag("--exploratory", cfg.exploratory, "allow 2m/(n+m) < 1/p-1/q <= 2m/(n-m)");
    app.add_option("--eigen-tol", cfg.eigen_tol);
    app.add_option("--residual-tol", cfg.residual_tol);
    app.add_option("--max-iters", cfg.max_iters);
    app.add_option("--epsilon", cfg.rules.epsilon_numerator, "initial k offset numerator");
    app.add_option("--rho-blend", cfg.rules.rho_blend);
    app.add_option("--k1-closeness", cfg.rules.k1_closeness);
    app.add_option("--max-rounds", cfg.rules.max_rounds);
    app.add_option("--cache-dir", cfg.cache_dir, "grid cache (default $POLYHARM_CACHE_DIR or ./.cache)");
    app.add_option("--format", cfg.format, "json|csv");
    app.add_option("--out", cfg.out, "write the report here instead of stdout");
    app.add_option("--profile-csv", cfg.profile_csv, "singular: axis profile u(t), v(t)");
    app.add_option("--dump-kernel", cfg.dump_kernel, "solve: write the dense kernel matrix");
    app.add_option("--seed", cfg.seed);

    auto* regimes = app.add_subcommand("regimes", "exponents and regime");
    auto* bootstrap = app.add_subcommand("bootstrap", "exponent bootstrap trace");
    auto* green = app.add_subcommand("green", "sampled Green lower bound");
    auto* solve = app.add_subcommand("solve", "apply the Green operator");
    auto* eigen = app.add_subcommand("eigen", "principal eigenpair");
    auto* estimate = app.add_subcommand("estimate", "a priori estimate study");
    auto* singular = app.add_subcommand("singular", "cone-singular construction");
    auto* suite = app.add_subcommand("suite", "acceptance battery");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        validate_config(cfg);
        Emitted result;
        int status = kExitOk;
        if (regimes->parsed()) result = cmd_regimes(cfg);
        else if (bootstrap->parsed()) result = cmd_bootstrap(cfg);
        else if (green->parsed()) result = cmd_green(cfg);
        else if (solve->parsed()) result = cmd_solve(cfg);
        else if (eigen->parsed()) result = cmd_eigen(cfg);
        else if (estimate->parsed()) result = cmd_estimate(cfg);
        else if (singular->parsed()) result = cmd_singular(cfg);
        else if (suite->parsed()) {
            const auto rep = run_acceptance(cfg);
            result = emit_json(to_json(rep, cfg));
            if (!rep.passed()) {
                for (const auto& c : rep.criteria)
                    if (c.status == Status::Fail) err << "criterion " << c.id << " failed: " << c.detail << "\n";
                status = kExitInvariant;
            }
        }
        if (cfg.out.empty()) {
            out << result.body;
        } else {
            std::ofstream os(cfg.out, std::ios::binary | std::ios::trunc);
            if (!os) throw Error("cannot write report to " + cfg.out);
            os << result.body;
        }
        return status;
    } catch (const ParameterError& e) {
        err << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const ResolutionError& e) {
        err << "resolution error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const InvariantViolation& e) {
        err << "invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace polyharm
