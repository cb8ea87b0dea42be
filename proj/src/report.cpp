#include "polyharm/report.hpp"

#include <cmath>
#include <cstdio>

namespace polyharm {
namespace {

void emit(const Json& v, std::string& out, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (v.type()) {
    case Json::value_t::object: {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad + Json(it.key()).dump() + ": ";
            emit(it.value(), out, depth + 1);
        }
        out += "\n" + close + "}";
        return;
    }
    case Json::value_t::array: {
        if (v.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",\n";
            out += pad;
            emit(v[i], out, depth + 1);
        }
        out += "\n" + close + "]";
        return;
    }
    case Json::value_t::number_float: out += format_double(v.get<double>()); return;
    default: out += v.dump(); return;
    }
}

double inf_as_nan(double x) { return std::isfinite(x) ? x : std::nan(""); }

}  // namespace

std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string dump_json(const Json& value) {
    std::string out;
    emit(value, out, 0);
    out += '\n';
    return out;
}

Json regimes_json(const ExponentParams& e, int n, int m, Regime regime) {
    Json j;
    j["params"] = {{"p", e.swapped ? e.q : e.p}, {"q", e.swapped ? e.p : e.q}, {"m", m}, {"n", n}};
    j["alpha"] = e.swapped ? e.beta : e.alpha;
    j["beta"] = e.swapped ? e.alpha : e.beta;
    j["swapped"] = e.swapped;
    j["threshold"] = n - m;
    j["regime"] = to_string(regime);
    return j;
}

Json to_json(const BootstrapTrace& t) {
    Json j;
    j["inputs"] = {{"p", t.p}, {"q", t.q}, {"m", t.m}, {"n", t.n}, {"swapped", t.swapped}};
    j["low_dimension"] = t.low_dimension;
    j["epsilon"] = t.epsilon;
    j["initial_k"] = t.initial_k;
    Json rounds = Json::array();
    for (const auto& r : t.rounds)
        rounds.push_back({{"k", r.k}, {"eta", r.eta}, {"rho", r.rho}, {"k1", r.k1}, {"k2", r.k2}});
    j["rounds"] = rounds;
    j["k_bar"] = t.k_bar;
    j["k1_final"] = t.k1_final;
    j["k2_final"] = t.k2_final;
    j["terminated"] = t.terminated;
    j["growth_delta"] = bootstrap_growth_delta(t);
    j["violations"] = validate_trace(t);
    return j;
}

Json to_json(const MinRatioReport& r, const BallProblem& problem) {
    Json j;
    j["bound"] = to_string(r.bound);
    j["n"] = problem.n();
    j["m"] = problem.m();
    j["samples"] = r.samples;
    j["min_ratio"] = r.min_ratio;
    j["overall_min"] = r.overall_min();
    j["last_variation"] = r.last_variation();
    return j;
}

Json to_json(const EstimateReport& r) {
    Json j;
    j["estimate_id"] = r.estimate_id;
    const auto& p = r.params;
    j["params"] = {{"n", p.n}, {"m", p.m}, {"p", inf_as_nan(p.p)}, {"q", inf_as_nan(p.q)}, {"k", p.k},
                   {"theta", p.theta}, {"alpha", p.alpha}};
    j["rhs"] = r.rhs_names;
    Json levels = Json::array();
    for (const auto& l : r.levels)
        levels.push_back({{"level", l.level}, {"nodes", l.nodes}, {"ratio", l.ratio}, {"rhs_norm", l.rhs_norm}});
    j["levels"] = levels;
    j["trend"] = to_string(r.trend);
    j["empirical_C"] = r.empirical_c ? Json(*r.empirical_c) : Json(nullptr);
    if (r.estimate_id == "falsify") {
        j["exploratory"] = r.exploratory;
        j["rhs_norm_variation"] = r.rhs_norm_variation ? Json(*r.rhs_norm_variation) : Json(nullptr);
    }
    return j;
}

Json to_json(const SingularStudy& s) {
    Json j;
    j["params"] = {{"p", s.p}, {"q", s.q}, {"m", s.m}, {"n", s.n}, {"alpha", s.alpha}, {"beta", s.beta}};
    j["regime"] = "singular";
    const auto& last = s.levels.back();
    j["sup_a"] = last.stats.sup_a;
    j["sup_b"] = last.stats.sup_b;
    j["C_u"] = last.stats.c_u;
    j["C_v"] = last.stats.c_v;
    j["residuals"] = {{"u", last.residual_u}, {"v", last.residual_v}};
    Json maxima = Json::array();
    for (const auto& l : s.levels) maxima.push_back(l.stats.near_vertex_max_u);
    j["near_vertex_growth"] = maxima;
    j["growth_factors"] = s.growth;
    Json levels = Json::array();
    for (const auto& l : s.levels)
        levels.push_back({{"level", l.level},
                          {"nodes", l.nodes},
                          {"sup_a", l.stats.sup_a},
                          {"sup_b", l.stats.sup_b},
                          {"node_sup_a", l.stats.node_sup_a},
                          {"node_sup_b", l.stats.node_sup_b},
                          {"C_u", l.stats.c_u},
                          {"C_v", l.stats.c_v},
                          {"max_u", l.stats.near_vertex_max_u},
                          {"max_v", l.stats.near_vertex_max_v},
                          {"residual_u", l.residual_u},
                          {"residual_v", l.residual_v}});
    j["levels"] = levels;
    return j;
}

Json eigen_json(const BallProblem& problem, int level, const EigenPair& pair, const SandwichConstants& sw) {
    Json j;
    j["n"] = problem.n();
    j["m"] = problem.m();
    j["level"] = level;
    j["nodes"] = pair.eigenfunction.size();
    j["eigenvalue"] = pair.eigenvalue;
    j["iterations"] = pair.iterations;
    j["residual"] = pair.residual;
    j["c1"] = sw.c1;
    j["c2"] = sw.c2;
    return j;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += std::isfinite(row[i]) ? format_double(row[i]) : (std::isinf(row[i]) ? "inf" : "nan");
        }
        out += '\n';
    }
    return out;
}

std::string bootstrap_csv(const BootstrapTrace& t) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < t.rounds.size(); ++i) {
        const auto& r = t.rounds[i];
        rows.push_back({static_cast<double>(i), r.k, r.eta, r.rho, r.k1, r.k2});
    }
    return to_csv({"round", "k", "eta", "rho", "k1", "k2"}, rows);
}

std::string estimate_csv(const EstimateReport& r) {
    std::vector<std::vector<double>> rows;
    for (const auto& l : r.levels)
        rows.push_back({static_cast<double>(l.level), static_cast<double>(l.nodes), l.ratio, l.rhs_norm});
    return to_csv({"level", "nodes", "ratio", "rhs_norm"}, rows);
}

std::string singular_csv(const SingularStudy& s) {
    std::vector<std::vector<double>> rows;
    for (const auto& l : s.levels)
        rows.push_back({static_cast<double>(l.level), static_cast<double>(l.nodes), l.stats.sup_a, l.stats.sup_b,
                        l.stats.c_u, l.stats.c_v, l.stats.near_vertex_max_u, l.residual_u, l.residual_v});
    return to_csv({"level", "nodes", "sup_a", "sup_b", "C_u", "C_v", "max_u", "residual_u", "residual_v"}, rows);
}

std::string axis_profile_csv(const SingularStudy& s) {
    std::vector<std::vector<double>> rows;
    for (const auto& r : s.axis_profile) rows.push_back({r[0], r[1], r[2]});
    return to_csv({"t", "u", "v"}, rows);
}

}  // namespace polyharm
