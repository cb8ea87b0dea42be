#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polyharm/solver.hpp"

namespace polyharm {

enum class EstimateCase { Prop21_1, Prop21_2, Prop23, Lemma };

std::string to_string(EstimateCase c);
// "prop21_1", "prop21_2", "prop23", "lemma"; ParameterError otherwise.
EstimateCase parse_estimate_case(const std::string& name);

enum class Trend { Bounded, Growing, Inconclusive };

std::string to_string(Trend t);

// growing: >= 4 levels, strictly increasing, last/first >= 4.
// bounded: last two within 10% of each other (relative to the larger).
// Fewer than 4 levels is always inconclusive.
Trend classify_trend(const std::vector<double>& ratios);

struct EstimateParams {
    int n = 3;
    int m = 1;
    double p = 1.0;
    double q = 1.0;
    double k = 1.0;      // prop23
    double theta = 0.0;  // lemma
    double alpha = 0.0;  // lemma exponent, or the cone exponent when falsifying
};

// A right-hand side profile. `boundary_power` is set for d^γ profiles so
// that the study can drop them when the data norm would be infinite.
struct RhsProfile {
    std::string name;
    std::function<double(const Point&)> f;
    std::optional<double> boundary_power;
};

// {1, 1+|x|, exp(-|x|²), d^{-m+0.1}}
std::vector<RhsProfile> default_rhs_family(int m);

struct LevelRatio {
    int level = 0;
    std::size_t nodes = 0;
    double ratio = 0.0;     // max over the family at this level
    double rhs_norm = 0.0;  // data norm of the profile attaining the max
};

struct EstimateReport {
    std::string estimate_id;
    EstimateParams params;
    std::vector<std::string> rhs_names;  // profiles actually used
    std::vector<LevelRatio> levels;
    Trend trend = Trend::Inconclusive;
    std::optional<double> empirical_c;  // max ratio, when bounded
    bool exploratory = false;           // falsification below the proved threshold
    std::optional<double> rhs_norm_variation;  // falsification: |last/previous - 1|
};

struct StudyOptions {
    std::vector<int> levels{1, 2, 3, 4};
    std::string cache_dir;
};

// ParameterError naming the violated hypothesis.
void check_estimate_hypotheses(EstimateCase c, const EstimateParams& params);

EstimateReport verify_estimate(EstimateCase c, const EstimateParams& params, const std::vector<RhsProfile>& family,
                               const StudyOptions& options = {});

// Cone-exponent window used by the falsification: (max(0, (n+m)/q),
// min((n+m)/p - 2m, n-m)). ParameterError if empty.
std::pair<double, double> falsification_window(int n, int m, double p, double q);

// Requires 1/p - 1/q > 2m/(n-m); with `exploratory` only > 2m/(n+m).
EstimateReport falsify_estimate(int n, int m, double p, double q, const StudyOptions& options = {},
                                bool exploratory = false);

// min over nodes of (G[h]/d^m) / ∫ h d^m. ParameterError if h < 0 somewhere
// or h vanishes identically.
double verify_lemma_x(const GreenKernel& kernel, const SampledField& h);
double verify_lemma_x(const GreenOperator& op, const SampledField& h);

}  // namespace polyharm
