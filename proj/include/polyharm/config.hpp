#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyharm/exponents.hpp"

namespace polyharm {

// Everything a command may read. Flags and config-file keys share names.
struct RunConfig {
    int n = 3;
    int m = 1;
    double p = 1.5;
    double q = 1.5;
    int level = 3;
    std::vector<int> levels{1, 2, 3, 4};
    std::string rhs = "const";
    std::string estimate_case = "prop23";
    std::string bound;  // g1|g2|g3, default from (n, m)
    double k = 1.5;
    double theta = 0.5;
    double alpha = 0.5;
    bool exploratory = false;
    double eigen_tol = 1e-8;
    double residual_tol = 1e-6;
    int max_iters = 500;
    BootstrapRules rules;
    std::string cache_dir;
    std::string format = "json";
    std::string out;
    std::string profile_csv;
    std::string dump_kernel;
    std::uint64_t seed = 20240531;
};

// ParameterError on the first field that no command could accept.
void validate_config(const RunConfig& config);

}  // namespace polyharm
