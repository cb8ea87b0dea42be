#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polyharm/config.hpp"
#include "polyharm/report.hpp"

namespace polyharm {

enum class Status { Pass, Fail, Skip };

std::string to_string(Status s);

struct CriterionResult {
    int id = 0;
    std::string name;
    Status status = Status::Skip;
    std::string detail;
    Json data;
};

struct AcceptanceReport {
    std::vector<CriterionResult> criteria;
    bool passed() const;  // no failures
};

// Criteria 1..9; criterion 10 (repeat determinism) is reported as skipped
// here because it compares whole runs. `on_result` fires after each one.
AcceptanceReport run_acceptance(const RunConfig& config,
                                const std::function<void(const CriterionResult&)>& on_result = {});

Json to_json(const AcceptanceReport& report, const RunConfig& config);

// Ladder used by the falsification study: one level below each entry of the
// configured ladder, since the 4-ball grids are the expensive ones.
std::vector<int> falsification_levels(const std::vector<int>& ladder);

}  // namespace polyharm
