// Acceptance driver: one line per criterion, nonzero exit on any failure.
// Criterion 10 reruns the suite through the CLI on the warm cache and
// compares the report bytes with the cold-cache run.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "polyharm/acceptance.hpp"
#include "polyharm/cli.hpp"
#include "polyharm/report.hpp"

namespace fs = std::filesystem;
using namespace polyharm;

int main() {
    const fs::path cache = fs::temp_directory_path() / "polyharm-acceptance-cache";
    fs::remove_all(cache);
    fs::create_directories(cache);

    RunConfig cfg;
    cfg.cache_dir = cache.string();
    bool ok = true;
    const auto report = run_acceptance(cfg, [&](const CriterionResult& r) {
        if (r.id == 10) return;
        std::printf("criterion %d: %s  %s (%s)\n", r.id, to_string(r.status).c_str(), r.name.c_str(),
                    r.detail.c_str());
        std::fflush(stdout);
        if (r.status == Status::Fail) ok = false;
    });
    const std::string cold = dump_json(to_json(report, cfg));

    std::ostringstream out, err;
    const int code = run_command({"suite", "--cache-dir", cache.string()}, out, err);
    const bool same = code == kExitOk && out.str() == cold;
    std::printf("criterion 10: %s  repeated run is byte-identical (warm cache, exit %d, %zu bytes)\n",
                same ? "PASS" : "FAIL", code, cold.size());
    if (!same) ok = false;

    fs::remove_all(cache);
    std::printf("%s\n", ok ? "ALL PASS" : "FAILURES");
    return ok ? 0 : 1;
}
