#pragma once

#include <string>
#include <vector>

namespace gcm {

/// One reproduction target: a published constant or certified claim,
/// recomputed from scratch and compared against its expected value.
struct ReproResult {
    std::string id;
    std::string description;
    std::string computed;
    std::string expected;
    bool pass = false;
    double elapsed_ms = 0;
};

std::vector<std::string> repro_ids();
ReproResult run_repro(const std::string& id);

}  // namespace gcm
