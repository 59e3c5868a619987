#pragma once

// Bundled property suite: each group exercises one headline property at
// fixed sample counts and tolerances and returns a JSON detail record.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "domcone/json_io.hpp"

namespace domcone {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Set when the machinery itself failed (an exception escaped).
    std::optional<std::string> error;
    json detail;
};

struct SuiteGroup {
    int id;
    const char* name;
    const char* summary;
};

/// Groups 1..8 in order.
const std::vector<SuiteGroup>& suite_groups();

/// Runs one group. Exceptions are captured into CriterionResult::error.
CriterionResult run_criterion(int id, std::uint64_t seed);

std::vector<CriterionResult> run_suite(std::uint64_t seed);

json to_json(const CriterionResult& r);

} // namespace domcone
