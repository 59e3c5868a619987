#pragma once

#include <functional>
#include <string>
#include <vector>

#include "domcone/report.hpp"

namespace domcone::detail {

struct SampleOutcome {
    double worst = 0.0;
    std::vector<Violation> violations;
};

/// Evaluates body(i) for every sample (possibly in parallel) and reduces in
/// index order.
PropertyReport run_sampled(std::string name, std::size_t samples,
                           const std::function<SampleOutcome(std::size_t)>& body);

} // namespace domcone::detail
