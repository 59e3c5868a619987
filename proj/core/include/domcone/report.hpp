#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace domcone {

struct Violation {
    std::size_t sample = 0;
    std::string what;
    double value = 0.0;
    bool operator==(const Violation&) const = default;
};

/// Outcome of a sampled property check. `worst` is the largest observed
/// defect (positive means the property failed by that much).
struct PropertyReport {
    std::string name;
    std::size_t samples = 0;
    double worst = 0.0;
    std::vector<Violation> violations;
    std::string note;

    bool passed() const noexcept { return violations.empty(); }
};

} // namespace domcone
