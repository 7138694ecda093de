#pragma once

// Deterministic invariant suite across all modules.

#include <cstdint>
#include <string>
#include <vector>

#include "thetacat/json_io.hpp"

namespace thetacat {

struct SelftestItem {
    std::string module;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SelftestReport {
    std::uint64_t seed = 0;
    WindowSpec window;
    std::vector<SelftestItem> items;
    bool passed() const;
};

/// Runs every module's invariants; randomized items draw from a generator
/// seeded with `seed`. The report contains no timing data, so equal seeds
/// give equal reports.
SelftestReport run_selftest(std::uint64_t seed, const WindowSpec& w = WindowSpec(2, 3));

Json to_json(const SelftestReport& r);

} // namespace thetacat
