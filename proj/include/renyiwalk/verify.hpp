#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace renyiwalk {

/// Fixed seed for the random-measure generators used by the property
/// suites; documented so runs are reproducible bit for bit.
inline constexpr std::uint64_t kVerifySeed = 20250810;

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // short diagnostic, filled on failure or as a value note
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;

    void add(std::string name, bool ok, std::string detail = {});
};

/// Suites: "group", "measure", "renyi", "free", "lamplighter", "tilt".
SuiteResult run_suite(std::string_view name, std::uint64_t seed = kVerifySeed);
std::vector<SuiteResult> run_all_suites(std::uint64_t seed = kVerifySeed);
std::vector<std::string> suite_names();

}  // namespace renyiwalk
