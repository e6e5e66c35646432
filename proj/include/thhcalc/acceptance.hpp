#pragma once

#include "thhcalc/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace thh {

struct CriterionResult
{
    int number = 0;
    std::string name;
    bool passed = true;
    std::size_t cases = 0;
    double seconds = 0;
    std::vector<CheckReport> reports;

    void add(CheckReport r);
    nlohmann::json to_json(bool with_reports = true) const;
};

constexpr int criterion_count = 13;

// criterion k in 1..criterion_count; seed feeds the randomized ones
CriterionResult run_criterion(int k, std::uint64_t seed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed);

}  // namespace thh
