#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "json.hpp"

namespace thh {

// Outcome of one machine check: an identifier, a one-line statement of what
// was checked, the parameters, and the verdict with any counterexamples.
struct CheckReport
{
    std::string id;
    std::string statement;
    nlohmann::json params = nlohmann::json::object();
    bool passed = true;
    std::size_t cases = 0;
    std::vector<std::string> failures;
    nlohmann::json details = nlohmann::json::object();

    void fail(const std::string& why, std::size_t keep = 20)
    {
        passed = false;
        if (failures.size() < keep)
            failures.push_back(why);
    }
    void merge(const CheckReport& o)
    {
        cases += o.cases;
        if (!o.passed)
            passed = false;
        for (const auto& f : o.failures)
            if (failures.size() < 20)
                failures.push_back(f);
    }
    nlohmann::json to_json() const
    {
        nlohmann::json j = {{"id", id},           {"statement", statement}, {"params", params},
                            {"verdict", passed ? "pass" : "fail"}, {"cases", cases}, {"failures", failures}};
        if (!details.empty())
            j["details"] = details;
        return j;
    }
};

}  // namespace thh
