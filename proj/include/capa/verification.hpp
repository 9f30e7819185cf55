// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace capa {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    double budget_seconds = 0.0;
};

/// Runs the numbered verification criteria (all of them when `ids` is
/// empty). Scratch CSV output lands under `work_dir`.
std::vector<CriterionResult> run_verification(
    const std::vector<int>& ids = {},
    const std::filesystem::path& work_dir = "acceptance_out");

/// Prints one PASS/FAIL line per criterion; returns the number of failures.
int report_verification(const std::vector<CriterionResult>& results);

}  // namespace capa
