#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sgspec::cli {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct CriterionInfo {
    int id;
    std::string name;
};
const std::vector<CriterionInfo>& acceptance_criteria();

/// Runs the selected criteria (all when `only` is empty) in id order and
/// prints one "PASS"/"FAIL" line per criterion as it finishes.
std::vector<CriterionResult> run_acceptance(std::ostream& out, const std::vector<int>& only = {});

}  // namespace sgspec::cli
