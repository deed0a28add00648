#pragma once

#include <string>
#include <vector>

namespace cinfty {

// Outcome of an identity check. Failure is data, not an exception: the
// violations list carries reproducible witnesses.
struct CheckReport {
    struct Violation {
        std::vector<std::string> inputs;
        std::string defect;  // printed defect vector / map entry
    };

    std::string check;
    std::string arity_range;
    bool passed = true;
    std::vector<Violation> violations;

    void fail(std::vector<std::string> inputs, std::string defect) {
        passed = false;
        violations.push_back({std::move(inputs), std::move(defect)});
    }
};

}  // namespace cinfty
