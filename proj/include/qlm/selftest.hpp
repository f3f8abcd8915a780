#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlm {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

/// The acceptance suite: closed-form identities, collar certificates, limit
/// studies and the property batteries, each reported as one pass/fail line.
std::vector<CriterionResult> run_acceptance();

/// Prints one line per criterion; returns the number of failures.
int run_selftest(std::ostream& out);

}  // namespace qlm
