#ifndef QSPSKT_VERIFY_HPP
#define QSPSKT_VERIFY_HPP

#include <string>
#include <vector>

#include "qspskt/common.hpp"

namespace qspskt {

struct VerifyRow {
    std::string check;
    bool pass = false;
    double metric = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct VerifyReport {
    std::string suite;
    std::vector<VerifyRow> rows;
    bool pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

/// Available: qsp-invariants, nested-commutator-scaling, planarity,
/// commutator-bounds, gj-counts.
std::vector<std::string> verify_suite_names();

/// Runs one named suite; unknown names raise a precondition error listing
/// the available suites.
VerifyReport run_verify_suite(const std::string& name);

}  // namespace qspskt

#endif
