#pragma once

#include <map>
#include <string>
#include <utility>

namespace bucklab {

/// Outcome of one inequality check: lhs <= rhs up to tolerance.
struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double tolerance = 0.0;
    bool pass = false;    // lhs <= rhs + tolerance
    std::map<std::string, std::string> metadata;
};

inline InequalityReport make_report(std::string name, double lhs, double rhs, double tolerance,
                                    std::map<std::string, std::string> metadata = {}) {
    InequalityReport report;
    report.name = std::move(name);
    report.lhs = lhs;
    report.rhs = rhs;
    report.margin = rhs - lhs;
    report.tolerance = tolerance;
    report.pass = lhs <= rhs + tolerance;
    report.metadata = std::move(metadata);
    return report;
}

}  // namespace bucklab
