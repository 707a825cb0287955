#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "blaschke/polynomial.hpp"

namespace blaschke {

struct ScanPoint {
    cplx z;
    double margin;
    bool pass;
    int group = 0;  ///< competitor or region index the point belongs to
};

/// Per-point margins of a scan plus summary statistics.
struct ScanReport {
    std::string kind;
    double tolerance = 0;  ///< a point passes when margin >= -tolerance
    std::vector<ScanPoint> points;
    std::size_t excluded = 0;  ///< points skipped as singular
    nlohmann::json details = nlohmann::json::object();

    void add(cplx z, double margin, int group = 0);
    std::size_t violations() const;
    double min_margin() const;
    bool all_pass() const { return violations() == 0; }

    /// Summary object; per-point data are left to the CSV export.
    nlohmann::json summary() const;
    /// re,im,margin,pass[,group] rows in insertion order.
    void write_csv(std::ostream& os) const;
};

}  // namespace blaschke
