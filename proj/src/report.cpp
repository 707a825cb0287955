#include "blaschke/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <ostream>

namespace blaschke {

void ScanReport::add(cplx z, double margin, int group) { points.push_back({z, margin, margin >= -tolerance, group}); }

std::size_t ScanReport::violations() const {
    return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](const ScanPoint& p) { return !p.pass; }));
}

double ScanReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : points) m = std::min(m, p.margin);
    return m;
}

nlohmann::json ScanReport::summary() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["tolerance"] = tolerance;
    j["points"] = points.size();
    j["violations"] = violations();
    j["excluded"] = excluded;
    j["min_margin"] = points.empty() ? nlohmann::json(nullptr) : nlohmann::json(min_margin());
    j["all_pass"] = all_pass();
    j["details"] = details;
    return j;
}

void ScanReport::write_csv(std::ostream& os) const {
    os << "re,im,margin,pass,group\n";
    char buf[128];
    for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%d\n", p.z.real(), p.z.imag(), p.margin, p.pass ? 1 : 0, p.group);
        os << buf;
    }
}

}  // namespace blaschke
