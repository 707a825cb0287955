#pragma once

#include <vector>

#include "blaschke/hypgeo.hpp"
#include "blaschke/maps.hpp"
#include "blaschke/report.hpp"
#include "blaschke/stolz.hpp"

namespace blaschke {

/// f, b rotated so that the contact point and both boundary values sit at 1:
/// f here is conj(sigma_f) f(xi z), likewise b. Points of the original disk map
/// to the normalized picture by z -> conj(xi) z.
struct JuliaInstance {
    MapExpr f = MapExpr::identity();
    MapExpr b = MapExpr::identity();
    BoundaryPoint xi{1.0}, sigma_f{1.0}, sigma_b{1.0};
    double A = 1;           ///< angular-derivative ratio
    double A_sequence = 1;  ///< limit of (1 - |f(z_n)|) / (1 - |b(z_n)|)

    cplx to_normalized(cplx z) const { return std::conj(xi.value()) * z; }
};

/// Maps already normalized at 1 with a given coefficient.
JuliaInstance julia_instance(const MapExpr& f, const MapExpr& b, double A);

/// Normalizes at seq.xi and computes A both ways. SolverError when they differ
/// by more than 1e-6 (relative to max(1, A)) or either limit diverges;
/// DomainError when f or b has no unimodular value at xi.
JuliaInstance julia_instance(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq);

/// Limit of (1 - |f(z_n)|) / (1 - |b(z_n)|), certified against |f'(xi)| / |b'(xi)|.
double julia_coefficient(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq);

/// Points where |1 - f(v)| or |1 - b(v)| is below this are singular.
inline constexpr double kJuliaSingularTol = 1e-13;

/// A |1-b|^2 / (1-|b|^2) - |1-f|^2 / (1-|f|^2) at a normalized point v.
/// DomainError at singular points.
double julia_margin(const JuliaInstance& inst, DiskPoint v);

/// Re[(1+f)/(1-f)] - A^{-1} Re[(1+b)/(1-b)]. Same sign as julia_margin.
double herglotz_deficit(const JuliaInstance& inst, DiskPoint v);

/// Points known to satisfy the hypotheses of the two-point inequality: the V
/// of a construction, trusted when every check of that construction passed.
struct ProbeSet {
    VRegion v;
    bool certified = false;

    static ProbeSet from(const VConstruction& c) { return ProbeSet{c.v, c.passed()}; }
    bool contains(cplx z) const { return v.contains(z); }
};

/// pseudo(b z, b v) - pseudo(f z, f v). DomainError when the probe set is not
/// certified or a point lies outside it; InvalidMapError when b is not the
/// map the probe set was certified for.
double two_point_margin(const MapExpr& f, const MapExpr& b, DiskPoint z, DiskPoint v, const ProbeSet& probes);

struct JuliaScanOptions {
    int resolution = 400;      ///< cells per side of [-1, 1]^2
    double tolerance = 1e-10;
    unsigned threads = 1;
};

/// julia_margin over the centers of a resolution x resolution grid that lie in
/// the disk, in row-major order. Singular points are counted in `excluded`.
ScanReport region_scan(const MapExpr& f, const MapExpr& b, double A, const JuliaScanOptions& opts = {});

/// julia_margin at given original-disk points (for example a V mesh).
ScanReport point_scan(const JuliaInstance& inst, const std::vector<cplx>& points, double tolerance = 1e-10,
                      unsigned threads = 1);

}  // namespace blaschke
