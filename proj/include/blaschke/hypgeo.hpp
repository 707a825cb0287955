#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "blaschke/polynomial.hpp"

namespace blaschke {

/// A point of the open unit disk.
class DiskPoint {
public:
    /// Throws DomainError unless |v| < 1.
    DiskPoint(cplx v);  // NOLINT: implicit on purpose, mirrors the math
    DiskPoint(double x) : DiskPoint(cplx(x)) {}  // NOLINT
    cplx value() const { return v_; }
    operator cplx() const { return v_; }  // NOLINT

private:
    cplx v_;
};

/// A point of the unit circle. Inputs within kUnitModulusTol of modulus 1
/// are accepted and renormalized to modulus exactly 1.
class BoundaryPoint {
public:
    static constexpr double kUnitModulusTol = 1e-12;
    BoundaryPoint(cplx v);  // NOLINT
    BoundaryPoint(double x) : BoundaryPoint(cplx(x)) {}  // NOLINT
    cplx value() const { return v_; }
    operator cplx() const { return v_; }  // NOLINT

private:
    cplx v_;
};

/// |(z - w) / (1 - conj(z) w)|.
double pseudo_distance(DiskPoint z, DiskPoint w);
/// Poincare distance, 2 artanh of the pseudo-hyperbolic distance.
double hyp_distance(DiskPoint z, DiskPoint w);

/// Disk automorphism u -> (u + a) / (1 + conj(a) u), sending 0 to a.
inline cplx mobius_from_origin(cplx a, cplx u) { return (u + a) / (1.0 + std::conj(a) * u); }

enum class CurveKind {
    Polyline,       ///< the curve is the polyline through its samples
    SmoothUniform,  ///< samples of a smooth curve at uniform parameter steps
};

struct Curve {
    std::vector<cplx> samples;
    CurveKind kind = CurveKind::Polyline;
    std::string parametrization;
    double mesh_bound = 0.05;  ///< max pseudo-hyperbolic gap between consecutive samples

    double max_gap() const;
};

/// Geodesic segment [z, w]_h sampled at n >= 2 points uniformly in hyperbolic arclength.
Curve geodesic(DiskPoint z, DiskPoint w, int n_samples);
/// Geodesic line (xi, sigma)_h; n interior samples with hyperbolic parameter in [-reach, reach].
Curve geodesic_line(BoundaryPoint xi, BoundaryPoint sigma, int n_samples, double reach = 12.0);
/// Polyline through the vertices, each edge subdivided so the mesh bound holds.
Curve polyline(std::span<const cplx> vertices, double mesh_bound = 0.05);

struct LengthEstimate {
    double value = 0;
    double error = 0;
    bool converged = true;
};

/// Hyperbolic length, integral of 2|dt| / (1 - |t|^2), normalized so that
/// geodesic segments have length hyp_distance. Polylines are integrated
/// piece by piece with adaptive Simpson. SmoothUniform curves use the sum of
/// geodesic chords with a Richardson correction from every other sample.
LengthEstimate hyperbolic_length(const Curve& c);

/// Distance from z to the geodesic line (xi, -xi)_h.
double dist_to_axis_geodesic(DiskPoint z, BoundaryPoint xi);

enum class RegionKind { Stolz, Horocycle, End };

struct Region {
    RegionKind kind;
    BoundaryPoint xi;
    double m = 0;  ///< hyperbolic half-width (Stolz, End)
    double M = 0;  ///< horocycle parameter, radius 1/M (Horocycle, End)

    static Region stolz(BoundaryPoint xi, double m);
    static Region horocycle(BoundaryPoint xi, double M);
    static Region end(BoundaryPoint xi, double m, double M);
};

struct Membership {
    bool inside;
    double margin;  ///< positive inside; see region_membership
};

/// Stolz margin m - dist_to_axis_geodesic, horocycle margin (1-|z|^2) - M|xi-z|^2,
/// end margin the min of both.
Membership region_membership(DiskPoint z, const Region& r);
/// Same, but returns {false, -inf} for points outside the open disk.
Membership region_membership_any(cplx z, const Region& r);

/// Half opening angle beta of the sector (1-z)/(1+z) maps S(m, 1) onto;
/// sin(beta) = tanh(m).
double sector_half_angle(double m);
/// psi = C o rho_beta o C with C(z) = (1-z)/(1+z), rho_beta(w) = w^(pi/(2 beta)).
/// Maps S(m, 1) onto the disk. Throws DomainError if z is not in S(m, 1).
DiskPoint sector_transfer(DiskPoint z, double m);

/// t_n = t0 * ratio^n, n = 0..count-1.
struct DecaySchedule {
    double t0 = 0.5;
    double ratio = 0.5;
    int count = 40;

    /// Geometric schedule through t0 and t_last with the given number of points.
    static DecaySchedule spanning(double t0, double t_last, int count);
    std::vector<double> values() const;
};

/// z_n = xi (1 - t_n e^{i angle}) inside S(m, xi).
struct NontangentialSequence {
    BoundaryPoint xi{1.0};
    double m = 1.0;
    double angle = 0.0;
    std::vector<double> t;   ///< |xi - z_n|
    std::vector<cplx> z;

    std::size_t size() const { return z.size(); }
    /// 1 - |z_n|^2 computed from t_n without cancellation.
    double complement(std::size_t n) const;
};

/// Throws DomainError naming the first index whose point leaves S(m, xi).
NontangentialSequence nontangential_sequence(BoundaryPoint xi, double m, double angle,
                                             const DecaySchedule& schedule = {});

}  // namespace blaschke
