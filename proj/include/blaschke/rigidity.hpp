#pragma once

#include <vector>

#include "blaschke/boundary.hpp"
#include "blaschke/fit.hpp"
#include "blaschke/hypgeo.hpp"
#include "blaschke/maps.hpp"

namespace blaschke {

struct ContactOptions {
    double noise_factor = 1e3;  ///< machine floor = noise_factor * (rounding scale of the gap)
    PowerFitOptions fit;
};

/// Gap magnitudes along a sequence with their per-point machine floors.
struct GapSeries {
    std::vector<double> scale;  ///< |xi - z_n|
    std::vector<double> gap;
    std::vector<double> floor;
    bool via_identity = false;  ///< gap from the shifted-numerator identity, not from f - b
};

/// |f(z_n) - b(z_n)|. For f = g o b with g rational the gap is evaluated as
/// N(b(z))/q(b(z)) with N = p - w q expanded about b(xi), which keeps full
/// relative accuracy as b(z_n) approaches b(xi).
GapSeries contact_gaps(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq,
                       const ContactOptions& opts = {});
ContactFit contact_fit(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq,
                       const ContactOptions& opts = {});

/// |ratio - 1| for ratio = |f'| / |b'| * (1 - |b|^2) / (1 - |f|^2).
GapSeries distortion_gaps(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq,
                          const ContactOptions& opts = {});
ContactFit distortion_condition_fit(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq,
                                    const ContactOptions& opts = {});
/// Largest |ratio - 1| along the sequence.
double max_distortion_deviation(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq);

/// Order strictly above k: exponent > k + 0.1, or infinite.
bool order_above(const ContactFit& fit, double k);

struct PreimageContact {
    BoundaryPoint xi{1.0};
    ContactFit fit;
};

struct ChelstReport {
    BoundaryPoint sigma{1.0};
    std::vector<PreimageContact> preimages;
    int principal = -1;  ///< preimage with order above 3, if any
    bool hypothesis_holds = false;  ///< order above 3 at one preimage and above 1 at the others
};

/// Radial contact fits at every solution of b(xi) = sigma.
ChelstReport chelst_report(const MapExpr& f, const BlaschkeProduct& b, BoundaryPoint sigma,
                           const DecaySchedule& schedule, const ContactOptions& opts = {});

inline ComparisonReport lemma31_probe(const MapExpr& f, const MapExpr& g, const NontangentialSequence& seq) {
    return sequence_comparison(f, g, seq);
}

/// g(w) = (1 + 3w^2) / (3 + w^2), with g(w) - w = (1 - w)^3 / (3 + w^2).
MapExpr sharpness_outer();
/// 40 points from t = 0.5 down to t = 1e-9.
DecaySchedule sharpness_schedule();

struct SharpnessReport {
    ContactFit contact;
    ContactFit distortion;
    double alpha = 0;               ///< dilation of b at 1
    double expected_constant = 0;   ///< alpha^3 / 4
    bool exponent_ok = false;       ///< 3 +- 0.05
    bool constant_ok = false;       ///< relative 1e-2
    bool distortion_ok = false;     ///< 2 +- 0.1
    bool passed() const { return exponent_ok && constant_ok && distortion_ok; }
};

/// Contact and distortion fits of (g o b, b) along the radius at 1. Requires b(1) = 1.
SharpnessReport sharpness_report(const BlaschkeProduct& b, const DecaySchedule& schedule = sharpness_schedule(),
                                 const ContactOptions& opts = {});

}  // namespace blaschke
