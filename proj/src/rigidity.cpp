#include "blaschke/rigidity.hpp"

#include <cmath>
#include <limits>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_rational_over(const MapExpr& f, const MapExpr& b) {
    return f.kind() == MapExpr::Kind::Compose && f.outer().kind() == MapExpr::Kind::Rational &&
           f.inner().structurally_equal(b);
}

// Drops the vanishing low-order coefficients left by rounding in the shift.
Polynomial clean_low_order(const Polynomial& p, double scale) {
    std::vector<cplx> c = p.coeffs();
    for (auto& x : c) {
        if (std::abs(x) > 1e-12 * scale) break;
        x = 0.0;
    }
    return Polynomial(std::move(c));
}

}  // namespace

GapSeries contact_gaps(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq, const ContactOptions& opts) {
    GapSeries s;
    s.scale = seq.t;
    s.gap.resize(seq.size());
    s.floor.resize(seq.size());
    if (f.structurally_equal(b)) {
        s.via_identity = true;
        return s;  // gaps and floors are all zero
    }
    if (is_rational_over(f, b)) {
        s.via_identity = true;
        const RationalMap& g = *f.outer().as_rational();
        const Polynomial n = g.num() - Polynomial{0.0, 1.0} * g.den();
        const cplx sigma = b.eval(seq.xi.value());
        const Polynomial shifted = clean_low_order(n.taylor_shift(sigma), n.norm1());
        for (std::size_t k = 0; k < seq.size(); ++k) {
            const cplx w = b.eval(seq.z[k]);
            const cplx u = w - sigma;
            const double q = std::abs(g.den()(w));
            s.gap[k] = std::abs(shifted(u)) / q;
            s.floor[k] = opts.noise_factor * kEps * shifted.abs_eval(std::abs(u)) / q;
        }
        return s;
    }
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const cplx fv = f.eval(seq.z[k]), bv = b.eval(seq.z[k]);
        s.gap[k] = std::abs(fv - bv);
        s.floor[k] = opts.noise_factor * kEps * (std::abs(fv) + std::abs(bv));
    }
    return s;
}

ContactFit contact_fit(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq, const ContactOptions& opts) {
    const GapSeries s = contact_gaps(f, b, seq, opts);
    return fit_power_law(s.scale, s.gap, s.floor, opts.fit);
}

GapSeries distortion_gaps(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq, const ContactOptions& opts) {
    GapSeries s;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const double c = seq.complement(k);
        const Jet jf = f.jet(seq.z[k], c), jb = b.jet(seq.z[k], c);
        if (jb.deriv == cplx(0.0) || !(jf.comp > 0) || !(jb.comp > 0)) continue;
        const double ratio = std::abs(jf.deriv) / std::abs(jb.deriv) * (jb.comp / jf.comp);
        s.scale.push_back(seq.t[k]);
        s.gap.push_back(std::abs(ratio - 1.0));
        s.floor.push_back(opts.noise_factor * (4.0 * kEps + jf.comp_rel_err + jb.comp_rel_err));
    }
    return s;
}

ContactFit distortion_condition_fit(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq,
                                    const ContactOptions& opts) {
    const GapSeries s = distortion_gaps(f, b, seq, opts);
    return fit_power_law(s.scale, s.gap, s.floor, opts.fit);
}

double max_distortion_deviation(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq) {
    double worst = 0.0;
    for (double g : distortion_gaps(f, b, seq).gap) worst = std::max(worst, g);
    return worst;
}

bool order_above(const ContactFit& fit, double k) { return fit.infinite() || fit.exponent > k + 0.1; }

ChelstReport chelst_report(const MapExpr& f, const BlaschkeProduct& b, BoundaryPoint sigma,
                           const DecaySchedule& schedule, const ContactOptions& opts) {
    ChelstReport r;
    r.sigma = sigma;
    const MapExpr be = MapExpr::blaschke(b);
    for (const BoundaryPoint& xi : boundary_preimages(b, sigma)) {
        const NontangentialSequence seq = nontangential_sequence(xi, 1.0, 0.0, schedule);
        r.preimages.push_back({xi, contact_fit(f, be, seq, opts)});
    }
    for (std::size_t k = 0; k < r.preimages.size(); ++k) {
        if (order_above(r.preimages[k].fit, 3.0)) {
            r.principal = static_cast<int>(k);
            break;
        }
    }
    r.hypothesis_holds = r.principal >= 0;
    for (std::size_t k = 0; k < r.preimages.size() && r.hypothesis_holds; ++k)
        if (static_cast<int>(k) != r.principal && !order_above(r.preimages[k].fit, 1.0)) r.hypothesis_holds = false;
    return r;
}

MapExpr sharpness_outer() { return MapExpr::rational(RationalMap(Polynomial{1.0, 0.0, 3.0}, Polynomial{3.0, 0.0, 1.0})); }

DecaySchedule sharpness_schedule() { return DecaySchedule::spanning(0.5, 1e-9, 40); }

SharpnessReport sharpness_report(const BlaschkeProduct& b, const DecaySchedule& schedule, const ContactOptions& opts) {
    if (std::abs(b(1.0) - 1.0) > 1e-12) throw DomainError("sharpness_report: b(1) must equal 1");
    const MapExpr be = MapExpr::blaschke(b);
    const MapExpr f = MapExpr::compose(sharpness_outer(), be);
    const NontangentialSequence seq = nontangential_sequence(BoundaryPoint(1.0), 1.0, 0.0, schedule);
    SharpnessReport r;
    r.contact = contact_fit(f, be, seq, opts);
    r.distortion = distortion_condition_fit(f, be, seq, opts);
    r.alpha = dilation_closed_form(b, BoundaryPoint(1.0));
    r.expected_constant = r.alpha * r.alpha * r.alpha / 4.0;
    r.exponent_ok = !r.contact.infinite() && std::abs(r.contact.exponent - 3.0) <= 0.05;
    r.constant_ok = std::abs(r.contact.constant - r.expected_constant) <= 1e-2 * r.expected_constant;
    r.distortion_ok = !r.distortion.infinite() && std::abs(r.distortion.exponent - 2.0) <= 0.1;
    return r;
}

}  // namespace blaschke
