#include "blaschke/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "blaschke/error.hpp"
#include "blaschke/rigidity.hpp"

namespace blaschke {

namespace {

struct Tail {
    std::vector<double> t;
    std::vector<cplx> v;
};

// Last `count` entries, most recent at the back.
template <typename F>
Tail collect_tail(const NontangentialSequence& seq, int count, double t_min, F&& value) {
    Tail out;
    for (std::size_t n = seq.size(); n-- > 0 && static_cast<int>(out.t.size()) < count;) {
        if (seq.t[n] < t_min) continue;
        out.t.push_back(seq.t[n]);
        out.v.push_back(value(n));
    }
    std::reverse(out.t.begin(), out.t.end());
    std::reverse(out.v.begin(), out.v.end());
    return out;
}

double dilation_quotient(const Jet& j, double comp_z, cplx z) {
    return (j.comp / (1.0 + std::abs(j.value))) / (comp_z / (1.0 + std::abs(z)));
}

}  // namespace

double dilation_closed_form(const BlaschkeProduct& b, BoundaryPoint xi) {
    double s = 0.0;
    for (cplx a : b.zeros()) s += (1.0 - std::norm(a)) / std::norm(xi.value() - a);
    return s;
}

double dilation_limit(const MapExpr& e, const NontangentialSequence& seq, const ExtrapolationOptions& opts) {
    if (static_cast<int>(seq.size()) < opts.tail) throw SolverError("dilation_limit: sequence shorter than the fit tail");
    std::vector<double> q(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const double c = seq.complement(n);
        q[n] = dilation_quotient(e.jet(seq.z[n], c), c, seq.z[n]);
        if (!std::isfinite(q[n])) throw SolverError("dilation quotient diverges: non-finite value at index " + std::to_string(n));
    }
    const Tail tail = collect_tail(seq, opts.tail, 0.0, [&](std::size_t n) { return cplx(q[n]); });
    std::vector<double> lt, lq;
    for (std::size_t k = 0; k < tail.t.size(); ++k) {
        lt.push_back(std::log(tail.t[k]));
        lq.push_back(std::log(tail.v[k].real()));
    }
    // A finite limit leaves log q flat in log t; growth like t^-s means divergence.
    const LinearFit growth = linear_fit(lt, lq);
    if (growth.slope < -0.2)
        throw SolverError("dilation quotient diverges: grows like t^" + std::to_string(growth.slope) + " on the tail");
    const double alpha = extrapolate_to_zero(tail.t, tail.v).value.real();
    if (!(alpha > 0)) throw SolverError("dilation limit is not positive");
    return alpha;
}

BoundaryData angular_data(const MapExpr& e, BoundaryPoint xi, const NontangentialSequence& seq,
                          const ExtrapolationOptions& opts) {
    if (std::abs(seq.xi.value() - xi.value()) > 1e-12) throw DomainError("angular_data: sequence is not anchored at xi");
    BoundaryData d;
    d.xi = xi;
    d.alpha = dilation_limit(e, seq, opts);

    std::vector<Jet> jets(seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) jets[n] = e.jet(seq.z[n], seq.complement(n));

    const Tail vals = collect_tail(seq, opts.tail, 0.0, [&](std::size_t n) { return jets[n].value; });
    const ComplexExtrapolation v = extrapolate_to_zero(vals.t, vals.v);
    if (std::abs(std::abs(v.value) - 1.0) > 1e-9)
        throw SolverError("angular_data: extrapolated boundary value is not unimodular");
    d.boundary_value = BoundaryPoint(v.value / std::abs(v.value));

    const Tail ders = collect_tail(seq, opts.tail, 0.0, [&](std::size_t n) { return jets[n].deriv; });
    const ComplexExtrapolation dv = extrapolate_to_zero(ders.t, ders.v);
    d.angular_derivative = dv.value;

    // Difference quotients lose digits like eps / t, so they are only fitted on t >= 1e-8.
    const cplx sigma = d.boundary_value.value();
    const Tail dq = collect_tail(seq, opts.tail, 1e-8,
                                 [&](std::size_t n) { return (sigma - jets[n].value) / (xi.value() - seq.z[n]); });
    if (dq.t.size() < 3) throw SolverError("angular_data: too few sequence points for the difference quotient");
    const ComplexExtrapolation q = extrapolate_to_zero(dq.t, dq.v);
    d.quotient_gap = std::abs(q.value - d.angular_derivative);
    d.fit_residual = std::max({v.residual, dv.residual, q.residual});
    if (d.quotient_gap > 1e-6 * std::max(1.0, std::abs(d.angular_derivative)))
        throw SolverError("angular_data: difference quotient and derivative limits disagree by " +
                          std::to_string(d.quotient_gap));
    d.identity_gap = std::abs(d.angular_derivative - d.alpha * sigma * std::conj(xi.value()));
    if (d.identity_gap > 1e-6 * std::max(1.0, d.alpha))
        throw SolverError("angular_data: angular derivative inconsistent with alpha g(xi) conj(xi)");
    return d;
}

bool ComparisonReport::consistent() const {
    if (order_at_least_one && !values_agree) return false;
    if (order_above_one && !derivatives_agree) return false;
    return true;
}

ComparisonReport sequence_comparison(const MapExpr& f, const MapExpr& g, const NontangentialSequence& seq) {
    ComparisonReport r;
    r.g_data = angular_data(g, seq.xi, seq);
    r.contact = contact_fit(f, g, seq);
    r.order_at_least_one = r.contact.infinite() || r.contact.exponent >= 0.9;
    r.order_above_one = r.contact.infinite() || r.contact.exponent > 1.1;
    try {
        r.f_data = angular_data(f, seq.xi, seq);
    } catch (const SolverError& e) {
        r.f_error = e.what();
    }
    if (r.f_data) {
        r.value_gap = std::abs(r.f_data->boundary_value.value() - r.g_data->boundary_value.value());
        r.derivative_gap = std::abs(r.f_data->angular_derivative - r.g_data->angular_derivative);
        r.values_agree = r.value_gap <= 1e-6;
        r.derivatives_agree = r.derivative_gap <= 1e-6;
    }
    return r;
}

}  // namespace blaschke
