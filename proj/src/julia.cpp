#include "blaschke/julia.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "blaschke/boundary.hpp"
#include "blaschke/error.hpp"
#include "blaschke/fit.hpp"
#include "blaschke/parallel.hpp"

namespace blaschke {

namespace {

constexpr int kTail = 10;

BoundaryPoint unimodular_value(const MapExpr& e, BoundaryPoint xi, const char* name) {
    const cplx w = e(xi.value());
    if (std::abs(std::abs(w) - 1.0) > 1e-9)
        throw DomainError(std::string("julia: ") + name + " has no unimodular value at xi (|value| = " +
                          std::to_string(std::abs(w)) + ")");
    return BoundaryPoint(w / std::abs(w));
}

// conj(sigma) e(xi z), skipping trivial rotations.
MapExpr normalize(const MapExpr& e, BoundaryPoint xi, BoundaryPoint sigma) {
    MapExpr out = e;
    if (xi.value() != cplx(1.0)) out = MapExpr::compose(out, MapExpr::rotation(std::arg(xi.value())));
    if (sigma.value() != cplx(1.0)) out = MapExpr::compose(MapExpr::rotation(-std::arg(sigma.value())), out);
    return out;
}

// (1 - |w|) from an accurate complement.
double one_minus_modulus(const Jet& j) { return j.comp / (1.0 + std::abs(j.value)); }

double sequence_limit(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq) {
    if (static_cast<int>(seq.size()) < kTail) throw SolverError("julia_coefficient: sequence shorter than the fit tail");
    std::vector<double> t, lt, lq;
    std::vector<cplx> q;
    for (std::size_t n = seq.size() - kTail; n < seq.size(); ++n) {
        const double c = seq.complement(n);
        const double num = one_minus_modulus(f.jet(seq.z[n], c));
        const double den = one_minus_modulus(b.jet(seq.z[n], c));
        const double r = num / den;
        if (!std::isfinite(r) || !(r > 0))
            throw SolverError("julia quotient diverges: non-positive or non-finite value at index " + std::to_string(n));
        t.push_back(seq.t[n]);
        q.push_back(r);
        lt.push_back(std::log(seq.t[n]));
        lq.push_back(std::log(r));
    }
    const LinearFit growth = linear_fit(lt, lq);
    if (std::abs(growth.slope) > 0.2)
        throw SolverError("julia quotient diverges: behaves like t^" + std::to_string(growth.slope) + " on the tail");
    return extrapolate_to_zero(t, q).value.real();
}

double derivative_ratio(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq) {
    const BoundaryData df = angular_data(f, seq.xi, seq);
    const BoundaryData db = angular_data(b, seq.xi, seq);
    return std::abs(df.angular_derivative) / std::abs(db.angular_derivative);
}

double certified_coefficient(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq, double* ratio_out) {
    const double a_seq = sequence_limit(f, b, seq);
    const double a_ratio = derivative_ratio(f, b, seq);
    if (std::abs(a_seq - a_ratio) > 1e-6 * std::max(1.0, a_ratio))
        throw SolverError("julia coefficient: sequence limit " + std::to_string(a_seq) + " disagrees with derivative ratio " +
                          std::to_string(a_ratio));
    if (ratio_out) *ratio_out = a_ratio;
    return a_seq;
}

struct Horo {
    double f, b;  // |1-w|^2 / (1-|w|^2)
};

Horo horocycle_levels(const MapExpr& f, const MapExpr& b, cplx v) {
    const Jet jf = f.jet(v), jb = b.jet(v);
    const double df = std::abs(1.0 - jf.value), db = std::abs(1.0 - jb.value);
    if (df < kJuliaSingularTol || db < kJuliaSingularTol) throw DomainError("julia: singular point, f(v) or b(v) equals 1");
    if (!(jf.comp > 0) || !(jb.comp > 0)) throw DomainError("julia: image on the circle");
    return {df * df / jf.comp, db * db / jb.comp};
}

}  // namespace

JuliaInstance julia_instance(const MapExpr& f, const MapExpr& b, double A) {
    if (!(A > 0) || !std::isfinite(A)) throw DomainError("julia_instance: A must be a positive real");
    JuliaInstance inst;
    inst.f = f;
    inst.b = b;
    inst.A = inst.A_sequence = A;
    return inst;
}

JuliaInstance julia_instance(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq) {
    JuliaInstance inst;
    inst.xi = seq.xi;
    inst.sigma_f = unimodular_value(f, seq.xi, "f");
    inst.sigma_b = unimodular_value(b, seq.xi, "b");
    inst.f = normalize(f, inst.xi, inst.sigma_f);
    inst.b = normalize(b, inst.xi, inst.sigma_b);
    NontangentialSequence at_one = seq;
    at_one.xi = BoundaryPoint(1.0);
    for (auto& z : at_one.z) z = inst.to_normalized(z);
    inst.A_sequence = certified_coefficient(inst.f, inst.b, at_one, &inst.A);
    return inst;
}

double julia_coefficient(const MapExpr& f, const MapExpr& b, const NontangentialSequence& seq) {
    return certified_coefficient(f, b, seq, nullptr);
}

double julia_margin(const JuliaInstance& inst, DiskPoint v) {
    const Horo h = horocycle_levels(inst.f, inst.b, v);
    return inst.A * h.b - h.f;
}

double herglotz_deficit(const JuliaInstance& inst, DiskPoint v) {
    const Horo h = horocycle_levels(inst.f, inst.b, v);
    return 1.0 / h.f - 1.0 / (inst.A * h.b);
}

double two_point_margin(const MapExpr& f, const MapExpr& b, DiskPoint z, DiskPoint v, const ProbeSet& probes) {
    if (!probes.certified) throw DomainError("two_point_margin: probe set not certified");
    if (!probes.v.g.structurally_equal(b)) throw InvalidMapError("two_point_margin: probe set was certified for another map");
    if (!probes.contains(z) || !probes.contains(v)) throw DomainError("two_point_margin: point outside the probe set");
    return pseudo_distance(b(z), b(v)) - pseudo_distance(f(z), f(v));
}

ScanReport region_scan(const MapExpr& f, const MapExpr& b, double A, const JuliaScanOptions& opts) {
    if (opts.resolution < 1) throw DomainError("region_scan: resolution must be positive");
    const JuliaInstance inst = julia_instance(f, b, A);
    const int n = opts.resolution;
    const double h = 2.0 / n;
    std::vector<cplx> cells;
    cells.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cplx z(-1.0 + (j + 0.5) * h, 1.0 - (i + 0.5) * h);
            if (std::norm(z) < 1.0) cells.push_back(z);
        }
    ScanReport r = point_scan(inst, cells, opts.tolerance, opts.threads);
    r.details["resolution"] = n;
    r.details["A"] = A;
    r.details["cells_in_disk"] = cells.size();
    return r;
}

ScanReport point_scan(const JuliaInstance& inst, const std::vector<cplx>& points, double tolerance, unsigned threads) {
    std::vector<double> margin(points.size());
    std::vector<char> singular(points.size(), 0);
    parallel_for(points.size(), threads, [&](std::size_t k) {
        try {
            margin[k] = julia_margin(inst, DiskPoint(inst.to_normalized(points[k])));
        } catch (const DomainError&) {
            singular[k] = 1;
        }
    });
    ScanReport r;
    r.kind = "julia";
    r.tolerance = tolerance;
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (singular[k])
            ++r.excluded;
        else
            r.add(points[k], margin[k]);
    }
    r.details["A"] = inst.A;
    r.details["A_sequence"] = inst.A_sequence;
    return r;
}

}  // namespace blaschke
