#include "blaschke/hypgeo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

std::string fmt_point(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

}  // namespace

DiskPoint::DiskPoint(cplx v) : v_(v) {
    if (!(std::norm(v) < 1.0)) throw DomainError("point " + fmt_point(v) + " is not inside the unit disk");
}

BoundaryPoint::BoundaryPoint(cplx v) {
    const double r = std::abs(v);
    if (!(std::abs(r - 1.0) <= kUnitModulusTol))
        throw DomainError("point " + fmt_point(v) + " is not on the unit circle");
    v_ = v / r;
}

double pseudo_distance(DiskPoint z, DiskPoint w) {
    const cplx a = z.value(), b = w.value();
    return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b);
}

double hyp_distance(DiskPoint z, DiskPoint w) { return 2.0 * std::atanh(pseudo_distance(z, w)); }

double Curve::max_gap() const {
    double g = 0.0;
    for (std::size_t k = 1; k < samples.size(); ++k) {
        const cplx a = samples[k - 1], b = samples[k];
        g = std::max(g, std::abs((a - b) / (1.0 - std::conj(a) * b)));
    }
    return g;
}

Curve geodesic(DiskPoint z, DiskPoint w, int n_samples) {
    if (n_samples < 2) throw DomainError("geodesic needs at least two samples");
    const cplx a = z.value();
    const cplx u = (w.value() - a) / (1.0 - std::conj(a) * w.value());
    if (std::abs(u) == 0.0) throw DomainError("degenerate geodesic: endpoints coincide");
    const double d = 2.0 * std::atanh(std::abs(u));
    const cplx dir = u / std::abs(u);

    Curve c;
    c.kind = CurveKind::SmoothUniform;
    c.parametrization = "geodesic segment, uniform in hyperbolic arclength";
    c.samples.reserve(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double s = static_cast<double>(k) / (n_samples - 1);
        c.samples.push_back(mobius_from_origin(a, std::tanh(0.5 * s * d) * dir));
    }
    c.samples.back() = w.value();
    return c;
}

Curve geodesic_line(BoundaryPoint xi, BoundaryPoint sigma, int n_samples, double reach) {
    if (n_samples < 2) throw DomainError("geodesic line needs at least two samples");
    const cplx x = xi.value(), s = sigma.value();
    if (std::abs(x - s) < 1e-14) throw DomainError("degenerate geodesic line: endpoints coincide");

    cplx p{}, dir = s;
    const cplx sum = x + s;
    if (std::abs(sum) > 1e-14) {
        const cplx mid = sum / std::abs(sum);
        const double half = std::acos(std::clamp((std::conj(x) * mid).real(), -1.0, 1.0));
        p = mid * std::tan(0.25 * std::numbers::pi - 0.5 * half);
        dir = cplx(0, 1) * mid;
        if (std::abs(mobius_from_origin(p, -dir) - x) > std::abs(mobius_from_origin(p, dir) - x)) dir = -dir;
    }

    Curve c;
    c.kind = CurveKind::SmoothUniform;
    c.parametrization = "geodesic line, uniform in hyperbolic arclength on [-reach, reach]";
    for (int k = 0; k < n_samples; ++k) {
        const double t = -reach + 2.0 * reach * k / (n_samples - 1);
        c.samples.push_back(mobius_from_origin(p, std::tanh(0.5 * t) * dir));
    }
    return c;
}

Curve polyline(std::span<const cplx> vertices, double mesh_bound) {
    Curve c;
    c.kind = CurveKind::Polyline;
    c.parametrization = "polyline";
    c.mesh_bound = mesh_bound;
    if (vertices.empty()) return c;
    c.samples.push_back(DiskPoint(vertices[0]).value());
    for (std::size_t k = 1; k < vertices.size(); ++k) {
        const cplx a = vertices[k - 1], b = DiskPoint(vertices[k]).value();
        auto piece_gap = [&](int pieces) {
            double g = 0.0;
            for (int j = 1; j <= pieces; ++j) {
                const cplx u = a + (b - a) * (static_cast<double>(j - 1) / pieces);
                const cplx v = a + (b - a) * (static_cast<double>(j) / pieces);
                g = std::max(g, std::abs(u - v) / std::abs(1.0 - std::conj(u) * v));
            }
            return g;
        };
        int pieces = std::max(1, static_cast<int>(std::ceil(std::abs(a - b) / std::abs(1.0 - std::conj(a) * b) / mesh_bound)));
        while (piece_gap(pieces) > mesh_bound) pieces *= 2;
        for (int j = 1; j <= pieces; ++j) c.samples.push_back(a + (b - a) * (static_cast<double>(j) / pieces));
    }
    return c;
}

namespace {

struct SimpsonState {
    bool converged = true;
};

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth, SimpsonState& st) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0) {
        st.converged = false;
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, st) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, st);
}

double segment_length(cplx a, cplx b, double tol, SimpsonState& st) {
    const double len = std::abs(b - a);
    if (len == 0.0) return 0.0;
    auto f = [&](double s) { return 2.0 * len / (1.0 - std::norm(a + s * (b - a))); };
    const double fa = f(0.0), fm = f(0.5), fb = f(1.0);
    return adaptive_simpson(f, 0.0, 1.0, fa, fm, fb, (fa + 4.0 * fm + fb) / 6.0, tol, 40, st);
}

double polyline_length(const std::vector<cplx>& pts, std::size_t stride, double tol, SimpsonState& st) {
    double total = 0.0;
    const std::size_t nseg = (pts.size() - 1) / stride;
    const double seg_tol = tol / std::max<std::size_t>(nseg, 1);
    for (std::size_t k = stride; k < pts.size(); k += stride) total += segment_length(pts[k - stride], pts[k], seg_tol, st);
    return total;
}

double chord_length(const std::vector<cplx>& pts, std::size_t stride, std::size_t nseg) {
    double total = 0.0;
    for (std::size_t k = stride; k <= nseg; k += stride) total += 2.0 * std::atanh(std::abs(pts[k] - pts[k - stride]) / std::abs(1.0 - std::conj(pts[k - stride]) * pts[k]));
    return total;
}

}  // namespace

LengthEstimate hyperbolic_length(const Curve& c) {
    LengthEstimate out;
    if (c.samples.size() < 2) return out;
    for (cplx z : c.samples) DiskPoint{z};
    if (c.max_gap() > c.mesh_bound)
        throw DomainError("curve violates its mesh bound: gap " + std::to_string(c.max_gap()));

    constexpr double kTarget = 1e-10;
    const std::size_t nseg = c.samples.size() - 1;
    if (c.kind == CurveKind::Polyline) {
        SimpsonState st;
        out.value = polyline_length(c.samples, 1, kTarget, st);
        out.error = kTarget;
        out.converged = st.converged;
        return out;
    }
    // Smooth curves: sum of geodesic chords, exact on geodesics, with a
    // Richardson step against the every-other-sample chord sum.
    const double fine = chord_length(c.samples, 1, nseg);
    const std::size_t even = nseg - nseg % 2;
    double corr = 0.0;
    if (even >= 2) corr = (chord_length(c.samples, 1, even) - chord_length(c.samples, 2, even)) / 3.0;
    out.value = fine + corr;
    out.error = std::abs(corr);
    out.converged = out.error <= std::max(kTarget, 1e-8 * out.value);
    return out;
}

double dist_to_axis_geodesic(DiskPoint z, BoundaryPoint xi) {
    const cplx w = z.value() * std::conj(xi.value());
    return std::asinh(2.0 * std::abs(w.imag()) / (1.0 - std::norm(w)));
}

Region Region::stolz(BoundaryPoint xi, double m) {
    if (!(m > 0)) throw DomainError("Stolz width must be positive");
    return Region{RegionKind::Stolz, xi, m, 0.0};
}

Region Region::horocycle(BoundaryPoint xi, double M) {
    if (!(M > 0)) throw DomainError("horocycle parameter must be positive");
    return Region{RegionKind::Horocycle, xi, 0.0, M};
}

Region Region::end(BoundaryPoint xi, double m, double M) {
    if (!(m > 0) || !(M > 0)) throw DomainError("end parameters must be positive");
    return Region{RegionKind::End, xi, m, M};
}

Membership region_membership(DiskPoint z, const Region& r) {
    auto stolz_margin = [&] { return r.m - dist_to_axis_geodesic(z, r.xi); };
    auto horo_margin = [&] {
        return (1.0 - std::norm(z.value())) - r.M * std::norm(r.xi.value() - z.value());
    };
    double margin = 0.0;
    switch (r.kind) {
        case RegionKind::Stolz: margin = stolz_margin(); break;
        case RegionKind::Horocycle: margin = horo_margin(); break;
        case RegionKind::End: margin = std::min(stolz_margin(), horo_margin()); break;
    }
    return {margin > 0.0, margin};
}

Membership region_membership_any(cplx z, const Region& r) {
    if (!(std::norm(z) < 1.0)) return {false, -std::numeric_limits<double>::infinity()};
    return region_membership(DiskPoint(z), r);
}

double sector_half_angle(double m) {
    if (!(m > 0)) throw DomainError("Stolz width must be positive");
    return std::asin(std::tanh(m));
}

DiskPoint sector_transfer(DiskPoint z, double m) {
    if (!region_membership(z, Region::stolz(BoundaryPoint(cplx(1.0)), m)).inside)
        throw DomainError("sector_transfer: point " + fmt_point(z.value()) + " is not in S(m, 1)");
    const double beta = sector_half_angle(m);
    const cplx w = (1.0 - z.value()) / (1.0 + z.value());
    const cplx rho = std::pow(w, std::numbers::pi / (2.0 * beta));
    return DiskPoint((1.0 - rho) / (1.0 + rho));
}

DecaySchedule DecaySchedule::spanning(double t0, double t_last, int count) {
    if (!(t0 > 0) || !(t_last > 0) || count < 2) throw DomainError("invalid decay schedule");
    return DecaySchedule{t0, std::pow(t_last / t0, 1.0 / (count - 1)), count};
}

std::vector<double> DecaySchedule::values() const {
    std::vector<double> v(count);
    for (int n = 0; n < count; ++n) v[n] = t0 * std::pow(ratio, n);
    return v;
}

double NontangentialSequence::complement(std::size_t n) const {
    const double tn = t[n];
    return tn * (2.0 * std::cos(angle) - tn);
}

NontangentialSequence nontangential_sequence(BoundaryPoint xi, double m, double angle, const DecaySchedule& schedule) {
    if (!(schedule.ratio > 0 && schedule.ratio < 1) || !(schedule.t0 > 0))
        throw DomainError("decay schedule must be geometric with ratio in (0, 1)");
    NontangentialSequence seq;
    seq.xi = xi;
    seq.m = m;
    seq.angle = angle;
    const Region stolz = Region::stolz(xi, m);
    const cplx dir = std::polar(1.0, angle);
    for (double tn : schedule.values()) {
        const cplx zn = xi.value() * (1.0 - tn * dir);
        if (!region_membership_any(zn, stolz).inside)
            throw DomainError("ray exits the Stolz region at index " + std::to_string(seq.z.size()));
        seq.t.push_back(tn);
        seq.z.push_back(zn);
    }
    return seq;
}

}  // namespace blaschke
