#include "blaschke/maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <variant>

#include "blaschke/error.hpp"

namespace blaschke {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double complement_of(cplx z) {
    const double r = std::abs(z);
    return std::max(0.0, (1.0 - r) * (1.0 + r));
}

void check_finite(cplx v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError(std::string("numeric overflow evaluating ") + what);
}

}  // namespace

// ---------------------------------------------------------------- Blaschke

BlaschkeProduct::BlaschkeProduct(cplx lambda, std::vector<cplx> zeros) : zeros_(std::move(zeros)) {
    const double r = std::abs(lambda);
    if (!(std::abs(r - 1.0) <= 1e-12)) throw InvalidMapError("Blaschke constant must be unimodular");
    if (zeros_.empty()) throw InvalidMapError("a Blaschke product without zeros is a unimodular constant");
    for (cplx a : zeros_)
        if (!(std::norm(a) < 1.0)) throw InvalidMapError("Blaschke zeros must lie inside the disk");
    lambda_ = lambda / r;
}

cplx BlaschkeProduct::operator()(cplx z) const {
    cplx v = lambda_;
    for (cplx a : zeros_) v *= (z - a) / (1.0 - std::conj(a) * z);
    return v;
}

cplx BlaschkeProduct::derivative(cplx z) const { return jet(z, complement_of(z), 0.0).deriv; }

Jet BlaschkeProduct::jet(cplx z, double comp_z, double err_z) const {
    const std::size_t n = zeros_.size();
    std::vector<cplx> phi(n), dphi(n);
    cplx value = lambda_;
    bool guard = false;
    double log_prod = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx a = zeros_[k];
        const cplx den = 1.0 - std::conj(a) * z;
        const double w = 1.0 - std::norm(a);
        phi[k] = (z - a) / den;
        dphi[k] = w / (den * den);
        value *= phi[k];
        if (std::abs(z - a) < kLogDerivGuard) guard = true;
        const double eps_k = std::min(1.0, w * comp_z / std::norm(den));
        log_prod += std::log1p(-eps_k);
    }
    cplx deriv{};
    if (!guard) {
        cplx s{};
        for (std::size_t k = 0; k < n; ++k) s += dphi[k] / phi[k];
        deriv = value * s;
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            cplx term = lambda_ * dphi[k];
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) term *= phi[j];
            deriv += term;
        }
    }
    const double comp = -std::expm1(log_prod);
    return {value, deriv, comp, err_z + 4.0 * static_cast<double>(n + 1) * kEps};
}

Polynomial BlaschkeProduct::numerator() const { return Polynomial::from_roots(zeros_); }

Polynomial BlaschkeProduct::denominator() const { return numerator().reflected(degree()); }

Polynomial BlaschkeProduct::critical_numerator() const {
    const Polynomial p = numerator(), q = denominator();
    return p.derivative() * q - p * q.derivative();
}

// ------------------------------------------------------------ automorphism

DiskAutomorphism::DiskAutomorphism(double theta, cplx a) : theta_(theta), a_(a) {
    if (!(std::norm(a) < 1.0)) throw InvalidMapError("automorphism parameter must lie inside the disk");
}

cplx DiskAutomorphism::operator()(cplx z) const {
    return std::polar(1.0, theta_) * (z - a_) / (1.0 - std::conj(a_) * z);
}

cplx DiskAutomorphism::derivative(cplx z) const {
    const cplx den = 1.0 - std::conj(a_) * z;
    return std::polar(1.0, theta_) * (1.0 - std::norm(a_)) / (den * den);
}

Jet DiskAutomorphism::jet(cplx z, double comp_z, double err_z) const {
    const cplx den = 1.0 - std::conj(a_) * z;
    const double w = 1.0 - std::norm(a_);
    const cplx rot = std::polar(1.0, theta_);
    return {rot * (z - a_) / den, rot * w / (den * den), w * comp_z / std::norm(den), err_z + 4.0 * kEps};
}

DiskAutomorphism DiskAutomorphism::inverse() const {
    // T^{-1}(w) = (e^{-i theta} w + a) / (1 + conj(a) e^{-i theta} w) = e^{i phi}(w - b)/(1 - conj(b) w)
    const cplx b = -std::polar(1.0, theta_) * a_;
    return DiskAutomorphism(-theta_, b);
}

// ---------------------------------------------------------------- rational

double HermitianForm::operator()(cplx w) const {
    const cplx wb = std::conj(w);
    cplx acc{};
    cplx wj = 1.0;
    for (const auto& row : c) {
        cplx inner{};
        for (auto it = row.rbegin(); it != row.rend(); ++it) inner = inner * wb + *it;
        acc += wj * inner;
        wj *= w;
    }
    return acc.real();
}

namespace {

/// Factor |q|^2 - |p|^2 = (1 - w conj(w)) K(w, conj(w)) if the remainders vanish.
std::optional<HermitianForm> inner_factor(const Polynomial& p, const Polynomial& q) {
    const int d = std::max(p.degree(), q.degree());
    std::vector<std::vector<cplx>> h(d + 1, std::vector<cplx>(d + 1));
    double scale = 0.0;
    for (int j = 0; j <= d; ++j)
        for (int k = 0; k <= d; ++k) {
            h[j][k] = q.coeff(j) * std::conj(q.coeff(k)) - p.coeff(j) * std::conj(p.coeff(k));
            scale += std::abs(h[j][k]);
        }
    HermitianForm kf;
    kf.c.assign(d + 1, std::vector<cplx>(d + 1));
    for (int diag = -d; diag <= d; ++diag) {
        // Entries (k + diag, k) along this diagonal as a polynomial in s = w conj(w).
        std::vector<cplx> a;
        const int k0 = std::max(0, -diag);
        for (int k = k0; k + diag <= d && k <= d; ++k) a.push_back(h[k + diag][k]);
        cplx at_one{};
        for (cplx v : a) at_one += v;
        if (std::abs(at_one) > 1e-12 * std::max(scale, 1.0)) return std::nullopt;
        for (std::size_t i = 0; i + 1 < a.size(); ++i) {
            cplx tail{};
            for (std::size_t k = i + 1; k < a.size(); ++k) tail += a[k];
            const int k = k0 + static_cast<int>(i);
            kf.c[k + diag][k] = -tail;
        }
    }
    return kf;
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw InvalidMapError("rational map with zero denominator");
    for (cplx r : polynomial_roots(den_))
        if (!(std::abs(r) > 1.0 + 1e-9)) throw InvalidMapError("rational map has a pole in the closed disk");
    constexpr int kSamples = 2048;
    for (int k = 0; k < kSamples; ++k) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * k / kSamples);
        if (std::abs(num_(w) / den_(w)) > 1.0 + 1e-9)
            throw InvalidMapError("rational map is not a self-map of the disk");
    }
    const cplx v0 = num_(0.0) / den_(0.0);
    bool constant = true;
    for (cplx w : {cplx(0.5, 0.1), cplx(-0.3, 0.6), cplx(0.1, -0.7)})
        if (std::abs(num_(w) / den_(w) - v0) > 1e-13) constant = false;
    if (constant && std::abs(std::abs(v0) - 1.0) < 1e-12)
        throw InvalidMapError("rational map is a unimodular constant");
    inner_factor_ = inner_factor(num_, den_);
}

cplx RationalMap::operator()(cplx w) const { return num_(w) / den_(w); }

cplx RationalMap::derivative(cplx w) const { return jet(w, complement_of(w), 0.0).deriv; }

Jet RationalMap::jet(cplx w, double comp_w, double err_w) const {
    cplx p, dp, q, dq;
    num_.eval_with_derivative(w, p, dp);
    den_.eval_with_derivative(w, q, dq);
    if (std::abs(q) < 1e-300) throw DomainError("rational map evaluated at a pole");
    const cplx value = p / q;
    const cplx deriv = (dp * q - p * dq) / (q * q);
    check_finite(value, "rational map");
    const double q2 = std::norm(q), p2 = std::norm(p);
    if (inner_factor_) {
        const double k = (*inner_factor_)(w);
        return {value, deriv, std::max(0.0, comp_w * k / q2), err_w + 16.0 * (num_.degree() + den_.degree() + 1) * kEps};
    }
    const double comp = std::max(0.0, (q2 - p2) / q2);
    const double err = comp > 0 ? 8.0 * kEps * (p2 + q2) / (q2 - p2) : std::numeric_limits<double>::infinity();
    return {value, deriv, comp, err};
}

// ---------------------------------------------------------------- MapExpr

struct Composition {
    MapExpr outer;
    MapExpr inner;
};

struct MapExpr::Node {
    std::variant<BlaschkeProduct, DiskAutomorphism, RationalMap, Composition> v;
};

MapExpr MapExpr::blaschke(BlaschkeProduct b) { return MapExpr(std::make_shared<const Node>(Node{std::move(b)})); }
MapExpr MapExpr::automorphism(DiskAutomorphism t) { return MapExpr(std::make_shared<const Node>(Node{t})); }
MapExpr MapExpr::rational(RationalMap r) { return MapExpr(std::make_shared<const Node>(Node{std::move(r)})); }
MapExpr MapExpr::compose(MapExpr outer, MapExpr inner) {
    return MapExpr(std::make_shared<const Node>(Node{Composition{std::move(outer), std::move(inner)}}));
}

MapExpr MapExpr::scale(cplx s) {
    if (!(std::abs(s) < 1.0)) throw InvalidMapError("scale factor must have modulus below 1");
    return rational(RationalMap(Polynomial{0.0, s}, Polynomial{1.0}));
}

MapExpr::Kind MapExpr::kind() const { return static_cast<Kind>(node_->v.index()); }

const BlaschkeProduct* MapExpr::as_blaschke() const { return std::get_if<BlaschkeProduct>(&node_->v); }
const DiskAutomorphism* MapExpr::as_automorphism() const { return std::get_if<DiskAutomorphism>(&node_->v); }
const RationalMap* MapExpr::as_rational() const { return std::get_if<RationalMap>(&node_->v); }
const MapExpr& MapExpr::outer() const { return std::get<Composition>(node_->v).outer; }
const MapExpr& MapExpr::inner() const { return std::get<Composition>(node_->v).inner; }

Jet MapExpr::jet(cplx z) const {
    const double r = std::abs(z);
    if (r > 1.0 + 1e-12) throw DomainError("map evaluated outside the closed disk");
    const double comp = complement_of(z);
    return jet(z, comp, comp > 0 ? 4.0 * kEps / comp : 0.0);
}

Jet MapExpr::jet(cplx z, double comp_z, double err_z) const {
    struct Visit {
        cplx z;
        double comp, err;
        Jet operator()(const BlaschkeProduct& b) const { return b.jet(z, comp, err); }
        Jet operator()(const DiskAutomorphism& t) const { return t.jet(z, comp, err); }
        Jet operator()(const RationalMap& r) const { return r.jet(z, comp, err); }
        Jet operator()(const Composition& c) const {
            const Jet in = c.inner.jet(z, comp, err);
            const Jet out = c.outer.jet(in.value, in.comp, in.comp_rel_err);
            return {out.value, out.deriv * in.deriv, out.comp, out.comp_rel_err};
        }
    };
    return std::visit(Visit{z, comp_z, err_z}, node_->v);
}

bool MapExpr::structurally_equal(const MapExpr& other) const {
    if (node_ == other.node_) return true;
    if (kind() != other.kind()) return false;
    switch (kind()) {
        case Kind::Blaschke: {
            const auto *a = as_blaschke(), *b = other.as_blaschke();
            return a->lambda() == b->lambda() && a->zeros() == b->zeros();
        }
        case Kind::Automorphism: {
            const auto *a = as_automorphism(), *b = other.as_automorphism();
            return a->theta() == b->theta() && a->a() == b->a();
        }
        case Kind::Rational: {
            const auto *a = as_rational(), *b = other.as_rational();
            return a->num().coeffs() == b->num().coeffs() && a->den().coeffs() == b->den().coeffs();
        }
        case Kind::Compose:
            return outer().structurally_equal(other.outer()) && inner().structurally_equal(other.inner());
    }
    return false;
}

double hyperbolic_derivative(const MapExpr& e, DiskPoint z) {
    const Jet j = e.jet(z.value());
    return std::abs(j.deriv) / j.comp;
}

// ----------------------------------------------------------- critical set

int CriticalSet::count() const {
    int n = 0;
    for (const auto& c : points) n += c.multiplicity;
    return n;
}

std::vector<cplx> CriticalSet::flattened() const {
    std::vector<cplx> out;
    for (const auto& c : points) out.insert(out.end(), c.multiplicity, c.center);
    return out;
}

std::vector<cplx> critical_numerator_roots(const BlaschkeProduct& b) {
    return polynomial_roots(b.critical_numerator().trimmed(1e-14));
}

CriticalSet critical_points(const BlaschkeProduct& b, const CriticalOptions& opts) {
    std::vector<cplx> inside;
    for (cplx r : critical_numerator_roots(b)) {
        const double m = std::abs(r);
        if (std::abs(m - 1.0) <= opts.boundary_guard)
            throw SolverError("critical point numerically on the unit circle");
        if (m < 1.0) inside.push_back(r);
    }
    if (static_cast<int>(inside.size()) != b.degree() - 1)
        throw SolverError("found " + std::to_string(inside.size()) + " critical points, expected " +
                          std::to_string(b.degree() - 1));
    return CriticalSet{cluster_roots(inside, opts.cluster_radius)};
}

std::vector<BoundaryPoint> boundary_preimages(const BlaschkeProduct& b, BoundaryPoint sigma) {
    const Polynomial eq = b.numerator() * b.lambda() - b.denominator() * sigma.value();
    std::vector<BoundaryPoint> out;
    for (cplx r : polynomial_roots(eq)) {
        for (int it = 0; it < 3; ++it) {
            cplx p, dp;
            eq.eval_with_derivative(r, p, dp);
            if (dp == cplx{}) break;
            r -= p / dp;
        }
        if (std::abs(std::abs(r) - 1.0) > 1e-9) throw SolverError("boundary preimage off the unit circle");
        out.emplace_back(r / std::abs(r));
    }
    auto arg0 = [](cplx z) {
        const double a = std::arg(z);
        return a < 0 ? a + 2.0 * std::numbers::pi : a;
    };
    std::sort(out.begin(), out.end(), [&](BoundaryPoint x, BoundaryPoint y) { return arg0(x) < arg0(y); });
    return out;
}

}  // namespace blaschke
