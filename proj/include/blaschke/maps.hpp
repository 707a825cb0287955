#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "blaschke/hypgeo.hpp"
#include "blaschke/polynomial.hpp"

namespace blaschke {

/// Value, derivative and complement 1 - |value|^2 of a map at a point.
/// The complement is propagated from the input complement so that it stays
/// accurate near the circle, where 1 - |value|^2 computed from the value
/// alone loses all significant digits.
struct Jet {
    cplx value;
    cplx deriv;
    double comp;
    double comp_rel_err;  ///< estimated relative error of comp
};

/// lambda * prod (z - a_k) / (1 - conj(a_k) z).
class BlaschkeProduct {
public:
    /// Throws InvalidMapError unless |lambda| = 1 (to 1e-12, renormalized),
    /// every zero lies in the open disk and there is at least one zero.
    BlaschkeProduct(cplx lambda, std::vector<cplx> zeros);

    static BlaschkeProduct power(int n) { return BlaschkeProduct(1.0, std::vector<cplx>(n, 0.0)); }

    cplx lambda() const { return lambda_; }
    const std::vector<cplx>& zeros() const { return zeros_; }
    int degree() const { return static_cast<int>(zeros_.size()); }

    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    Jet jet(cplx z, double comp_z, double err_z) const;

    /// prod (z - a_k), monic.
    Polynomial numerator() const;
    /// prod (1 - conj(a_k) z), the reflection of numerator().
    Polynomial denominator() const;
    /// P'Q - PQ': vanishes exactly at the critical points and their reflections.
    Polynomial critical_numerator() const;

    /// Guard radius below which the logarithmic-derivative formula is replaced by the product rule.
    static constexpr double kLogDerivGuard = 1e-6;

private:
    cplx lambda_;
    std::vector<cplx> zeros_;
};

/// e^{i theta} (z - a) / (1 - conj(a) z).
class DiskAutomorphism {
public:
    DiskAutomorphism(double theta, cplx a);
    static DiskAutomorphism rotation(double theta) { return DiskAutomorphism(theta, 0.0); }

    double theta() const { return theta_; }
    cplx a() const { return a_; }

    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    Jet jet(cplx z, double comp_z, double err_z) const;
    DiskAutomorphism inverse() const;

private:
    double theta_;
    cplx a_;
};

/// Real-valued form sum c_jk w^j conj(w)^k.
struct HermitianForm {
    std::vector<std::vector<cplx>> c;
    double operator()(cplx w) const;
};

/// p / q with poles outside the closed disk and |p/q| <= 1 on the circle.
class RationalMap {
public:
    /// Throws InvalidMapError if a pole lies in the closed disk, the map leaves
    /// the closed disk on the circle, or the map is a unimodular constant.
    RationalMap(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    /// True when |q|^2 - |p|^2 = (1 - |w|^2) K(w) identically (an inner rational map).
    bool is_inner() const { return inner_factor_.has_value(); }

    cplx operator()(cplx w) const;
    cplx derivative(cplx w) const;
    Jet jet(cplx w, double comp_w, double err_w) const;

private:
    Polynomial num_, den_;
    std::optional<HermitianForm> inner_factor_;
};

/// Immutable expression tree of holomorphic self-maps of the disk.
/// Copies share structure; safe to use from several threads.
class MapExpr {
public:
    enum class Kind { Blaschke, Automorphism, Rational, Compose };

    static MapExpr blaschke(BlaschkeProduct b);
    static MapExpr automorphism(DiskAutomorphism t);
    static MapExpr rational(RationalMap r);
    static MapExpr compose(MapExpr outer, MapExpr inner);

    static MapExpr identity() { return blaschke(BlaschkeProduct(1.0, {0.0})); }
    static MapExpr rotation(double theta) { return automorphism(DiskAutomorphism::rotation(theta)); }
    /// w -> s w for |s| < 1.
    static MapExpr scale(cplx s);

    Kind kind() const;
    const BlaschkeProduct* as_blaschke() const;
    const DiskAutomorphism* as_automorphism() const;
    const RationalMap* as_rational() const;
    /// Only valid for Kind::Compose.
    const MapExpr& outer() const;
    const MapExpr& inner() const;

    /// z in the closed disk (|z| <= 1 + 1e-12).
    cplx operator()(cplx z) const { return jet(z).value; }
    cplx eval(cplx z) const { return jet(z).value; }
    cplx derivative(cplx z) const { return jet(z).deriv; }
    Jet jet(cplx z) const;
    /// Jet with a caller-supplied accurate complement 1 - |z|^2.
    Jet jet(cplx z, double comp_z, double err_z = 0.0) const;

    /// Same tree with identical numbers (or the same shared node).
    bool structurally_equal(const MapExpr& other) const;

    struct Node;

private:
    explicit MapExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// |e'(z)| / (1 - |e(z)|^2).
double hyperbolic_derivative(const MapExpr& e, DiskPoint z);

/// Critical points in the disk with multiplicity.
struct CriticalSet {
    std::vector<RootCluster> points;

    int count() const;
    std::vector<cplx> flattened() const;
};

struct CriticalOptions {
    double cluster_radius = 1e-7;
    double boundary_guard = 1e-8;  ///< roots this close to the circle are numerical failures
};

/// In-disk roots of the derivative numerator; count with multiplicity is degree - 1.
CriticalSet critical_points(const BlaschkeProduct& b, const CriticalOptions& opts = {});
/// All roots of the derivative numerator (in-disk ones and their reflections).
std::vector<cplx> critical_numerator_roots(const BlaschkeProduct& b);

/// The n solutions of b(z) = sigma on the circle, sorted by argument in [0, 2pi).
std::vector<BoundaryPoint> boundary_preimages(const BlaschkeProduct& b, BoundaryPoint sigma);

}  // namespace blaschke
