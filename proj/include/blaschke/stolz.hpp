#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blaschke/boundary.hpp"
#include "blaschke/hypgeo.hpp"
#include "blaschke/maps.hpp"

namespace blaschke {

/// Log-polar mesh of an end in the coordinate w = (1 + conj(xi) z)/(1 - conj(xi) z),
/// where E(m, xi, M) is {|arg w| < beta, Re w > M}. Radii are e^{k log_step}
/// for integer k and the angles are symmetric about 0, so w and 1/w are both
/// mesh points whenever both lie in the end (for xi = 1 this is z and -z).
struct MeshSpec {
    int angles = 24;
    double log_step = 0.1;
    double reach = 64.0;  ///< mesh stops at |w| = reach * max(M, 1)

    /// Roughly n points per end.
    static MeshSpec for_count(int n, double reach = 64.0);
};

/// Outer radius reach * max(M, 1) of the mesh of an end.
double mesh_radius(const Region& end, const MeshSpec& spec);
/// r_cap overrides mesh_radius when positive.
std::vector<cplx> end_mesh(const Region& end, const MeshSpec& spec, double r_cap = 0.0);

/// min over distinct mesh pairs of pseudo_distance(g z, g w) / pseudo_distance(z, w).
double injectivity_ratio(const MapExpr& g, const std::vector<cplx>& mesh, unsigned threads = 1);

struct CertifiedEnd {
    Region region = Region::end(1.0, 1.0, 1.0);
    MapExpr map = MapExpr::identity();
    std::vector<cplx> mesh;
    double injectivity_margin = 0;
    MeshSpec spec;
};

struct InjectivityScan {
    double floor = 1e-3;
    std::vector<double> M_tried;
    std::vector<double> ratios;
    std::optional<CertifiedEnd> certified;  ///< first M whose ratio clears the floor
};

/// 2^k M0 for k = 0..count-1.
std::vector<double> geometric_M_grid(double M0 = 0.125, int count = 14);

/// Tries the increasing M grid; every entry is recorded so the monotonicity of
/// certification can be inspected.
InjectivityScan injectivity_scan(const MapExpr& g, double m, BoundaryPoint xi, const std::vector<double>& M_grid,
                                 const MeshSpec& spec = {}, unsigned threads = 1, double floor = 1e-3);

struct LinkReport {
    std::string name;
    bool forward = true;  ///< images of the domain mesh vs preimages of the target mesh
    std::size_t tested = 0;
    std::size_t violations = 0;
    std::size_t newton_failures = 0;
    double worst_margin = 0;  ///< smallest membership margin among tested points
    double worst_residual = 0;  ///< largest |g(z) - w| among inverse solves
    std::vector<cplx> violators;  ///< first few offending points
    bool passed() const { return tested > 0 && violations == 0 && newton_failures == 0; }
};

/// g(domain) inside target, sampled on the domain mesh.
LinkReport forward_link(const std::string& name, const MapExpr& g, const Region& domain, const Region& target,
                        const MeshSpec& spec, unsigned threads = 1);
/// target inside g(domain): each target mesh point is Newton-inverted from the
/// nearest domain-mesh image and the solution must lie in the domain with
/// |g(z) - w| < 1e-9. The target mesh is cut at mesh_radius(domain) / (2 alpha).
LinkReport inverse_link(const std::string& name, const MapExpr& g, const Region& target, const Region& domain,
                        double alpha, const MeshSpec& spec, unsigned threads = 1);

struct InclusionReport {
    LinkReport right, left;
    bool passed() const { return right.passed() && left.passed(); }
};

/// E(m-eps, sigma, e^eps M / alpha) inside g(E(m, xi, M)) inside E(m+eps, sigma, M / alpha).
InclusionReport image_inclusion_check(const MapExpr& g, double m, BoundaryPoint xi, double M, double eps,
                                      const BoundaryData& data, const MeshSpec& spec = {}, unsigned threads = 1);

/// First grid M at or above the injective one for which both inclusions pass.
struct InclusionSearch {
    InjectivityScan injectivity;
    std::vector<std::pair<double, InclusionReport>> attempts;
    std::optional<double> M;
};

InclusionSearch inclusion_search(const MapExpr& g, double m, BoundaryPoint xi, double eps, const BoundaryData& data,
                                 const std::vector<double>& M_grid, const MeshSpec& spec = {}, unsigned threads = 1);

struct ChainReport {
    double M = 0;
    std::array<LinkReport, 4> links;
    bool passed() const;
};

/// g(E(m/2,xi,4M)) in E(5m/8,sigma,4M/alpha) in g(E(3m/4,xi,2M)) in E(7m/8,sigma,2M/alpha) in g(E(m,xi,M)).
ChainReport inclusion_chain_check(const MapExpr& g, double m, BoundaryPoint xi, double M, const BoundaryData& data,
                                  const MeshSpec& spec = {}, unsigned threads = 1);

struct ChainSearch {
    InjectivityScan injectivity;
    std::vector<ChainReport> attempts;
    std::optional<ChainReport> found;  ///< first grid M (at or above the injective one) passing the chain
};

ChainSearch chain_search(const MapExpr& g, double m, BoundaryPoint xi, const BoundaryData& data,
                         const std::vector<double>& M_grid, const MeshSpec& spec = {}, unsigned threads = 1);

/// V = g^{-1}(E(m, sigma, M)) intersected with E(8m/7, xi, M~), M = 2 M~ / alpha.
struct VRegion {
    MapExpr g = MapExpr::identity();
    BoundaryPoint xi{1.0}, sigma{1.0};
    double m = 0, M_tilde = 0, M = 0, alpha = 1;

    Region image() const { return Region::end(sigma, m, M); }
    Region outer() const { return Region::end(xi, 8.0 * m / 7.0, M_tilde); }
    bool contains(cplx z) const;
};

struct VConstruction {
    VRegion v;
    ChainSearch search;
    std::array<LinkReport, 4> sandwich;
    double injectivity_margin = 0;
    std::size_t v_mesh_size = 0;
    bool passed() const;
};

/// Chain search at 8m/7, then mesh checks of
/// E(4m/7,xi,2M alpha) in g^{-1}(E(5m/7,sigma,2M)) and V in E(6m/7,xi,M alpha) in V in E(8m/7,xi,M alpha/2)
/// together with injectivity of g on a mesh of V. The V mesh is the part of
/// the E(8m/7, xi, M~) mesh lying in V.
VConstruction construct_V(const MapExpr& g, double m, BoundaryPoint xi, const BoundaryData& data,
                          const std::vector<double>& M_grid = geometric_M_grid(), const MeshSpec& spec = {},
                          unsigned threads = 1);

/// Points of the V mesh (part of the outer-end mesh inside V).
std::vector<cplx> v_mesh(const VRegion& v, const MeshSpec& spec);

/// For seeded pairs of V-mesh points, samples of the geodesic between their
/// g-images must stay in g(V) = E(m, sigma, M). Returns the number of failures.
std::size_t convexity_proxy_failures(const VRegion& v, const MeshSpec& spec, int pairs, std::uint64_t seed);

/// re,im rows of a mesh.
void write_mesh_csv(std::ostream& os, const std::vector<cplx>& mesh);

}  // namespace blaschke
