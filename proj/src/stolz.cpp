#include "blaschke/stolz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "blaschke/error.hpp"
#include "blaschke/parallel.hpp"
#include "blaschke/random.hpp"

namespace blaschke {

namespace {

constexpr double kMembershipSlack = 1e-12;
constexpr std::size_t kMaxViolators = 20;

cplx from_rh(cplx w, cplx xi) { return xi * (w - 1.0) / (w + 1.0); }

double pseudo(cplx a, cplx b) { return std::abs(a - b) / std::abs(1.0 - std::conj(a) * b); }

double margin_any(cplx z, const Region& r) { return region_membership_any(z, r).margin; }

void record(LinkReport& rep, cplx z, double margin) {
    ++rep.tested;
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin <= -kMembershipSlack) {
        ++rep.violations;
        if (rep.violators.size() < kMaxViolators) rep.violators.push_back(z);
    }
}

LinkReport new_link(const std::string& name, bool forward) {
    LinkReport r;
    r.name = name;
    r.forward = forward;
    r.worst_margin = std::numeric_limits<double>::infinity();
    return r;
}

// Margin lists computed in parallel, folded in mesh order.
template <typename F>
LinkReport predicate_link(const std::string& name, const std::vector<cplx>& pts, unsigned threads, F&& margin) {
    std::vector<double> m(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t i) { m[i] = margin(pts[i]); });
    LinkReport rep = new_link(name, true);
    for (std::size_t i = 0; i < pts.size(); ++i) record(rep, pts[i], m[i]);
    return rep;
}

struct InverseResult {
    bool ok;
    cplx z;
    double residual;
};

InverseResult newton_inverse(const MapExpr& g, cplx w, cplx seed) {
    cplx z = seed;
    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 60; ++it) {
        const Jet j = g.jet(z);
        const cplx f = j.value - w;
        res = std::abs(f);
        if (res <= 1e-15) break;
        if (j.deriv == cplx(0.0)) return {false, z, res};
        cplx step = f / j.deriv;
        while (!(std::abs(z - step) < 1.0) && std::abs(step) > 1e-300) step *= 0.5;
        z -= step;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) {
            res = std::abs(g(z) - w);
            break;
        }
    }
    return {res < 1e-9, z, res};
}

bool chain_ok(const ChainReport& c) {
    return std::all_of(c.links.begin(), c.links.end(), [](const LinkReport& l) { return l.passed(); });
}

}  // namespace

double mesh_radius(const Region& end, const MeshSpec& spec) { return spec.reach * std::max(end.M, 1.0); }

MeshSpec MeshSpec::for_count(int n, double reach) {
    MeshSpec s;
    s.reach = reach;
    s.angles = std::max(6, static_cast<int>(std::lround(std::sqrt(n / 1.6))));
    const double radial = std::max(4.0, static_cast<double>(n) / s.angles);
    s.log_step = std::log(reach) / radial;
    return s;
}

std::vector<cplx> end_mesh(const Region& end, const MeshSpec& spec, double r_cap) {
    if (end.kind != RegionKind::End) throw DomainError("end_mesh: region is not an end");
    const double beta = sector_half_angle(end.m);
    const double r_max = r_cap > 0 ? r_cap : mesh_radius(end, spec);
    std::vector<cplx> out;
    for (int j = 0; j < spec.angles; ++j) {
        const double theta = beta * (-1.0 + (2.0 * j + 1.0) / spec.angles);
        const double r_min = end.M / std::cos(theta);
        const long k0 = static_cast<long>(std::floor(std::log(r_min) / spec.log_step));
        const long k1 = static_cast<long>(std::floor(std::log(r_max) / spec.log_step));
        for (long k = k0; k <= k1; ++k) {
            const double r = std::exp(static_cast<double>(k) * spec.log_step);
            if (!(r * std::cos(theta) > end.M) || r > r_max) continue;
            const cplx z = from_rh(std::polar(r, theta), end.xi.value());
            if (region_membership_any(z, end).inside) out.push_back(z);
        }
    }
    return out;
}

double injectivity_ratio(const MapExpr& g, const std::vector<cplx>& mesh, unsigned threads) {
    std::vector<cplx> img(mesh.size());
    parallel_for(mesh.size(), threads, [&](std::size_t i) { img[i] = g(mesh[i]); });
    std::vector<double> row(mesh.size(), std::numeric_limits<double>::infinity());
    parallel_for(mesh.size(), threads, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < mesh.size(); ++j) {
            const double d = pseudo(mesh[i], mesh[j]);
            if (d == 0.0) continue;
            row[i] = std::min(row[i], pseudo(img[i], img[j]) / d);
        }
    });
    return *std::min_element(row.begin(), row.end());
}

std::vector<double> geometric_M_grid(double M0, int count) {
    std::vector<double> g;
    for (int k = 0; k < count; ++k) g.push_back(std::ldexp(M0, k));
    return g;
}

InjectivityScan injectivity_scan(const MapExpr& g, double m, BoundaryPoint xi, const std::vector<double>& M_grid,
                                 const MeshSpec& spec, unsigned threads, double floor) {
    InjectivityScan scan;
    scan.floor = floor;
    std::vector<double> grid(M_grid);
    std::sort(grid.begin(), grid.end());
    for (double M : grid) {
        const Region end = Region::end(xi, m, M);
        std::vector<cplx> mesh = end_mesh(end, spec);
        const double ratio = mesh.size() < 2 ? 0.0 : injectivity_ratio(g, mesh, threads);
        scan.M_tried.push_back(M);
        scan.ratios.push_back(ratio);
        if (!scan.certified && ratio >= floor) scan.certified = CertifiedEnd{end, g, std::move(mesh), ratio, spec};
    }
    return scan;
}

LinkReport forward_link(const std::string& name, const MapExpr& g, const Region& domain, const Region& target,
                        const MeshSpec& spec, unsigned threads) {
    return predicate_link(name, end_mesh(domain, spec), threads, [&](cplx z) { return margin_any(g(z), target); });
}

LinkReport inverse_link(const std::string& name, const MapExpr& g, const Region& target, const Region& domain,
                        double alpha, const MeshSpec& spec, unsigned threads) {
    const std::vector<cplx> dom = end_mesh(domain, spec);
    const std::vector<cplx> tgt = end_mesh(target, spec, mesh_radius(domain, spec) / (2.0 * alpha));
    std::vector<cplx> img(dom.size());
    parallel_for(dom.size(), threads, [&](std::size_t i) { img[i] = g(dom[i]); });
    std::vector<InverseResult> sol(tgt.size());
    std::vector<double> margin(tgt.size());
    parallel_for(tgt.size(), threads, [&](std::size_t i) {
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < img.size(); ++k) {
            const double d = pseudo(img[k], tgt[i]);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
        sol[i] = dom.empty() ? InverseResult{false, 0.0, 0.0} : newton_inverse(g, tgt[i], dom[best]);
        margin[i] = sol[i].ok ? margin_any(sol[i].z, domain) : 0.0;
    });
    LinkReport rep = new_link(name, false);
    for (std::size_t i = 0; i < tgt.size(); ++i) {
        rep.worst_residual = std::max(rep.worst_residual, sol[i].residual);
        if (!sol[i].ok) {
            ++rep.tested;
            ++rep.newton_failures;
            continue;
        }
        record(rep, tgt[i], margin[i]);
    }
    return rep;
}

InclusionReport image_inclusion_check(const MapExpr& g, double m, BoundaryPoint xi, double M, double eps,
                                      const BoundaryData& data, const MeshSpec& spec, unsigned threads) {
    if (!(eps > 0) || !(eps < m)) throw DomainError("image_inclusion_check: need 0 < eps < m");
    const BoundaryPoint sigma = data.boundary_value;
    const double a = data.alpha;
    const Region domain = Region::end(xi, m, M);
    InclusionReport r;
    r.right = forward_link("right", g, domain, Region::end(sigma, m + eps, M / a), spec, threads);
    r.left = inverse_link("left", g, Region::end(sigma, m - eps, std::exp(eps) * M / a), domain, a, spec, threads);
    return r;
}

InclusionSearch inclusion_search(const MapExpr& g, double m, BoundaryPoint xi, double eps, const BoundaryData& data,
                                 const std::vector<double>& M_grid, const MeshSpec& spec, unsigned threads) {
    InclusionSearch s;
    s.injectivity = injectivity_scan(g, m, xi, M_grid, spec, threads);
    if (!s.injectivity.certified) return s;
    for (double M : s.injectivity.M_tried) {
        if (M < s.injectivity.certified->region.M) continue;
        InclusionReport r = image_inclusion_check(g, m, xi, M, eps, data, spec, threads);
        const bool ok = r.passed();
        s.attempts.emplace_back(M, std::move(r));
        if (ok) {
            s.M = M;
            break;
        }
    }
    return s;
}

bool ChainReport::passed() const { return chain_ok(*this); }

ChainReport inclusion_chain_check(const MapExpr& g, double m, BoundaryPoint xi, double M, const BoundaryData& data,
                                  const MeshSpec& spec, unsigned threads) {
    const BoundaryPoint sigma = data.boundary_value;
    const double a = data.alpha;
    ChainReport c;
    c.M = M;
    c.links[0] = forward_link("g(E(m/2,4M)) in E(5m/8,4M/a)", g, Region::end(xi, m / 2, 4 * M),
                              Region::end(sigma, 5 * m / 8, 4 * M / a), spec, threads);
    c.links[1] = inverse_link("E(5m/8,4M/a) in g(E(3m/4,2M))", g, Region::end(sigma, 5 * m / 8, 4 * M / a),
                              Region::end(xi, 3 * m / 4, 2 * M), a, spec, threads);
    c.links[2] = forward_link("g(E(3m/4,2M)) in E(7m/8,2M/a)", g, Region::end(xi, 3 * m / 4, 2 * M),
                              Region::end(sigma, 7 * m / 8, 2 * M / a), spec, threads);
    c.links[3] = inverse_link("E(7m/8,2M/a) in g(E(m,M))", g, Region::end(sigma, 7 * m / 8, 2 * M / a),
                              Region::end(xi, m, M), a, spec, threads);
    return c;
}

ChainSearch chain_search(const MapExpr& g, double m, BoundaryPoint xi, const BoundaryData& data,
                         const std::vector<double>& M_grid, const MeshSpec& spec, unsigned threads) {
    ChainSearch s;
    s.injectivity = injectivity_scan(g, m, xi, M_grid, spec, threads);
    if (!s.injectivity.certified) return s;
    for (double M : s.injectivity.M_tried) {
        if (M < s.injectivity.certified->region.M) continue;
        ChainReport c = inclusion_chain_check(g, m, xi, M, data, spec, threads);
        const bool ok = c.passed();
        s.attempts.push_back(c);
        if (ok) {
            s.found = std::move(c);
            break;
        }
    }
    return s;
}

bool VRegion::contains(cplx z) const {
    if (!(std::norm(z) < 1.0)) return false;
    return region_membership_any(z, outer()).inside && region_membership_any(g(z), image()).inside;
}

std::vector<cplx> v_mesh(const VRegion& v, const MeshSpec& spec) {
    std::vector<cplx> out;
    for (cplx z : end_mesh(v.outer(), spec))
        if (v.contains(z)) out.push_back(z);
    return out;
}

bool VConstruction::passed() const {
    return search.found && injectivity_margin >= 1e-3 &&
           std::all_of(sandwich.begin(), sandwich.end(), [](const LinkReport& l) { return l.passed(); });
}

VConstruction construct_V(const MapExpr& g, double m, BoundaryPoint xi, const BoundaryData& data,
                          const std::vector<double>& M_grid, const MeshSpec& spec, unsigned threads) {
    VConstruction out;
    const double mt = 8.0 * m / 7.0, a = data.alpha;
    out.search = chain_search(g, mt, xi, data, M_grid, spec, threads);
    if (!out.search.found) return out;

    VRegion& v = out.v;
    v.g = g;
    v.xi = xi;
    v.sigma = data.boundary_value;
    v.m = m;
    v.alpha = a;
    v.M_tilde = out.search.found->M;
    v.M = 2.0 * v.M_tilde / a;
    const double M = v.M;
    const Region inner5 = Region::end(v.sigma, 5 * m / 7, 2 * M);
    auto v_margin = [&](cplx z) { return std::min(margin_any(z, v.outer()), margin_any(g(z), v.image())); };

    out.sandwich[0] = predicate_link("E(4m/7,2Ma) in g^-1(E(5m/7,2M)) and V", end_mesh(Region::end(xi, 4 * m / 7, 2 * M * a), spec),
                                     threads, [&](cplx z) { return std::min(v_margin(z), margin_any(g(z), inner5)); });
    const std::vector<cplx> vm = v_mesh(v, spec);
    std::vector<cplx> core;
    for (cplx z : vm)
        if (region_membership_any(g(z), inner5).inside) core.push_back(z);
    out.sandwich[1] = predicate_link("g^-1(E(5m/7,2M)) and V in E(6m/7,Ma)", core, threads,
                                     [&](cplx z) { return margin_any(z, Region::end(xi, 6 * m / 7, M * a)); });
    out.sandwich[2] = predicate_link("E(6m/7,Ma) in V", end_mesh(Region::end(xi, 6 * m / 7, M * a), spec), threads, v_margin);
    out.sandwich[3] = predicate_link("V in E(8m/7,Ma/2)", vm, threads,
                                     [&](cplx z) { return margin_any(z, Region::end(xi, 8 * m / 7, M * a / 2)); });
    out.v_mesh_size = vm.size();
    out.injectivity_margin = vm.size() < 2 ? 0.0 : injectivity_ratio(g, vm, threads);
    return out;
}

std::size_t convexity_proxy_failures(const VRegion& v, const MeshSpec& spec, int pairs, std::uint64_t seed) {
    const std::vector<cplx> vm = v_mesh(v, spec);
    if (vm.size() < 2) return 0;
    CounterRng rng(seed, 0x5eed);
    std::size_t failures = 0;
    const Region img = v.image();
    for (int k = 0; k < pairs; ++k) {
        const cplx a = v.g(vm[static_cast<std::size_t>(rng.uniform() * vm.size())]);
        const cplx b = v.g(vm[static_cast<std::size_t>(rng.uniform() * vm.size())]);
        if (pseudo(a, b) < 1e-12) continue;
        for (cplx s : geodesic(a, b, 16).samples)
            if (margin_any(s, img) <= -kMembershipSlack) {
                ++failures;
                break;
            }
    }
    return failures;
}

void write_mesh_csv(std::ostream& os, const std::vector<cplx>& mesh) {
    os << "re,im\n";
    char buf[96];
    for (cplx z : mesh) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.real(), z.imag());
        os << buf;
    }
}

}  // namespace blaschke
