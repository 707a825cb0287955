#include "blaschke/mbp_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "blaschke/error.hpp"
#include "blaschke/parallel.hpp"
#include "blaschke/random.hpp"

namespace blaschke {

namespace {

using Vec = Eigen::VectorXd;

struct System {
    int m;  // number of critical points, unknown coefficients r_0..r_{m-1}
    int n;  // degree

    Polynomial numerator(const std::vector<cplx>& r) const {
        std::vector<cplx> c(n + 1, 0.0);
        for (int j = 0; j < m; ++j) c[j + 1] = r[j];
        c[n] = 1.0;
        return Polynomial(std::move(c));
    }

    static Polynomial critical(const Polynomial& p, const Polynomial& dp, const Polynomial& q, const Polynomial& dq) {
        return dp * q - p * dq;
    }

    Vec residual(const std::vector<cplx>& r, const Polynomial& target) const {
        const Polynomial p = numerator(r), q = p.reflected(n);
        const Polynomial rem = (p.derivative() * q - p * q.derivative()).remainder_monic(target);
        Vec out(2 * m);
        for (int k = 0; k < m; ++k) {
            out[2 * k] = rem.coeff(k).real();
            out[2 * k + 1] = rem.coeff(k).imag();
        }
        return out;
    }

    Eigen::MatrixXd jacobian(const std::vector<cplx>& r, const Polynomial& target) const {
        const Polynomial p = numerator(r), q = p.reflected(n);
        const Polynomial dp = p.derivative(), dq = q.derivative();
        Eigen::MatrixXd J(2 * m, 2 * m);
        for (int j = 0; j < m; ++j) {
            for (int part = 0; part < 2; ++part) {
                const cplx delta = part == 0 ? cplx(1.0) : cplx(0.0, 1.0);
                const Polynomial vp = Polynomial::monomial(j + 1, delta);
                const Polynomial vq = vp.reflected(n);
                const Polynomial dn = vp.derivative() * q + dp * vq - vp * dq - p * vq.derivative();
                const Polynomial rem = dn.remainder_monic(target);
                for (int k = 0; k < m; ++k) {
                    J(2 * k, 2 * j + part) = rem.coeff(k).real();
                    J(2 * k + 1, 2 * j + part) = rem.coeff(k).imag();
                }
            }
        }
        return J;
    }

    // The zeros of b are 0 and the roots of R; all must stay inside the disk.
    bool inside(const std::vector<cplx>& r) const {
        std::vector<cplx> c(r);
        c.push_back(1.0);
        for (cplx z : polynomial_roots(Polynomial(std::move(c))))
            if (!(std::abs(z) < 1.0 - 1e-12)) return false;
        return true;
    }
};

Polynomial target_polynomial(const std::vector<cplx>& c, double t, PathKind kind) {
    std::vector<cplx> roots(c.size());
    const cplx phase = kind == PathKind::Rotating ? std::polar(1.0, 1.0 - t) : cplx(1.0);
    for (std::size_t k = 0; k < c.size(); ++k) roots[k] = t * c[k] * phase;
    return Polynomial::from_roots(roots);
}

struct NewtonResult {
    bool ok = false;
    std::vector<cplx> r;
    int iterations = 0;
};

NewtonResult newton(const System& sys, std::vector<cplx> r, const Polynomial& target, int max_iter, double step_tol) {
    NewtonResult out;
    Vec f = sys.residual(r, target);
    const double f0 = f.norm();
    for (int it = 0; it < max_iter; ++it) {
        out.iterations = it + 1;
        const Eigen::MatrixXd J = sys.jacobian(r, target);
        const Vec dx = J.colPivHouseholderQr().solve(-f);
        if (!dx.allFinite()) return out;
        double rn = 1.0;
        for (int j = 0; j < sys.m; ++j) {
            r[j] += cplx(dx[2 * j], dx[2 * j + 1]);
            rn = std::max(rn, std::abs(r[j]));
        }
        f = sys.residual(r, target);
        if (!f.allFinite() || f.norm() > 1e6 * std::max(f0, 1e-300) + 1.0) return out;
        if (dx.lpNorm<Eigen::Infinity>() <= step_tol * rn) {
            out.ok = true;
            out.r = std::move(r);
            return out;
        }
    }
    return out;
}

BlaschkeProduct assemble(const System& sys, const std::vector<cplx>& r) {
    std::vector<cplx> c(r);
    c.push_back(1.0);
    std::vector<cplx> zeros{0.0};
    for (cplx z : polynomial_roots(Polynomial(std::move(c)))) zeros.push_back(z);
    const cplx p1 = sys.numerator(r)(1.0);
    return BlaschkeProduct(std::conj(p1) / p1, zeros);
}

}  // namespace

double assignment_distance(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    if (a.empty()) return 0.0;
    std::vector<std::size_t> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    if (a.size() <= 8) {
        double best = std::numeric_limits<double>::infinity();
        do {
            double worst = 0.0;
            for (std::size_t k = 0; k < a.size() && worst < best; ++k) worst = std::max(worst, std::abs(a[k] - b[perm[k]]));
            best = std::min(best, worst);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    // Greedy nearest matching: an upper bound on the optimal distance.
    std::vector<bool> used(b.size(), false);
    double worst = 0.0;
    for (cplx z : a) {
        std::size_t pick = 0;
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!used[k] && std::abs(z - b[k]) < d) d = std::abs(z - b[pick = k]);
        used[pick] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

MbpSolution solve(const MbpProblem& p, const MbpOptions& opts) {
    for (cplx c : p.targets)
        if (!(std::abs(c) < 1.0)) throw DomainError("mbp solve: target outside the open disk");
    const int m = static_cast<int>(p.targets.size());
    MbpSolution sol;
    if (m == 0) {
        sol.b = BlaschkeProduct(1.0, {0.0});
        return sol;
    }
    const System sys{m, m + 1};
    std::vector<cplx> r(m, 0.0), r_prev = r;
    double t = 0.0, t_prev = 0.0, h = opts.initial_step;
    sol.path.t.push_back(0.0);
    const double kStepTol = 1e-12;
    while (t < 1.0) {
        const double t_next = std::min(1.0, t + h);
        std::vector<cplx> guess = r;
        if (t > t_prev) {
            const double s = (t_next - t) / (t - t_prev);
            for (int j = 0; j < m; ++j) guess[j] += s * (r[j] - r_prev[j]);
        }
        NewtonResult nr = newton(sys, guess, target_polynomial(p.targets, t_next, opts.path), opts.newton_max, kStepTol);
        sol.path.newton_iterations += nr.iterations;
        if (nr.ok && sys.inside(nr.r)) {
            r_prev = r;
            r = std::move(nr.r);
            t_prev = t;
            t = t_next;
            sol.path.t.push_back(t);
            ++sol.path.accepted;
            if (nr.iterations <= 4) h = std::min(2.0 * h, 0.25);
        } else {
            ++sol.path.rejected;
            h *= 0.5;
            if (h < opts.min_step)
                throw SolverError("mbp solve: continuation stalled at t = " + std::to_string(t) + " after " +
                                  std::to_string(sol.path.accepted) + " accepted steps");
        }
    }
    // Final polish at the full target.
    const Polynomial target = target_polynomial(p.targets, 1.0, opts.path);
    NewtonResult polish = newton(sys, r, target, 8, 1e-15);
    sol.path.newton_iterations += polish.iterations;
    if (polish.ok && sys.inside(polish.r)) r = std::move(polish.r);

    sol.b = assemble(sys, r);
    sol.residual = assignment_distance(critical_points(sol.b).flattened(), p.targets);
    if (!(sol.residual < 1e-9))
        throw SolverError("mbp solve: residual " + std::to_string(sol.residual) + " exceeds 1e-9");
    return sol;
}

BlaschkeProduct normalized(const BlaschkeProduct& b) {
    const cplx w0 = b(0.0);
    const Polynomial p = b.numerator() * b.lambda(), q = b.denominator();
    std::vector<cplx> c = (p - q * w0).coeffs();
    c.resize(b.degree() + 1, 0.0);
    c[0] = 0.0;  // z = 0 solves b(z) = b(0) exactly
    std::vector<cplx> zeros = polynomial_roots(Polynomial(std::move(c)));
    BlaschkeProduct raw(1.0, zeros);
    const cplx v = raw(1.0);
    return BlaschkeProduct(std::conj(v) / std::abs(v), zeros);
}

bool is_automorphic_competitor(const MapExpr& g, const MapExpr& b) {
    if (g.structurally_equal(b)) return true;
    return g.kind() == MapExpr::Kind::Compose && g.outer().kind() == MapExpr::Kind::Automorphism &&
           g.inner().structurally_equal(b);
}

ScanReport extremality_check(const BlaschkeProduct& b, const std::vector<MapExpr>& competitors,
                             const ExtremalityOptions& opts) {
    const MapExpr be = MapExpr::blaschke(b);
    const std::vector<cplx> crit = critical_points(b).flattened();
    for (std::size_t k = 0; k < competitors.size(); ++k) {
        const MapExpr& g = competitors[k];
        const bool by_chain = g.kind() == MapExpr::Kind::Compose && g.inner().structurally_equal(be);
        if (by_chain || g.structurally_equal(be)) continue;
        for (cplx c : crit)
            if (std::abs(g.derivative(c)) >= 1e-9)
                throw InvalidMapError("competitor " + std::to_string(k) + " is not critical at a critical point of b");
    }
    const std::size_t ns = static_cast<std::size_t>(opts.samples);
    std::vector<cplx> z(ns);
    for (std::size_t i = 0; i < ns; ++i) z[i] = CounterRng(opts.seed, i).in_disk(opts.radius);
    std::vector<double> margin(ns * competitors.size());
    parallel_for(ns, opts.threads, [&](std::size_t i) {
        const double c = 1.0 - std::norm(z[i]);
        const Jet jb = be.jet(z[i], c);
        const double hb = std::abs(jb.deriv) / jb.comp;
        for (std::size_t k = 0; k < competitors.size(); ++k) {
            const Jet jg = competitors[k].jet(z[i], c);
            margin[k * ns + i] = hb - std::abs(jg.deriv) / jg.comp;
        }
    });
    ScanReport rep;
    rep.kind = "nehari";
    rep.tolerance = opts.tolerance;
    nlohmann::json groups = nlohmann::json::array();
    for (std::size_t k = 0; k < competitors.size(); ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = 0; i < ns; ++i) {
            const double mg = margin[k * ns + i];
            rep.add(z[i], mg, static_cast<int>(k));
            lo = std::min(lo, mg);
            hi = std::max(hi, std::abs(mg));
        }
        const bool automorphic = is_automorphic_competitor(competitors[k], be);
        groups.push_back({{"competitor", k},
                          {"min_margin", lo},
                          {"max_abs_margin", hi},
                          {"automorphic", automorphic},
                          {"equality", hi <= 1e-9}});
    }
    rep.details["competitors"] = groups;
    rep.details["samples"] = opts.samples;
    rep.details["radius"] = opts.radius;
    return rep;
}

}  // namespace blaschke
