#include "blaschke/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "blaschke/error.hpp"

namespace blaschke {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { normalize(); }

void Polynomial::normalize() {
    while (!c_.empty() && c_.back() == cplx{}) c_.pop_back();
}

Polynomial Polynomial::monomial(int k, cplx c) {
    std::vector<cplx> v(k + 1);
    v[k] = c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::from_roots(std::span<const cplx> roots) {
    std::vector<cplx> c{1.0};
    for (cplx r : roots) {
        c.push_back(0.0);
        for (std::size_t k = c.size() - 1; k > 0; --k) c[k] = c[k - 1] - r * c[k];
        c[0] *= -r;
    }
    return Polynomial(std::move(c));
}

cplx Polynomial::operator()(cplx z) const {
    cplx acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void Polynomial::eval_with_derivative(cplx z, cplx& p, cplx& dp) const {
    p = 0.0;
    dp = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

double Polynomial::abs_eval(double r) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
    return acc;
}

double Polynomial::norm1() const {
    return std::accumulate(c_.begin(), c_.end(), 0.0, [](double s, cplx v) { return s + std::abs(v); });
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<cplx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::reflected(int n) const {
    std::vector<cplx> r(n + 1);
    for (int k = 0; k <= degree(); ++k) r[n - k] = std::conj(c_[k]);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::remainder_monic(const Polynomial& divisor) const {
    const int m = divisor.degree();
    if (degree() < m) return *this;
    std::vector<cplx> r = c_;
    for (int k = degree(); k >= m; --k) {
        const cplx q = r[k];
        if (q == cplx{}) continue;
        for (int j = 0; j <= m; ++j) r[k - m + j] -= q * divisor.c_[j];
    }
    r.resize(m);
    return Polynomial(std::move(r));
}

Polynomial Polynomial::taylor_shift(cplx z0) const {
    std::vector<cplx> a = c_;
    const int n = degree();
    for (int i = 0; i < n; ++i)
        for (int k = n - 1; k >= i; --k) a[k] += z0 * a[k + 1];
    return Polynomial(std::move(a));
}

Polynomial Polynomial::trimmed(double rel) const {
    const double thresh = rel * norm1();
    std::vector<cplx> v = c_;
    while (!v.empty() && std::abs(v.back()) <= thresh) v.pop_back();
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<cplx> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = coeff(int(k)) + o.coeff(int(k));
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * cplx(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<cplx> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(cplx s) const {
    std::vector<cplx> v = c_;
    for (auto& x : v) x *= s;
    return Polynomial(std::move(v));
}

namespace {

double backward_error(const Polynomial& p, cplx r) {
    const double scale = p.abs_eval(std::abs(r));
    return scale > 0 ? std::abs(p(r)) / scale : 0.0;
}

std::vector<cplx> aberth(const Polynomial& p, const RootOptions& opts) {
    const int n = p.degree();
    const auto& c = p.coeffs();
    // Initial radius: geometric mean of root moduli, perturbed angles avoid symmetric stalls.
    const double radius = std::pow(std::abs(c[0] / c[n]), 1.0 / n);
    std::vector<cplx> z(n);
    for (int j = 0; j < n; ++j)
        z[j] = std::polar(radius * (1.0 + 0.01 * j / n), 2.0 * std::numbers::pi * j / n + 0.4);

    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<bool> done(n, false);
    for (int it = 0; it < opts.max_iterations; ++it) {
        bool all_done = true;
        for (int j = 0; j < n; ++j) {
            if (done[j]) continue;
            cplx pz, dpz;
            p.eval_with_derivative(z[j], pz, dpz);
            if (pz == cplx{}) {
                done[j] = true;
                continue;
            }
            const cplx ratio = pz / dpz;
            cplx sum{};
            for (int k = 0; k < n; ++k)
                if (k != j) sum += 1.0 / (z[j] - z[k]);
            cplx corr = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(corr.real()) || !std::isfinite(corr.imag())) corr = ratio;
            z[j] -= corr;
            if (std::abs(corr) <= 4.0 * eps * std::abs(z[j]) ||
                backward_error(p, z[j]) <= 4.0 * eps)
                done[j] = true;
            else
                all_done = false;
        }
        if (all_done) break;
    }
    return z;
}

}  // namespace

std::vector<cplx> polynomial_roots(const Polynomial& p, const RootOptions& opts) {
    if (p.degree() < 1) return {};
    const auto& c = p.coeffs();
    std::size_t zeros = 0;
    while (zeros < c.size() && c[zeros] == cplx{}) ++zeros;
    std::vector<cplx> roots(zeros, cplx{});
    Polynomial q(std::vector<cplx>(c.begin() + zeros, c.end()));
    if (q.degree() == 1) {
        roots.push_back(-q.coeff(0) / q.coeff(1));
    } else if (q.degree() > 1) {
        auto rest = aberth(q, opts);
        roots.insert(roots.end(), rest.begin(), rest.end());
    }
    for (cplx r : roots) {
        const double be = backward_error(p, r);
        if (!(be <= opts.certify_tol))
            throw SolverError("root certification failed: backward error " + std::to_string(be));
    }
    return roots;
}

std::vector<RootCluster> cluster_roots(std::span<const cplx> roots, double radius) {
    const std::size_t n = roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(roots[i] - roots[j]) < radius) parent[find(i)] = find(j);

    std::vector<RootCluster> out;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(out.size());
            out.push_back({0.0, 0});
        }
        auto& cl = out[slot[r]];
        cl.center += roots[i];
        ++cl.multiplicity;
    }
    for (auto& cl : out) cl.center /= static_cast<double>(cl.multiplicity);
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        const double ra = std::abs(a.center), rb = std::abs(b.center);
        if (std::abs(ra - rb) > 1e-12) return ra < rb;
        return std::arg(a.center) < std::arg(b.center);
    });
    return out;
}

}  // namespace blaschke
