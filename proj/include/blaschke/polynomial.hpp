#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace blaschke {

using cplx = std::complex<double>;

/// Dense complex polynomial, coefficients stored lowest degree first.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    Polynomial(std::initializer_list<cplx> coeffs) : Polynomial(std::vector<cplx>(coeffs)) {}

    static Polynomial monomial(int k, cplx c = 1.0);
    static Polynomial from_roots(std::span<const cplx> roots);

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<cplx>& coeffs() const { return c_; }
    cplx coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : cplx{}; }
    cplx leading() const { return c_.empty() ? cplx{} : c_.back(); }

    cplx operator()(cplx z) const;
    /// Horner evaluation returning p(z) and p'(z).
    void eval_with_derivative(cplx z, cplx& p, cplx& dp) const;
    /// sum |c_k| |z|^k, the scale for backward-error statements.
    double abs_eval(double r) const;
    double norm1() const;

    Polynomial derivative() const;
    /// z^n * conj(p(1/conj(z))); n must be at least degree().
    Polynomial reflected(int n) const;
    /// Remainder of division by a monic polynomial.
    Polynomial remainder_monic(const Polynomial& divisor) const;
    /// Coefficients of p in powers of (z - z0).
    Polynomial taylor_shift(cplx z0) const;
    /// Drops leading coefficients below rel * norm1().
    Polynomial trimmed(double rel) const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(cplx s) const;

private:
    void normalize();
    std::vector<cplx> c_;
};

struct RootOptions {
    int max_iterations = 4000;
    double certify_tol = 1e-10;  ///< bound on |p(r)| / (sum |c_k| |r|^k)
};

/// All roots by Aberth-Ehrlich simultaneous iteration. Exact zero roots
/// (vanishing trailing coefficients) are split off first. Every root is
/// certified by its backward error; SolverError if certification fails.
std::vector<cplx> polynomial_roots(const Polynomial& p, const RootOptions& opts = {});

struct RootCluster {
    cplx center;
    int multiplicity;
};

/// Groups roots lying within `radius` of each other (single linkage).
/// Clusters are ordered by (|center|, arg center) for reproducible output.
std::vector<RootCluster> cluster_roots(std::span<const cplx> roots, double radius = 1e-7);

}  // namespace blaschke
