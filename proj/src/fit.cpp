#include "blaschke/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "blaschke/error.hpp"

namespace blaschke {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw SolverError("linear fit needs at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0) throw SolverError("linear fit with degenerate abscissae");
    LinearFit f;
    f.n = static_cast<int>(n);
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ssr += r * r;
        f.max_residual = std::max(f.max_residual, std::abs(r));
    }
    const double sigma2 = n > 2 ? ssr / (n - 2) : 0.0;
    f.slope_se = std::sqrt(sigma2 / sxx);
    f.intercept_se = std::sqrt(sigma2 * (1.0 / n + mx * mx / sxx));
    f.r_squared = syy > 0 ? 1.0 - ssr / syy : 1.0;
    return f;
}

ComplexExtrapolation extrapolate_to_zero(std::span<const double> t, std::span<const std::complex<double>> v) {
    std::vector<double> re(v.size()), im(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        re[i] = v[i].real();
        im[i] = v[i].imag();
    }
    const LinearFit fr = linear_fit(t, re), fi = linear_fit(t, im);
    return {{fr.intercept, fi.intercept}, std::max(fr.max_residual, fi.max_residual)};
}

bool ContactFit::infinite() const { return std::isinf(exponent); }
bool ContactFit::accepted() const { return infinite() || r_squared >= 0.99; }

ContactFit fit_power_law(std::span<const double> scale, std::span<const double> gap, std::span<const double> floor,
                         const PowerFitOptions& opts) {
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < scale.size(); ++i) {
        if (std::isfinite(gap[i]) && gap[i] > floor[i] && gap[i] > 0) {
            lx.push_back(std::log(scale[i]));
            ly.push_back(std::log(gap[i]));
        }
    }
    ContactFit out;
    if (lx.size() < 3) {
        out.exponent = std::numeric_limits<double>::infinity();
        out.r_squared = 1.0;
        out.n_points = static_cast<int>(lx.size());
        return out;
    }
    const std::size_t tail = std::min(lx.size(), std::max<std::size_t>(opts.min_tail, lx.size() / 2));
    const std::span<const double> x(lx.data() + lx.size() - tail, tail), y(ly.data() + ly.size() - tail, tail);
    const LinearFit f = linear_fit(x, y);
    out.exponent = f.slope;
    out.constant = std::exp(f.intercept);
    out.half_width = 2.0 * f.slope_se;
    out.n_points = f.n;
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    // A gap flat to 1e-4 in log is a perfect order-0 fit, whatever the residual noise.
    out.r_squared = (*hi - *lo) < 1e-4 ? 1.0 : f.r_squared;
    return out;
}

}  // namespace blaschke
