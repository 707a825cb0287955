#pragma once

#include <complex>
#include <span>

namespace blaschke {

struct LinearFit {
    double intercept = 0;
    double slope = 0;
    double intercept_se = 0;
    double slope_se = 0;
    double r_squared = 0;
    double max_residual = 0;
    int n = 0;
};

/// Ordinary least squares y = intercept + slope * x; needs at least two points.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct ComplexExtrapolation {
    std::complex<double> value;
    double residual;  ///< max abs residual of the fit
};

/// Fits v = c0 + c1 t over the samples and returns c0.
ComplexExtrapolation extrapolate_to_zero(std::span<const double> t, std::span<const std::complex<double>> v);

/// Fitted order k of gap ~ C scale^k.
struct ContactFit {
    double exponent = 0;   ///< +inf when the gap stays at machine floor
    double constant = 0;
    double r_squared = 0;
    double half_width = 0; ///< two standard errors of the fitted exponent
    int n_points = 0;      ///< points used in the regression

    bool infinite() const;
    bool accepted() const;  ///< r_squared >= 0.99 (infinite fits count as accepted)
};

struct PowerFitOptions {
    /// Regression uses the last max(min_tail, usable/2) usable points.
    int min_tail = 5;
};

/// Log-log regression of gap against scale. Points whose gap does not exceed
/// `floor` are treated as machine-zero; if fewer than three points remain the
/// fit reports an infinite exponent.
ContactFit fit_power_law(std::span<const double> scale, std::span<const double> gap, std::span<const double> floor,
                         const PowerFitOptions& opts = {});

}  // namespace blaschke
