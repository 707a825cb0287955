#pragma once

#include <optional>
#include <string>

#include "blaschke/fit.hpp"
#include "blaschke/hypgeo.hpp"
#include "blaschke/maps.hpp"

namespace blaschke {

/// Boundary behaviour of a map at xi: g'(xi) = alpha g(xi) conj(xi).
struct BoundaryData {
    BoundaryPoint xi{1.0};
    double alpha = 1.0;
    BoundaryPoint boundary_value{1.0};
    cplx angular_derivative;
    double fit_residual = 0;      ///< worst tail residual among the extrapolations
    double quotient_gap = 0;      ///< |difference-quotient limit - angular_derivative|
    double identity_gap = 0;      ///< |angular_derivative - alpha value conj(xi)|
};

/// sum (1 - |a_k|^2) / |xi - a_k|^2.
double dilation_closed_form(const BlaschkeProduct& b, BoundaryPoint xi);

struct ExtrapolationOptions {
    int tail = 10;
};

/// Limit of (1 - |e(z_n)|) / (1 - |z_n|) by a linear fit in t_n over the tail.
/// SolverError when the quotient grows without settling.
double dilation_limit(const MapExpr& e, const NontangentialSequence& seq, const ExtrapolationOptions& opts = {});

/// Boundary value from e(z_n), angular derivative from e'(z_n), both extrapolated,
/// cross-checked against the limit of (e(xi) - e(z_n)) / (xi - z_n). SolverError
/// when the two derivative estimates disagree beyond 1e-6.
BoundaryData angular_data(const MapExpr& e, BoundaryPoint xi, const NontangentialSequence& seq,
                          const ExtrapolationOptions& opts = {});

struct ComparisonReport {
    ContactFit contact;
    bool order_at_least_one = false;  ///< exponent >= 0.9
    bool order_above_one = false;     ///< exponent > 1.1
    std::optional<BoundaryData> f_data, g_data;
    std::string f_error;              ///< why angular data for f is missing, if it is
    double value_gap = 0;
    double derivative_gap = 0;
    bool values_agree = false;        ///< within 1e-6
    bool derivatives_agree = false;   ///< within 1e-6
    /// order >= 1 implies values agree; order > 1 implies derivatives agree.
    bool consistent() const;
};

/// Contact order of f - g along seq together with the boundary data of both maps.
/// SolverError when g itself has no finite dilation along seq.
ComparisonReport sequence_comparison(const MapExpr& f, const MapExpr& g, const NontangentialSequence& seq);

}  // namespace blaschke
