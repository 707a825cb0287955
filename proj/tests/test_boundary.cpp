#include <doctest.h>

#include <cmath>

#include "blaschke/boundary.hpp"
#include "blaschke/error.hpp"
#include "blaschke/random.hpp"
#include "blaschke/rigidity.hpp"

using namespace blaschke;

namespace {

NontangentialSequence radial(cplx xi) { return nontangential_sequence(BoundaryPoint(xi), 1.0, 0.0); }

MapExpr sq() { return MapExpr::blaschke(BlaschkeProduct::power(2)); }

// Definitional oracle: (1 - |g(z)|) / (1 - |z|) at a single point very close to xi,
// evaluated in long double.
long double quotient_oracle(const BlaschkeProduct& b, cplx xi, long double t) {
    using lc = std::complex<long double>;
    const lc z = lc(xi.real(), xi.imag()) * (1.0L - t);
    lc v(b.lambda().real(), b.lambda().imag());
    for (cplx a : b.zeros()) {
        const lc al(a.real(), a.imag());
        v *= (z - al) / (1.0L - std::conj(al) * z);
    }
    return (1.0L - std::abs(v)) / t;
}

}  // namespace

TEST_CASE("closed-form dilation examples") {
    CHECK(dilation_closed_form(BlaschkeProduct::power(2), BoundaryPoint(cplx(0, 1))) == doctest::Approx(2.0));
    CHECK(dilation_closed_form(BlaschkeProduct::power(5), BoundaryPoint(-1.0)) == doctest::Approx(5.0));
    const BlaschkeProduct b(1.0, {0.0, 0.5});
    CHECK(std::abs(dilation_closed_form(b, BoundaryPoint(1.0)) - 4.0) < 1e-12);
    CHECK(std::abs(b.derivative(1.0) - 4.0) < 1e-12);
    CHECK(std::abs(static_cast<double>(quotient_oracle(b, 1.0, 1e-7L)) - 4.0) < 1e-5);
}

TEST_CASE("dilation limit examples") {
    CHECK(std::abs(dilation_limit(MapExpr::identity(), radial(1.0)) - 1.0) < 1e-12);
    CHECK(std::abs(dilation_limit(sq(), radial(1.0)) - 2.0) < 1e-6);
    const MapExpr f = MapExpr::compose(sharpness_outer(), sq());
    CHECK(std::abs(dilation_limit(f, radial(1.0)) - 2.0) < 1e-6);
    CHECK_THROWS_AS(dilation_limit(MapExpr::compose(MapExpr::scale(0.9), sq()), radial(1.0)), SolverError);
}

TEST_CASE("angular data examples") {
    const BoundaryData d = angular_data(sq(), BoundaryPoint(1.0), radial(1.0));
    CHECK(std::abs(d.alpha - 2.0) < 1e-9);
    CHECK(std::abs(d.boundary_value.value() - 1.0) < 1e-12);
    CHECK(std::abs(d.angular_derivative - 2.0) < 1e-9);

    const MapExpr b = MapExpr::blaschke(BlaschkeProduct(1.0, {0.0, 0.5}));
    const BoundaryData e = angular_data(b, BoundaryPoint(1.0), radial(1.0));
    CHECK(std::abs(e.angular_derivative - 4.0) < 1e-9);

    const double theta = 0.8;
    const BoundaryData r = angular_data(MapExpr::compose(MapExpr::rotation(theta), b), BoundaryPoint(1.0), radial(1.0));
    CHECK(std::abs(r.boundary_value.value() - std::polar(1.0, theta)) < 1e-12);
    CHECK(std::abs(r.alpha - e.alpha) < 1e-9);
}

TEST_CASE("sequence comparison examples") {
    const MapExpr g = MapExpr::blaschke(BlaschkeProduct(1.0, {0.0, cplx(0.2, 0.3)}));
    const auto seq = radial(1.0);
    const ComparisonReport same = sequence_comparison(g, g, seq);
    CHECK(same.contact.infinite());
    CHECK(same.values_agree);
    CHECK(same.derivatives_agree);
    CHECK(same.consistent());

    const ComparisonReport rot = sequence_comparison(MapExpr::compose(MapExpr::rotation(0.5), g), g, seq);
    CHECK(std::abs(rot.contact.exponent) < 0.05);
    CHECK_FALSE(rot.values_agree);
    CHECK(rot.consistent());

    const MapExpr b = sq();
    const ComparisonReport sharp = sequence_comparison(MapExpr::compose(sharpness_outer(), b), b, seq);
    CHECK(std::abs(sharp.contact.exponent - 3.0) < 0.05);
    CHECK(sharp.values_agree);
    CHECK(sharp.derivatives_agree);
    CHECK(sharp.consistent());
}

TEST_CASE("property: dilation limit matches the closed form") {
    CounterRng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        std::vector<cplx> zeros(1 + trial % 5);
        for (auto& a : zeros) a = rng.in_disk(0.9);
        const BlaschkeProduct b(rng.on_circle(), zeros);
        for (int k = 0; k < 10; ++k) {
            const BoundaryPoint xi(rng.on_circle());
            const auto seq = nontangential_sequence(xi, 1.0, rng.uniform(-0.5, 0.5));
            CHECK(std::abs(dilation_limit(MapExpr::blaschke(b), seq) - dilation_closed_form(b, xi)) < 1e-6);
        }
    }
}

TEST_CASE("property: boundary data identity holds") {
    CounterRng rng(42);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<cplx> zeros(1 + trial % 4);
        for (auto& a : zeros) a = rng.in_disk(0.8);
        const MapExpr b = MapExpr::blaschke(BlaschkeProduct(rng.on_circle(), zeros));
        const MapExpr e = trial % 2 ? b : MapExpr::compose(MapExpr::automorphism(DiskAutomorphism(rng.uniform(0, 6), rng.in_disk(0.7))), b);
        const BoundaryPoint xi(rng.on_circle());
        const BoundaryData d = angular_data(e, xi, nontangential_sequence(xi, 1.0, 0.2));
        CHECK(d.identity_gap < 1e-9);
        CHECK(d.alpha > 0);
    }
}

TEST_CASE("property: alpha is rotation invariant") {
    CounterRng rng(43);
    for (int trial = 0; trial < 10; ++trial) {
        const MapExpr b = MapExpr::blaschke(BlaschkeProduct(1.0, {rng.in_disk(0.8), rng.in_disk(0.8)}));
        const BoundaryPoint xi(rng.on_circle());
        const auto seq = radial(xi.value());
        const double a0 = dilation_limit(b, seq);
        const double a1 = dilation_limit(MapExpr::compose(MapExpr::rotation(rng.uniform(0, 6)), b), seq);
        CHECK(std::abs(a0 - a1) < 1e-9 * a0);
    }
}
