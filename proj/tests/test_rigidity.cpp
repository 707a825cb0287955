#include <doctest.h>

#include <cmath>

#include "blaschke/error.hpp"
#include "blaschke/random.hpp"
#include "blaschke/rigidity.hpp"

using namespace blaschke;

namespace {

MapExpr sq() { return MapExpr::blaschke(BlaschkeProduct::power(2)); }

NontangentialSequence sharp_seq() {
    return nontangential_sequence(BoundaryPoint(1.0), 1.0, 0.0, sharpness_schedule());
}

}  // namespace

TEST_CASE("contact fit examples") {
    const MapExpr b = MapExpr::blaschke(BlaschkeProduct(1.0, {0.0, cplx(0.1, -0.3)}));
    const auto seq = sharp_seq();
    CHECK(contact_fit(b, b, seq).infinite());
    const ContactFit rot = contact_fit(MapExpr::compose(MapExpr::rotation(0.1), b), b, seq);
    CHECK(std::abs(rot.exponent) < 0.05);
    const ContactFit s = contact_fit(MapExpr::compose(sharpness_outer(), sq()), sq(), seq);
    CHECK(std::abs(s.exponent - 3.0) < 0.05);
    CHECK(std::abs(s.constant - 2.0) < 0.02);
    CHECK(s.r_squared >= 0.99);
}

TEST_CASE("identity gap matches direct subtraction where both are accurate") {
    const MapExpr f = MapExpr::compose(sharpness_outer(), sq());
    const auto seq = nontangential_sequence(BoundaryPoint(1.0), 1.0, 0.0, DecaySchedule{0.5, 0.5, 12});
    const GapSeries s = contact_gaps(f, sq(), seq);
    CHECK(s.via_identity);
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const cplx w = sq()(seq.z[k]);
        const double oracle = std::abs(std::pow(1.0 - w, 3) / (3.0 + w * w));
        CHECK(s.gap[k] == doctest::Approx(oracle).epsilon(1e-8));
    }
}

TEST_CASE("distortion fit examples") {
    const MapExpr b = MapExpr::blaschke(BlaschkeProduct(1.0, {0.0, cplx(0.4, 0.1)}));
    const auto seq = sharp_seq();
    CHECK(distortion_condition_fit(b, b, seq).infinite());
    const MapExpr tb = MapExpr::compose(MapExpr::automorphism(DiskAutomorphism(0.7, cplx(0.3, -0.2))), b);
    CHECK(distortion_condition_fit(tb, b, seq).infinite());
    CHECK(max_distortion_deviation(tb, b, seq) < 1e-12);
    const ContactFit d = distortion_condition_fit(MapExpr::compose(sharpness_outer(), sq()), sq(), seq);
    CHECK(std::abs(d.exponent - 2.0) < 0.1);
}

TEST_CASE("chelst report examples") {
    const BlaschkeProduct b = BlaschkeProduct::power(2);
    const MapExpr be = MapExpr::blaschke(b);
    const auto same = chelst_report(be, b, BoundaryPoint(1.0), sharpness_schedule());
    REQUIRE(same.preimages.size() == 2);
    CHECK(same.hypothesis_holds);

    const auto sharp = chelst_report(MapExpr::compose(sharpness_outer(), be), b, BoundaryPoint(1.0), sharpness_schedule());
    REQUIRE(sharp.preimages.size() == 2);
    for (const auto& p : sharp.preimages) CHECK(std::abs(p.fit.exponent - 3.0) < 0.05);
    CHECK_FALSE(sharp.hypothesis_holds);

    const auto rot = chelst_report(MapExpr::compose(MapExpr::rotation(0.3), be), b, BoundaryPoint(1.0), sharpness_schedule());
    for (const auto& p : rot.preimages) CHECK(std::abs(p.fit.exponent) < 0.05);
    CHECK_FALSE(rot.hypothesis_holds);
}

TEST_CASE("sharpness report for z^2 and a degree-three product") {
    const SharpnessReport r = sharpness_report(BlaschkeProduct::power(2));
    CHECK(r.passed());
    CHECK(r.expected_constant == doctest::Approx(2.0));
    // b(z) = z (z - a)/(1 - a z) rotated so that b(1) = 1.
    const double a = 0.4;
    const BlaschkeProduct b3(1.0, {0.0, a, -a});
    const SharpnessReport r3 = sharpness_report(b3);
    CHECK(r3.exponent_ok);
    CHECK(r3.constant_ok);
    CHECK(r3.contact.exponent <= 3.05);
    CHECK_THROWS_AS(sharpness_report(BlaschkeProduct(cplx(0, 1), {0.0, 0.0})), DomainError);
}

TEST_CASE("power-law fitter on synthetic data") {
    std::vector<double> t, g, fl;
    for (int k = 0; k < 30; ++k) {
        t.push_back(std::pow(0.5, k));
        g.push_back(5.0 * std::pow(t.back(), 2.5));
        fl.push_back(1e-300);
    }
    const ContactFit f = fit_power_law(t, g, fl);
    CHECK(f.exponent == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(f.constant == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(f.r_squared == doctest::Approx(1.0));
    std::vector<double> z(30, 0.0);
    CHECK(fit_power_law(t, z, fl).infinite());
}
