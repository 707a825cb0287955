#include <doctest.h>

#include <cmath>
#include <numbers>

#include "blaschke/error.hpp"
#include "blaschke/hypgeo.hpp"
#include "blaschke/random.hpp"

using namespace blaschke;

namespace {

BoundaryPoint one_point() { return BoundaryPoint(cplx(1.0)); }

// Independent oracle: distance to the diameter by brute-force minimization
// over samples of the geodesic through -xi and xi.
double axis_distance_oracle(cplx z, cplx xi, int samples) {
    double best = 1e300;
    for (int k = 1; k < samples; ++k) {
        const double x = -1.0 + 2.0 * k / samples;
        best = std::min(best, hyp_distance(z, xi * x));
    }
    return best;
}

// Midpoint-rule quadrature of |dt| / (1 - |t|^2) along a straight segment.
double segment_length_oracle(cplx a, cplx b, int n) {
    double s = 0;
    for (int k = 0; k < n; ++k) {
        const cplx t = a + (b - a) * ((k + 0.5) / n);
        s += std::abs(b - a) / n / (1.0 - std::norm(t));
    }
    return 2.0 * s;
}

}  // namespace

TEST_CASE("point types validate") {
    CHECK_THROWS_AS(DiskPoint(cplx(1.0, 0.0)), DomainError);
    CHECK_NOTHROW(DiskPoint(cplx(0.999, 0.0)));
    const BoundaryPoint b(cplx(1.0 + 5e-13, 0.0));
    CHECK(std::abs(b.value()) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK_THROWS_AS(BoundaryPoint(cplx(1.0 + 1e-9, 0.0)), DomainError);
}

TEST_CASE("distance examples") {
    const cplx z(0.2, -0.4);
    CHECK(pseudo_distance(z, z) == 0.0);
    CHECK(pseudo_distance(0.0, z) == doctest::Approx(std::abs(z)).epsilon(1e-15));
    CHECK(pseudo_distance(0.5, cplx(0, 0.5)) == doctest::Approx(0.685994).epsilon(1e-6));
    CHECK(hyp_distance(0.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(hyp_distance(0.3, -0.3) == doctest::Approx(2.0 * std::atanh(0.6 / 1.09)).epsilon(1e-14));
    CHECK(hyp_distance(0.3, -0.3) == doctest::Approx(segment_length_oracle(0.3, -0.3, 20000)).epsilon(1e-8));
    CHECK_THROWS_AS(pseudo_distance(0.0, cplx(0.0, 1.0)), DomainError);
}

TEST_CASE("geodesic examples") {
    const Curve d = geodesic_line(BoundaryPoint(cplx(1.0)), BoundaryPoint(cplx(-1.0)), 50);
    for (cplx s : d.samples) CHECK(std::abs(s.imag()) < 1e-14);
    const Curve seg = geodesic(0.0, 0.5, 40);
    for (cplx s : seg.samples) {
        CHECK(std::abs(s.imag()) < 1e-14);
        CHECK(s.real() >= -1e-15);
        CHECK(s.real() <= 0.5 + 1e-15);
    }
    const Curve c = geodesic(cplx(0, 0.2), 0.7, 200);
    CHECK(std::abs(hyperbolic_length(c).value - hyp_distance(cplx(0, 0.2), 0.7)) < 1e-8);
    CHECK_THROWS(geodesic(0.3, 0.3, 10));
}

TEST_CASE("length examples") {
    Curve constant;
    constant.samples = {cplx(0.1, 0.1), cplx(0.1, 0.1)};
    CHECK(hyperbolic_length(constant).value == 0.0);
    CHECK(std::abs(hyperbolic_length(geodesic(0.0, 0.5, 100)).value - std::log(3.0)) < 1e-8);
    const std::vector<cplx> bent{0.0, cplx(0.25, 0.2), 0.5};
    CHECK(hyperbolic_length(polyline(bent)).value > std::log(3.0));
}

TEST_CASE("axis distance examples and brute-force oracle") {
    const BoundaryPoint one(cplx(1.0));
    CHECK(dist_to_axis_geodesic(0.7, one) < 1e-15);
    CHECK(dist_to_axis_geodesic(cplx(0, 0.5), one) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    const cplx z(0.3, 0.4);
    CHECK(std::abs(dist_to_axis_geodesic(z, one) - axis_distance_oracle(z, 1.0, 100000)) < 1e-6);
    CounterRng rng(3);
    for (int k = 0; k < 20; ++k) {
        const cplx xi = rng.on_circle();
        const cplx w = rng.in_disk(0.9);
        CHECK(std::abs(dist_to_axis_geodesic(w, xi) - axis_distance_oracle(w, xi, 100000)) < 1e-6);
    }
}

TEST_CASE("region membership examples") {
    const BoundaryPoint one(cplx(1.0));
    CHECK(region_membership(0.0, Region::horocycle(one, 0.5)).inside);
    CHECK_FALSE(region_membership(0.0, Region::horocycle(one, 1.5)).inside);
    for (double r : {0.1, 0.5, 0.99})
        for (double m : {0.01, 1.0}) CHECK(region_membership(r, Region::stolz(one, m)).inside);
    const cplx z(0.9, 0.05);
    const auto e = region_membership(z, Region::end(one, 1.0, 5.0));
    const bool direct = dist_to_axis_geodesic(z, one) < 1.0 && 5.0 * std::norm(1.0 - z) < 1.0 - std::norm(z);
    CHECK(e.inside == direct);
    CHECK_THROWS(Region::stolz(one, -1.0));
}

TEST_CASE("sector transfer") {
    CHECK(std::abs(sector_transfer(0.0, 1.0).value()) < 1e-15);
    for (double r : {-0.5, 0.2, 0.9}) CHECK(std::abs(sector_transfer(r, 1.0).value().imag()) < 1e-14);
    const double m = std::atanh(std::sin(std::numbers::pi / 4));
    CHECK(sector_half_angle(m) == doctest::Approx(std::numbers::pi / 4));
    CounterRng rng(5);
    int tested = 0;
    while (tested < 1000) {
        const cplx z = rng.in_disk(1.0);
        if (!region_membership_any(z, Region::stolz(one_point(), m)).inside) continue;
        ++tested;
        CHECK(std::abs(sector_transfer(z, m).value()) < 1.0);
    }
    CHECK_THROWS_AS(sector_transfer(cplx(0, 0.9), 0.2), DomainError);
}

TEST_CASE("nontangential sequences") {
    const auto s = nontangential_sequence(BoundaryPoint(cplx(1.0)), 1.0, 0.0);
    CHECK(s.size() == 40);
    for (std::size_t n = 0; n < s.size(); ++n) {
        CHECK(s.z[n] == cplx(1.0 - s.t[n]));
        CHECK(s.complement(n) == doctest::Approx(1.0 - std::norm(s.z[n])).epsilon(1e-12));
    }
    const auto si = nontangential_sequence(BoundaryPoint(cplx(0, 1)), 0.5, 0.0);
    for (cplx z : si.z) CHECK(region_membership(z, Region::stolz(BoundaryPoint(cplx(0, 1)), 0.01)).inside);
    const auto sa = nontangential_sequence(BoundaryPoint(cplx(1.0)), 1.0, 0.3);
    for (cplx z : sa.z) CHECK(region_membership(z, Region::stolz(BoundaryPoint(cplx(1.0)), 1.0)).inside);
    CHECK_THROWS_AS(nontangential_sequence(BoundaryPoint(cplx(1.0)), 0.1, 1.2), DomainError);
    const auto span = DecaySchedule::spanning(0.5, 1e-9, 40).values();
    CHECK(span.front() == 0.5);
    CHECK(span.back() == doctest::Approx(1e-9).epsilon(1e-12));
}

TEST_CASE("property: metric axioms") {
    CounterRng rng(21);
    for (int k = 0; k < 2000; ++k) {
        const cplx a = rng.in_disk(0.99), b = rng.in_disk(0.99), c = rng.in_disk(0.99);
        CHECK(hyp_distance(a, b) == hyp_distance(b, a));
        CHECK(hyp_distance(a, b) >= 0.0);
        CHECK(hyp_distance(a, c) <= hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
    }
}

TEST_CASE("property: geodesic length equals distance") {
    CounterRng rng(22);
    for (int k = 0; k < 200; ++k) {
        const cplx a = rng.in_disk(0.95), b = rng.in_disk(0.95);
        CHECK(std::abs(hyperbolic_length(geodesic(a, b, 64)).value - hyp_distance(a, b)) < 1e-8);
    }
}

TEST_CASE("property: perturbed curves are longer") {
    CounterRng rng(23);
    for (int k = 0; k < 100; ++k) {
        const cplx a = rng.in_disk(0.9), b = rng.in_disk(0.9);
        std::vector<cplx> v{a};
        for (int j = 1; j < 5; ++j) {
            cplx p = a + (b - a) * (j / 5.0) + rng.in_disk(0.05);
            if (std::abs(p) > 0.97) p *= 0.97 / std::abs(p);
            v.push_back(p);
        }
        v.push_back(b);
        CHECK(hyperbolic_length(polyline(v)).value >= hyp_distance(a, b) - 1e-12);
    }
}

TEST_CASE("property: end monotonicity and convexity") {
    CounterRng rng(24);
    const BoundaryPoint xi(rng.on_circle());
    const Region big = Region::end(xi, 1.0, 2.0), small = Region::end(xi, 0.7, 3.0);
    std::vector<cplx> inside;
    for (int k = 0; k < 10000; ++k) {
        const cplx z = rng.in_disk(1.0);
        if (region_membership_any(z, small).inside) CHECK(region_membership_any(z, big).inside);
        if (region_membership_any(z, big).inside) inside.push_back(z);
    }
    REQUIRE(inside.size() > 20);
    for (std::size_t k = 0; k + 1 < inside.size() && k < 400; k += 2) {
        if (inside[k] == inside[k + 1]) continue;
        for (cplx s : geodesic(inside[k], inside[k + 1], 30).samples)
            CHECK(region_membership_any(s, big).margin > -1e-12);
    }
}

TEST_CASE("property: sector transfer preserves the diameter and nests Stolz regions") {
    const double m = 1.0, mp = 0.6;
    const double beta = sector_half_angle(m), betap = sector_half_angle(mp);
    const double image_angle = betap * std::numbers::pi / (2.0 * beta);
    const double m_tilde = std::atanh(std::sin(image_angle));
    CounterRng rng(25);
    int tested = 0;
    while (tested < 2000) {
        const cplx z = rng.in_disk(1.0);
        if (!region_membership_any(z, Region::stolz(one_point(), mp)).inside) continue;
        ++tested;
        const cplx w = sector_transfer(z, m);
        CHECK(std::abs(w) < 1.0);
        CHECK(dist_to_axis_geodesic(w, one_point()) < m_tilde + 1e-9);
    }
}
