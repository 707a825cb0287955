#include <doctest.h>

#include <cmath>

#include "blaschke/error.hpp"
#include "blaschke/mbp_solver.hpp"
#include "blaschke/random.hpp"

using namespace blaschke;

namespace {

double sup_distance(const BlaschkeProduct& a, const BlaschkeProduct& b, CounterRng& rng, int samples) {
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        const cplx z = rng.in_disk(0.999);
        worst = std::max(worst, std::abs(a(z) - b(z)));
    }
    return worst;
}

BlaschkeProduct random_normalized(CounterRng& rng, int n) {
    std::vector<cplx> zeros(n);
    for (auto& a : zeros) a = rng.in_disk(0.85);
    return normalized(BlaschkeProduct(rng.on_circle(), zeros));
}

}  // namespace

TEST_CASE("trivial targets give powers of z") {
    const MbpSolution s = solve({{0.0}});
    REQUIRE(s.b.degree() == 2);
    for (cplx a : s.b.zeros()) CHECK(std::abs(a) < 1e-12);
    CHECK(std::abs(s.b.lambda() - 1.0) < 1e-12);
    const MbpSolution s3 = solve({{0.0, 0.0, 0.0}});
    REQUIRE(s3.b.degree() == 4);
    for (cplx a : s3.b.zeros()) CHECK(std::abs(a) < 1e-12);
}

TEST_CASE("single critical point against the squared automorphism") {
    const cplx c = 0.3;
    const MbpSolution s = solve({{c}});
    CHECK(s.residual < 1e-10);
    const auto crit = critical_points(s.b);
    REQUIRE(crit.count() == 1);
    CHECK(std::abs(crit.points[0].center - c) < 1e-10);
    // phi_c^2 with phi_c(z) = (c - z)/(1 - conj(c) z) has a double zero at c.
    const BlaschkeProduct closed = normalized(BlaschkeProduct(1.0, {c, c}));
    CounterRng rng(51);
    CHECK(sup_distance(s.b, closed, rng, 200) < 1e-10);
    CHECK(std::abs(s.b(0.0)) < 1e-14);
    CHECK(std::abs(s.b(1.0) - 1.0) < 1e-14);
}

TEST_CASE("normalization fixes zero and one") {
    CounterRng rng(52);
    for (int k = 0; k < 20; ++k) {
        const BlaschkeProduct b = random_normalized(rng, 1 + k % 5);
        CHECK(std::abs(b(0.0)) < 1e-13);
        CHECK(std::abs(b(1.0) - 1.0) < 1e-13);
    }
}

TEST_CASE("property: round trip through the critical set") {
    CounterRng rng(53);
    for (int k = 0; k < 20; ++k) {
        const BlaschkeProduct b = random_normalized(rng, 2 + k % 4);
        const MbpSolution s = solve(MbpProblem::from(critical_points(b)));
        CHECK(s.residual < 1e-9);
        CHECK(sup_distance(s.b, b, rng, 100) < 1e-8);
    }
}

TEST_CASE("property: different homotopy paths agree") {
    CounterRng rng(54);
    for (int k = 0; k < 8; ++k) {
        std::vector<cplx> targets(1 + k % 4);
        for (auto& c : targets) c = rng.in_disk(0.7);
        MbpOptions rot;
        rot.path = PathKind::Rotating;
        const MbpSolution a = solve({targets});
        const MbpSolution b = solve({targets}, rot);
        CHECK(sup_distance(a.b, b.b, rng, 100) < 1e-8);
    }
}

TEST_CASE("targets outside the disk are rejected") {
    CHECK_THROWS_AS(solve({{1.2}}), DomainError);
}

TEST_CASE("extremality examples") {
    const MbpSolution s = solve({{0.2, cplx(-0.3, 0.4)}});
    const MapExpr b = MapExpr::blaschke(s.b);
    ExtremalityOptions o;
    o.samples = 500;
    const ScanReport self = extremality_check(s.b, {b}, o);
    CHECK(self.all_pass());
    CHECK(self.details["competitors"][0]["equality"] == true);

    const ScanReport scaled = extremality_check(s.b, {MapExpr::compose(MapExpr::scale(0.6), b)}, o);
    CHECK(scaled.min_margin() > 0.0);
    CHECK(scaled.details["competitors"][0]["equality"] == false);

    const MapExpr b2 = MapExpr::compose(MapExpr::blaschke(BlaschkeProduct::power(2)), b);
    const ScanReport sq = extremality_check(s.b, {b2}, o);
    CHECK(sq.all_pass());
    CHECK(sq.min_margin() > 0.0);

    const MapExpr unrelated = MapExpr::blaschke(BlaschkeProduct(1.0, {0.0, 0.1, 0.2}));
    CHECK_THROWS_AS(extremality_check(s.b, {unrelated}, o), InvalidMapError);
}

TEST_CASE("property: extremality margins and indestructibility") {
    CounterRng rng(55);
    std::vector<cplx> targets{cplx(0.1, 0.5), -0.4};
    const MbpSolution s = solve({targets});
    const MapExpr b = MapExpr::blaschke(s.b);
    std::vector<MapExpr> comps;
    for (int k = 0; k < 10; ++k) {
        std::vector<cplx> zeros{rng.in_disk(0.8), rng.in_disk(0.8)};
        comps.push_back(MapExpr::compose(MapExpr::blaschke(BlaschkeProduct(rng.on_circle(), zeros)), b));
    }
    ExtremalityOptions o;
    o.threads = 4;
    const ScanReport rep = extremality_check(s.b, comps, o);
    CHECK(rep.min_margin() >= -1e-12);

    const DiskAutomorphism t(1.1, cplx(0.3, 0.2));
    const MapExpr tb = MapExpr::compose(MapExpr::automorphism(t), b);
    std::vector<MapExpr> moved;
    for (const MapExpr& c : comps) moved.push_back(MapExpr::compose(MapExpr::automorphism(t), c));
    moved.push_back(tb);
    // T o b is again maximal: its hyperbolic derivative equals that of b.
    const ScanReport rep2 = extremality_check(s.b, moved, o);
    CHECK(rep2.min_margin() >= -1e-12);
    CHECK(rep2.details["competitors"][10]["equality"] == true);
    CHECK(rep2.details["competitors"][10]["automorphic"] == true);
}

TEST_CASE("extremality report is independent of the thread count") {
    const MbpSolution s = solve({{0.3, cplx(0, -0.5)}});
    const MapExpr b = MapExpr::blaschke(s.b);
    const std::vector<MapExpr> comps{MapExpr::compose(MapExpr::scale(0.5), b)};
    ExtremalityOptions one, many;
    many.threads = 8;
    CHECK(extremality_check(s.b, comps, one).summary().dump() == extremality_check(s.b, comps, many).summary().dump());
}
