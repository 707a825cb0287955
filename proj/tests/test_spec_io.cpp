#include <doctest.h>

#include <sstream>

#include "blaschke/error.hpp"
#include "blaschke/spec_io.hpp"

using namespace blaschke;

TEST_CASE("blaschke spec with a single zero at the origin is the identity") {
    const MapExpr e = parse_function_spec(json::parse(R"({"type":"blaschke","zeros":[[0,0]]})"));
    CHECK(e(cplx(0.3, 0.1)) == cplx(0.3, 0.1));
}

TEST_CASE("compose with the trivial automorphism equals the inner map") {
    const MapExpr e = parse_function_spec(json::parse(
        R"({"type":"compose","outer":{"type":"automorphism","theta":0,"a":[0,0]},
            "inner":{"type":"blaschke","lambda":[1,0],"zeros":[[0.2,0.1],[0,-0.5]]}})"));
    const MapExpr inner = e.inner();
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.7, 0.1)}) CHECK(std::abs(e(z) - inner(z)) < 1e-15);
}

TEST_CASE("rational spec for the sharpness map") {
    const MapExpr g = parse_function_spec(json::parse(R"({"type":"rational","num":[1,0,3],"den":[3,0,1]})"));
    CHECK(std::abs(g(1.0) - 1.0) < 1e-15);
}

TEST_CASE("schema errors carry JSON paths") {
    try {
        parse_function_spec(json::parse(R"({"type":"compose","outer":{"type":"blaschke","zeros":[[0,"x"]]},"inner":{"type":"blaschke","zeros":[0]}})"));
        FAIL("expected SpecError");
    } catch (const SpecError& e) {
        CHECK(std::string(e.what()).find("$.outer.zeros[0]") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_function_spec(json::parse(R"({"type":"nope"})")), SpecError);
    CHECK_THROWS_AS(parse_function_spec(json::parse(R"({"type":"blaschke","zeros":[[2,0]]})")), InvalidMapError);
}

TEST_CASE("round trip through JSON") {
    const MapExpr e = parse_function_spec(json::parse(
        R"({"type":"compose","outer":{"type":"rational","num":[1,0,3],"den":[3,0,1]},
            "inner":{"type":"blaschke","lambda":[0,1],"zeros":[[0.2,0.1],[0,-0.5]]}})"));
    const MapExpr back = parse_function_spec(to_json(e));
    CHECK(back.structurally_equal(e));
}

TEST_CASE("regions and curves serialize") {
    const Region r = Region::end(BoundaryPoint(cplx(0, 1)), 1.0, 5.0);
    const json j = to_json(r);
    CHECK(j["kind"] == "end");
    const Region back = parse_region(j);
    CHECK(back.m == 1.0);
    CHECK(back.M == 5.0);
    CHECK(back.xi.value() == cplx(0, 1));
    std::ostringstream os;
    write_curve_csv(os, geodesic(0.0, 0.5, 3));
    CHECK(os.str().rfind("index,re,im\n0,", 0) == 0);
}
