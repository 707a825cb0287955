#pragma once

#include <cstdint>
#include <vector>

#include "blaschke/maps.hpp"
#include "blaschke/report.hpp"

namespace blaschke {

/// Prescribed critical points, repeated according to multiplicity.
struct MbpProblem {
    std::vector<cplx> targets;

    static MbpProblem from(const CriticalSet& c) { return {c.flattened()}; }
    int degree() const { return static_cast<int>(targets.size()) + 1; }
};

enum class PathKind {
    Straight,  ///< c_k(t) = t c_k
    Rotating,  ///< c_k(t) = t c_k e^{i(1-t)}
};

struct MbpOptions {
    PathKind path = PathKind::Straight;
    double initial_step = 0.1;
    double min_step = 1e-6;
    int newton_max = 30;
};

struct PathTrace {
    int accepted = 0;
    int rejected = 0;
    int newton_iterations = 0;
    std::vector<double> t;  ///< accepted continuation parameters
};

struct MbpSolution {
    BlaschkeProduct b{1.0, {0.0}};
    double residual = 0;  ///< optimal-assignment distance from computed critical points to targets
    PathTrace path;
};

/// Degree |targets|+1 Blaschke product with the prescribed critical points,
/// normalized by b(0) = 0 and b(1) = 1. The unknowns are the coefficients of
/// R in b = lambda z R / (z R)^*, driven by Newton iteration on the remainder
/// of the derivative numerator modulo prod (z - c_k(t)) while t moves from 0
/// (b = z^n) to 1. SolverError on continuation stall or when the
/// final residual exceeds 1e-9.
MbpSolution solve(const MbpProblem& p, const MbpOptions& opts = {});

/// Post-composes with the automorphism that restores b(0) = 0 and b(1) = 1.
BlaschkeProduct normalized(const BlaschkeProduct& b);

/// min over assignments pi of max_k |a_k - b_pi(k)|.
double assignment_distance(const std::vector<cplx>& a, const std::vector<cplx>& b);

struct ExtremalityOptions {
    int samples = 1000;
    double radius = 0.99;       ///< samples are uniform in the disk of this radius
    std::uint64_t seed = 1;
    unsigned threads = 1;
    double tolerance = 1e-12;
};

/// margin = |b'|/(1-|b|^2) - |g'|/(1-|g|^2) at seeded samples, one group per
/// competitor. InvalidMapError when a competitor misses a critical point of b.
ScanReport extremality_check(const BlaschkeProduct& b, const std::vector<MapExpr>& competitors,
                             const ExtremalityOptions& opts = {});

/// True when the competitor is b itself or an automorphism composed with b.
bool is_automorphic_competitor(const MapExpr& g, const MapExpr& b);

}  // namespace blaschke
