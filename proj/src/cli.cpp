#include "blaschke/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "blaschke/boundary.hpp"
#include "blaschke/error.hpp"
#include "blaschke/julia.hpp"
#include "blaschke/mbp_solver.hpp"
#include "blaschke/random.hpp"
#include "blaschke/rigidity.hpp"
#include "blaschke/spec_io.hpp"
#include "blaschke/stolz.hpp"

namespace blaschke::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kSchema = 1;

// Reads knobs from the config, falling back to defaults, and records every
// value actually used so the report carries the resolved configuration.
class Params {
public:
    Params(const RunConfig& cfg) : cfg_(cfg) {}

    json resolved = json::object();

    double number(const std::string& key, double def) {
        double v = def;
        if (has(key)) {
            if (!src()[key].is_number()) throw SpecError("$." + key + ": expected a number");
            v = src()[key].get<double>();
        }
        resolved[key] = v;
        return v;
    }
    double positive(const std::string& key, double def) {
        const double v = number(key, def);
        if (!(v > 0) || !std::isfinite(v)) throw SpecError("$." + key + ": must be positive");
        return v;
    }
    /// Tolerance knob, overridden by --tol.
    double tolerance(const std::string& key, double def) {
        if (cfg_.tol) {
            if (!(*cfg_.tol > 0)) throw SpecError("--tol: must be positive");
            resolved[key] = *cfg_.tol;
            return *cfg_.tol;
        }
        return positive(key, def);
    }
    int integer(const std::string& key, int def, int min) {
        int v = def;
        if (has(key)) {
            if (!src()[key].is_number_integer()) throw SpecError("$." + key + ": expected an integer");
            v = src()[key].get<int>();
        }
        if (v < min) throw SpecError("$." + key + ": must be at least " + std::to_string(min));
        resolved[key] = v;
        return v;
    }
    /// Size knob, overridden by --mesh.
    int size(const std::string& key, int def, int min) {
        if (cfg_.mesh) {
            if (*cfg_.mesh < min) throw SpecError("--mesh: must be at least " + std::to_string(min));
            resolved[key] = *cfg_.mesh;
            return *cfg_.mesh;
        }
        return integer(key, def, min);
    }
    bool boolean(const std::string& key, bool def) {
        bool v = def;
        if (has(key)) {
            if (!src()[key].is_boolean()) throw SpecError("$." + key + ": expected true or false");
            v = src()[key].get<bool>();
        }
        resolved[key] = v;
        return v;
    }
    std::string text(const std::string& key, const std::string& def) {
        std::string v = def;
        if (has(key)) {
            if (!src()[key].is_string()) throw SpecError("$." + key + ": expected a string");
            v = src()[key].get<std::string>();
        }
        resolved[key] = v;
        return v;
    }
    cplx complex(const std::string& key, cplx def) {
        cplx v = def;
        if (has(key)) v = as_complex(src()[key], "$." + key);
        resolved[key] = complex_json(v);
        return v;
    }
    /// Inline spec object or path to a spec file.
    MapExpr map(const std::string& key, std::optional<MapExpr> def = std::nullopt) {
        MapExpr e = MapExpr::identity();
        if (!has(key)) {
            if (!def) throw SpecError("$." + key + ": missing function spec");
            e = *def;
        } else if (src()[key].is_string()) {
            e = parse_function_spec_file(cfg_.base_dir / src()[key].get<std::string>());
        } else {
            e = parse_function_spec(src()[key], "$." + key);
        }
        resolved[key] = to_json(e);
        return e;
    }
    std::vector<MapExpr> maps(const std::string& key, const std::vector<MapExpr>& def) {
        std::vector<MapExpr> out;
        if (!has(key)) {
            out = def;
        } else {
            const json& arr = src()[key];
            if (!arr.is_array()) throw SpecError("$." + key + ": expected an array of function specs");
            for (std::size_t k = 0; k < arr.size(); ++k) {
                const std::string path = "$." + key + "[" + std::to_string(k) + "]";
                out.push_back(arr[k].is_string() ? parse_function_spec_file(cfg_.base_dir / arr[k].get<std::string>())
                                                 : parse_function_spec(arr[k], path));
            }
        }
        json r = json::array();
        for (const auto& e : out) r.push_back(to_json(e));
        resolved[key] = r;
        return out;
    }
    DecaySchedule schedule(const std::string& key, DecaySchedule def) {
        double t0 = def.t0, t_last = def.t0 * std::pow(def.ratio, def.count - 1);
        int count = def.count;
        if (has(key)) {
            const json& s = src()[key];
            if (!s.is_object()) throw SpecError("$." + key + ": expected {t0, t_last, count}");
            auto num = [&](const char* k, double& v) {
                if (!s.contains(k)) return;
                if (!s[k].is_number()) throw SpecError("$." + key + "." + k + ": expected a number");
                v = s[k].get<double>();
            };
            num("t0", t0);
            num("t_last", t_last);
            if (s.contains("count")) {
                if (!s["count"].is_number_integer()) throw SpecError("$." + key + ".count: expected an integer");
                count = s["count"].get<int>();
            }
        }
        if (!(t0 > 0 && t0 < 1) || !(t_last > 0 && t_last < t0) || count < 2)
            throw SpecError("$." + key + ": need 0 < t_last < t0 < 1 and count >= 2");
        resolved[key] = {{"t0", t0}, {"t_last", t_last}, {"count", count}};
        return DecaySchedule::spanning(t0, t_last, count);
    }
    bool has(const std::string& key) const { return src().contains(key) && !src()[key].is_null(); }
    const json& raw(const std::string& key) const { return src()[key]; }

    static cplx as_complex(const json& j, const std::string& path) {
        if (j.is_number()) return {j.get<double>(), 0.0};
        return parse_complex(j, path);
    }

private:
    const json& src() const { return cfg_.settings; }
    const RunConfig& cfg_;
};

json fit_json(const ContactFit& f) {
    return {{"exponent", f.infinite() ? json(nullptr) : json(f.exponent)},
            {"infinite", f.infinite()},
            {"constant", f.constant},
            {"r_squared", f.r_squared},
            {"half_width", f.half_width},
            {"n_points", f.n_points},
            {"accepted", f.accepted()}};
}

json link_json(const LinkReport& l) {
    json v = json::array();
    for (cplx z : l.violators) v.push_back(complex_json(z));
    return {{"name", l.name},
            {"forward", l.forward},
            {"tested", l.tested},
            {"violations", l.violations},
            {"newton_failures", l.newton_failures},
            {"worst_margin", l.worst_margin},
            {"worst_residual", l.worst_residual},
            {"violators", v},
            {"passed", l.passed()}};
}

json boundary_json(const BoundaryData& d) {
    return {{"xi", complex_json(d.xi)},
            {"alpha", d.alpha},
            {"boundary_value", complex_json(d.boundary_value)},
            {"angular_derivative", complex_json(d.angular_derivative)},
            {"fit_residual", d.fit_residual},
            {"quotient_gap", d.quotient_gap},
            {"identity_gap", d.identity_gap}};
}

std::string csv_of(const ScanReport& r) {
    std::ostringstream os;
    r.write_csv(os);
    return os.str();
}

std::string mesh_csv(const std::vector<cplx>& mesh) {
    std::ostringstream os;
    write_mesh_csv(os, mesh);
    return os.str();
}

const BlaschkeProduct& blaschke_leaf(const MapExpr& e, const std::string& key) {
    const BlaschkeProduct* b = e.as_blaschke();
    if (!b) throw InvalidMapError("$." + key + ": expected a Blaschke product leaf");
    return *b;
}

std::vector<cplx> parse_targets(const std::string& s) {
    std::vector<cplx> out;
    const auto first = s.find_first_not_of(" \t");
    if (first != std::string::npos && s[first] == '[') {
        json j;
        try {
            j = json::parse(s);
        } catch (const json::parse_error& e) {
            throw SpecError(std::string("--targets: ") + e.what());
        }
        if (!j.is_array()) throw SpecError("--targets: expected an array");
        for (std::size_t k = 0; k < j.size(); ++k) out.push_back(Params::as_complex(j[k], "--targets[" + std::to_string(k) + "]"));
        return out;
    }
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        double re = 0, im = 0;
        char comma = 0;
        std::istringstream is(item);
        if (!(is >> re)) throw SpecError("--targets: cannot parse '" + item + "'");
        if (is >> comma) {
            if (comma != ',' || !(is >> im)) throw SpecError("--targets: cannot parse '" + item + "'");
        }
        out.push_back({re, im});
    }
    return out;
}

struct Outcome {
    json result;
    bool pass = true;
    std::vector<std::pair<std::string, std::string>> files;
};

Outcome mbp_solve(Params& p, const RunConfig& cfg) {
    std::vector<cplx> targets;
    if (cfg.targets) {
        targets = parse_targets(*cfg.targets);
    } else if (p.has("targets")) {
        const json& arr = p.raw("targets");
        if (!arr.is_array()) throw SpecError("$.targets: expected an array");
        for (std::size_t k = 0; k < arr.size(); ++k)
            targets.push_back(Params::as_complex(arr[k], "$.targets[" + std::to_string(k) + "]"));
    } else {
        throw SpecError("$.targets: missing (use --targets or the config)");
    }
    for (cplx c : targets)
        if (!(std::abs(c) < 1)) throw DomainError("mbp-solve: targets must lie in the open disk");
    json tj = json::array();
    for (cplx c : targets) tj.push_back(complex_json(c));
    p.resolved["targets"] = tj;

    MbpOptions opts;
    const std::string path = p.text("path", "straight");
    if (path == "straight")
        opts.path = PathKind::Straight;
    else if (path == "rotating")
        opts.path = PathKind::Rotating;
    else
        throw SpecError("$.path: expected \"straight\" or \"rotating\"");
    const double tol = p.tolerance("tolerance", 1e-9);

    const MbpSolution sol = solve(MbpProblem{targets}, opts);
    json crit = json::array();
    for (cplx c : critical_points(sol.b).flattened()) crit.push_back(complex_json(c));
    Outcome o;
    o.result = {{"b", to_json(MapExpr::blaschke(sol.b))},
                {"degree", sol.b.degree()},
                {"residual", sol.residual},
                {"critical_points", crit},
                {"path", {{"accepted", sol.path.accepted}, {"rejected", sol.path.rejected},
                          {"newton_iterations", sol.path.newton_iterations}}}};
    o.pass = sol.residual < tol;
    return o;
}

Outcome nehari_verify(Params& p, const RunConfig& cfg) {
    const MapExpr be = p.map("b");
    const BlaschkeProduct& b = blaschke_leaf(be, "b");
    const std::vector<MapExpr> defaults = {
        MapExpr::compose(MapExpr::scale(0.5), be),
        MapExpr::compose(be, be),
        MapExpr::compose(MapExpr::automorphism(DiskAutomorphism(0.7, cplx(0.3, -0.1))), be),
    };
    const std::vector<MapExpr> competitors = p.maps("competitors", defaults);
    ExtremalityOptions opts;
    opts.samples = p.size("samples", 1000, 1);
    opts.radius = p.positive("radius", 0.99);
    if (!(opts.radius < 1)) throw SpecError("$.radius: must be below 1");
    opts.tolerance = p.tolerance("tolerance", 1e-12);
    opts.seed = cfg.seed;
    opts.threads = cfg.threads;
    const ScanReport r = extremality_check(b, competitors, opts);
    Outcome o;
    o.result = r.summary();
    o.pass = r.all_pass();
    o.files.emplace_back("nehari.csv", csv_of(r));
    return o;
}

json cluster_json(const ScanReport& r, cplx centre, double radius) {
    std::size_t n = 0, fails = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& pt : r.points) {
        if (std::abs(pt.z - centre) >= radius) continue;
        ++n;
        fails += !pt.pass;
        worst = std::min(worst, pt.margin);
    }
    return {{"centre", complex_json(centre)}, {"radius", radius}, {"points", n}, {"violations", fails},
            {"min_margin", n ? json(worst) : json(nullptr)}};
}

Outcome julia_scan(Params& p, const RunConfig& cfg) {
    const MapExpr f = p.map("f");
    const MapExpr b = p.map("b");
    const BoundaryPoint xi = BoundaryPoint(p.complex("xi", 1.0));
    JuliaInstance inst;
    if (p.has("A")) {
        inst = julia_instance(f, b, p.positive("A", 1.0));
    } else {
        inst = julia_instance(f, b, nontangential_sequence(xi, 1.0, 0.0));
        p.resolved["A"] = nullptr;
    }
    JuliaScanOptions opts;
    opts.resolution = p.size("resolution", 400, 1);
    opts.tolerance = p.tolerance("tolerance", 1e-10);
    opts.threads = cfg.threads;
    const double radius = p.positive("cluster_radius", 0.05);
    const bool expect_all = p.boolean("expect_all_pass", false);

    const ScanReport disk = region_scan(inst.f, inst.b, inst.A, opts);
    Outcome o;
    o.result["A"] = inst.A;
    o.result["A_sequence"] = inst.A_sequence;
    o.result["disk"] = disk.summary();
    o.result["near_minus_one"] = cluster_json(disk, -1.0, radius);
    o.result["near_one"] = cluster_json(disk, 1.0, radius);
    o.files.emplace_back("julia_scan.csv", csv_of(disk));
    o.pass = !expect_all || disk.all_pass();

    if (p.has("V")) {
        const json& vj = p.raw("V");
        if (!vj.is_object()) throw SpecError("$.V: expected {m, mesh}");
        const double m = vj.contains("m") ? vj["m"].get<double>() : 1.0;
        const int count = vj.contains("mesh") ? vj["mesh"].get<int>() : 1000;
        if (!(m > 0) || count < 10) throw SpecError("$.V: need m > 0 and mesh >= 10");
        p.resolved["V"] = {{"m", m}, {"mesh", count}};
        const MeshSpec spec = MeshSpec::for_count(count);
        const BoundaryData data = angular_data(inst.b, 1.0, nontangential_sequence(1.0, 1.0, 0.0));
        const VConstruction vc = construct_V(inst.b, m, 1.0, data, geometric_M_grid(), spec, cfg.threads);
        json vr = {{"constructed", vc.passed()}, {"m", m}, {"M_tilde", vc.v.M_tilde}, {"M", vc.v.M}};
        if (vc.passed()) {
            const ScanReport vs = point_scan(inst, v_mesh(vc.v, spec), opts.tolerance, cfg.threads);
            vr["scan"] = vs.summary();
            o.files.emplace_back("julia_v.csv", csv_of(vs));
            o.pass = o.pass && vs.all_pass();
        } else {
            o.pass = false;
        }
        o.result["V"] = vr;
    }
    return o;
}

Outcome stolz_certify(Params& p, const RunConfig& cfg) {
    const MapExpr g = p.map("g");
    const double m = p.positive("m", 1.0);
    const BoundaryPoint xi = BoundaryPoint(p.complex("xi", 1.0));
    const MeshSpec spec = MeshSpec::for_count(p.size("mesh", 1000, 10));
    const std::vector<double> grid = geometric_M_grid(p.positive("M0", 0.125), p.integer("M_count", 14, 1));
    const int pairs = p.integer("convexity_pairs", 200, 0);
    const BoundaryData data = angular_data(g, xi, nontangential_sequence(xi, 1.0, 0.0));

    Outcome o;
    o.result["boundary"] = boundary_json(data);
    const VConstruction vc = construct_V(g, m, xi, data, grid, spec, cfg.threads);
    const InjectivityScan& inj = vc.search.injectivity;
    o.result["injectivity"] = {{"floor", inj.floor},
                               {"M_tried", inj.M_tried},
                               {"ratios", inj.ratios},
                               {"certified_M", inj.certified ? json(inj.certified->region.M) : json(nullptr)},
                               {"margin", inj.certified ? json(inj.certified->injectivity_margin) : json(nullptr)}};
    json chain = {{"attempts", vc.search.attempts.size()}, {"found_M", nullptr}};
    if (vc.search.found) {
        chain["found_M"] = vc.search.found->M;
        json links = json::array();
        for (const auto& l : vc.search.found->links) links.push_back(link_json(l));
        chain["links"] = links;
    }
    o.result["chain"] = chain;
    json sandwich = json::array();
    for (const auto& l : vc.sandwich) sandwich.push_back(link_json(l));
    o.result["V"] = {{"passed", vc.passed()},       {"m", vc.v.m},          {"M_tilde", vc.v.M_tilde},
                     {"M", vc.v.M},                 {"alpha", vc.v.alpha},  {"injectivity_margin", vc.injectivity_margin},
                     {"mesh_size", vc.v_mesh_size}, {"sandwich", sandwich}};
    o.pass = vc.passed();
    if (vc.passed()) {
        const std::size_t failures = convexity_proxy_failures(vc.v, spec, pairs, cfg.seed);
        o.result["convexity_proxy_failures"] = failures;
        o.pass = failures == 0;
        o.files.emplace_back("v_mesh.csv", mesh_csv(v_mesh(vc.v, spec)));
    }
    if (p.has("eps")) {
        const double eps = p.positive("eps", 0.1);
        if (!(eps < 1)) throw SpecError("$.eps: must be below 1");
        const InclusionSearch s = inclusion_search(g, m, xi, eps, data, grid, spec, cfg.threads);
        json attempts = json::array();
        for (const auto& [M, r] : s.attempts)
            attempts.push_back({{"M", M}, {"right", link_json(r.right)}, {"left", link_json(r.left)}});
        o.result["inclusion"] = {{"eps", eps}, {"M", s.M ? json(*s.M) : json(nullptr)}, {"attempts", attempts}};
        o.pass = o.pass && s.M.has_value();
    }
    return o;
}

NontangentialSequence sequence_from(Params& p, DecaySchedule def) {
    const BoundaryPoint xi = BoundaryPoint(p.complex("xi", 1.0));
    const double m = p.positive("m", 1.0);
    const double angle = p.number("angle", 0.0);
    return nontangential_sequence(xi, m, angle, p.schedule("schedule", def));
}

Outcome rigidity_fit(Params& p, const RunConfig&) {
    const MapExpr f = p.map("f");
    const MapExpr g = p.map("g");
    const NontangentialSequence seq = sequence_from(p, sharpness_schedule());
    const ComparisonReport r = sequence_comparison(f, g, seq);
    Outcome o;
    o.result = {{"contact", fit_json(r.contact)},
                {"order_at_least_one", r.order_at_least_one},
                {"order_above_one", r.order_above_one},
                {"values_agree", r.values_agree},
                {"derivatives_agree", r.derivatives_agree},
                {"value_gap", r.value_gap},
                {"derivative_gap", r.derivative_gap},
                {"g", boundary_json(*r.g_data)},
                {"f", r.f_data ? boundary_json(*r.f_data) : json(nullptr)},
                {"f_error", r.f_error},
                {"consistent", r.consistent()}};
    o.pass = r.consistent();
    return o;
}

Outcome rigidity_sharpness(Params& p, const RunConfig&) {
    const MapExpr be = p.map("b", MapExpr::blaschke(BlaschkeProduct::power(2)));
    const BlaschkeProduct& b = blaschke_leaf(be, "b");
    const SharpnessReport r = sharpness_report(b, p.schedule("schedule", sharpness_schedule()));
    Outcome o;
    o.result = {{"contact", fit_json(r.contact)},      {"distortion", fit_json(r.distortion)},
                {"alpha", r.alpha},                    {"expected_constant", r.expected_constant},
                {"exponent_ok", r.exponent_ok},        {"constant_ok", r.constant_ok},
                {"distortion_ok", r.distortion_ok},    {"passed", r.passed()}};
    o.pass = r.passed();
    return o;
}

Outcome rigidity_chelst(Params& p, const RunConfig&) {
    const MapExpr f = p.map("f");
    const MapExpr be = p.map("b");
    const BlaschkeProduct& b = blaschke_leaf(be, "b");
    const BoundaryPoint sigma = BoundaryPoint(p.complex("sigma", 1.0));
    const ChelstReport r = chelst_report(f, b, sigma, p.schedule("schedule", sharpness_schedule()));
    json pre = json::array();
    for (const auto& c : r.preimages) pre.push_back({{"xi", complex_json(c.xi)}, {"fit", fit_json(c.fit)}});
    Outcome o;
    o.result = {{"sigma", complex_json(r.sigma)},
                {"preimages", pre},
                {"principal", r.principal},
                {"hypothesis_holds", r.hypothesis_holds}};
    return o;
}

Outcome geo_selftest(Params& p, const RunConfig& cfg) {
    const int pairs = p.size("pairs", 200, 1);
    const double radius = p.positive("radius", 0.95);
    if (!(radius < 1)) throw SpecError("$.radius: must be below 1");
    const int samples = p.integer("samples", 100, 3);
    const double tol = p.tolerance("tolerance", 1e-8);
    const double slack = 1e-12;
    CounterRng rng(cfg.seed);
    double worst_length = 0, worst_symmetry = 0, worst_triangle = std::numeric_limits<double>::infinity();
    std::size_t failures = 0;
    for (int k = 0; k < pairs; ++k) {
        const cplx z = rng.in_disk(radius), w = rng.in_disk(radius), u = rng.in_disk(radius);
        if (z == w) continue;
        const double d = hyp_distance(z, w);
        const double len_err = std::abs(hyperbolic_length(geodesic(z, w, samples)).value - d);
        const double sym = std::abs(d - hyp_distance(w, z));
        const double tri = d + hyp_distance(w, u) - hyp_distance(z, u);
        const bool ok = len_err < tol && sym <= slack && tri >= -slack && hyp_distance(z, z) == 0.0 && d > 0;
        failures += !ok;
        worst_length = std::max(worst_length, len_err);
        worst_symmetry = std::max(worst_symmetry, sym);
        worst_triangle = std::min(worst_triangle, tri);
    }
    Outcome o;
    o.result = {{"pairs", pairs},
                {"failures", failures},
                {"max_length_error", worst_length},
                {"max_symmetry_gap", worst_symmetry},
                {"min_triangle_slack", worst_triangle}};
    o.pass = failures == 0;
    return o;
}

using Handler = std::function<Outcome(Params&, const RunConfig&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h = {
        {"mbp-solve", mbp_solve},
        {"nehari-verify", nehari_verify},
        {"julia-scan", julia_scan},
        {"stolz-certify", stolz_certify},
        {"rigidity-fit", rigidity_fit},
        {"rigidity-sharpness", rigidity_sharpness},
        {"rigidity-chelst", rigidity_chelst},
        {"geo-selftest", geo_selftest},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c = [] {
        std::vector<std::string> v;
        for (const auto& [name, _] : handlers()) v.push_back(name);
        return v;
    }();
    return c;
}

RunOutput run(const RunConfig& cfg) {
    const auto it = handlers().find(cfg.command);
    if (it == handlers().end()) throw SpecError("unknown command '" + cfg.command + "'");
    if (!cfg.settings.is_object()) throw SpecError("$: config must be a JSON object");
    if (cfg.threads < 1) throw SpecError("--threads: must be at least 1");
    Params p(cfg);
    Outcome o = it->second(p, cfg);
    RunOutput out;
    out.exit_code = o.pass ? kPass : kViolation;
    p.resolved["threads"] = cfg.threads;
    out.report = {{"schema", kSchema},
                  {"command", cfg.command},
                  {"seed", cfg.seed},
                  {"config", p.resolved},
                  {"result", o.result},
                  {"status", o.pass ? "pass" : "fail"}};
    out.files = std::move(o.files);
    return out;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const SolverError*>(&e)) return kSolverFailure;
    return kUsage;
}

void write_outputs(const RunOutput& out, const fs::path& dir) {
    fs::create_directories(dir);
    std::ofstream(dir / "report.json") << out.report.dump(2) << "\n";
    for (const auto& [name, contents] : out.files) std::ofstream(dir / name) << contents;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite Blaschke products: construction, certification and boundary rigidity checks"};
    std::vector<std::string> words;
    std::string config_path, out_dir;
    RunConfig cfg;
    std::string targets;
    int mesh = 0;
    double tol = 0;
    app.add_option("command", words, "one of: mbp-solve nehari-verify julia-scan stolz-certify rigidity-fit "
                                      "rigidity-sharpness rigidity-chelst geo-selftest (or two words, e.g. 'julia scan')")
        ->expected(0, 2);
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory for report.json and CSV files");
    app.add_option("--seed", cfg.seed, "RNG seed");
    app.add_option("--threads", cfg.threads, "worker threads");
    auto* mesh_opt = app.add_option("--mesh", mesh, "size knob: grid resolution, mesh points, samples or pairs");
    auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
    auto* targets_opt = app.add_option("--targets", targets, "mbp-solve critical points, JSON or 're,im;re,im'");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kPass : kUsage;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw SpecError("cannot open config " + config_path);
            try {
                in >> cfg.settings;
            } catch (const nlohmann::json::parse_error& e) {
                throw SpecError(config_path + ": " + e.what());
            }
            cfg.base_dir = fs::path(config_path).parent_path();
            if (cfg.base_dir.empty()) cfg.base_dir = ".";
        }
        std::string command;
        for (const auto& w : words) command += (command.empty() ? "" : "-") + w;
        if (command.empty() && cfg.settings.is_object() && cfg.settings.contains("command") &&
            cfg.settings["command"].is_string())
            command = cfg.settings["command"].get<std::string>();
        if (command.empty()) throw SpecError("no command given");
        cfg.command = command;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (*mesh_opt) cfg.mesh = mesh;
        if (*tol_opt) cfg.tol = tol;
        if (*targets_opt) cfg.targets = targets;

        const RunOutput result = run(cfg);
        if (cfg.out_dir)
            write_outputs(result, *cfg.out_dir);
        else
            out << result.report.dump(2) << "\n";
        if (result.exit_code != kPass) err << cfg.command << ": certified violation, see report\n";
        return result.exit_code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

}  // namespace blaschke::cli
