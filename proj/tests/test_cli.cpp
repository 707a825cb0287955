#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blaschke/cli.hpp"
#include "blaschke/error.hpp"
#include "blaschke/spec_io.hpp"

using namespace blaschke;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

json z_power(int n) {
    json zeros = json::array();
    for (int k = 0; k < n; ++k) zeros.push_back({0, 0});
    return {{"type", "blaschke"}, {"zeros", zeros}};
}

cli::RunConfig config(const std::string& command, json settings = json::object()) {
    cli::RunConfig c;
    c.command = command;
    c.settings = std::move(settings);
    return c;
}

struct Invocation {
    int code;
    std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "blaschke");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("blaschke_cli_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("command list") {
    CHECK(cli::commands().size() == 8);
    CHECK(std::find(cli::commands().begin(), cli::commands().end(), "julia-scan") != cli::commands().end());
}

TEST_CASE("function specs used by the CLI") {
    const MapExpr id = parse_function_spec(json{{"type", "blaschke"}, {"zeros", {{0, 0}}}});
    CHECK(std::abs(id(cplx(0.3, 0.4)) - cplx(0.3, 0.4)) < 1e-15);

    const json inner = {{"type", "blaschke"}, {"zeros", {{0.2, 0.1}, {-0.5, 0}}}};
    const MapExpr c = parse_function_spec(
        json{{"type", "compose"}, {"outer", {{"type", "automorphism"}, {"theta", 0.0}, {"a", {0, 0}}}}, {"inner", inner}});
    const MapExpr b = parse_function_spec(inner);
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.7, 0.3), cplx(0.95, 0)}) CHECK(std::abs(c(z) - b(z)) < 1e-15);

    const MapExpr g = parse_function_spec(json{{"type", "rational"}, {"num", {1, 0, 3}}, {"den", {3, 0, 1}}});
    CHECK(std::abs(g(1.0) - 1.0) < 1e-15);
}

TEST_CASE("mbp-solve with a single target at 0 gives z^2") {
    auto cfg = config("mbp-solve");
    cfg.targets = "0";
    const auto r = cli::run(cfg);
    CHECK(r.exit_code == cli::kPass);
    const MapExpr b = parse_function_spec(r.report["result"]["b"]);
    const MapExpr z2 = parse_function_spec(z_power(2));
    for (cplx z : {cplx(0.3, 0.1), cplx(-0.6, -0.2), cplx(0.1, 0.9)}) CHECK(std::abs(b(z) - z2(z)) < 1e-12);
    CHECK(r.report["schema"] == 1);
    CHECK(r.report["seed"] == 1);
    CHECK(r.report["config"]["targets"] == json::array({{0.0, 0.0}}));

    cfg.targets = "[[0.3, 0], [-0.2, 0.4]]";
    CHECK(cli::run(cfg).report["result"]["degree"] == 3);
    cfg.targets = "0.3,0; -0.2,0.4";
    CHECK(cli::run(cfg).report["result"]["residual"].get<double>() < 1e-9);
}

TEST_CASE("julia-scan reports the failure cluster near -1") {
    auto cfg = config("julia-scan", {{"f", z_power(3)}, {"b", z_power(2)}, {"A", 1.5}, {"V", {{"m", 1.0}, {"mesh", 600}}}});
    cfg.mesh = 120;
    const auto r = cli::run(cfg);
    CHECK(r.exit_code == cli::kPass);
    const json& res = r.report["result"];
    CHECK(res["near_minus_one"]["points"].get<int>() > 0);
    CHECK(res["near_minus_one"]["violations"] == res["near_minus_one"]["points"]);
    CHECK(res["near_one"]["violations"] == 0);
    CHECK(res["V"]["scan"]["violations"] == 0);
    CHECK(r.report["config"]["resolution"] == 120);
    REQUIRE(r.files.size() == 2);
    CHECK(r.files[0].first == "julia_scan.csv");
    CHECK(r.files[0].second.rfind("re,im,margin,pass", 0) == 0);

    // Without A the coefficient is computed from the maps.
    auto auto_a = config("julia-scan", {{"f", z_power(3)}, {"b", z_power(2)}});
    auto_a.mesh = 40;
    CHECK(cli::run(auto_a).report["result"]["A"].get<double>() == doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("rigidity commands") {
    const auto s = cli::run(config("rigidity-sharpness"));
    CHECK(s.exit_code == cli::kPass);
    CHECK(s.report["result"]["contact"]["exponent"].get<double>() == doctest::Approx(3.0).epsilon(0.05 / 3));
    CHECK(s.report["result"]["contact"]["constant"].get<double>() == doctest::Approx(2.0).epsilon(0.01));

    const json f = {{"type", "compose"}, {"outer", {{"type", "rational"}, {"num", {1, 0, 3}}, {"den", {3, 0, 1}}}}, {"inner", z_power(2)}};
    const auto fit = cli::run(config("rigidity-fit", {{"f", f}, {"g", z_power(2)}}));
    CHECK(fit.exit_code == cli::kPass);
    CHECK(fit.report["result"]["order_above_one"] == true);
    CHECK(fit.report["result"]["derivatives_agree"] == true);

    const auto ch = cli::run(config("rigidity-chelst", {{"f", f}, {"b", z_power(2)}}));
    CHECK(ch.report["result"]["preimages"].size() == 2);
    CHECK(ch.report["result"]["hypothesis_holds"] == false);
}

TEST_CASE("stolz-certify and nehari-verify") {
    auto st = config("stolz-certify", {{"g", z_power(2)}});
    st.mesh = 600;
    const auto s = cli::run(st);
    CHECK(s.exit_code == cli::kPass);
    CHECK(s.report["result"]["V"]["passed"] == true);
    CHECK(s.report["result"]["chain"]["found_M"].is_number());

    const auto n = cli::run(config("nehari-verify", {{"b", {{"type", "blaschke"}, {"zeros", {{0, 0}, {0.5, 0}}}}}, {"samples", 200}}));
    CHECK(n.exit_code == cli::kPass);
    CHECK(n.report["result"]["violations"] == 0);
}

TEST_CASE("exit codes") {
    CHECK(invoke({"geo-selftest", "--mesh", "20"}).code == cli::kPass);
    CHECK(invoke({"geo", "selftest", "--mesh", "20", "--tol", "1e-300"}).code == cli::kViolation);
    CHECK(invoke({"no-such-command"}).code == cli::kUsage);
    CHECK(invoke({"geo-selftest", "--bogus"}).code == cli::kUsage);
    CHECK(invoke({"mbp-solve", "--targets", "[[1.5, 0]]"}).code == cli::kUsage);
    CHECK(invoke({"mbp-solve", "--targets", "[[0.99,0],[0.995,0],[0.99,0.01]]"}).code == cli::kSolverFailure);
    CHECK(invoke({"julia-scan", "--config", "/nonexistent/config.json"}).code == cli::kUsage);

    const fs::path dir = scratch("codes");
    std::ofstream(dir / "bad.json") << "{ not json";
    CHECK(invoke({"julia-scan", "--config", (dir / "bad.json").string()}).code == cli::kUsage);
    std::ofstream(dir / "escape.json") << R"({"f": {"type": "rational", "num": [0, 2], "den": [1]}, "b": {"type": "blaschke", "zeros": [[0,0]]}, "A": 1})";
    const auto esc = invoke({"julia-scan", "--config", (dir / "escape.json").string()});
    CHECK(esc.code == cli::kUsage);
    CHECK(esc.err.find("error") != std::string::npos);
    CHECK_THROWS_AS(cli::run(config("nehari-verify", {{"b", {{"type", "automorphism"}, {"theta", 0}, {"a", {0, 0}}}}})),
                    InvalidMapError);
}

TEST_CASE("config files, relative spec paths and output directory") {
    const fs::path dir = scratch("files");
    std::ofstream(dir / "z2.json") << z_power(2).dump();
    std::ofstream(dir / "z3.json") << z_power(3).dump();
    std::ofstream(dir / "run.json") << json{{"command", "julia-scan"}, {"f", "z3.json"}, {"b", "z2.json"}, {"A", 1.5}}.dump();
    const fs::path out = dir / "out";
    const auto r = invoke({"--config", (dir / "run.json").string(), "--out", out.string(), "--mesh", "50", "--seed", "9"});
    CHECK(r.code == cli::kPass);
    REQUIRE(fs::exists(out / "report.json"));
    CHECK(fs::exists(out / "julia_scan.csv"));
    json rep;
    std::ifstream(out / "report.json") >> rep;
    CHECK(rep["seed"] == 9);
    CHECK(rep["config"]["f"]["zeros"].size() == 3);  // file reference resolved into the report
}

TEST_CASE("property: identical config and seed give byte-identical reports") {
    auto cfg = config("nehari-verify", {{"b", {{"type", "blaschke"}, {"zeros", {{0.1, 0.2}, {0.5, 0}}}}}, {"samples", 300}});
    cfg.seed = 42;
    const std::string a = cli::run(cfg).report.dump(2);
    const std::string b = cli::run(cfg).report.dump(2);
    CHECK(a == b);
    cfg.threads = 4;
    const auto threaded = cli::run(cfg);
    CHECK(threaded.report["result"].dump() == json::parse(a)["result"].dump());
    cfg.seed = 43;
    CHECK(cli::run(cfg).report["result"].dump() != json::parse(a)["result"].dump());

    const auto g1 = invoke({"geo-selftest", "--mesh", "30", "--seed", "5"});
    const auto g2 = invoke({"geo-selftest", "--mesh", "30", "--seed", "5"});
    CHECK(g1.out == g2.out);
}
