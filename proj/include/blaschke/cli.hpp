#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace blaschke::cli {

enum ExitCode : int { kPass = 0, kViolation = 1, kUsage = 2, kSolverFailure = 3 };

/// Command names; two-word forms ("julia scan") are joined with '-'.
const std::vector<std::string>& commands();

struct RunConfig {
    std::string command;
    nlohmann::json settings = nlohmann::json::object();  ///< config file contents
    std::filesystem::path base_dir = ".";  ///< relative function-spec paths resolve here
    std::optional<std::filesystem::path> out_dir;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::optional<int> mesh;     ///< overrides the command's size knob
    std::optional<double> tol;   ///< overrides the command's tolerance
    std::optional<std::string> targets;  ///< mbp-solve targets, JSON or "re,im;re,im"
};

struct RunOutput {
    int exit_code = kPass;
    nlohmann::json report;  ///< {"schema": 1, "command", "seed", "config", "result", "status"}
    std::vector<std::pair<std::string, std::string>> files;  ///< CSV exports, name -> contents
};

/// Runs one command. Usage and spec errors throw SpecError, DomainError or
/// InvalidMapError; solver failures throw SolverError.
RunOutput run(const RunConfig& cfg);

/// Exit code for an exception escaping run().
int exit_code_for(const std::exception& e);

/// Writes report.json and the CSV files into dir (created if missing).
void write_outputs(const RunOutput& out, const std::filesystem::path& dir);

/// Full command line front end. Without --out the report goes to `out`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blaschke::cli
