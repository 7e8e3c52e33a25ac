#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypergiant {

/// Bad flags, missing keys, unknown keys: exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json, svg };

/// Fully resolved invocation: flags merged over the optional JSON config
/// file, defaults filled in.
struct RunConfig {
    std::string command;
    std::map<std::string, nlohmann::json> parameters;
    std::uint64_t seed = 1;
    std::string output_path;  // empty: standard output
    OutputFormat format = OutputFormat::csv;

    /// The provenance record embedded in every output.
    nlohmann::json provenance() const;
};

/// Parses argv-style arguments (without the program name). Throws UsageError.
RunConfig parse_run_config(const std::vector<std::string>& args);

/// Executes a resolved configuration. Returns 0 on success, 1 on a domain
/// error, 2 on a usage error; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_run_config followed by run; help text exits with 0.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypergiant
