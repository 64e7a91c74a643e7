#ifndef CRJET_CLI_HPP
#define CRJET_CLI_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "crjet/mapjets.hpp"

namespace crjet::cli {

// Process exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFailure = 1;     // mathematical failure, with a witness
inline constexpr int kInputError = 2;
inline constexpr int kUnknown = 3;     // inconclusive to the working order

struct Options {
    std::optional<int> order;  // overrides the documents' declared order
    Backend backend = Backend::Exact;
    double tolerance = 1e-9;
    int jobs = 1;
    std::optional<std::string> out;
};

struct Outcome {
    nlohmann::ordered_json report;
    int exit_code = kPass;
};

Outcome cmd_analyze(const std::vector<std::string>& paths, const Options& opt);
Outcome cmd_verify(const std::string& surface, const std::string& surface2, const std::string& map, const Options& opt);
Outcome cmd_segre(const std::string& surface, const std::string& surface2, const std::string& map, int k,
                  const Options& opt);
Outcome cmd_determine(const std::string& surface, const std::string& map, const std::string& map2, int k,
                      const Options& opt);
Outcome cmd_dynamics(const std::string& surface, const std::string& map, const Options& opt);
Outcome cmd_ode(const std::string& path, const std::string& mode, int r_max, const Options& opt);

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

// Writes `text` to `path` through a temporary file and a rename.
void write_atomically(const std::string& path, const std::string& text);

// Full command line: parses arguments, runs the subcommand, prints or writes
// the report and returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crjet::cli

#endif  // CRJET_CLI_HPP
