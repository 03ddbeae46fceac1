#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ecw::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUsage = 2 };

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Outcome of one invocation. result_json holds the command-specific payload
/// (compact JSON, "null" on error).
struct RunReport {
  std::string command;
  std::vector<InputDigest> inputs;
  std::vector<std::string> outputs;
  std::string status;  // ok | negative | error
  int exit_code = kSuccess;
  std::vector<std::string> notes;
  std::string error;
  std::string result_json = "null";
  std::optional<double> seconds;  // only filled with --timing
};

std::string report_to_json(const RunReport& report);
// Same content as report_to_json, laid out for reading.
std::string report_to_text(const RunReport& report);

// args excludes the program name. Writes the report to out and diagnostics to
// err; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        RunReport* report = nullptr);

// Directory with the bundled vectors, inequalities and models; ECW_DATA_DIR
// overrides the compiled-in location.
std::string data_dir();

std::string sha256_hex(const std::string& bytes);

}  // namespace ecw::cli
