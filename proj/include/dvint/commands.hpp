#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace dvint {

struct CommandRequest {
  std::string verb;        // compile, verify-section, verify-integral, search, independence,
                           // fiber-degree, report, simulate
  std::string input_path;  // shown in diagnostics; read unless input_text is set
  std::optional<std::string> input_text;
  std::string format = "text";  // text or json

  int degree = 4;
  std::vector<std::string> denominators;
  std::vector<std::string> integrals;
  double tolerance = 1e-6;
  bool ambient = false;
  int darboux_degree = 1;

  std::vector<double> init;  // t0 followed by the state values
  std::optional<double> t_end;
  double step = 1e-3;
  std::string csv_path;
};

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

struct CommandResult {
  int exit_code = kExitOk;
  nlohmann::json document;  // "schema": 1, sorted keys
  std::string output;       // rendered in the requested format
  std::string diagnostics;  // path:line:col: messages
};

CommandResult execute_command(const CommandRequest& req);

/// Human-readable rendering of a report document.
std::string render_text(const nlohmann::json& doc);

bool is_known_verb(const std::string& verb);

}  // namespace dvint
