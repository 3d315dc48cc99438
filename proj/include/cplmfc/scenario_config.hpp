#pragma once

#include <stdexcept>
#include <string>

#include "cplmfc/loop_harness.hpp"
#include "cplmfc/settle_ident.hpp"

namespace cplmfc {

// Parsed scenario file: the run scenario plus the optional identification
// block and output directory.
struct ScenarioFile {
  Scenario scn;
  bool ident_enabled = false;
  IdentConfig ident;
  std::string out_dir;
};

struct ScenarioParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// INI-style parser: [section] headers, key = value pairs, '#' and ';'
// comments. Unknown sections or keys raise ScenarioParseError with the
// offending line number.
ScenarioFile parse_scenario_text(const std::string& text);
ScenarioFile load_scenario_file(const std::string& path);

// Inverse of parse_scenario_text: the emitted text re-parses to an
// identical ScenarioFile (full-precision values).
std::string serialize_scenario(const ScenarioFile& sf);

// Applies a "key=value" override using the same key names as the file
// (section-qualified on collision, e.g. "alpha" or "cplmfc.alpha").
void apply_override(ScenarioFile& sf, const std::string& kv);

}  // namespace cplmfc
