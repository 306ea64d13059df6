#pragma once

#include <string>

#include "csynth/synthesis.hpp"

namespace csynth {

inline constexpr const char* kToolName = "csynth";
inline constexpr const char* kToolVersion = "0.1.0";

// Machine-readable run record: config echo, automaton and cube
// summaries, per-iteration series, bounds with oracle columns, and the
// exported strategy. Timing fields vary run to run; everything else is
// deterministic for a fixed config.
std::string report_to_json_text(const RunOutcome& out);

// Short human-readable digest of the same run.
std::string report_summary(const RunOutcome& out);

// Writes via a temporary file in the same directory plus rename, so a
// crash never leaves a half-written report behind.
void write_text_file_atomic(const std::string& path,
                            const std::string& content);

}  // namespace csynth
