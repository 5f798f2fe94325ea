#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "uqcs/cli/config.hpp"
#include "uqcs/cli/experiments.hpp"

namespace uqcs::cli {

inline constexpr const char* kVersion = "1.0.0";

// version, experiment, seed, resolved config and the list of files written.
Json make_manifest(const RunConfig& cfg, const Artifacts& files);

// Writes every artifact plus manifest.json into dir (created if missing).
void write_run(const std::filesystem::path& dir, const RunConfig& cfg, const Artifacts& files);

// Resolved config from a manifest; SchemaError on version mismatch.
RunConfig config_from_manifest(const Json& manifest);

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitDark = 4;

// Command-line entry point. Errors go to err as one JSON object.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace uqcs::cli
