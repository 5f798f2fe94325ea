#include "uqcs/cli/run.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "uqcs/cli/output.hpp"
#include "uqcs/error.hpp"

namespace uqcs::cli {

namespace fs = std::filesystem;

namespace {

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError(path.string() + ": " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("write failed for " + path.string());
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> shots;
  bool ssa = false;
  std::optional<int> ssa_length;
  std::optional<std::string> ssa_rank;
  bool ssa_renorm = false;
};

void apply_overrides(Json& j, const std::string& experiment, const Overrides& o) {
  if (!j.is_object()) throw SchemaError("config: must be an object");
  if (j.contains("experiment") && j["experiment"] != experiment) {
    throw SchemaError("config: experiment '" + j["experiment"].dump() + "' does not match command '" + experiment + "'");
  }
  j["experiment"] = experiment;
  if (o.seed) j["noise"]["seed"] = *o.seed;
  if (o.shots) {
    if (*o.shots == "ideal") {
      j["noise"]["shots"] = "ideal";
    } else {
      try {
        std::size_t used = 0;
        const long n = std::stol(*o.shots, &used);
        if (used != o.shots->size()) throw std::invalid_argument("trailing");
        j["noise"]["shots"] = n;
      } catch (const std::logic_error&) {
        throw SchemaError("--shots must be a positive integer or 'ideal'");
      }
    }
  }
  if (o.ssa || o.ssa_length || o.ssa_rank || o.ssa_renorm) j["ssa"]["enabled"] = true;
  if (o.ssa_length) j["ssa"]["embed_length"] = *o.ssa_length;
  if (o.ssa_rank) {
    if (*o.ssa_rank == "auto") {
      j["ssa"]["rank"] = "auto";
    } else {
      try {
        j["ssa"]["rank"] = std::stoi(*o.ssa_rank);
      } catch (const std::logic_error&) {
        throw SchemaError("--ssa-rank must be a positive integer or 'auto'");
      }
    }
  }
  if (o.ssa_renorm) j["ssa"]["renormalize"] = true;
}

int report(const std::exception& e, std::ostream& err) {
  Json j;
  int code = kExitError;
  if (const auto* u = dynamic_cast<const Error*>(&e)) {
    j["error"] = u->kind();
    if (dynamic_cast<const SchemaError*>(u)) code = kExitSchema;
    else if (dynamic_cast<const InfeasibleGrid*>(u)) code = kExitInfeasible;
    if (const auto* d = dynamic_cast<const DarkStateError*>(u)) {
      code = kExitDark;
      j["energy"] = d->energy();
      j["amplitude"] = d->amplitude();
    }
  } else {
    j["error"] = "internal";
  }
  j["message"] = e.what();
  j["exit_code"] = code;
  err << j.dump() << "\n";
  return code;
}

}  // namespace

Json make_manifest(const RunConfig& cfg, const Artifacts& files) {
  Json names = Json::array();
  for (const auto& [name, content] : files) names.push_back(name);
  return Json{{"version", kVersion},
              {"experiment", cfg.experiment},
              {"seed", cfg.noise.seed},
              {"config", to_json(cfg)},
              {"files", names}};
}

void write_run(const fs::path& dir, const RunConfig& cfg, const Artifacts& files) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [name, content] : files) write_file(dir / name, content);
  write_file(dir / "manifest.json", dump(make_manifest(cfg, files)));
}

RunConfig config_from_manifest(const Json& manifest) {
  if (!manifest.is_object() || !manifest.contains("version") || !manifest.contains("config")) {
    throw SchemaError("manifest: missing version or config");
  }
  if (manifest["version"] != kVersion) {
    throw SchemaError("manifest: version " + manifest["version"].dump() + " does not match " + kVersion);
  }
  return parse_config(manifest["config"]);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectroscopy of quantum auto-correlation functions on simulated circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  std::string out_dir = "out";
  Overrides ov;
  std::string manifest_path;
  std::string replay_out;

  std::vector<CLI::App*> experiment_cmds;
  for (const auto& name : kExperiments) {
    CLI::App* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--seed", ov.seed, "Master seed (overrides noise.seed)");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--shots", ov.shots, "Shots per part, or 'ideal'");
    sub->add_flag("--ssa", ov.ssa, "Enable singular spectrum denoising");
    sub->add_option("--ssa-length", ov.ssa_length, "SSA embedding length");
    sub->add_option("--ssa-rank", ov.ssa_rank, "SSA rank, or 'auto'");
    sub->add_flag("--ssa-renorm", ov.ssa_renorm, "Rescale the denoised series so |C(0)| = 1");
    experiment_cmds.push_back(sub);
  }
  CLI::App* replay = app.add_subcommand("replay", "Re-run a previous run from its manifest");
  replay->add_option("manifest", manifest_path, "manifest.json of a previous run")->required();
  replay->add_option("--out", replay_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << Json{{"error", "usage"}, {"message", e.what()}, {"exit_code", kExitSchema}}.dump() << "\n";
    return kExitSchema;
  }

  try {
    if (replay->parsed()) {
      const RunConfig cfg = config_from_manifest(read_json(manifest_path));
      write_run(replay_out, cfg, run_experiment(cfg));
      out << "wrote " << replay_out << "\n";
      return kExitOk;
    }
    for (CLI::App* sub : experiment_cmds) {
      if (!sub->parsed()) continue;
      Json j = read_json(config_path);
      apply_overrides(j, sub->get_name(), ov);
      const RunConfig cfg = parse_config(j);
      const Artifacts files = run_experiment(cfg);
      write_run(out_dir, cfg, files);
      out << "wrote " << out_dir << "\n";
      return kExitOk;
    }
  } catch (const std::exception& e) {
    return report(e, err);
  }
  return kExitError;
}

}  // namespace uqcs::cli
