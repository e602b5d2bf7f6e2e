#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synth/gamp.hpp"
#include "synth/pipeline.hpp"
#include "synth/version.hpp"

namespace {

bool looks_like_manifest(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json";
}

synth::RunSpec load_spec(const std::string& config_path,
                         const std::vector<std::string>& overrides) {
  if (looks_like_manifest(config_path)) {
    if (!overrides.empty()) {
      throw synth::ConfigError("overrides are not supported with a manifest input");
    }
    return synth::spec_from_manifest(config_path);
  }
  synth::KeyValueMap kv = synth::load_config_file(config_path);
  for (const auto& o : overrides) synth::apply_override(kv, o);
  return synth::resolve_config(kv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatio-temporal probing waveform synthesis under phase-only DAC "
               "constraints"};
  app.set_version_flag("--version", synth::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  bool corrupt_dft = false;

  CLI::App* run = app.add_subcommand("run", "synthesize a waveform and write results");
  run->add_option("config", config_path,
                  "key=value config file, or a manifest.json from a previous run")
      ->required();
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--override", overrides, "key=value config override (repeatable)");

  CLI::App* verify = app.add_subcommand("verify", "run the fast property suite");
  verify->add_option("config", config_path, "key=value config file")->required();
  verify->add_flag("--corrupt-dft-sign", corrupt_dft,
                   "negative control: corrupt the forward DFT sign");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return synth::run_command(load_spec(config_path, overrides), out_dir);
    }
    const synth::RunSpec spec = load_spec(config_path, {});
    std::string report;
    const bool ok = synth::verify_command(spec, corrupt_dft, &report);
    std::cout << report;
    std::cout << (ok ? "all properties passed" : "some properties FAILED") << "\n";
    return ok ? 0 : 1;
  } catch (const synth::GampDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
