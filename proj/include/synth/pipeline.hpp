#pragma once

#include <map>
#include <string>
#include <vector>

#include "synth/config.hpp"
#include "synth/gamp.hpp"
#include "synth/metrics.hpp"

namespace synth {

// One synthesis run: the validated config plus the flat-pattern intensity.
struct RunSpec {
  RadarConfig cfg;
  double intensity = 1.0;
};

// Raw key=value view of a config file; '#' starts a comment, keys accept
// short aliases (N, T, b, fc, Ts, mu). Angles are written in degrees.
using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_config_text(const std::string& text);
KeyValueMap load_config_file(const std::string& path);

// "key=value" from --override; alias-aware, replaces the file's entry.
void apply_override(KeyValueMap& kv, const std::string& assignment);

// Resolves "auto" defaults (alpha = K*T, passband = [-T/4, T/4)) and
// validates. Throws ConfigError with the offending key.
RunSpec resolve_config(const KeyValueMap& kv);

// Reads the "config" snapshot out of a previously written manifest.
RunSpec spec_from_manifest(const std::string& path);

struct RunOutputs {
  SynthesisResult result;
  MetricsReport metrics;
  double duration_seconds = 0.0;
};

RunOutputs execute_run(const RunSpec& spec);

// Writes waveform/convergence/psd/autocorr/crosscorr/pattern CSVs and
// manifest.json into out_dir (created if missing).
void write_outputs(const RunSpec& spec, const RunOutputs& out, const std::string& out_dir);

// Full CLI run: 0 converged, 2 completed without convergence. Throws on error.
int run_command(const RunSpec& spec, const std::string& out_dir);

// Property suite behind `synth verify`; prints one line per property.
// corrupt_dft_sign is the negative control. Returns true when all pass.
bool verify_command(const RunSpec& spec, bool corrupt_dft_sign, std::string* report);

}
