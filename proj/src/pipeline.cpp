#include "synth/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <json.hpp>

#include "synth/kernels.hpp"
#include "synth/oracle.hpp"
#include "synth/version.hpp"

namespace synth {

namespace {

using nlohmann::json;

const std::map<std::string, std::string>& alias_map() {
  static const std::map<std::string, std::string> aliases = {
      {"N", "num_antennas"},   {"T", "num_samples"},
      {"fc", "center_freq_hz"}, {"Ts", "sample_interval_s"},
      {"b", "dac_bits"},        {"mu", "damping"},
  };
  return aliases;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "num_antennas", "num_samples",   "center_freq_hz", "sample_interval_s",
      "dac_bits",     "directions_deg", "damping",        "alpha",
      "max_iters",    "rel_tol",        "passband_lo",    "passband_hi",
      "seed",         "intensity",
  };
  return keys;
}

std::string canonical_key(const std::string& key) {
  auto it = alias_map().find(key);
  std::string canon = it != alias_map().end() ? it->second : key;
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), canon) == keys.end()) {
    throw ConfigError("unknown config key: " + key);
  }
  return canon;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse number '" + value + "'");
  }
}

long parse_long(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    long v = std::stol(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": cannot parse integer '" + value + "'");
  }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError(key + ": empty list");
  return out;
}

}  // namespace

KeyValueMap parse_config_text(const std::string& text) {
  KeyValueMap kv;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    kv[canonical_key(key)] = value;
  }
  return kv;
}

KeyValueMap load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_override(KeyValueMap& kv, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + assignment + "': expected key=value");
  }
  kv[canonical_key(trim(assignment.substr(0, eq)))] = trim(assignment.substr(eq + 1));
}

RunSpec resolve_config(const KeyValueMap& kv) {
  RunSpec spec;
  RadarConfig& cfg = spec.cfg;

  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto require = [&](const char* key) -> const std::string& {
    const std::string* v = get(key);
    if (v == nullptr) throw ConfigError(std::string(key) + ": required key missing");
    return *v;
  };

  cfg.num_antennas = static_cast<std::size_t>(parse_long("num_antennas",
                                                         require("num_antennas")));
  cfg.num_samples = static_cast<std::size_t>(parse_long("num_samples",
                                                        require("num_samples")));
  const auto deg = parse_list("directions_deg", require("directions_deg"));
  cfg.directions.clear();
  for (double d : deg) cfg.directions.push_back(d * std::numbers::pi / 180.0);

  if (const auto* v = get("center_freq_hz")) cfg.center_freq_hz = parse_double("center_freq_hz", *v);
  if (const auto* v = get("sample_interval_s")) cfg.sample_interval_s = parse_double("sample_interval_s", *v);
  if (const auto* v = get("dac_bits")) cfg.dac_bits = static_cast<unsigned>(parse_long("dac_bits", *v));
  if (const auto* v = get("damping")) cfg.damping = parse_double("damping", *v);
  if (const auto* v = get("max_iters")) cfg.max_iters = static_cast<std::size_t>(parse_long("max_iters", *v));
  if (const auto* v = get("rel_tol")) cfg.rel_tol = parse_double("rel_tol", *v);
  if (const auto* v = get("seed")) cfg.seed = parse_long("seed", *v);
  if (const auto* v = get("intensity")) spec.intensity = parse_double("intensity", *v);

  if (const auto* v = get("alpha"); v != nullptr && *v != "auto") {
    cfg.alpha = parse_double("alpha", *v);
  } else {
    cfg.alpha = -1.0;  // resolved to K*T
  }

  const auto* plo = get("passband_lo");
  const auto* phi = get("passband_hi");
  const bool lo_auto = plo == nullptr || *plo == "auto";
  const bool hi_auto = phi == nullptr || *phi == "auto";
  const long quarter = static_cast<long>(cfg.num_samples / 4);
  cfg.passband_lo = lo_auto ? -quarter : parse_long("passband_lo", *plo);
  cfg.passband_hi = hi_auto ? quarter : parse_long("passband_hi", *phi);

  validate_config(cfg);
  if (!(spec.intensity > 0.0) || !std::isfinite(spec.intensity)) {
    throw ConfigError("intensity: must be positive and finite");
  }
  return spec;
}

RunSpec spec_from_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open manifest: " + path);
  json m = json::parse(in);
  const json& c = m.at("config");
  RunSpec spec;
  RadarConfig& cfg = spec.cfg;
  cfg.num_antennas = c.at("num_antennas").get<std::size_t>();
  cfg.num_samples = c.at("num_samples").get<std::size_t>();
  cfg.center_freq_hz = c.at("center_freq_hz").get<double>();
  cfg.sample_interval_s = c.at("sample_interval_s").get<double>();
  cfg.dac_bits = c.at("dac_bits").get<unsigned>();
  cfg.directions = c.at("directions_rad").get<std::vector<double>>();
  cfg.damping = c.at("damping").get<double>();
  cfg.alpha = c.at("alpha").get<double>();
  cfg.max_iters = c.at("max_iters").get<std::size_t>();
  cfg.rel_tol = c.at("rel_tol").get<double>();
  cfg.passband_lo = c.at("passband_lo").get<long>();
  cfg.passband_hi = c.at("passband_hi").get<long>();
  cfg.seed = c.at("seed").get<std::int64_t>();
  spec.intensity = c.at("intensity").get<double>();
  validate_config(cfg);
  return spec;
}

RunOutputs execute_run(const RunSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  RunOutputs out;
  BeamOperator op = make_beam_operator(spec.cfg);
  const DesiredPattern d = build_flat_pattern(spec.cfg, spec.intensity);
  out.result = solve(spec.cfg, op, d);
  out.metrics = compute_metrics(out.result.x_sol, spec.cfg, op.steering());
  out.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path) {
    f_ = std::fopen(path.string().c_str(), "wb");
    if (f_ == nullptr) {
      throw std::runtime_error("cannot write " + path.string());
    }
  }
  ~CsvFile() {
    if (f_ != nullptr) std::fclose(f_);
  }
  CsvFile(const CsvFile&) = delete;
  CsvFile& operator=(const CsvFile&) = delete;

  void header(const char* s) { std::fputs(s, f_); }
  void line(const char* fmt, auto... args) { std::fprintf(f_, fmt, args...); }

 private:
  std::FILE* f_ = nullptr;
};

json config_snapshot(const RunSpec& spec) {
  const RadarConfig& cfg = spec.cfg;
  return json{
      {"num_antennas", cfg.num_antennas},
      {"num_samples", cfg.num_samples},
      {"center_freq_hz", cfg.center_freq_hz},
      {"sample_interval_s", cfg.sample_interval_s},
      {"dac_bits", cfg.dac_bits},
      {"directions_rad", cfg.directions},
      {"damping", cfg.damping},
      {"alpha", cfg.resolved_alpha()},
      {"max_iters", cfg.max_iters},
      {"rel_tol", cfg.rel_tol},
      {"passband_lo", cfg.passband_lo},
      {"passband_hi", cfg.passband_hi},
      {"seed", cfg.seed},
      {"intensity", spec.intensity},
  };
}

}  // namespace

void write_outputs(const RunSpec& spec, const RunOutputs& out,
                   const std::string& out_dir) {
  namespace fs = std::filesystem;
  const RadarConfig& cfg = spec.cfg;
  const std::size_t T = cfg.num_samples;
  const std::size_t K = cfg.num_directions();
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  {
    CsvFile f(dir / "waveform.csv");
    f.header("index,real,imag,constellation_index\n");
    for (std::size_t i = 0; i < out.result.x_sol.size(); ++i) {
      f.line("%zu,%.17g,%.17g,%d\n", i, out.result.x_sol[i].real(),
             out.result.x_sol[i].imag(), out.result.x_indices[i]);
    }
  }
  {
    CsvFile f(dir / "convergence.csv");
    f.header("iteration,cost,beta_real,beta_imag\n");
    for (std::size_t i = 0; i < out.result.cost_trace.size(); ++i) {
      f.line("%zu,%.17g,%.17g,%.17g\n", i + 1, out.result.cost_trace[i],
             out.result.beta_trace[i].real(), out.result.beta_trace[i].imag());
    }
  }
  {
    CsvFile f(dir / "psd.csv");
    f.header("freq_index,freq_offset_hz,power_db\n");
    for (std::size_t p = 0; p < T; ++p) {
      const long m = freq_index(p, T);
      const double hz = static_cast<double>(m) /
                        (static_cast<double>(T) * cfg.sample_interval_s);
      f.line("%ld,%.17g,%.17g\n", m, hz, out.metrics.psd_db_values[p]);
    }
  }
  {
    CsvFile f(dir / "autocorr.csv");
    f.header("lag,direction,value_db\n");
    for (std::size_t k = 0; k < K; ++k) {
      for (long lag = freq_lo(T); lag < freq_hi(T); ++lag) {
        const std::size_t tau =
            static_cast<std::size_t>((lag + static_cast<long>(T)) % static_cast<long>(T));
        f.line("%ld,%zu,%.17g\n", lag, k + 1, out.metrics.corr.auto_at(k, tau));
      }
    }
  }
  {
    CsvFile f(dir / "crosscorr.csv");
    f.header("lag,direction_a,direction_b,value_db\n");
    for (std::size_t k = 0; k < K; ++k) {
      for (std::size_t l = k + 1; l < K; ++l) {
        for (long lag = freq_lo(T); lag < freq_hi(T); ++lag) {
          const std::size_t tau = static_cast<std::size_t>(
              (lag + static_cast<long>(T)) % static_cast<long>(T));
          f.line("%ld,%zu,%zu,%.17g\n", lag, k + 1, l + 1,
                 out.metrics.corr.cross_at(k, l, tau));
        }
      }
    }
  }
  {
    CsvFile f(dir / "pattern.csv");
    f.header("angle_rad,gain_db\n");
    for (std::size_t g = 0; g < out.metrics.angle_grid.size(); ++g) {
      f.line("%.17g,%.17g\n", out.metrics.angle_grid[g],
             out.metrics.pattern_db_values[g]);
    }
  }

  json manifest{
      {"tool", "synth"},
      {"version", kVersion},
      {"kernel", kernels::active_kernels().name},
      {"config", config_snapshot(spec)},
      {"seed", cfg.seed},
      {"duration_seconds", out.duration_seconds},
      {"converged", out.result.converged},
      {"iterations", out.result.iterations},
      {"final_cost", out.result.final_cost},
      {"final_cost_normalized",
       out.result.final_cost /
           std::max(build_flat_pattern(cfg, spec.intensity).total(), 1e-300)},
      {"beta_final",
       {{"re", out.result.beta_final.real()}, {"im", out.result.beta_final.imag()}}},
      {"oob_suppression_db", std::isfinite(out.metrics.oob_db)
                                 ? json(out.metrics.oob_db)
                                 : json(nullptr)},
      {"peak_crosscorr_db", std::isfinite(out.metrics.peak_cross_db)
                                ? json(out.metrics.peak_cross_db)
                                : json(nullptr)},
      {"peak_autocorr_sidelobe_db",
       std::isfinite(out.metrics.peak_auto_sidelobe_db)
           ? json(out.metrics.peak_auto_sidelobe_db)
           : json(nullptr)},
      {"constants",
       {{"theta0", GampConstants::kTheta0},
        {"clamp_eps", GampConstants::kClampEps},
        {"rel_tol", cfg.rel_tol},
        {"db_floor", kDbFloor},
        {"tie_break", "lowest-index"},
        {"arg_of_zero", "zero"},
        {"correlation", "circular, 20*log10 normalized magnitude"},
        {"pattern",
         "sum over bins of |a(m,phi)^T X_F[m]|^2, max-normalized (library "
         "reconstruction)"}}},
  };
  std::ofstream mf(dir / "manifest.json", std::ios::binary);
  mf << manifest.dump(2) << "\n";
}

int run_command(const RunSpec& spec, const std::string& out_dir) {
  RunOutputs out = execute_run(spec);
  write_outputs(spec, out, out_dir);
  return out.result.converged ? 0 : 2;
}

}
