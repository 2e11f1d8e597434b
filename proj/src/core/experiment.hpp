#pragma once

// Experiment driver: a flat key=value configuration, validated up front, and the
// studies that turn it into CSV files.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "schemes.hpp"
#include "timeint.hpp"

namespace fracdiff {

enum class StudyKind { Single, DomainSweep, SpaceSweep, TimeSweep, Stability, Kernels };

std::string_view study_name(StudyKind kind);
std::optional<StudyKind> parse_study(std::string_view name);

struct ExperimentConfig {
  SchemeKind scheme = SchemeKind::DD;
  double beta = 0.5;
  double c = 160.0;
  std::optional<double> d;  // explicit half width; replaces the width rule
  std::size_t n = 32001;
  double overlap = 2.0;
  RkOrder integrator = RkOrder::RK1;
  double dt = 5e-5;
  double t0 = 0.5;
  double tf = 1.5;
  StudyKind study = StudyKind::Single;
  std::string out_dir = ".";
  std::uint64_t seed = 20240607;
  int threads = 0;  // 0 keeps the OpenMP default
  bool experimental = false;
  std::optional<double> cutoff;
  double d_eps_factor = 5.0;  // error window half width in units of R_alpha

  // domain_sweep: width factors at a fixed spacing h (h from c and n when unset)
  std::vector<double> c_values{10.0, 20.0, 40.0};
  std::optional<double> h;

  // stability
  std::vector<double> betas{0.1, 0.5, 0.9};
  std::vector<SchemeKind> schemes{SchemeKind::DD, SchemeKind::FPSE, SchemeKind::KPSE};
  double tol = 1e-8;
  std::size_t max_iter = 50000;

  // kernels
  std::vector<kernels::KernelKind> kinds;  // empty: all kinds
  double r_max = 10.0;
  std::size_t points = 401;

  // Keys given explicitly (by a document or set()), as opposed to defaults or presets.
  std::set<std::string> explicit_keys;

  static ExperimentConfig parse(std::string_view text);
  static const std::vector<std::string>& known_keys();

  // Parses whitespace- or newline-separated key=value tokens into this config;
  // `#` starts a comment running to the end of the line.
  void load(std::string_view text);
  void set(const std::string& key, const std::string& value);
  void apply_preset(std::string_view name);

  // Cross-key consistency; throws ConfigError naming the key at fault.
  void validate() const;

  // Time step actually used (GPSE defaults to 1e-2 unless dt was given).
  double effective_dt() const;
  // Half width D: explicit d, or the width rule C t_f^{1/alpha} R_alpha.
  double half_width() const;
  // Smoothing length of the run: overlap h, or dt^{1/alpha} for GPSE.
  double epsilon() const;
  FractionalOrder order() const { return FractionalOrder::from_beta(beta); }

  // One "# key=value" line per setting.
  std::string echo() const;
};

struct RunOutcome {
  std::vector<std::filesystem::path> files;
};

// Runs the configured study, writing its CSV files into `out_dir` (created if
// needed). Numerical failures propagate as exceptions after any partial output
// has been written and flagged.
RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);
RunOutcome run_experiment(const ExperimentConfig& config);

}  // namespace fracdiff
