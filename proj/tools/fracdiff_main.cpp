// Command-line driver. Everything goes through the C interface of libfracdiff.
//
//   fracdiff run <config> [--set key=value]...
//   fracdiff stability [--beta ...] [--schemes ...] [--n N]
//   fracdiff kernels dump [--beta ...] [--kinds ...] [--r-max R] [--points P]
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure, 1 other.

#include <fracdiff/fracdiff.h>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(fracdiff_status s) {
  switch (s) {
    case FRACDIFF_OK:
      return kExitOk;
    case FRACDIFF_ERR_CONFIG:
      return kExitConfig;
    case FRACDIFF_ERR_DOMAIN:
    case FRACDIFF_ERR_ACCURACY:
    case FRACDIFF_ERR_INSTABILITY:
    case FRACDIFF_ERR_UNSUPPORTED:
    case FRACDIFF_ERR_DEGENERATE:
      return kExitNumerical;
    default:
      return kExitOther;
  }
}

struct ConfigDeleter {
  void operator()(fracdiff_config* c) const { fracdiff_config_free(c); }
};
using ConfigPtr = std::unique_ptr<fracdiff_config, ConfigDeleter>;

// Carries a non-OK status out of nested helpers to main.
struct Failure {
  fracdiff_status status;
  std::string message;
};

void check(fracdiff_status s) {
  if (s != FRACDIFF_OK) throw Failure{s, fracdiff_last_error()};
}

void set(fracdiff_config* cfg, const std::string& key, const std::string& value) {
  check(fracdiff_config_set(cfg, key.c_str(), value.c_str()));
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{FRACDIFF_ERR_CONFIG, "cannot read configuration file " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Common {
  int threads = 0;
  std::string out_dir;
  std::string preset;
  bool experimental = false;
};

ConfigPtr make_config(const Common& common) {
  fracdiff_config* raw = nullptr;
  check(fracdiff_config_create(&raw));
  ConfigPtr cfg(raw);
  if (!common.preset.empty()) check(fracdiff_config_apply_preset(cfg.get(), common.preset.c_str()));
  return cfg;
}

// Command-line options override the document.
void apply_common(fracdiff_config* cfg, const Common& common) {
  if (common.threads > 0) set(cfg, "threads", std::to_string(common.threads));
  if (!common.out_dir.empty()) set(cfg, "out_dir", common.out_dir);
  if (common.experimental) set(cfg, "experimental", "true");
}

void execute(fracdiff_config* cfg) {
  check(fracdiff_config_validate(cfg));
  check(fracdiff_run(cfg, nullptr));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle schemes for 1D space-fractional diffusion"};
  app.set_version_flag("--version", std::string("fracdiff ") + fracdiff_version());
  app.require_subcommand(1);

  Common common;
  app.add_option("--threads", common.threads, "Worker threads for the interaction sums (0 = default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out-dir", common.out_dir, "Directory for the CSV outputs");
  app.add_option("--preset", common.preset, "Named parameter preset (reference, reference-small)");
  app.add_flag("--experimental", common.experimental, "Allow the experimental RLPSE scheme");

  auto* run = app.add_subcommand("run", "Run the study described by a key=value configuration file");
  std::string config_path;
  std::vector<std::string> overrides;
  run->add_option("config", config_path, "Configuration file ('-' for an empty document)")->required();
  run->add_option("--set", overrides, "Extra key=value setting, applied after the file");

  auto* stability = app.add_subcommand("stability", "Stability constants a = 2/(|lambda_min| h^alpha)");
  std::vector<std::string> stab_betas{"0.1", "0.5", "0.9"};
  std::vector<std::string> stab_schemes{"dd", "fpse", "kpse"};
  std::string stab_n = "2001";
  std::string stab_c = "20";
  std::string stab_tol;
  stability->add_option("--beta", stab_betas, "Values of beta")->delimiter(',');
  stability->add_option("--schemes", stab_schemes, "Rate schemes")->delimiter(',');
  stability->add_option("--n", stab_n, "Particle count (odd)");
  stability->add_option("--c", stab_c, "Domain width factor C");
  stability->add_option("--tol", stab_tol, "Power iteration tolerance");

  auto* kernels = app.add_subcommand("kernels", "Kernel utilities");
  kernels->require_subcommand(1);
  auto* dump = kernels->add_subcommand("dump", "Tabulate the kernels on [0, r_max] with eps = 1");
  std::vector<std::string> kern_betas{"0.1", "0.5", "0.9"};
  std::vector<std::string> kern_kinds;
  std::string r_max = "10";
  std::string points = "401";
  dump->add_option("--beta", kern_betas, "Values of beta")->delimiter(',');
  dump->add_option("--kinds", kern_kinds, "Kernel kinds (eta, eta1, phi, gd, kappa, f, k, e)")->delimiter(',');
  dump->add_option("--r-max", r_max, "Largest r");
  dump->add_option("--points", points, "Number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    auto cfg = make_config(common);
    if (*run) {
      if (config_path != "-") check(fracdiff_config_load(cfg.get(), read_file(config_path).c_str()));
      for (const auto& kv : overrides) check(fracdiff_config_load(cfg.get(), kv.c_str()));
    } else if (*stability) {
      set(cfg.get(), "study", "stability");
      set(cfg.get(), "betas", join(stab_betas));
      set(cfg.get(), "schemes", join(stab_schemes));
      set(cfg.get(), "n", stab_n);
      if (common.preset.empty()) set(cfg.get(), "c", stab_c);
      if (!stab_tol.empty()) set(cfg.get(), "tol", stab_tol);
    } else {
      set(cfg.get(), "study", "kernels");
      set(cfg.get(), "betas", join(kern_betas));
      if (!kern_kinds.empty()) set(cfg.get(), "kinds", join(kern_kinds));
      set(cfg.get(), "r_max", r_max);
      set(cfg.get(), "points", points);
    }
    apply_common(cfg.get(), common);
    execute(cfg.get());
  } catch (const Failure& f) {
    std::cerr << "fracdiff: " << fracdiff_status_name(f.status) << ": " << f.message << '\n';
    return exit_code(f.status);
  }
  return kExitOk;
}
