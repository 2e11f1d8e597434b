#include "experiment.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "analysis.hpp"
#include "errors.hpp"
#include "greens.hpp"
#include "kernels.hpp"
#include "summation.hpp"

namespace fracdiff {

namespace {

constexpr std::pair<StudyKind, std::string_view> kStudyNames[] = {
    {StudyKind::Single, "single"},         {StudyKind::DomainSweep, "domain_sweep"},
    {StudyKind::SpaceSweep, "space_sweep"}, {StudyKind::TimeSweep, "time_sweep"},
    {StudyKind::Stability, "stability"},   {StudyKind::Kernels, "kernels"},
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(value);
  while (std::getline(is, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double x = 0.0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
    throw ConfigError(key, "expected a finite number, got '" + value + "'");
  }
  return x;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t x = 0;
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, x);
  if (ec != std::errc() || ptr != end) throw ConfigError(key, "expected a non-negative integer, got '" + value + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

SchemeKind to_scheme(const std::string& key, const std::string& value) {
  if (auto k = parse_scheme(value)) return *k;
  throw ConfigError(key, "unknown scheme '" + value + "'");
}

std::string join_doubles(const std::vector<double>& xs) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  return os.str();
}

// ---------------------------------------------------------------------------
// CSV output

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const ExperimentConfig& config) : path_(path), out_(path) {
    if (!out_) throw IoError("cannot open " + path.string() + " for writing");
    out_.precision(17);
    out_ << "# fracdiff " << FRACDIFF_VERSION << '\n' << config.echo();
  }

  std::ostream& stream() { return out_; }
  const std::filesystem::path& path() const { return path_; }

  void close() {
    out_.close();
    if (!out_) throw IoError("failed writing " + path_.string());
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// ---------------------------------------------------------------------------
// Simulation plumbing shared by the studies

struct Simulation {
  ParticleField initial;
  std::optional<ParticleField> final;
  std::vector<double> totals;
  std::optional<std::size_t> diverged_at;
  std::string failure;
  double time = 0.0;  // time of `final`
};

ParticleField make_field(const ExperimentConfig& cfg, const greens::ReducedGreen& green, const DomainSpec& domain,
                         double dt) {
  const auto order = cfg.order();
  double overlap = cfg.overlap;
  if (cfg.scheme == SchemeKind::GPSE) {
    // The GPSE stepper carries its own smoothing length dt^{1/alpha}; the field's
    // epsilon only matters for reconstruction and is matched to it here.
    overlap = std::max(1.0, std::pow(dt, order.gamma()) / domain.spacing());
  }
  return init_uniform(domain, order, overlap, [&](double x) { return greens::green_function(green, x, cfg.t0); });
}

Simulation simulate(const ExperimentConfig& cfg, const ParticleField& initial, double dt, RkOrder rk) {
  Simulation sim{initial, std::nullopt, {}, std::nullopt, {}, cfg.tf};
  IntegratorSpec spec;
  spec.order = rk;
  spec.dt = dt;
  spec.t0 = cfg.t0;
  spec.tf = cfg.tf;
  SchemeOptions options;
  options.interaction.cutoff_radius = cfg.cutoff;
  std::vector<double> last(initial.strengths().begin(), initial.strengths().end());
  double last_time = cfg.t0;
  auto observer = [&](std::size_t, double t, std::span<const double> u) {
    CompensatedSum s;
    for (std::size_t i = 0; i < u.size(); ++i) s.add(u[i] * initial.volumes()[i]);
    sim.totals.push_back(s.value());
    last.assign(u.begin(), u.end());
    last_time = t;
  };
  try {
    sim.final = integrate(initial, cfg.scheme, spec, observer, options);
  } catch (const InstabilityError& e) {
    sim.diverged_at = e.step();
    sim.failure = e.what();
    sim.final = initial.with_strengths(std::move(last));
    sim.time = last_time;
  }
  return sim;
}

DomainSpec domain_for(const ExperimentConfig& cfg, std::size_t n) {
  if (cfg.d) {
    DomainSpec d;
    d.half_width = *cfg.d;
    d.n_particles = n;
    d.validate();
    return d;
  }
  return DomainSpec::from_width_rule(cfg.c, cfg.tf, cfg.order(), n);
}

std::filesystem::path snapshot_path(const std::filesystem::path& dir, std::string_view tag) {
  return dir / ("snapshot_" + std::string(tag) + ".csv");
}

void write_snapshot(const std::filesystem::path& path, const ExperimentConfig& cfg, const ParticleField& field,
                    const greens::ReducedGreen& green, double t, bool partial) {
  CsvFile csv(path, cfg);
  if (partial) csv.stream() << "# status=diverged (last finite state before the divergence guard fired)\n";
  std::vector<double> exact;
  exact.reserve(field.size());
  for (double x : field.positions()) exact.push_back(greens::green_function(green, x, t));
  write_snapshot_csv(csv.stream(), field, SnapshotInfo{t, std::move(exact)});
  csv.close();
}

[[noreturn]] void rethrow_divergence(const Simulation& sim) { throw InstabilityError(sim.failure, *sim.diverged_at); }

// ---------------------------------------------------------------------------
// Studies

void run_single(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome) {
  const auto order = cfg.order();
  const greens::ReducedGreen green(order);
  const double dt = cfg.effective_dt();
  const auto domain = domain_for(cfg, cfg.n);
  const auto field = make_field(cfg, green, domain, dt);
  const auto sim = simulate(cfg, field, dt, cfg.integrator);
  const double d_eps = cfg.d_eps_factor * greens::characteristic_width(order);
  const bool diverged = sim.diverged_at.has_value();

  const auto snap = snapshot_path(dir, scheme_name(cfg.scheme));
  write_snapshot(snap, cfg, *sim.final, green, sim.time, diverged);
  outcome.files.push_back(snap);

  CsvFile report(dir / "report.csv", cfg);
  auto& os = report.stream();
  os << "scheme,beta,N,D,h,eps,dt,t_final,d_eps,rel_l1,drift,status\n";
  os << scheme_name(cfg.scheme) << ',' << cfg.beta << ',' << domain.n_particles << ',' << domain.half_width << ','
     << domain.spacing() << ',' << sim.final->epsilon() << ',' << dt << ',' << cfg.tf << ',' << d_eps << ',';
  if (diverged) {
    os << "nan,nan,diverged_at_step_" << *sim.diverged_at << '\n';
  } else {
    os << rel_l1_error(*sim.final, green, cfg.tf, d_eps) << ',' << conservation_drift(sim.totals) << ",ok\n";
  }
  report.close();
  outcome.files.push_back(report.path());
  if (diverged) rethrow_divergence(sim);
}

void run_domain_sweep(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome) {
  const auto order = cfg.order();
  const greens::ReducedGreen green(order);
  const double r_alpha = greens::characteristic_width(order);
  const double dt = cfg.effective_dt();
  const double h = cfg.h ? *cfg.h : domain_for(cfg, cfg.n).spacing();
  const double d_eps = cfg.d_eps_factor * r_alpha;

  CsvFile csv(dir / "domain_sweep.csv", cfg);
  outcome.files.push_back(csv.path());
  auto& os = csv.stream();
  os << "scheme,beta,C,N,D,h,dt,rel_l1,drift,status\n";
  for (double c : cfg.c_values) {
    // Keep h fixed: D is rounded to a whole number of spacings, N = 2m + 1.
    const double d_rule = c * std::pow(cfg.tf, order.gamma()) * r_alpha;
    const auto m = static_cast<std::size_t>(std::llround(d_rule / h));
    DomainSpec domain;
    domain.half_width = static_cast<double>(m) * h;
    domain.n_particles = 2 * m + 1;
    domain.width_rule_c = c;
    domain.validate();
    const auto field = make_field(cfg, green, domain, dt);
    const auto sim = simulate(cfg, field, dt, cfg.integrator);
    os << scheme_name(cfg.scheme) << ',' << cfg.beta << ',' << c << ',' << domain.n_particles << ','
       << domain.half_width << ',' << h << ',' << dt << ',';
    if (sim.diverged_at) {
      os << "nan,nan,diverged_at_step_" << *sim.diverged_at << '\n';
      csv.close();
      rethrow_divergence(sim);
    }
    const double window = std::min(d_eps, domain.half_width);
    os << rel_l1_error(*sim.final, green, cfg.tf, window) << ',' << conservation_drift(sim.totals) << ",ok\n";
    os.flush();
  }
  csv.close();
}

struct Level {
  double parameter;
  std::size_t n;
  double dt;
};

void run_convergence(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome,
                     const std::vector<Level>& levels, const char* file, const char* parameter_name) {
  const auto order = cfg.order();
  const greens::ReducedGreen green(order);
  const double d_eps = cfg.d_eps_factor * greens::characteristic_width(order);

  std::vector<ConvergenceLevel> results;
  std::vector<double> errors, drifts;
  std::vector<std::size_t> sizes;
  for (const auto& level : levels) {
    const auto domain = domain_for(cfg, level.n);
    const auto field = make_field(cfg, green, domain, level.dt);
    const auto sim = simulate(cfg, field, level.dt, cfg.integrator);
    if (sim.diverged_at) {
      CsvFile csv(dir / file, cfg);
      csv.stream() << "# status=diverged at " << parameter_name << '=' << level.parameter << '\n';
      csv.close();
      outcome.files.push_back(csv.path());
      rethrow_divergence(sim);
    }
    const auto x = sim.final->positions();
    const auto u = sim.final->strengths();
    results.push_back({level.parameter, {x.begin(), x.end()}, {u.begin(), u.end()}});
    errors.push_back(rel_l1_error(*sim.final, green, cfg.tf, d_eps));
    drifts.push_back(conservation_drift(sim.totals));
    sizes.push_back(level.n);
  }
  const double p = self_convergence_order(results);

  CsvFile csv(dir / file, cfg);
  auto& os = csv.stream();
  os << "scheme,beta,level," << parameter_name << ",N,rel_l1,drift,p\n";
  for (std::size_t l = 0; l < levels.size(); ++l) {
    os << scheme_name(cfg.scheme) << ',' << cfg.beta << ',' << l << ',' << levels[l].parameter << ',' << sizes[l]
       << ',' << errors[l] << ',' << drifts[l] << ',' << p << '\n';
  }
  csv.close();
  outcome.files.push_back(csv.path());
}

void run_space_sweep(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome) {
  const double dt = cfg.effective_dt();
  std::vector<Level> levels;
  std::size_t n = cfg.n;
  for (int l = 0; l < 3; ++l) {
    levels.push_back({domain_for(cfg, n).spacing(), n, dt});
    n = 2 * n - 1;
  }
  run_convergence(cfg, dir, outcome, levels, "space_sweep.csv", "h");
}

void run_time_sweep(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome) {
  double dt = cfg.effective_dt();
  std::vector<Level> levels;
  for (int l = 0; l < 3; ++l) {
    levels.push_back({dt, cfg.n, dt});
    dt *= 0.5;
  }
  run_convergence(cfg, dir, outcome, levels, "time_sweep.csv", "dt");
}

void run_stability(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome) {
  CsvFile csv(dir / "stability.csv", cfg);
  outcome.files.push_back(csv.path());
  auto& os = csv.stream();
  os << "beta,scheme,N,lambda_min,a\n";
  PowerIterationOptions options;
  options.tol = cfg.tol;
  options.max_iter = cfg.max_iter;
  options.seed = cfg.seed;
  for (double beta : cfg.betas) {
    ExperimentConfig per = cfg;
    per.beta = beta;
    const auto order = per.order();
    const auto domain = domain_for(per, per.n);
    const auto field = init_uniform(domain, order, per.overlap, [](double) { return 0.0; });
    for (SchemeKind kind : cfg.schemes) {
      const auto report = power_iteration_min_eig(field, kind, options);
      os << beta << ',' << scheme_name(kind) << ',' << domain.n_particles << ',' << report.lambda_min << ','
         << report.a_constant << '\n';
      os.flush();
    }
  }
  csv.close();
}

void run_kernels(const ExperimentConfig& cfg, const std::filesystem::path& dir, RunOutcome& outcome) {
  CsvFile csv(dir / "kernels.csv", cfg);
  outcome.files.push_back(csv.path());
  auto& os = csv.stream();
  os << "kind,beta,r,value\n";
  std::vector<kernels::KernelKind> kinds = cfg.kinds;
  if (kinds.empty()) kinds.assign(std::begin(kernels::kAllKinds), std::end(kernels::kAllKinds));
  const std::size_t last = cfg.points - 1;
  for (double beta : cfg.betas) {
    const auto order = FractionalOrder::from_beta(beta);
    for (auto kind : kinds) {
      const kernels::KernelEvaluator k(kernels::KernelSpec{kind, order, 1.0});
      for (std::size_t i = 0; i <= last; ++i) {
        const double r = cfg.r_max * static_cast<double>(i) / static_cast<double>(last);
        os << kernels::kind_name(kind) << ',' << beta << ',' << r << ',' << k(r) << '\n';
      }
    }
  }
  csv.close();
}

}  // namespace

std::string_view study_name(StudyKind kind) {
  for (const auto& [k, name] : kStudyNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<StudyKind> parse_study(std::string_view name) {
  for (const auto& [k, n] : kStudyNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

const std::vector<std::string>& ExperimentConfig::known_keys() {
  static const std::vector<std::string> keys{
      "scheme", "beta",    "c",       "d",     "n",     "overlap", "integrator", "dt",           "t0",
      "tf",     "study",   "out_dir", "seed",  "threads", "experimental", "cutoff", "d_eps_factor", "c_values",
      "h",      "betas",   "schemes", "tol",   "max_iter", "kinds", "r_max",   "points"};
  return keys;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig cfg;
  cfg.load(text);
  cfg.validate();
  return cfg;
}

void ExperimentConfig::load(std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0) throw ConfigError(token, "expected key=value");
      set(token.substr(0, eq), token.substr(eq + 1));
    }
  }
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (value.empty()) throw ConfigError(key, "empty value");
  if (key == "scheme") {
    scheme = to_scheme(key, value);
  } else if (key == "beta") {
    beta = to_double(key, value);
  } else if (key == "c") {
    c = to_double(key, value);
  } else if (key == "d") {
    d = to_double(key, value);
  } else if (key == "n") {
    n = static_cast<std::size_t>(to_unsigned(key, value));
  } else if (key == "overlap") {
    overlap = to_double(key, value);
  } else if (key == "integrator") {
    if (value == "rk1") {
      integrator = RkOrder::RK1;
    } else if (value == "rk2") {
      integrator = RkOrder::RK2;
    } else {
      throw ConfigError(key, "expected rk1 or rk2, got '" + value + "'");
    }
  } else if (key == "dt") {
    dt = to_double(key, value);
  } else if (key == "t0") {
    t0 = to_double(key, value);
  } else if (key == "tf") {
    tf = to_double(key, value);
  } else if (key == "study") {
    const auto s = parse_study(value);
    if (!s) throw ConfigError(key, "unknown study '" + value + "'");
    study = *s;
  } else if (key == "out_dir") {
    out_dir = value;
  } else if (key == "seed") {
    seed = to_unsigned(key, value);
  } else if (key == "threads") {
    threads = static_cast<int>(to_unsigned(key, value));
  } else if (key == "experimental") {
    experimental = to_bool(key, value);
  } else if (key == "cutoff") {
    cutoff = to_double(key, value);
  } else if (key == "d_eps_factor") {
    d_eps_factor = to_double(key, value);
  } else if (key == "c_values") {
    c_values.clear();
    for (const auto& item : split_list(value)) c_values.push_back(to_double(key, item));
  } else if (key == "h") {
    h = to_double(key, value);
  } else if (key == "betas") {
    betas.clear();
    for (const auto& item : split_list(value)) betas.push_back(to_double(key, item));
  } else if (key == "schemes") {
    schemes.clear();
    for (const auto& item : split_list(value)) schemes.push_back(to_scheme(key, item));
  } else if (key == "tol") {
    tol = to_double(key, value);
  } else if (key == "max_iter") {
    max_iter = static_cast<std::size_t>(to_unsigned(key, value));
  } else if (key == "kinds") {
    kinds.clear();
    if (value == "all") {
      explicit_keys.insert(key);
      return;
    }
    for (const auto& item : split_list(value)) {
      const auto k = kernels::parse_kind(item);
      if (!k) throw ConfigError(key, "unknown kernel '" + item + "'");
      kinds.push_back(*k);
    }
  } else if (key == "r_max") {
    r_max = to_double(key, value);
  } else if (key == "points") {
    points = static_cast<std::size_t>(to_unsigned(key, value));
  } else {
    throw ConfigError(key, "unknown key");
  }
  explicit_keys.insert(key);
}

void ExperimentConfig::apply_preset(std::string_view name) {
  if (name == "reference-small") {
    c = 20.0;
    n = 4001;
    d.reset();
  } else if (name == "reference") {
    c = 160.0;
    n = 32001;
    d.reset();
  } else {
    throw ConfigError("preset", "unknown preset '" + std::string(name) + "'");
  }
}

void ExperimentConfig::validate() const {
  auto check_beta = [](const char* key, double b) {
    if (!(b > 0.0 && b < 1.0)) throw ConfigError(key, "beta must lie in (0, 1)");
  };
  check_beta("beta", beta);
  for (double b : betas) check_beta("betas", b);
  if (betas.empty()) throw ConfigError("betas", "list is empty");
  if (!(c > 0.0)) throw ConfigError("c", "width factor must be positive");
  if (d && !(*d > 0.0)) throw ConfigError("d", "half width must be positive");
  if (d && explicit_keys.count("c")) throw ConfigError("d", "set either c or d, not both");
  if (n < 3) throw ConfigError("n", "need at least 3 particles");
  if (n % 2 == 0) throw ConfigError("n", "particle count must be odd so that a particle sits at x = 0");
  if (!(overlap >= 1.0)) throw ConfigError("overlap", "overlap eps/h must be at least 1");
  if (scheme == SchemeKind::GPSE && explicit_keys.count("overlap")) {
    throw ConfigError("overlap", "GPSE derives its smoothing length from dt; overlap cannot be set independently");
  }
  if (scheme == SchemeKind::RLPSE && !experimental) {
    throw ConfigError("scheme", "RLPSE is experimental; enable it with experimental=true");
  }
  if (!(t0 > 0.0)) throw ConfigError("t0", "initial time must be positive (the fundamental solution is singular at 0)");
  IntegratorSpec spec;
  spec.order = integrator;
  spec.dt = effective_dt();
  spec.t0 = t0;
  spec.tf = tf;
  if (study != StudyKind::Stability && study != StudyKind::Kernels) spec.validate();
  if (!(d_eps_factor > 0.0)) throw ConfigError("d_eps_factor", "must be positive");
  if (cutoff && !(*cutoff > 0.0)) throw ConfigError("cutoff", "must be positive");
  if (h && !(*h > 0.0)) throw ConfigError("h", "must be positive");
  if (c_values.empty()) throw ConfigError("c_values", "list is empty");
  for (double v : c_values) {
    if (!(v > 0.0)) throw ConfigError("c_values", "width factors must be positive");
  }
  if (study == StudyKind::DomainSweep && d) throw ConfigError("d", "domain_sweep varies C; d cannot be fixed");
  if (schemes.empty()) throw ConfigError("schemes", "list is empty");
  for (SchemeKind k : schemes) {
    if (!is_rate_scheme(k)) throw ConfigError("schemes", "stability analysis covers rate schemes only");
    if (k == SchemeKind::RLPSE && !experimental) throw ConfigError("schemes", "RLPSE requires experimental=true");
  }
  if (!(tol > 0.0)) throw ConfigError("tol", "must be positive");
  if (max_iter == 0) throw ConfigError("max_iter", "must be positive");
  if (!(r_max > 0.0)) throw ConfigError("r_max", "must be positive");
  if (points < 2) throw ConfigError("points", "need at least 2 points");
}

double ExperimentConfig::effective_dt() const {
  if (scheme == SchemeKind::GPSE && !explicit_keys.count("dt")) return 1e-2;
  return dt;
}

double ExperimentConfig::half_width() const {
  return d ? *d : DomainSpec::from_width_rule(c, tf, order(), n).half_width;
}

double ExperimentConfig::epsilon() const {
  if (scheme == SchemeKind::GPSE) return std::pow(effective_dt(), order().gamma());
  return overlap * 2.0 * half_width() / static_cast<double>(n - 1);
}

std::string ExperimentConfig::echo() const {
  std::ostringstream os;
  os.precision(17);
  os << "# scheme=" << scheme_name(scheme) << '\n'
     << "# beta=" << beta << '\n';
  if (d) {
    os << "# d=" << *d << '\n';
  } else {
    os << "# c=" << c << '\n';
  }
  os << "# n=" << n << '\n';
  // GPSE ties its smoothing length to dt, so overlap is not a setting there
  if (scheme != SchemeKind::GPSE) os << "# overlap=" << overlap << '\n';
  os << "# integrator=" << (integrator == RkOrder::RK1 ? "rk1" : "rk2") << '\n'
     << "# dt=" << effective_dt() << '\n'
     << "# t0=" << t0 << '\n'
     << "# tf=" << tf << '\n'
     << "# study=" << study_name(study) << '\n'
     << "# seed=" << seed << '\n'
     << "# threads=" << threads << '\n'
     << "# experimental=" << (experimental ? "true" : "false") << '\n'
     << "# d_eps_factor=" << d_eps_factor << '\n';
  if (cutoff) os << "# cutoff=" << *cutoff << '\n';
  switch (study) {
    case StudyKind::DomainSweep:
      os << "# c_values=" << join_doubles(c_values) << '\n';
      if (h) os << "# h=" << *h << '\n';
      break;
    case StudyKind::Stability: {
      os << "# betas=" << join_doubles(betas) << "\n# schemes=";
      for (std::size_t i = 0; i < schemes.size(); ++i) os << (i ? "," : "") << scheme_name(schemes[i]);
      os << "\n# tol=" << tol << "\n# max_iter=" << max_iter << '\n';
      break;
    }
    case StudyKind::Kernels: {
      os << "# betas=" << join_doubles(betas) << "\n# kinds=";
      if (kinds.empty()) os << "all";
      for (std::size_t i = 0; i < kinds.size(); ++i) os << (i ? "," : "") << kernels::kind_name(kinds[i]);
      os << "\n# r_max=" << r_max << "\n# points=" << points << '\n';
      break;
    }
    default:
      break;
  }
  return os.str();
}

RunOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir.string() + ": " + ec.message());
  if (config.threads > 0) omp_set_num_threads(config.threads);

  RunOutcome outcome;
  switch (config.study) {
    case StudyKind::Single:
      run_single(config, out_dir, outcome);
      break;
    case StudyKind::DomainSweep:
      run_domain_sweep(config, out_dir, outcome);
      break;
    case StudyKind::SpaceSweep:
      run_space_sweep(config, out_dir, outcome);
      break;
    case StudyKind::TimeSweep:
      run_time_sweep(config, out_dir, outcome);
      break;
    case StudyKind::Stability:
      run_stability(config, out_dir, outcome);
      break;
    case StudyKind::Kernels:
      run_kernels(config, out_dir, outcome);
      break;
  }
  return outcome;
}

RunOutcome run_experiment(const ExperimentConfig& config) { return run_experiment(config, config.out_dir); }

}  // namespace fracdiff
