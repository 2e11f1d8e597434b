#include "timeint.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "errors.hpp"
#include "summation.hpp"

namespace fracdiff {

std::size_t IntegratorSpec::steps() const {
  validate();
  return static_cast<std::size_t>(std::llround((tf - t0) / dt));
}

void IntegratorSpec::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt", "time step must be positive and finite");
  if (!std::isfinite(t0) || !std::isfinite(tf) || !(tf > t0)) throw ConfigError("tf", "need t0 < tf");
  const double span = tf - t0;
  const double n = std::round(span / dt);
  if (n < 1.0 || std::abs(n * dt - span) > 1e-9 * span) {
    std::ostringstream os;
    os << "interval [" << t0 << ", " << tf << "] is not a whole number of steps of " << dt;
    throw ConfigError("dt", os.str());
  }
}

namespace {

double max_abs(std::span<const double> u) {
  double m = 0.0;
  for (double x : u) m = std::max(m, std::abs(x));
  return m;
}

void guard(std::span<const double> u, double limit, std::size_t step) {
  const double m = max_abs(u);
  if (!std::isfinite(m) || (limit > 0.0 && m > limit)) {
    std::ostringstream os;
    os << "solution diverged at step " << step << " (max |u| = " << m << ")";
    throw InstabilityError(os.str(), step);
  }
}

}  // namespace

ParticleField integrate(const ParticleField& field, SchemeKind kind, const IntegratorSpec& spec,
                        const StepObserver& observer, SchemeOptions options) {
  const std::size_t steps = spec.steps();
  const double dt = spec.dt;
  std::vector<double> u(field.strengths().begin(), field.strengths().end());
  const double limit = kDivergenceFactor * max_abs(u);
  if (observer) observer(0, spec.t0, u);

  auto time_at = [&](std::size_t n) { return spec.t0 + static_cast<double>(n) * dt; };

  if (kind == SchemeKind::GPSE) {
    const GpseStepper stepper(field, dt, options);
    for (std::size_t n = 1; n <= steps; ++n) {
      stepper.step(u);
      guard(u, limit, n);
      if (observer) observer(n, time_at(n), u);
    }
    return field.with_strengths(std::move(u));
  }

  const RateOperator rate(field, kind, options);
  const std::size_t size = u.size();
  std::vector<double> k(size), mid(size);
  for (std::size_t n = 1; n <= steps; ++n) {
    rate.apply(u, k);
    if (spec.order == RkOrder::RK2) {
      for (std::size_t i = 0; i < size; ++i) mid[i] = u[i] + 0.5 * dt * k[i];
      rate.apply(mid, k);
    }
    for (std::size_t i = 0; i < size; ++i) u[i] += dt * k[i];
    guard(u, limit, n);
    if (observer) observer(n, time_at(n), u);
  }
  return field.with_strengths(std::move(u));
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

double mean_spacing(const ParticleField& field) {
  if (auto h = field.uniform_spacing()) return *h;
  const auto x = field.positions();
  if (x.size() < 2) throw DomainError("stability analysis needs at least two particles");
  return (x.back() - x.front()) / static_cast<double>(x.size() - 1);
}

}  // namespace

StabilityReport power_iteration_min_eig(const ParticleField& field, SchemeKind kind,
                                        const PowerIterationOptions& options) {
  if (!is_rate_scheme(kind)) throw UnsupportedError("stability analysis applies to rate schemes only");
  if (!(options.tol > 0.0) || options.max_iter == 0) throw ConfigError("tol", "need tol > 0 and max_iter > 0");
  const RateOperator op(field, kind);
  const std::size_t n = field.size();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n), w(n);
  for (double& x : v) x = dist(rng);
  double norm = std::sqrt(dot(v, v));
  for (double& x : v) x /= norm;

  StabilityReport report;
  double lambda_prev = 0.0;
  for (std::size_t it = 1; it <= options.max_iter; ++it) {
    op.apply(v, w);
    const double lambda = dot(v, w);
    CompensatedSum res;
    for (std::size_t i = 0; i < n; ++i) res.add((w[i] - lambda * v[i]) * (w[i] - lambda * v[i]));
    report.lambda_min = lambda;
    report.iterations = it;
    report.residual = std::sqrt(std::max(0.0, res.value()));
    report.last_change = it > 1 ? std::abs(lambda - lambda_prev) / std::abs(lambda) : 1.0;

    norm = std::sqrt(dot(w, w));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw DegenerateError("power iteration: operator annihilated the iterate");
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    if (it > 1 && report.last_change < options.tol) break;
    lambda_prev = lambda;
    if (it == options.max_iter) {
      std::ostringstream os;
      os << "power iteration did not converge in " << it << " iterations (relative change "
         << report.last_change << ")";
      throw AccuracyError(os.str(), lambda);
    }
  }
  if (!(report.lambda_min < 0.0)) throw DegenerateError("power iteration: dominant eigenvalue is not negative");
  const double h = mean_spacing(field);
  report.a_constant = 2.0 / (std::abs(report.lambda_min) * std::pow(h, field.order().alpha()));
  return report;
}

bool stability_limit_check(const StabilityReport& report, const ParticleField& field, double dt) {
  if (!(dt >= 0.0)) throw DomainError("stability_limit_check: dt must be non-negative");
  return dt / std::pow(mean_spacing(field), field.order().alpha()) <= report.a_constant;
}

double stable_step_limit(const StabilityReport& report) { return 2.0 / std::abs(report.lambda_min); }

}  // namespace fracdiff
