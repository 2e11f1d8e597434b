#include "field.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "errors.hpp"
#include "greens.hpp"
#include "kernels.hpp"
#include "summation.hpp"

namespace fracdiff {

DomainSpec DomainSpec::from_width_rule(double c, double t_final, const FractionalOrder& order,
                                       std::size_t n_particles) {
  if (!(c > 0.0) || !(t_final > 0.0)) throw ConfigError("domain", "width rule needs C > 0 and t_f > 0");
  DomainSpec d;
  d.half_width = c * std::pow(t_final, order.gamma()) * greens::characteristic_width(order);
  d.n_particles = n_particles;
  d.width_rule_c = c;
  d.validate();
  return d;
}

void DomainSpec::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("domain", "half width D must be positive and finite");
  }
  if (n_particles < 3 || n_particles % 2 == 0) {
    std::ostringstream os;
    os << "particle count must be odd and at least 3 (got " << n_particles << ")";
    throw ConfigError("n", os.str());
  }
}

ParticleField::ParticleField(std::vector<double> positions, std::vector<double> volumes,
                             std::vector<double> strengths, double epsilon, FractionalOrder order)
    : positions_(std::move(positions)),
      volumes_(std::move(volumes)),
      strengths_(std::move(strengths)),
      epsilon_(epsilon),
      order_(order) {
  const std::size_t n = positions_.size();
  if (n == 0) throw DomainError("particle field is empty");
  if (volumes_.size() != n || strengths_.size() != n) {
    throw DomainError("particle field: positions, volumes and strengths differ in length");
  }
  if (!(epsilon_ > 0.0) || !std::isfinite(epsilon_)) throw DomainError("particle field: epsilon must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(volumes_[i] > 0.0)) throw DomainError("particle field: volumes must be positive");
    if (i > 0 && !(positions_[i] > positions_[i - 1])) {
      throw DomainError("particle field: positions must be strictly increasing");
    }
  }
  if (n >= 2) {
    const double h = (positions_.back() - positions_.front()) / static_cast<double>(n - 1);
    bool uniform = true;
    for (std::size_t i = 0; i < n && uniform; ++i) {
      const double expect = positions_.front() + static_cast<double>(i) * h;
      uniform = std::abs(positions_[i] - expect) <= 1e-12 * h && std::abs(volumes_[i] - h) <= 1e-12 * h;
    }
    if (uniform) spacing_ = h;
  }
}

void ParticleField::set_strengths(std::vector<double> strengths) {
  if (strengths.size() != positions_.size()) throw DomainError("set_strengths: length mismatch");
  strengths_ = std::move(strengths);
}

ParticleField ParticleField::with_strengths(std::vector<double> strengths) const {
  ParticleField copy = *this;
  copy.set_strengths(std::move(strengths));
  return copy;
}

ParticleField init_uniform(const DomainSpec& domain, const FractionalOrder& order, double overlap,
                           const std::function<double(double)>& init) {
  domain.validate();
  if (!(overlap >= 1.0) || !std::isfinite(overlap)) {
    throw ConfigError("overlap", "overlap ratio eps/h must be at least 1");
  }
  const std::size_t n = domain.n_particles;
  const double h = domain.spacing();
  const double centre = static_cast<double>(n - 1) / 2.0;
  std::vector<double> x(n), v(n, h), u(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = (static_cast<double>(i) - centre) * h;
    u[i] = init ? init(x[i]) : 0.0;
  }
  return ParticleField(std::move(x), std::move(v), std::move(u), overlap * h, order);
}

namespace {

template <class Kernel>
double particle_sum(const ParticleField& field, double x, Kernel&& kernel) {
  const auto xs = field.positions();
  const auto vs = field.volumes();
  const auto us = field.strengths();
  CompensatedSum s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (us[i] != 0.0) s.add(vs[i] * us[i] * kernel(x - xs[i]));
  }
  return s.value();
}

}  // namespace

double eval_u(const ParticleField& field, double x) {
  const double inv_eps = 1.0 / field.epsilon();
  return particle_sum(field, x, [inv_eps](double r) { return inv_eps * kernels::eta(r * inv_eps); });
}

double eval_utilde(const ParticleField& field, double x) {
  const kernels::KernelEvaluator kappa({kernels::KernelKind::KappaBeta, field.order(), field.epsilon()});
  return std::pow(field.epsilon(), 1.0 - field.order().beta()) * particle_sum(field, x, kappa);
}

double eval_flux(const ParticleField& field, double x) {
  const kernels::KernelEvaluator f({kernels::KernelKind::F, field.order(), field.epsilon()});
  return -std::pow(field.epsilon(), -field.order().beta()) * particle_sum(field, x, f);
}

double total_strength(const ParticleField& field) {
  const auto vs = field.volumes();
  const auto us = field.strengths();
  CompensatedSum s;
  for (std::size_t i = 0; i < vs.size(); ++i) s.add(vs[i] * us[i]);
  return s.value();
}

void write_snapshot_csv(std::ostream& out, const ParticleField& field, const SnapshotInfo& info) {
  const auto xs = field.positions();
  const auto us = field.strengths();
  if (info.exact && info.exact->size() != xs.size()) throw DomainError("snapshot: exact column length mismatch");
  const double d = xs.size() > 1 ? 0.5 * (xs.back() - xs.front()) : 0.0;
  const auto old_precision = out.precision(17);
  out << "# beta=" << field.order().beta() << " t=" << info.time << " N=" << xs.size() << " D=" << d
      << " eps=" << field.epsilon() << '\n';
  out << (info.exact ? "x,u,u_exact\n" : "x,u\n");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << xs[i] << ',' << us[i];
    if (info.exact) out << ',' << (*info.exact)[i];
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace fracdiff
