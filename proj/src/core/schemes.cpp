#include "schemes.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "summation.hpp"

namespace fracdiff {

using kernels::KernelKind;
using kernels::KernelSpec;

std::string_view scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DD: return "dd";
    case SchemeKind::FPSE: return "fpse";
    case SchemeKind::KPSE: return "kpse";
    case SchemeKind::RLPSE: return "rlpse";
    case SchemeKind::GPSE: return "gpse";
  }
  return "unknown";
}

std::optional<SchemeKind> parse_scheme(std::string_view name) {
  for (SchemeKind k : {SchemeKind::DD, SchemeKind::FPSE, SchemeKind::KPSE, SchemeKind::RLPSE, SchemeKind::GPSE}) {
    if (scheme_name(k) == name) return k;
  }
  return std::nullopt;
}

namespace {

KernelSpec first_pass_kernel(const ParticleField& field, SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DD: return {KernelKind::Gd, field.order(), field.epsilon()};
    case SchemeKind::FPSE: return {KernelKind::F, field.order(), field.epsilon()};
    case SchemeKind::KPSE: return {KernelKind::K, field.order(), field.epsilon()};
    case SchemeKind::RLPSE: return {KernelKind::KappaBeta, field.order(), field.epsilon()};
    case SchemeKind::GPSE: break;
  }
  throw UnsupportedError("GPSE is a stepper, not a rate operator");
}

std::vector<double> weighted(std::span<const double> v, std::span<const double> u) {
  std::vector<double> a(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) a[i] = v[i] * u[i];
  return a;
}

}  // namespace

RateOperator::RateOperator(const ParticleField& geometry, SchemeKind kind, SchemeOptions options)
    : kind_(kind),
      volumes_(geometry.volumes().begin(), geometry.volumes().end()),
      first_(geometry, first_pass_kernel(geometry, kind), options.interaction) {
  const double eps = geometry.epsilon();
  const double alpha = geometry.order().alpha();
  const double beta = geometry.order().beta();
  switch (kind) {
    case SchemeKind::DD: scale_first_ = std::pow(eps, -alpha); break;
    case SchemeKind::FPSE:
      scale_first_ = -std::pow(eps, -beta);
      scale_second_ = -1.0 / eps;
      second_.emplace(geometry, KernelSpec{KernelKind::Eta1, geometry.order(), eps}, options.interaction);
      break;
    case SchemeKind::KPSE: scale_first_ = alpha * std::pow(eps, -alpha); break;
    case SchemeKind::RLPSE:
      scale_first_ = std::pow(eps, 1.0 - beta);
      scale_second_ = 2.0 / (eps * eps);
      second_.emplace(geometry, KernelSpec{KernelKind::Phi, geometry.order(), eps}, options.interaction);
      break;
    case SchemeKind::GPSE: break;
  }
}

void RateOperator::apply(std::span<const double> u, std::span<double> rate) const {
  const std::size_t n = size();
  if (u.size() != n || rate.size() != n) throw DomainError("RateOperator: length mismatch");
  switch (kind_) {
    case SchemeKind::DD: {
      const auto a = weighted(volumes_, u);
      first_.convolve(a, rate);
      for (double& r : rate) r *= scale_first_;
      return;
    }
    case SchemeKind::KPSE:
      first_.exchange(volumes_, u, rate);
      for (double& r : rate) r *= scale_first_;
      return;
    case SchemeKind::FPSE:
    case SchemeKind::RLPSE: {
      // pass 1: flux Q (FPSE) or smoothed potential u~ (RLPSE) at particle centres
      const auto a = weighted(volumes_, u);
      std::vector<double> mid(n);
      first_.convolve(a, mid);
      for (double& m : mid) m *= scale_first_;
      // pass 2: symmetrized divergence (FPSE) or Laplacian exchange (RLPSE)
      if (kind_ == SchemeKind::FPSE) {
        second_->pair_sum(volumes_, mid, rate);
      } else {
        second_->exchange(volumes_, mid, rate);
      }
      for (double& r : rate) r *= scale_second_;
      return;
    }
    case SchemeKind::GPSE: break;
  }
  throw UnsupportedError("GPSE has no rate operator");
}

std::vector<double> RateOperator::operator()(std::span<const double> u) const {
  std::vector<double> rate(size());
  apply(u, rate);
  return rate;
}

std::vector<double> rhs(const ParticleField& field, SchemeKind kind) {
  return RateOperator(field, kind)(field.strengths());
}
std::vector<double> rhs_dd(const ParticleField& field) { return rhs(field, SchemeKind::DD); }
std::vector<double> rhs_fpse(const ParticleField& field) { return rhs(field, SchemeKind::FPSE); }
std::vector<double> rhs_kpse(const ParticleField& field) { return rhs(field, SchemeKind::KPSE); }
std::vector<double> rhs_rlpse(const ParticleField& field) { return rhs(field, SchemeKind::RLPSE); }

namespace {

double gpse_epsilon(const ParticleField& geometry, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    std::ostringstream os;
    os << "GPSE time step must be positive (dt=" << dt << ")";
    throw DomainError(os.str());
  }
  return std::pow(dt, geometry.order().gamma());
}

}  // namespace

GpseStepper::GpseStepper(const ParticleField& geometry, double dt, SchemeOptions options)
    : dt_(dt),
      epsilon_(gpse_epsilon(geometry, dt)),
      volumes_(geometry.volumes().begin(), geometry.volumes().end()),
      kernel_(geometry, KernelSpec{KernelKind::E, geometry.order(), epsilon_}, options.interaction) {}

void GpseStepper::step(std::span<double> u) const {
  std::vector<double> delta(u.size());
  kernel_.exchange(volumes_, u, delta);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += delta[i];
}

ParticleField step_gpse(const ParticleField& field, double dt) {
  std::vector<double> u(field.strengths().begin(), field.strengths().end());
  GpseStepper(field, dt).step(u);
  return field.with_strengths(std::move(u));
}

DenseMatrix assemble_matrix(const ParticleField& field, SchemeKind kind, std::size_t max_particles) {
  if (kind == SchemeKind::GPSE) throw UnsupportedError("GPSE is a stepper and has no rate matrix");
  const std::size_t n = field.size();
  if (n > max_particles) {
    std::ostringstream os;
    os << "assemble_matrix: " << n << " particles exceed the dense limit of " << max_particles;
    throw ConfigError("n", os.str());
  }
  const auto v = field.volumes();
  const double eps = field.epsilon();
  const double alpha = field.order().alpha();
  const double beta = field.order().beta();
  const interaction::PairKernel k1(field, first_pass_kernel(field, kind));

  DenseMatrix a{n, std::vector<double>(n * n, 0.0)};
  switch (kind) {
    case SchemeKind::DD: {
      const double s = std::pow(eps, -alpha);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = s * v[j] * k1(i, j);
      break;
    }
    case SchemeKind::KPSE: {
      const double s = alpha * std::pow(eps, -alpha);
      for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum diag;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i) continue;
          a(i, j) = s * v[j] * k1(i, j);
          diag.add(a(i, j));
        }
        a(i, i) = -diag.value();
      }
      break;
    }
    case SchemeKind::FPSE:
    case SchemeKind::RLPSE: {
      // A = s2 * M2 * (s1 * M1), with M1_kl = V_l k1(x_k - x_l) and M2 the
      // pair-sum (FPSE) or exchange (RLPSE) operator of the second kernel.
      const bool fpse = kind == SchemeKind::FPSE;
      const double s1 = fpse ? -std::pow(eps, -beta) : std::pow(eps, 1.0 - beta);
      const double s2 = fpse ? -1.0 / eps : 2.0 / (eps * eps);
      const interaction::PairKernel k2(
          field, KernelSpec{fpse ? KernelKind::Eta1 : KernelKind::Phi, field.order(), eps});
      DenseMatrix m2{n, std::vector<double>(n * n, 0.0)};
      for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum diag;
        for (std::size_t j = 0; j < n; ++j) {
          const double w = v[j] * k2(i, j);
          m2(i, j) += w;
          diag.add(w);
        }
        m2(i, i) += fpse ? diag.value() : -diag.value();
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t l = 0; l < n; ++l) {
          CompensatedSum s;
          for (std::size_t k = 0; k < n; ++k) s.add(m2(i, k) * v[l] * k1(k, l));
          a(i, l) = s2 * s1 * s.value();
        }
      }
      break;
    }
    case SchemeKind::GPSE: break;
  }
  return a;
}

}  // namespace fracdiff
