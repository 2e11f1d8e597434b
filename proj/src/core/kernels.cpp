#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "errors.hpp"
#include "specfun.hpp"

namespace fracdiff::kernels {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;

void require_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    std::ostringstream os;
    os << "beta=" << beta << " outside (0, 1)";
    throw DomainError(os.str());
  }
}

double gd_prefactor(const FractionalOrder& order) {
  const double alpha = order.alpha();
  return -std::pow(2.0, (alpha - 2.0) / 2.0) * kInvSqrtPi / specfun::cospi(alpha / 2.0);
}

double kappa_prefactor(double beta) {
  return std::pow(2.0, (beta - 3.0) / 2.0) * kInvSqrtPi / specfun::sinpi(beta / 2.0);
}

double f_prefactor(const FractionalOrder& order) {
  const double beta = order.beta();
  return std::pow(2.0, (beta - 2.0) / 2.0) * kInvSqrtPi / specfun::sinpi(beta / 2.0);
}

}  // namespace

std::string_view kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Eta: return "eta";
    case KernelKind::Eta1: return "eta1";
    case KernelKind::Phi: return "phi";
    case KernelKind::Gd: return "gd";
    case KernelKind::KappaBeta: return "kappa";
    case KernelKind::F: return "f";
    case KernelKind::K: return "k";
    case KernelKind::E: return "e";
  }
  return "unknown";
}

std::optional<KernelKind> parse_kind(std::string_view name) {
  for (KernelKind kind : kAllKinds) {
    if (kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

bool is_odd(KernelKind kind) { return kind == KernelKind::Eta1 || kind == KernelKind::F; }

void KernelSpec::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    std::ostringstream os;
    os << "kernel smoothing length must be positive and finite (epsilon=" << epsilon << ")";
    throw DomainError(os.str());
  }
}

double c_beta(double beta) {
  require_beta(beta);
  return 1.0 / (2.0 * std::tgamma(1.0 - beta) * specfun::sinpi(beta / 2.0));
}

double eta(double r) { return kInvSqrtPi * std::exp(-r * r); }

double eta1(double r) { return -2.0 * r * kInvSqrtPi * std::exp(-r * r); }

double phi(double r) { return 2.0 * kInvSqrtPi * std::exp(-r * r); }

double kernel_gd(const FractionalOrder& order, double r) {
  return gd_prefactor(order) * specfun::s_combo(order.alpha() + 1.0, r);
}

double kernel_kappa(double beta, double r) {
  require_beta(beta);
  return kappa_prefactor(beta) * specfun::s_combo(beta, r);
}

double kernel_f(const FractionalOrder& order, double r) {
  return f_prefactor(order) * specfun::t_combo(order.alpha(), r);
}

// Near the origin T^alpha(r) ~ -2 sqrt2 U'(1/2 - alpha, 0) r.
double kernel_k_origin(const FractionalOrder& order) {
  return 2.0 * std::numbers::sqrt2 * f_prefactor(order) * specfun::pcf_du0(0.5 - order.alpha());
}

double kernel_k(const FractionalOrder& order, double r) {
  if (std::abs(r) < kKernelKOriginThreshold) return kernel_k_origin(order);
  return -kernel_f(order, r) / r;
}

double kernel_e(const FractionalOrder& order, double r) { return greens::reduced_green(order, r); }

double scaled(const KernelSpec& spec, double r) { return KernelEvaluator(spec)(r); }

KernelEvaluator::KernelEvaluator(const KernelSpec& spec) : spec_(spec) {
  spec_.validate();
  inv_eps_ = 1.0 / spec_.epsilon;
  switch (spec_.kind) {
    case KernelKind::Gd: prefactor_ = gd_prefactor(spec_.order); break;
    case KernelKind::KappaBeta: prefactor_ = kappa_prefactor(spec_.order.beta()); break;
    case KernelKind::F: prefactor_ = f_prefactor(spec_.order); break;
    case KernelKind::K:
      prefactor_ = f_prefactor(spec_.order);
      origin_ = kernel_k_origin(spec_.order);
      break;
    case KernelKind::E: green_.emplace(spec_.order); break;
    default: break;
  }
}

double KernelEvaluator::unscaled(double r) const {
  switch (spec_.kind) {
    case KernelKind::Eta: return eta(r);
    case KernelKind::Eta1: return eta1(r);
    case KernelKind::Phi: return phi(r);
    case KernelKind::Gd: return prefactor_ * specfun::s_combo(spec_.order.alpha() + 1.0, r);
    case KernelKind::KappaBeta: return prefactor_ * specfun::s_combo(spec_.order.beta(), r);
    case KernelKind::F: return prefactor_ * specfun::t_combo(spec_.order.alpha(), r);
    case KernelKind::K:
      if (std::abs(r) < kKernelKOriginThreshold) return origin_;
      return -prefactor_ * specfun::t_combo(spec_.order.alpha(), r) / r;
    case KernelKind::E: return (*green_)(r);
  }
  throw UnsupportedError("unknown kernel kind");
}

KernelTable::KernelTable(const KernelEvaluator& kernel, double r_max, double dr)
    : kernel_(kernel), odd_(is_odd(kernel.spec().kind)), r_max_(r_max) {
  if (!(r_max > 0.0 && dr > 0.0 && dr < r_max) || !std::isfinite(r_max)) {
    throw DomainError("KernelTable: need 0 < dr < r_max");
  }
  const auto n = static_cast<std::size_t>(std::ceil(r_max / dr)) + 1;
  inv_dr_ = 1.0 / dr;
  values_.resize(n);
  for (std::size_t i = 0; i < n; ++i) values_[i] = kernel_(static_cast<double>(i) * dr);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double mid = kernel_((static_cast<double>(i) + 0.5) * dr);
    max_midpoint_error_ = std::max(max_midpoint_error_, std::abs(mid - 0.5 * (values_[i] + values_[i + 1])));
  }
}

double KernelTable::operator()(double r) const {
  const double sign = (odd_ && r < 0.0) ? -1.0 : 1.0;
  const double ar = std::abs(r);
  const double s = ar * inv_dr_;
  const auto i = static_cast<std::size_t>(s);
  if (ar >= r_max_ || i + 1 >= values_.size()) return kernel_(r);
  const double t = s - static_cast<double>(i);
  return sign * ((1.0 - t) * values_[i] + t * values_[i + 1]);
}

}  // namespace fracdiff::kernels
