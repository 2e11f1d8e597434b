#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "greens.hpp"
#include "order.hpp"

namespace fracdiff::kernels {

enum class KernelKind { Eta, Eta1, Phi, Gd, KappaBeta, F, K, E };

inline constexpr KernelKind kAllKinds[] = {KernelKind::Eta, KernelKind::Eta1,      KernelKind::Phi,
                                           KernelKind::Gd,  KernelKind::KappaBeta, KernelKind::F,
                                           KernelKind::K,   KernelKind::E};

std::string_view kind_name(KernelKind kind);
std::optional<KernelKind> parse_kind(std::string_view name);
bool is_odd(KernelKind kind);

struct KernelSpec {
  KernelKind kind;
  FractionalOrder order;
  double epsilon = 1.0;

  void validate() const;
};

// 1 / (2 Gamma(1-beta) sin(beta pi / 2))
double c_beta(double beta);

double eta(double r);
double eta1(double r);
double phi(double r);

double kernel_gd(const FractionalOrder& order, double r);
double kernel_kappa(double beta, double r);
double kernel_f(const FractionalOrder& order, double r);
double kernel_k(const FractionalOrder& order, double r);
double kernel_e(const FractionalOrder& order, double r);

// Below this |r| the K kernel returns its limit at the origin.
inline constexpr double kKernelKOriginThreshold = 1e-6;
double kernel_k_origin(const FractionalOrder& order);

// (1/eps) k(r/eps) for the kind in `spec`.
double scaled(const KernelSpec& spec, double r);

// Evaluates one kernel kind repeatedly; prefactors and the reduced Green
// function are set up once.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const KernelSpec& spec);

  double unscaled(double r) const;
  double operator()(double r) const { return inv_eps_ * unscaled(r * inv_eps_); }

  const KernelSpec& spec() const noexcept { return spec_; }

 private:
  KernelSpec spec_;
  double inv_eps_;
  double prefactor_ = 1.0;
  double origin_ = 0.0;
  std::optional<greens::ReducedGreen> green_;
};

// Piecewise-linear table of a scaled kernel on [0, r_max], falling back to direct
// evaluation beyond. Off by default in all schemes; the build reports the largest
// midpoint interpolation error seen.
class KernelTable {
 public:
  KernelTable(const KernelEvaluator& kernel, double r_max, double dr);

  double operator()(double r) const;
  double max_midpoint_error() const noexcept { return max_midpoint_error_; }

 private:
  KernelEvaluator kernel_;
  bool odd_;
  double r_max_;
  double inv_dr_;
  std::vector<double> values_;
  double max_midpoint_error_ = 0.0;
};

}  // namespace fracdiff::kernels
