#pragma once

// Fundamental solution of du/dt = D^alpha u (symmetric Riesz derivative, unit
// diffusivity): G(x,t) = t^{-1/alpha} L(x t^{-1/alpha}), where the reduced Green
// function L is the symmetric alpha-stable density with characteristic function
// exp(-|k|^alpha).

#include <memory>

#include "order.hpp"

namespace fracdiff::greens {

// Truncation parameters for the convergent series (|x| < crossover) and the
// asymptotic expansion (|x| >= crossover) of the reduced Green function. The
// series alternates with terms far larger than its sum, so it is accumulated in
// 60-digit MPFR arithmetic; the asymptotic expansion is optimally truncated.
struct ReducedGreenEval {
  int series_terms = 20000;
  int asym_terms = 20000;
  double crossover = 4.0;

  // Crossover placed where the rounding error of the series meets the
  // truncation error of the asymptotic expansion.
  static ReducedGreenEval tuned(const FractionalOrder& order);
  void validate() const;
};

class ReducedGreen {
 public:
  explicit ReducedGreen(const FractionalOrder& order);
  ReducedGreen(const FractionalOrder& order, const ReducedGreenEval& eval);

  double operator()(double x) const;
  double series(double x) const;
  double asymptotic(double x) const;

  const FractionalOrder& order() const noexcept { return order_; }
  const ReducedGreenEval& eval() const noexcept { return eval_; }

 private:
  struct Coefficients;
  FractionalOrder order_;
  ReducedGreenEval eval_;
  std::shared_ptr<const Coefficients> coeffs_;  // immutable, shared between copies
};

// Convenience entry points; each call tunes a fresh evaluator, so loops should
// hold a ReducedGreen instead.
double reduced_green(const FractionalOrder& order, double x);
double green_function(const FractionalOrder& order, double x, double t);
double green_function(const ReducedGreen& reduced, double x, double t);

// First absolute moment R = 2 int_0^inf x L(x) dx, split at `split_point` into a
// series part [0, M] and an asymptotic part [M, inf). The series part is summed
// with as many digits as its largest term demands (up to 400).
struct WidthEstimate {
  double value;
  double split_point;
  double probe_value;  // same estimate at the probe split point
  double probe_split_point;
};

double width_partial(const FractionalOrder& order, double split_point);
WidthEstimate characteristic_width_checked(const FractionalOrder& order, double split_point);
double characteristic_width(const FractionalOrder& order, double split_point);
double characteristic_width(const FractionalOrder& order);
// Split point where the asymptotic part is accurate to about 1e-12 relative.
double default_split_point(const FractionalOrder& order);
inline constexpr double kWidthProbeFactor = 1.25;
inline constexpr double kWidthProbeTolerance = 1e-4;

}  // namespace fracdiff::greens
