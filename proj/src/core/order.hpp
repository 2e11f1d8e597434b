#pragma once

namespace fracdiff {

// Order of the fractional derivative. alpha = beta + 1 with 1 < alpha < 2;
// gamma = 1/alpha is the self-similar scaling exponent.
class FractionalOrder {
 public:
  static FractionalOrder from_alpha(double alpha);
  static FractionalOrder from_beta(double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }

  friend bool operator==(const FractionalOrder&, const FractionalOrder&) = default;

 private:
  FractionalOrder(double alpha, double beta) : alpha_(alpha), beta_(beta), gamma_(1.0 / alpha) {}
  double alpha_;
  double beta_;
  double gamma_;
};

}  // namespace fracdiff
