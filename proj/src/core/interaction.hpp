#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "field.hpp"
#include "kernels.hpp"

namespace fracdiff::interaction {

struct InteractionOptions {
  // Pairs further apart than this are skipped. Off unless set.
  std::optional<double> cutoff_radius;
};

// All-pairs weights w_ij = k_eps(x_i - x_j) for one kernel over one particle set.
// On an equally spaced set the weights depend on i - j only and are tabulated
// once (exact kernel values, no interpolation); otherwise each pair is evaluated
// on demand. Row sums use fixed-order compensated summation and rows are
// distributed over OpenMP threads, so results do not depend on the thread count.
class PairKernel {
 public:
  PairKernel(const ParticleField& field, const kernels::KernelSpec& spec, InteractionOptions options = {});

  std::size_t size() const noexcept { return positions_.size(); }
  bool is_toeplitz() const noexcept { return !table_.empty(); }
  double operator()(std::size_t i, std::size_t j) const;

  // y_i = sum_j a_j w_ij
  void convolve(std::span<const double> a, std::span<double> y) const;
  // y_i = sum_j v_j (b_j - b_i) w_ij
  void exchange(std::span<const double> v, std::span<const double> b, std::span<double> y) const;
  // y_i = sum_j v_j (b_j + b_i) w_ij
  void pair_sum(std::span<const double> v, std::span<const double> b, std::span<double> y) const;

 private:
  template <class Term>
  void for_rows(std::span<double> y, Term&& term) const;
  std::pair<std::size_t, std::size_t> row_range(std::size_t i) const;

  std::vector<double> positions_;
  kernels::KernelEvaluator kernel_;
  std::optional<double> cutoff_;
  std::size_t offset_cutoff_ = 0;  // Toeplitz: largest |i - j| kept
  // table_[j - i + n - 1] = k_eps(x_i - x_j)
  std::vector<double> table_;
};

}  // namespace fracdiff::interaction
