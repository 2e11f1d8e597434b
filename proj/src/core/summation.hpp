#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace fracdiff {

// Neumaier's variant of Kahan summation. Order of add() calls fixes the result.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }
  void merge(const CompensatedSum& other) noexcept {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Lanes independent Neumaier accumulators fed round-robin, for loops the compiler
// can vectorize. The selects below avoid a branch; the lane a term lands in depends
// only on its index, so the result does not depend on how rows are scheduled.
template <int Lanes>
class LaneSum {
 public:
  static void add(double& s, double& c, double x) noexcept {
    const double t = s + x;
    const bool ge = std::abs(s) >= std::abs(x);
    const double big = ge ? s : x;
    const double small = ge ? x : s;
    c += (big - t) + small;
    s = t;
  }

  // Sum of f(j) for j in [begin, end).
  template <class F>
  static double sum(std::size_t begin, std::size_t end, F&& f) noexcept {
    double s[Lanes] = {};
    double c[Lanes] = {};
    std::size_t j = begin;
    for (; j + Lanes <= end; j += Lanes) {
#pragma omp simd
      for (int l = 0; l < Lanes; ++l) add(s[l], c[l], f(j + static_cast<std::size_t>(l)));
    }
    double total = 0.0;
    double comp = 0.0;
    for (; j < end; ++j) add(total, comp, f(j));
    for (int l = 0; l < Lanes; ++l) {
      add(total, comp, s[l]);
      add(total, comp, c[l]);
    }
    return total + comp;
  }
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

}  // namespace fracdiff
