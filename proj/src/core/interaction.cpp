#include "interaction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "summation.hpp"

namespace fracdiff::interaction {

namespace {

constexpr int kLanes = 8;

void require_length(std::span<const double> s, std::size_t n, const char* what) {
  if (s.size() != n) throw DomainError(std::string("interaction: length mismatch in ") + what);
}

}  // namespace

PairKernel::PairKernel(const ParticleField& field, const kernels::KernelSpec& spec, InteractionOptions options)
    : positions_(field.positions().begin(), field.positions().end()),
      kernel_(spec),
      cutoff_(options.cutoff_radius) {
  if (cutoff_ && !(*cutoff_ > 0.0)) throw ConfigError("cutoff", "cutoff radius must be positive");
  const std::size_t n = positions_.size();
  const auto h = field.uniform_spacing();
  if (!h) return;

  offset_cutoff_ = n - 1;
  if (cutoff_) {
    const double m = std::floor(*cutoff_ / *h * (1.0 + 1e-12));
    if (m < static_cast<double>(n - 1)) offset_cutoff_ = static_cast<std::size_t>(m);
  }
  std::vector<double> base(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t m = 0; m < count; ++m) base[static_cast<std::size_t>(m)] = kernel_(static_cast<double>(m) * *h);

  // Rapidly decaying kernels underflow to exactly zero far out; those offsets
  // contribute nothing, so the rows stop at the last nonzero weight.
  std::size_t last_nonzero = 0;
  for (std::size_t m = 0; m < n; ++m) {
    if (base[m] != 0.0) last_nonzero = m;
  }
  offset_cutoff_ = std::min(offset_cutoff_, last_nonzero);

  const bool odd = kernels::is_odd(spec.kind);
  table_.resize(2 * n - 1);
  for (std::size_t m = 0; m < n; ++m) {
    table_[n - 1 - m] = base[m];                 // j - i = -m, x_i - x_j = m h
    table_[n - 1 + m] = odd ? -base[m] : base[m];  // j - i = m
  }
}

double PairKernel::operator()(std::size_t i, std::size_t j) const {
  const std::size_t n = positions_.size();
  if (is_toeplitz()) {
    const std::size_t d = i > j ? i - j : j - i;
    if (d > offset_cutoff_) return 0.0;
    return table_[j + n - 1 - i];
  }
  const double r = positions_[i] - positions_[j];
  if (cutoff_ && std::abs(r) > *cutoff_) return 0.0;
  return kernel_(r);
}

std::pair<std::size_t, std::size_t> PairKernel::row_range(std::size_t i) const {
  const std::size_t n = positions_.size();
  if (!is_toeplitz()) return {0, n};
  const std::size_t lo = i > offset_cutoff_ ? i - offset_cutoff_ : 0;
  const std::size_t hi = std::min(n, i + offset_cutoff_ + 1);
  return {lo, hi};
}

template <class Term>
void PairKernel::for_rows(std::span<double> y, Term&& term) const {
  const std::size_t n = positions_.size();
  require_length(y, n, "output");
  const auto count = static_cast<std::ptrdiff_t>(n);
  if (is_toeplitz()) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t si = 0; si < count; ++si) {
      const auto i = static_cast<std::size_t>(si);
      const double* w = table_.data() + (n - 1 - i);
      const auto [lo, hi] = row_range(i);
      y[i] = LaneSum<kLanes>::sum(lo, hi, [&](std::size_t j) { return term(i, j, w[j]); });
    }
  } else {
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t si = 0; si < count; ++si) {
      const auto i = static_cast<std::size_t>(si);
      const double xi = positions_[i];
      CompensatedSum s;
      for (std::size_t j = 0; j < n; ++j) {
        const double r = xi - positions_[j];
        if (cutoff_ && std::abs(r) > *cutoff_) continue;
        s.add(term(i, j, kernel_(r)));
      }
      y[i] = s.value();
    }
  }
}

void PairKernel::convolve(std::span<const double> a, std::span<double> y) const {
  require_length(a, size(), "convolve");
  const double* ap = a.data();
  for_rows(y, [ap](std::size_t, std::size_t j, double w) { return ap[j] * w; });
}

void PairKernel::exchange(std::span<const double> v, std::span<const double> b, std::span<double> y) const {
  require_length(v, size(), "exchange");
  require_length(b, size(), "exchange");
  const double* vp = v.data();
  const double* bp = b.data();
  for_rows(y, [vp, bp](std::size_t i, std::size_t j, double w) { return vp[j] * (bp[j] - bp[i]) * w; });
}

void PairKernel::pair_sum(std::span<const double> v, std::span<const double> b, std::span<double> y) const {
  require_length(v, size(), "pair_sum");
  require_length(b, size(), "pair_sum");
  const double* vp = v.data();
  const double* bp = b.data();
  for_rows(y, [vp, bp](std::size_t i, std::size_t j, double w) { return vp[j] * (bp[j] + bp[i]) * w; });
}

}  // namespace fracdiff::interaction
