#include "analysis.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "summation.hpp"

namespace fracdiff {

double green_mass(const greens::ReducedGreen& green, double t, double d) {
  if (!(d > 0.0)) throw DomainError("green_mass: half width must be positive");
  const double scale = std::pow(t, green.order().gamma());
  // Integrate the reduced profile over [0, d / t^gamma]; the profile is even.
  auto f = [&](double y) { return green(y); };
  const double upper = d / scale;
  // Split at the series/asymptotic crossover so neither panel straddles it.
  const double c = std::min(upper, green.eval().crossover);
  double err = 0.0;
  double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, c, 20, 1e-13, &err);
  if (upper > c) {
    mass += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, c, upper, 20, 1e-13, &err);
  }
  return 2.0 * mass;
}

double rel_l1_error(const ParticleField& field, const greens::ReducedGreen& green, double t, double d_eps) {
  if (!(d_eps > 0.0)) throw DomainError("rel_l1_error: d_eps must be positive");
  const auto x = field.positions();
  const auto v = field.volumes();
  const auto u = field.strengths();
  CompensatedSum num;
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > d_eps) continue;
    num.add(v[i] * std::abs(u[i] - greens::green_function(green, x[i], t)));
    ++count;
  }
  if (count == 0) {
    std::ostringstream os;
    os << "rel_l1_error: no particle inside |x| <= " << d_eps;
    throw DomainError(os.str());
  }
  return num.value() / green_mass(green, t, d_eps);
}

double rel_l1_error(const ParticleField& field, double t, double d_eps) {
  return rel_l1_error(field, greens::ReducedGreen(field.order()), t, d_eps);
}

std::vector<std::size_t> common_indices(std::span<const double> coarse, std::span<const double> fine) {
  std::vector<std::size_t> idx;
  idx.reserve(coarse.size());
  for (double x : coarse) {
    const auto it = std::lower_bound(fine.begin(), fine.end(), x);
    if (it == fine.end() || *it != x) {
      std::ostringstream os;
      os << "convergence levels are not nested: no particle at x=" << x << " on the finer level";
      throw DomainError(os.str());
    }
    idx.push_back(static_cast<std::size_t>(it - fine.begin()));
  }
  return idx;
}

double self_convergence_order(std::span<const ConvergenceLevel> levels) {
  if (levels.size() != 3) throw DomainError("self_convergence_order needs exactly three levels");
  for (const auto& l : levels) {
    if (l.positions.size() != l.strengths.size()) throw DomainError("convergence level: length mismatch");
  }
  const auto& coarse = levels[0].positions;
  const auto i1 = common_indices(coarse, levels[1].positions);
  const auto i2 = common_indices(coarse, levels[2].positions);
  CompensatedSum d01, d12;
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    d01.add(std::abs(levels[0].strengths[k] - levels[1].strengths[i1[k]]));
    d12.add(std::abs(levels[1].strengths[i1[k]] - levels[2].strengths[i2[k]]));
  }
  if (!(d12.value() > 0.0)) throw DegenerateError("self_convergence_order: finest two levels coincide");
  if (!(d01.value() > 0.0)) throw DegenerateError("self_convergence_order: coarsest two levels coincide");
  return std::log2(d01.value() / d12.value());
}

double conservation_drift(std::span<const double> totals) {
  if (totals.size() < 2) throw DomainError("conservation_drift needs at least two snapshots");
  const double s0 = totals.front();
  if (s0 == 0.0) throw DegenerateError("conservation_drift: initial total strength is zero");
  double worst = 0.0;
  for (double s : totals) worst = std::max(worst, std::abs(s - s0));
  return worst / std::abs(s0);
}

double conservation_drift(std::span<const ParticleField> history) {
  std::vector<double> totals;
  totals.reserve(history.size());
  for (const auto& f : history) totals.push_back(total_strength(f));
  return conservation_drift(totals);
}

}  // namespace fracdiff
