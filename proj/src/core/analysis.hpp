#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "field.hpp"
#include "greens.hpp"

namespace fracdiff {

// Relative L1 error against the fundamental solution on [-d_eps, d_eps]:
//   sum_{|x_i| <= d_eps} V_i |u_i - G(x_i, t)|  /  int_{-d_eps}^{d_eps} G(x, t) dx
// The denominator is integrated adaptively (Gauss-Kronrod).
double rel_l1_error(const ParticleField& field, double t, double d_eps);
double rel_l1_error(const ParticleField& field, const greens::ReducedGreen& green, double t, double d_eps);

// int_{-d}^{d} G(x, t) dx
double green_mass(const greens::ReducedGreen& green, double t, double d);

struct ErrorReport {
  double rel_l1 = 0.0;
  double d_eps = 0.0;
  double mass_drift = 0.0;
  // configuration echo
  std::string scheme;
  double beta = 0.0;
  std::size_t n_particles = 0;
  double half_width = 0.0;
  double dt = 0.0;
};

// One level of a convergence study: particle positions and final strengths.
struct ConvergenceLevel {
  double parameter = 0.0;  // h or dt
  std::vector<double> positions;
  std::vector<double> strengths;
};

// Indices into `fine` of the particles sitting exactly at the `coarse` positions.
// Throws DomainError if a coarse position has no exact match.
std::vector<std::size_t> common_indices(std::span<const double> coarse, std::span<const double> fine);

// p = log2( sum |u0 - u1| / sum |u1 - u2| ) over the particles of the coarsest
// level (levels ordered coarse to fine, parameter halving each time).
double self_convergence_order(std::span<const ConvergenceLevel> levels);

// max_n |S_n - S_0| / |S_0| for total strengths S_n.
double conservation_drift(std::span<const double> totals);
double conservation_drift(std::span<const ParticleField> history);

}  // namespace fracdiff
