#pragma once

// Particle fields shared by several test files.

#include <cstddef>
#include <random>
#include <vector>

#include "core/field.hpp"
#include "core/greens.hpp"

namespace fixture {

// The fundamental solution sampled at t0 on a width-rule domain (t_f = 1.5).
inline fracdiff::ParticleField reference_field(double beta, double c, std::size_t n, double overlap = 2.0,
                                               double t0 = 0.5) {
  const auto o = fracdiff::FractionalOrder::from_beta(beta);
  const auto domain = fracdiff::DomainSpec::from_width_rule(c, 1.5, o, n);
  const fracdiff::greens::ReducedGreen g(o);
  return fracdiff::init_uniform(domain, o, overlap, [&](double x) { return fracdiff::greens::green_function(g, x, t0); });
}

inline fracdiff::ParticleField uniform_field(double beta, double half_width, std::size_t n, double overlap = 2.0) {
  const auto o = fracdiff::FractionalOrder::from_beta(beta);
  fracdiff::DomainSpec d;
  d.half_width = half_width;
  d.n_particles = n;
  return fracdiff::init_uniform(d, o, overlap, {});
}

inline std::vector<double> random_strengths(std::size_t n, unsigned seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> u(n);
  for (double& x : u) x = dist(rng);
  return u;
}

}  // namespace fixture
