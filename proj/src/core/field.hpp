#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "order.hpp"

namespace fracdiff {

// Truncated computational domain [-D, D] carrying n_particles equally spaced
// particles. `width_rule_c` is set when D came from D = C t_f^{1/alpha} R_alpha.
struct DomainSpec {
  double half_width = 1.0;
  std::size_t n_particles = 3;
  std::optional<double> width_rule_c;

  static DomainSpec from_width_rule(double c, double t_final, const FractionalOrder& order,
                                    std::size_t n_particles);
  double spacing() const { return 2.0 * half_width / static_cast<double>(n_particles - 1); }
  void validate() const;
};

class ParticleField {
 public:
  ParticleField(std::vector<double> positions, std::vector<double> volumes, std::vector<double> strengths,
                double epsilon, FractionalOrder order);

  std::size_t size() const noexcept { return positions_.size(); }
  std::span<const double> positions() const noexcept { return positions_; }
  std::span<const double> volumes() const noexcept { return volumes_; }
  std::span<const double> strengths() const noexcept { return strengths_; }
  std::span<double> strengths_mut() noexcept { return strengths_; }
  double epsilon() const noexcept { return epsilon_; }
  const FractionalOrder& order() const noexcept { return order_; }

  // Common spacing when positions are equally spaced and volumes equal it.
  std::optional<double> uniform_spacing() const noexcept { return spacing_; }

  void set_strengths(std::vector<double> strengths);
  ParticleField with_strengths(std::vector<double> strengths) const;

 private:
  std::vector<double> positions_;
  std::vector<double> volumes_;
  std::vector<double> strengths_;
  double epsilon_;
  FractionalOrder order_;
  std::optional<double> spacing_;
};

// x_i = -D + i h, h = 2D/(N-1), V_i = h, eps = overlap h, u_i = init(x_i).
ParticleField init_uniform(const DomainSpec& domain, const FractionalOrder& order, double overlap,
                           const std::function<double(double)>& init);

// sum_i V_i u_i eta_eps(x - x_i)
double eval_u(const ParticleField& field, double x);
// eps^{1-beta} sum_i V_i u_i kappa_eps(x - x_i)
double eval_utilde(const ParticleField& field, double x);
// -eps^{-beta} sum_i V_i u_i F_eps(x - x_i)
double eval_flux(const ParticleField& field, double x);

double total_strength(const ParticleField& field);

struct SnapshotInfo {
  double time = 0.0;
  std::optional<std::vector<double>> exact;
};

void write_snapshot_csv(std::ostream& out, const ParticleField& field, const SnapshotInfo& info);

}  // namespace fracdiff
