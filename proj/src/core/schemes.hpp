#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "field.hpp"
#include "interaction.hpp"

namespace fracdiff {

// DD, FPSE, KPSE and RLPSE produce du/dt; GPSE maps u^n to u^{n+1} directly.
// RLPSE is experimental: it degrades near the domain edges.
enum class SchemeKind { DD, FPSE, KPSE, RLPSE, GPSE };

std::string_view scheme_name(SchemeKind kind);
std::optional<SchemeKind> parse_scheme(std::string_view name);
constexpr bool is_rate_scheme(SchemeKind kind) { return kind != SchemeKind::GPSE; }
constexpr bool is_conservative(SchemeKind kind) { return kind != SchemeKind::DD; }

struct SchemeOptions {
  interaction::InteractionOptions interaction;
};

// du/dt = rate(u) for a fixed particle geometry. Kernel weights are built once
// at construction; apply() is then a pure function of the strengths.
class RateOperator {
 public:
  RateOperator(const ParticleField& geometry, SchemeKind kind, SchemeOptions options = {});

  void apply(std::span<const double> u, std::span<double> rate) const;
  std::vector<double> operator()(std::span<const double> u) const;

  SchemeKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return volumes_.size(); }

 private:
  SchemeKind kind_;
  std::vector<double> volumes_;
  double scale_first_ = 1.0;   // prefactor of the first pass
  double scale_second_ = 1.0;  // prefactor of the second pass (two-pass schemes)
  interaction::PairKernel first_;
  std::optional<interaction::PairKernel> second_;
};

std::vector<double> rhs(const ParticleField& field, SchemeKind kind);
std::vector<double> rhs_dd(const ParticleField& field);
std::vector<double> rhs_fpse(const ParticleField& field);
std::vector<double> rhs_kpse(const ParticleField& field);
std::vector<double> rhs_rlpse(const ParticleField& field);

// u_i <- u_i + sum_j V_j (u_j - u_i) E_eps(x_j - x_i) with eps = dt^{1/alpha};
// the field's own smoothing length is not used.
class GpseStepper {
 public:
  GpseStepper(const ParticleField& geometry, double dt, SchemeOptions options = {});

  void step(std::span<double> u) const;
  double epsilon() const noexcept { return epsilon_; }
  double dt() const noexcept { return dt_; }

 private:
  double dt_;
  double epsilon_;
  std::vector<double> volumes_;
  interaction::PairKernel kernel_;
};

ParticleField step_gpse(const ParticleField& field, double dt);

struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;  // row-major

  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
};

inline constexpr std::size_t kMaxAssembledParticles = 20000;

// A with du/dt = A u for the field's geometry. Rejects GPSE.
DenseMatrix assemble_matrix(const ParticleField& field, SchemeKind kind,
                            std::size_t max_particles = kMaxAssembledParticles);

}  // namespace fracdiff
