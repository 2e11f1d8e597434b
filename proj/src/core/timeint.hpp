#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

#include "field.hpp"
#include "schemes.hpp"

namespace fracdiff {

enum class RkOrder { RK1, RK2 };

// Fixed-step explicit integration from t0 to tf. The interval must hold a whole
// number of steps (relative slack 1e-9); no shortened final step is taken.
struct IntegratorSpec {
  RkOrder order = RkOrder::RK1;
  double dt = 5e-5;
  double t0 = 0.5;
  double tf = 1.5;

  std::size_t steps() const;
  void validate() const;
};

// Called with the step index (0 = initial state), the time and the strengths.
using StepObserver = std::function<void(std::size_t step, double t, std::span<const double> u)>;

inline constexpr double kDivergenceFactor = 1e6;

// RK1 is forward Euler; RK2 is the explicit midpoint rule. GPSE advances by its
// own stepper with the given dt (the order field is ignored). Throws
// InstabilityError when max|u| exceeds kDivergenceFactor times its initial value.
ParticleField integrate(const ParticleField& field, SchemeKind kind, const IntegratorSpec& spec,
                        const StepObserver& observer = {}, SchemeOptions options = {});

struct StabilityReport {
  double lambda_min = 0.0;
  double a_constant = 0.0;  // 2 / (|lambda_min| h^alpha)
  std::size_t iterations = 0;
  double residual = 0.0;    // |A v - lambda v| / |v| at exit
  double last_change = 0.0; // relative change of lambda over the final iteration
};

struct PowerIterationOptions {
  double tol = 1e-8;
  std::size_t max_iter = 50000;
  std::uint64_t seed = 20240607;
};

// Most negative eigenvalue of A by power iteration on A itself (its spectrum lies
// in (-inf, 0]). Convergence is declared when the Rayleigh quotient changes by
// less than tol relative; the eigenvalues crowd the extreme end of the spectrum,
// so the residual shrinks far more slowly and is reported rather than enforced.
StabilityReport power_iteration_min_eig(const ParticleField& field, SchemeKind kind,
                                        const PowerIterationOptions& options = {});

// dt / h^alpha <= a
bool stability_limit_check(const StabilityReport& report, const ParticleField& field, double dt);

// Largest stable step 2 / |lambda_min| = a h^alpha.
double stable_step_limit(const StabilityReport& report);

}  // namespace fracdiff
