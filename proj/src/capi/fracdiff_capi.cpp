#include "fracdiff/fracdiff.h"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <new>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/analysis.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/field.hpp"
#include "core/greens.hpp"
#include "core/kernels.hpp"
#include "core/schemes.hpp"
#include "core/specfun.hpp"
#include "core/timeint.hpp"

struct fracdiff_field {
  fracdiff::ParticleField field;
};

struct fracdiff_config {
  fracdiff::ExperimentConfig config;
};

namespace {

struct LastError {
  std::string message;
  std::string key;
  std::size_t step = 0;
  double partial = std::nan("");
};

thread_local LastError g_last;

fracdiff_status record(fracdiff_status status, std::string message) {
  g_last = LastError{};
  g_last.message = std::move(message);
  return status;
}

// Runs `body`, translating library exceptions into status codes.
template <class F>
fracdiff_status guarded(F&& body) noexcept {
  try {
    body();
    return FRACDIFF_OK;
  } catch (const fracdiff::ConfigError& e) {
    const auto s = record(FRACDIFF_ERR_CONFIG, e.what());
    g_last.key = e.key();
    return s;
  } catch (const fracdiff::InstabilityError& e) {
    const auto s = record(FRACDIFF_ERR_INSTABILITY, e.what());
    g_last.step = e.step();
    return s;
  } catch (const fracdiff::AccuracyError& e) {
    const auto s = record(FRACDIFF_ERR_ACCURACY, e.what());
    g_last.partial = e.partial_value();
    return s;
  } catch (const fracdiff::Error& e) {
    return record(static_cast<fracdiff_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return record(FRACDIFF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(FRACDIFF_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(FRACDIFF_ERR_INTERNAL, "unknown exception");
  }
}

// NULL arguments get their own status code rather than the generic internal one.
#define FRACDIFF_REQUIRE(p)                                                         \
  do {                                                                              \
    if ((p) == nullptr) return record(FRACDIFF_ERR_NULL_ARGUMENT, #p " is NULL"); \
  } while (0)

fracdiff::SchemeKind to_scheme(fracdiff_scheme s) {
  switch (s) {
    case FRACDIFF_SCHEME_DD: return fracdiff::SchemeKind::DD;
    case FRACDIFF_SCHEME_FPSE: return fracdiff::SchemeKind::FPSE;
    case FRACDIFF_SCHEME_KPSE: return fracdiff::SchemeKind::KPSE;
    case FRACDIFF_SCHEME_RLPSE: return fracdiff::SchemeKind::RLPSE;
    case FRACDIFF_SCHEME_GPSE: return fracdiff::SchemeKind::GPSE;
  }
  throw fracdiff::ConfigError("scheme", "unknown scheme code " + std::to_string(static_cast<int>(s)));
}

fracdiff::kernels::KernelKind to_kind(fracdiff_kernel k) {
  const int i = static_cast<int>(k);
  if (i < 0 || i >= static_cast<int>(std::size(fracdiff::kernels::kAllKinds))) {
    throw fracdiff::ConfigError("kernel", "unknown kernel code " + std::to_string(i));
  }
  return fracdiff::kernels::kAllKinds[i];
}

void require_length(std::size_t n, std::size_t expected) {
  if (n != expected) {
    throw fracdiff::DomainError("buffer length " + std::to_string(n) + " does not match field size " +
                                std::to_string(expected));
  }
}

}  // namespace

extern "C" {

const char* fracdiff_version(void) { return FRACDIFF_VERSION; }
const char* fracdiff_last_error(void) { return g_last.message.c_str(); }
const char* fracdiff_last_error_key(void) { return g_last.key.c_str(); }
size_t fracdiff_last_error_step(void) { return g_last.step; }
double fracdiff_last_error_partial(void) { return g_last.partial; }

const char* fracdiff_status_name(fracdiff_status status) {
  switch (status) {
    case FRACDIFF_OK: return "ok";
    case FRACDIFF_ERR_DOMAIN: return "domain error";
    case FRACDIFF_ERR_CONFIG: return "configuration error";
    case FRACDIFF_ERR_ACCURACY: return "accuracy error";
    case FRACDIFF_ERR_INSTABILITY: return "instability";
    case FRACDIFF_ERR_UNSUPPORTED: return "unsupported";
    case FRACDIFF_ERR_DEGENERATE: return "degenerate input";
    case FRACDIFF_ERR_IO: return "i/o error";
    case FRACDIFF_ERR_NULL_ARGUMENT: return "null argument";
    case FRACDIFF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

fracdiff_status fracdiff_set_threads(int n) {
  return guarded([&] {
    if (n > 0) {
      omp_set_num_threads(n);
    } else {
      omp_set_num_threads(omp_get_num_procs());
    }
  });
}

fracdiff_status fracdiff_pcf_d(double nu, double z, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::specfun::pcf_d(nu, z); });
}

fracdiff_status fracdiff_pcf_u(double a, double z, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::specfun::pcf_u(a, z); });
}

fracdiff_status fracdiff_pcf_v(double a, double z, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::specfun::pcf_v(a, z); });
}

fracdiff_status fracdiff_reduced_green(double alpha, double x, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::greens::reduced_green(fracdiff::FractionalOrder::from_alpha(alpha), x); });
}

fracdiff_status fracdiff_green_function(double alpha, double x, double t, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded(
      [&] { *out = fracdiff::greens::green_function(fracdiff::FractionalOrder::from_alpha(alpha), x, t); });
}

fracdiff_status fracdiff_characteristic_width(double alpha, double split_point, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    const auto order = fracdiff::FractionalOrder::from_alpha(alpha);
    *out = split_point > 0.0 ? fracdiff::greens::characteristic_width(order, split_point)
                             : fracdiff::greens::characteristic_width(order);
  });
}

fracdiff_status fracdiff_c_beta(double beta, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::kernels::c_beta(beta); });
}

fracdiff_status fracdiff_kernel_eval(fracdiff_kernel kind, double beta, double epsilon, double r, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    const fracdiff::kernels::KernelSpec spec{to_kind(kind), fracdiff::FractionalOrder::from_beta(beta), epsilon};
    spec.validate();
    *out = fracdiff::kernels::scaled(spec, r);
  });
}

fracdiff_status fracdiff_half_width_rule(double beta, double c, double t_width, double* out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    *out = fracdiff::DomainSpec::from_width_rule(c, t_width, fracdiff::FractionalOrder::from_beta(beta), 3)
               .half_width;
  });
}

fracdiff_status fracdiff_field_create_uniform(double beta, double half_width, size_t n, double overlap, double t_init,
                                              fracdiff_field** out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    const auto order = fracdiff::FractionalOrder::from_beta(beta);
    fracdiff::DomainSpec domain;
    domain.half_width = half_width;
    domain.n_particles = n;
    domain.validate();
    std::optional<fracdiff::greens::ReducedGreen> green;
    if (t_init > 0.0) green.emplace(order);
    auto field = fracdiff::init_uniform(domain, order, overlap, [&](double x) {
      return green ? fracdiff::greens::green_function(*green, x, t_init) : 0.0;
    });
    *out = new fracdiff_field{std::move(field)};
  });
}

fracdiff_status fracdiff_field_create(double beta, const double* positions, const double* volumes,
                                      const double* strengths, size_t n, double epsilon, fracdiff_field** out) {
  FRACDIFF_REQUIRE(out);
  FRACDIFF_REQUIRE(positions);
  FRACDIFF_REQUIRE(volumes);
  FRACDIFF_REQUIRE(strengths);
  return guarded([&] {
    fracdiff::ParticleField field(std::vector<double>(positions, positions + n),
                                  std::vector<double>(volumes, volumes + n),
                                  std::vector<double>(strengths, strengths + n), epsilon,
                                  fracdiff::FractionalOrder::from_beta(beta));
    *out = new fracdiff_field{std::move(field)};
  });
}

fracdiff_status fracdiff_field_clone(const fracdiff_field* field, fracdiff_field** out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = new fracdiff_field{field->field}; });
}

void fracdiff_field_free(fracdiff_field* field) { delete field; }

fracdiff_status fracdiff_field_size(const fracdiff_field* field, size_t* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  *out = field->field.size();
  return FRACDIFF_OK;
}

fracdiff_status fracdiff_field_epsilon(const fracdiff_field* field, double* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  *out = field->field.epsilon();
  return FRACDIFF_OK;
}

namespace {

fracdiff_status copy_out(const fracdiff_field* field, std::span<const double> (fracdiff::ParticleField::*get)() const,
                         double* out, size_t n) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    const auto values = (field->field.*get)();
    require_length(n, values.size());
    std::copy(values.begin(), values.end(), out);
  });
}

}  // namespace

fracdiff_status fracdiff_field_positions(const fracdiff_field* field, double* out, size_t n) {
  return copy_out(field, &fracdiff::ParticleField::positions, out, n);
}

fracdiff_status fracdiff_field_volumes(const fracdiff_field* field, double* out, size_t n) {
  return copy_out(field, &fracdiff::ParticleField::volumes, out, n);
}

fracdiff_status fracdiff_field_strengths(const fracdiff_field* field, double* out, size_t n) {
  return copy_out(field, &fracdiff::ParticleField::strengths, out, n);
}

fracdiff_status fracdiff_field_set_strengths(fracdiff_field* field, const double* values, size_t n) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(values);
  return guarded([&] {
    require_length(n, field->field.size());
    field->field.set_strengths(std::vector<double>(values, values + n));
  });
}

fracdiff_status fracdiff_field_total_strength(const fracdiff_field* field, double* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::total_strength(field->field); });
}

fracdiff_status fracdiff_eval_u(const fracdiff_field* field, double x, double* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::eval_u(field->field, x); });
}

fracdiff_status fracdiff_eval_utilde(const fracdiff_field* field, double x, double* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::eval_utilde(field->field, x); });
}

fracdiff_status fracdiff_eval_flux(const fracdiff_field* field, double x, double* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::eval_flux(field->field, x); });
}

fracdiff_status fracdiff_rhs(const fracdiff_field* field, fracdiff_scheme scheme, double* rates, size_t n) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(rates);
  return guarded([&] {
    require_length(n, field->field.size());
    const auto kind = to_scheme(scheme);
    if (!fracdiff::is_rate_scheme(kind)) throw fracdiff::UnsupportedError("GPSE has no rate form; use fracdiff_step_gpse");
    const auto r = fracdiff::rhs(field->field, kind);
    std::copy(r.begin(), r.end(), rates);
  });
}

fracdiff_status fracdiff_step_gpse(fracdiff_field* field, double dt) {
  FRACDIFF_REQUIRE(field);
  return guarded([&] { field->field = fracdiff::step_gpse(field->field, dt); });
}

fracdiff_status fracdiff_integrate(fracdiff_field* field, fracdiff_scheme scheme, fracdiff_rk_order order, double dt,
                                   double t0, double tf) {
  FRACDIFF_REQUIRE(field);
  return guarded([&] {
    fracdiff::IntegratorSpec spec;
    if (order == FRACDIFF_RK1) {
      spec.order = fracdiff::RkOrder::RK1;
    } else if (order == FRACDIFF_RK2) {
      spec.order = fracdiff::RkOrder::RK2;
    } else {
      throw fracdiff::ConfigError("integrator", "order must be 1 or 2");
    }
    spec.dt = dt;
    spec.t0 = t0;
    spec.tf = tf;
    field->field = fracdiff::integrate(field->field, to_scheme(scheme), spec);
  });
}

fracdiff_status fracdiff_power_iteration(const fracdiff_field* field, fracdiff_scheme scheme, double tol,
                                         size_t max_iter, uint64_t seed, fracdiff_stability_report* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    fracdiff::PowerIterationOptions options;
    options.tol = tol;
    options.max_iter = max_iter;
    options.seed = seed;
    const auto r = fracdiff::power_iteration_min_eig(field->field, to_scheme(scheme), options);
    *out = fracdiff_stability_report{r.lambda_min, r.a_constant, r.iterations, r.residual, r.last_change};
  });
}

fracdiff_status fracdiff_rel_l1_error(const fracdiff_field* field, double t, double d_eps, double* out) {
  FRACDIFF_REQUIRE(field);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::rel_l1_error(field->field, t, d_eps); });
}

fracdiff_status fracdiff_conservation_drift(const double* totals, size_t n, double* out) {
  FRACDIFF_REQUIRE(totals);
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = fracdiff::conservation_drift(std::span<const double>(totals, n)); });
}

fracdiff_status fracdiff_config_create(fracdiff_config** out) {
  FRACDIFF_REQUIRE(out);
  return guarded([&] { *out = new fracdiff_config{}; });
}

void fracdiff_config_free(fracdiff_config* config) { delete config; }

fracdiff_status fracdiff_config_apply_preset(fracdiff_config* config, const char* name) {
  FRACDIFF_REQUIRE(config);
  FRACDIFF_REQUIRE(name);
  return guarded([&] { config->config.apply_preset(name); });
}

fracdiff_status fracdiff_config_load(fracdiff_config* config, const char* text) {
  FRACDIFF_REQUIRE(config);
  FRACDIFF_REQUIRE(text);
  return guarded([&] {
    auto copy = config->config;  // leave the config untouched if a later token fails
    copy.load(text);
    config->config = std::move(copy);
  });
}

fracdiff_status fracdiff_config_set(fracdiff_config* config, const char* key, const char* value) {
  FRACDIFF_REQUIRE(config);
  FRACDIFF_REQUIRE(key);
  FRACDIFF_REQUIRE(value);
  return guarded([&] { config->config.set(key, value); });
}

fracdiff_status fracdiff_config_validate(const fracdiff_config* config) {
  FRACDIFF_REQUIRE(config);
  return guarded([&] { config->config.validate(); });
}

fracdiff_status fracdiff_config_half_width(const fracdiff_config* config, double* out) {
  FRACDIFF_REQUIRE(config);
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    config->config.validate();
    *out = config->config.half_width();
  });
}

fracdiff_status fracdiff_config_epsilon(const fracdiff_config* config, double* out) {
  FRACDIFF_REQUIRE(config);
  FRACDIFF_REQUIRE(out);
  return guarded([&] {
    config->config.validate();
    *out = config->config.epsilon();
  });
}

fracdiff_status fracdiff_run(const fracdiff_config* config, const char* out_dir) {
  FRACDIFF_REQUIRE(config);
  return guarded([&] {
    if (out_dir != nullptr) {
      fracdiff::run_experiment(config->config, out_dir);
    } else {
      fracdiff::run_experiment(config->config);
    }
  });
}

}  // extern "C"
