#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/field.hpp"
#include "core/greens.hpp"
#include "core/kernels.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double c_beta_oracle(double beta) {
  return 1.0 / (2.0 * oracle::gamma(1.0 - beta) * std::sin(beta * oracle::kPi / 2.0));
}

double gaussian(double x, double eps) { return std::exp(-(x / eps) * (x / eps)) / (std::sqrt(oracle::kPi) * eps); }

// c_beta int u(xi) |x - xi|^{-beta} dxi for a smooth u decaying within `reach` of the origin
double riesz_potential(double beta, double x, const std::function<double(double)>& u, double reach) {
  auto g = [&](double s) { return u(x - s) + u(x + s); };
  return c_beta_oracle(beta) * oracle::integrate_power_weight(g, beta, std::abs(x) + reach, 1e-12);
}

ParticleField single_particle(double beta, double eps) {
  return ParticleField({0.0}, {1.0}, {1.0}, eps, FractionalOrder::from_beta(beta));
}

}  // namespace

TEST_CASE("uniform grid construction") {
  const auto o = FractionalOrder::from_beta(0.5);
  SUBCASE("three particles on [-1, 1]") {
    DomainSpec d;
    d.half_width = 1.0;
    d.n_particles = 3;
    const auto f = init_uniform(d, o, 2.0, [](double x) { return x * x; });
    CHECK(std::vector<double>(f.positions().begin(), f.positions().end()) == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(std::vector<double>(f.volumes().begin(), f.volumes().end()) == std::vector<double>{1.0, 1.0, 1.0});
    CHECK(std::vector<double>(f.strengths().begin(), f.strengths().end()) == std::vector<double>{1.0, 0.0, 1.0});
    CHECK(f.epsilon() == 2.0);
    CHECK(f.uniform_spacing() == 1.0);
  }
  SUBCASE("width rule at the reference parameters") {
    const auto d = DomainSpec::from_width_rule(160.0, 1.5, o, 32001);
    const double expected = 160.0 * std::pow(1.5, 2.0 / 3.0) * 2.0 * oracle::gamma(1.0 - 1.0 / 1.5) / oracle::kPi;
    CHECK(d.half_width == Approx(expected).epsilon(1e-10));
    CHECK(std::abs(d.half_width - 357.5) < 0.1);
    CHECK(d.spacing() == Approx(2.23e-2).epsilon(2e-3));
    CHECK(d.width_rule_c == 160.0);
  }
  SUBCASE("grid is symmetric with a particle at the origin and the ends at +-D") {
    const auto f = fixture::uniform_field(0.5, 44.7, 401);
    const auto x = f.positions();
    CHECK(x[200] == 0.0);
    CHECK(x.front() == Approx(-44.7).epsilon(1e-14));
    CHECK(x.back() == Approx(44.7).epsilon(1e-14));
    for (std::size_t i = 0; i < 200; ++i) CHECK(x[i] == -x[400 - i]);
    CHECK(f.epsilon() == Approx(2.0 * 89.4 / 400.0).epsilon(1e-14));
  }
  SUBCASE("invalid grids") {
    DomainSpec d;
    d.half_width = 1.0;
    d.n_particles = 4;
    CHECK_THROWS_AS(init_uniform(d, o, 2.0, {}), ConfigError);
    d.n_particles = 32002;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    d.n_particles = 5;
    CHECK_THROWS_AS(init_uniform(d, o, 0.5, {}), ConfigError);
    d.half_width = -1.0;
    CHECK_THROWS_AS(d.validate(), ConfigError);
    CHECK_THROWS_AS(ParticleField({0.0, 0.0}, {1.0, 1.0}, {1.0, 1.0}, 1.0, o), DomainError);
    CHECK_THROWS_AS(ParticleField({0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}, 1.0, o), DomainError);
    CHECK_THROWS_AS(ParticleField({0.0, 1.0}, {1.0, 1.0}, {1.0}, 1.0, o), DomainError);
  }
}

TEST_CASE("eval_u") {
  SUBCASE("a single unit particle gives the mollifier") {
    const auto f = single_particle(0.5, 0.3);
    for (double x : {0.0, 0.1, -0.45, 1.0}) CHECK(eval_u(f, x) == Approx(gaussian(x, 0.3)).epsilon(1e-14));
  }
  SUBCASE("zero strengths") {
    const auto f = fixture::uniform_field(0.5, 10.0, 101);
    for (double x : {-10.0, 0.0, 3.3}) CHECK(eval_u(f, x) == 0.0);
  }
  SUBCASE("reference field reproduces the fundamental solution at the origin") {
    const auto f = fixture::reference_field(0.5, 20.0, 4001);
    const greens::ReducedGreen g(FractionalOrder::from_beta(0.5));
    CHECK(rel(eval_u(f, 0.0), greens::green_function(g, 0.0, 0.5)) < 1e-3);
  }
}

TEST_CASE("eval_u reproduces smooth data to second order in h") {
  // |eval_u(x_i) - u_i| over the coarse particles, for h and h/2 on nested grids
  auto defect = [](std::size_t n) {
    const auto f = fixture::reference_field(0.5, 20.0, n);
    const auto x = f.positions();
    const auto u = f.strengths();
    const std::size_t stride = (n - 1) / 400;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; i += stride) worst = std::max(worst, std::abs(eval_u(f, x[i]) - u[i]));
    return worst;
  };
  const double e1 = defect(801);
  const double e2 = defect(1601);
  const double e3 = defect(3201);
  INFO("defects " << e1 << " " << e2 << " " << e3);
  CHECK(e1 / e2 == Approx(4.0).epsilon(0.1));
  CHECK(e2 / e3 == Approx(4.0).epsilon(0.1));
}

TEST_CASE("eval_utilde") {
  const double beta = 0.5;
  SUBCASE("single unit particle") {
    const double eps = 0.4;
    const auto f = single_particle(beta, eps);
    const kernels::KernelSpec kappa{kernels::KernelKind::KappaBeta, FractionalOrder::from_beta(beta), eps};
    for (double x : {0.0, 0.3, 2.0}) {
      CHECK(eval_utilde(f, x) == Approx(std::pow(eps, 1.0 - beta) * kernels::scaled(kappa, x)).epsilon(1e-14));
    }
  }
  SUBCASE("symmetric field gives an even potential") {
    const auto f = fixture::reference_field(beta, 20.0, 401);
    for (double x : {0.3, 1.7, 12.0}) CHECK(eval_utilde(f, x) == Approx(eval_utilde(f, -x)).epsilon(1e-13));
  }
  SUBCASE("agrees with direct quadrature of the particle representation") {
    const std::vector<double> xs{-1.5, -0.5, 0.5, 1.5, 2.5};
    const std::vector<double> us{0.2, 1.0, -0.4, 0.7, 0.3};
    const double eps = 0.8;
    const ParticleField f(xs, std::vector<double>(5, 1.0), us, eps, FractionalOrder::from_beta(beta));
    auto u = [&](double xi) { return eval_u(f, xi); };
    for (double x : {-2.0, 0.0, 0.5, 3.0, 7.0}) {
      INFO("x=" << x);
      CHECK(rel(eval_utilde(f, x), riesz_potential(beta, x, u, 40.0)) < 1e-6);
    }
  }
}

TEST_CASE("eval_flux") {
  const double beta = 0.5;
  SUBCASE("symmetric field: zero at the origin and odd") {
    const auto f = fixture::reference_field(beta, 20.0, 401);
    CHECK(std::abs(eval_flux(f, 0.0)) < 1e-14);
    for (double x : {0.4, 2.0, 9.0}) CHECK(eval_flux(f, -x) == Approx(-eval_flux(f, x)).epsilon(1e-13));
  }
  SUBCASE("single particle: minus the derivative of the quadrature potential") {
    const double eps = 0.5;
    const auto f = single_particle(beta, eps);
    auto u = [&](double xi) { return gaussian(xi, eps); };
    auto central = [&](double x, double step) {
      return (riesz_potential(beta, x + step, u, 40.0) - riesz_potential(beta, x - step, u, 40.0)) / (2.0 * step);
    };
    for (double x : {0.2, 0.7, 1.5, 4.0}) {
      // Richardson extrapolation of two central differences removes the O(step^2) term
      const double d = (4.0 * central(x, 1e-3) - central(x, 2e-3)) / 3.0;
      INFO("x=" << x);
      CHECK(rel(eval_flux(f, x), -d) < 1e-6);
    }
  }
  SUBCASE("flux of the reference field dies out toward the domain edge") {
    const auto f = fixture::reference_field(beta, 20.0, 1001);
    const double d = f.positions().back();
    double peak = 0.0;
    for (double x = 0.0; x <= 3.0; x += 0.05) peak = std::max(peak, std::abs(eval_flux(f, x)));
    double prev = std::abs(eval_flux(f, 0.25 * d));
    for (double frac : {0.5, 0.75, 0.95}) {
      const double q = std::abs(eval_flux(f, frac * d));
      CHECK(q < prev);
      prev = q;
    }
    CHECK(prev < 1e-2 * peak);
  }
}

TEST_CASE("total_strength") {
  CHECK(total_strength(fixture::uniform_field(0.5, 5.0, 51)) == 0.0);
  const auto f = fixture::reference_field(0.5, 20.0, 4001);
  CHECK(std::abs(total_strength(f) - 1.0) < 1e-3);

  // the mirrored field holds the same (V_i, u_i) pairs in reverse order
  const auto u = fixture::random_strengths(4001, 3);
  const auto a = f.with_strengths(u);
  const auto b = f.with_strengths(std::vector<double>(u.rbegin(), u.rend()));
  const double sa = total_strength(a);
  CHECK(std::abs(sa - total_strength(b)) <= 1e-15 * std::abs(sa));
}

TEST_CASE("snapshot CSV") {
  const auto f = fixture::uniform_field(0.5, 1.0, 3).with_strengths({1.0, 2.0, 3.0});
  std::ostringstream os;
  write_snapshot_csv(os, f, SnapshotInfo{1.5, std::vector<double>{0.5, 0.25, 0.125}});
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# beta=0.5 t=1.5 N=3 D=1 eps=2", 0) == 0);
  std::getline(in, line);
  CHECK(line == "x,u,u_exact");
  std::getline(in, line);
  CHECK(line == "-1,1,0.5");
  std::ostringstream bad;
  CHECK_THROWS_AS(write_snapshot_csv(bad, f, SnapshotInfo{0.0, std::vector<double>{1.0}}), DomainError);
}
