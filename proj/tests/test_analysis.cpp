#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/analysis.hpp"
#include "core/errors.hpp"
#include "core/greens.hpp"
#include "core/schemes.hpp"
#include "core/timeint.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using doctest::Approx;

namespace {

std::vector<double> exact_samples(const ParticleField& f, double t) {
  const greens::ReducedGreen g(f.order());
  std::vector<double> u;
  for (double x : f.positions()) u.push_back(greens::green_function(g, x, t));
  return u;
}

}  // namespace

TEST_CASE("exact samples have zero error") {
  const auto f = fixture::reference_field(0.5, 20.0, 401);
  const auto exact = f.with_strengths(exact_samples(f, 1.5));
  CHECK(rel_l1_error(exact, 1.5, 8.5) == 0.0);
}

TEST_CASE("empty error window is rejected") {
  const ParticleField f({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}, {0.1, 0.2, 0.3}, 2.0, FractionalOrder::from_beta(0.5));
  CHECK_THROWS_AS(rel_l1_error(f, 1.0, 0.5), DomainError);
  CHECK(rel_l1_error(f, 1.0, 1.0) > 0.0);
  CHECK_THROWS_AS(rel_l1_error(f, 1.0, -1.0), DomainError);
}

TEST_CASE("the window of five characteristic widths holds about 97% of the mass") {
  const auto o = FractionalOrder::from_beta(0.5);
  const greens::ReducedGreen g(o);
  const double d = 5.0 * greens::characteristic_width(o);
  const double mass = green_mass(g, 1.5, d);
  CHECK(mass == Approx(0.97).epsilon(0.01));
  // the same integral through the Fourier-integral density oracle
  const double s = std::pow(1.5, o.gamma());
  const double ref = oracle::integrate([&](double x) { return oracle::stable_density(1.5, x / s) / s; }, -d, d, 1e-10);
  CHECK(mass == Approx(ref).epsilon(1e-8));
}

TEST_CASE("error is linear in a uniform relative perturbation") {
  // u_i = (1 + delta) G(x_i) gives |delta| sum V_i G(x_i) / mass: degree-one in delta,
  // and independent of the overall amplitude of the pair.
  const auto f = fixture::reference_field(0.5, 20.0, 801);
  const auto g = exact_samples(f, 1.5);
  const double d = 8.5;
  auto perturbed = [&](double delta) {
    std::vector<double> u(g);
    for (double& x : u) x *= 1.0 + delta;
    return rel_l1_error(f.with_strengths(u), 1.5, d);
  };
  const double e1 = perturbed(1e-3);
  CHECK(e1 > 0.0);
  CHECK(perturbed(2e-3) == Approx(2.0 * e1).epsilon(1e-10));
  CHECK(perturbed(-1e-3) == Approx(e1).epsilon(1e-10));
  CHECK(e1 == Approx(1e-3).epsilon(1e-2));
}

TEST_CASE("self convergence order of a constructed sequence") {
  const std::vector<double> coarse{-1.0, 0.0, 1.0};
  const std::vector<double> mid{-1.0, -0.5, 0.0, 0.5, 1.0};
  const std::vector<double> fine{-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
  auto level = [](double param, const std::vector<double>& x, double c) {
    ConvergenceLevel l;
    l.parameter = param;
    l.positions = x;
    for (double xi : x) l.strengths.push_back(std::cos(xi) + c * (1.0 + xi * xi));
    return l;
  };
  const std::vector<ConvergenceLevel> second{level(0.4, coarse, 1.0), level(0.2, mid, 0.25), level(0.1, fine, 0.0625)};
  CHECK(self_convergence_order(second) == Approx(2.0).epsilon(1e-12));
  const std::vector<ConvergenceLevel> first{level(0.4, coarse, 1.0), level(0.2, mid, 0.5), level(0.1, fine, 0.25)};
  CHECK(self_convergence_order(first) == Approx(1.0).epsilon(1e-12));
  const std::vector<ConvergenceLevel> flat{level(0.4, coarse, 1.0), level(0.2, mid, 0.5), level(0.1, fine, 0.5)};
  CHECK_THROWS_AS(self_convergence_order(flat), DegenerateError);
  CHECK_THROWS_AS(self_convergence_order(std::span(second).first(2)), DomainError);
}

TEST_CASE("common indices on nested grids") {
  const std::vector<double> coarse{-1.0, 0.0, 1.0};
  const std::vector<double> fine{-1.0, -0.5, 0.0, 0.5, 1.0};
  CHECK(common_indices(coarse, fine) == std::vector<std::size_t>{0, 2, 4});
  CHECK_THROWS_AS(common_indices(std::vector<double>{0.25}, fine), DomainError);
  // nested uniform grids built by N -> 2N - 1 share the coarse nodes exactly
  const auto a = fixture::uniform_field(0.5, 44.7, 401);
  const auto b = fixture::uniform_field(0.5, 44.7, 801);
  const auto idx = common_indices(a.positions(), b.positions());
  REQUIRE(idx.size() == 401);
  for (std::size_t i = 0; i < idx.size(); ++i) CHECK(idx[i] == 2 * i);
}

TEST_CASE("conservation drift") {
  CHECK(conservation_drift(std::vector<double>{2.0, 2.0, 2.0}) == 0.0);
  CHECK(conservation_drift(std::vector<double>{2.0, 2.1, 1.7}) == Approx(0.15).epsilon(1e-14));
  CHECK_THROWS_AS(conservation_drift(std::vector<double>{1.0}), DomainError);
  CHECK_THROWS_AS(conservation_drift(std::vector<double>{0.0, 1.0}), DegenerateError);
}

TEST_CASE("drift over long runs") {
  const auto f = fixture::reference_field(0.5, 20.0, 401);
  auto totals_of = [&](SchemeKind k, const IntegratorSpec& s) {
    std::vector<double> totals;
    integrate(f, k, s, [&](std::size_t, double, std::span<const double> u) {
      double sum = 0.0;
      for (std::size_t i = 0; i < u.size(); ++i) sum += f.volumes()[i] * u[i];
      totals.push_back(sum);
    });
    return totals;
  };
  IntegratorSpec s;
  s.t0 = 0.5;
  s.dt = 1e-3;
  s.tf = 1.5;
  const auto kpse = totals_of(SchemeKind::KPSE, s);
  REQUIRE(kpse.size() == 1001);
  CHECK(conservation_drift(kpse) <= 1e-12);
  s.dt = 1e-2;
  const auto gpse = totals_of(SchemeKind::GPSE, s);
  REQUIRE(gpse.size() == 101);
  CHECK(conservation_drift(gpse) <= 1e-12);
  s.dt = 1e-3;
  const auto dd = totals_of(SchemeKind::DD, s);
  CHECK(conservation_drift(dd) > 1e-6);

  std::vector<ParticleField> history{f, integrate(f, SchemeKind::DD, s)};
  CHECK(conservation_drift(history) == Approx(std::abs(dd.back() - dd.front()) / dd.front()).epsilon(1e-9));
}

TEST_CASE("FPSE carries the largest spatial error at coarse h") {
  const auto f = fixture::reference_field(0.5, 20.0, 401);
  IntegratorSpec s;
  s.order = RkOrder::RK2;
  s.dt = 1e-2;
  const double d = 5.0 * greens::characteristic_width(f.order());
  const double dd = rel_l1_error(integrate(f, SchemeKind::DD, s), 1.5, d);
  const double fpse = rel_l1_error(integrate(f, SchemeKind::FPSE, s), 1.5, d);
  const double kpse = rel_l1_error(integrate(f, SchemeKind::KPSE, s), 1.5, d);
  MESSAGE("rel L1 at h = " << *f.uniform_spacing() << ": DD " << dd << ", FPSE " << fpse << ", KPSE " << kpse);
  CHECK(fpse > dd);
  CHECK(fpse > kpse);
}
