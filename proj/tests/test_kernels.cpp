#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "core/errors.hpp"
#include "core/greens.hpp"
#include "core/kernels.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using namespace fracdiff::kernels;
using doctest::Approx;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double c_beta_oracle(double beta) {
  return 1.0 / (2.0 * oracle::gamma(1.0 - beta) * std::sin(beta * oracle::kPi / 2.0));
}

// c_beta int w(h) |r - h|^{-beta} dh for a Gaussian-type weight w; the
// derivatives of kappa fall on the weight (eta' for F, eta'' for Gd).
double potential(double beta, double r, double (*w)(double)) {
  auto g = [&](double s) { return w(r - s) + w(r + s); };
  return c_beta_oracle(beta) * oracle::integrate_power_weight(g, beta, std::abs(r) + 40.0);
}

double w_eta(double h) { return std::exp(-h * h) / std::sqrt(oracle::kPi); }
double w_deta(double h) { return -2.0 * h * std::exp(-h * h) / std::sqrt(oracle::kPi); }
double w_ddeta(double h) { return (4.0 * h * h - 2.0) * std::exp(-h * h) / std::sqrt(oracle::kPi); }

}  // namespace

TEST_CASE("c_beta") {
  CHECK(c_beta(0.5) == Approx(1.0 / (std::sqrt(2.0) * std::sqrt(oracle::kPi))).epsilon(1e-14));
  CHECK(c_beta(0.5) == Approx(0.3989423).epsilon(1e-7));
  CHECK(c_beta(0.1) > 0.0);
  CHECK(c_beta(0.9) > 0.0);
  CHECK(std::isfinite(c_beta(0.1)));
  CHECK(std::isfinite(c_beta(0.9)));
  CHECK(rel(c_beta(0.3), c_beta_oracle(0.3)) < 1e-12);
  CHECK_THROWS_AS(c_beta(0.0), DomainError);
  CHECK_THROWS_AS(c_beta(1.0), DomainError);
  CHECK_THROWS_AS(c_beta(-0.5), DomainError);
}

TEST_CASE("Gaussian kernels") {
  CHECK(eta(0.0) == Approx(1.0 / std::sqrt(oracle::kPi)).epsilon(1e-15));
  CHECK(eta(0.0) == Approx(0.5641896).epsilon(1e-7));
  CHECK(eta1(0.0) == 0.0);
  CHECK(eta1(0.4) == -eta1(-0.4));
  CHECK(phi(1.3) == Approx(2.0 * std::exp(-1.69) / std::sqrt(oracle::kPi)).epsilon(1e-15));
  const double r = 0.7;
  const double h = 1e-5;
  const double deta = (eta(r + h) - eta(r - h)) / (2.0 * h);
  CHECK(rel(phi(r), -deta / r) < 1e-6);
  CHECK(rel(eta1(r), deta) < 1e-6);
}

TEST_CASE("kappa is the Riesz potential of the Gaussian") {
  CHECK(rel(kernel_kappa(0.5, 0.9), oracle::utilde_unit_gaussian(0.5, 0.9)) < 1e-7);
  for (double beta : {0.1, 0.5, 0.9}) {
    for (double r = 0.0; r <= 10.0; r += 0.5) {
      INFO("beta=" << beta << " r=" << r);
      CHECK(rel(kernel_kappa(beta, r), potential(beta, r, w_eta)) < 1e-7);
    }
  }
}

TEST_CASE("F is the first and Gd the second derivative of kappa") {
  for (double beta : {0.1, 0.5, 0.9}) {
    const auto o = FractionalOrder::from_beta(beta);
    for (double r = 0.25; r <= 10.0; r += 0.5) {
      INFO("beta=" << beta << " r=" << r);
      CHECK(rel(kernel_f(o, r), potential(beta, r, w_deta)) < 1e-7);
      CHECK(rel(kernel_gd(o, r), potential(beta, r, w_ddeta)) < 1e-7);
    }
    CHECK(rel(kernel_gd(o, 0.0), potential(beta, 0.0, w_ddeta)) < 1e-7);
  }
  // the case singled out in the kernel description: r = 1.2, alpha = 1.5
  const auto o = FractionalOrder::from_alpha(1.5);
  CHECK(rel(kernel_gd(o, 1.2), potential(0.5, 1.2, w_ddeta)) < 1e-7);
}

TEST_CASE("F at the origin and parity") {
  const auto o = FractionalOrder::from_beta(0.5);
  CHECK(kernel_f(o, 0.0) == 0.0);
  CHECK(kernel_f(o, -0.5) == -kernel_f(o, 0.5));
}

TEST_CASE("K closes the identity K r + F = 0") {
  for (double beta : {0.1, 0.5, 0.9}) {
    const auto o = FractionalOrder::from_beta(beta);
    for (double r : {0.1, 1.0, 5.0}) CHECK(std::abs(kernel_k(o, r) + kernel_f(o, r) / r) <= 1e-12 * kernel_k(o, r));
    double worst = 0.0;
    for (double r = 1e-3; r <= 20.0; r *= 1.05) {
      const double k = kernel_k(o, r);
      worst = std::max(worst, std::abs(k * r + kernel_f(o, r)) / std::abs(kernel_f(o, r)));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("K is positive, even and finite at the origin") {
  for (double beta : {0.1, 0.5, 0.9}) {
    const auto o = FractionalOrder::from_beta(beta);
    for (double r = 0.0; r <= 50.0; r += 0.25) {
      CHECK(kernel_k(o, r) > 0.0);
      CHECK(kernel_k(o, -r) == kernel_k(o, r));
    }
    // K(0) = -kappa''(0): central difference of kappa with step 1e-4
    const double h = 1e-4;
    const double fd = -(kernel_kappa(beta, h) - 2.0 * kernel_kappa(beta, 0.0) + kernel_kappa(beta, -h)) / (h * h);
    CHECK(rel(kernel_k(o, 0.0), fd) < 1e-6);
    CHECK(kernel_k(o, 0.0) == kernel_k_origin(o));
    CHECK(rel(kernel_k(o, 0.5 * kKernelKOriginThreshold), kernel_k(o, 2.0 * kKernelKOriginThreshold)) < 1e-9);
  }
}

TEST_CASE("kappa decays like c_beta r^{-beta}") {
  CHECK(rel(kernel_kappa(0.5, 100.0) * std::pow(100.0, 0.5), c_beta(0.5)) < 0.02);
}

TEST_CASE("E is the reduced Green function") {
  for (double alpha : {1.1, 1.5, 1.9}) {
    const auto o = FractionalOrder::from_alpha(alpha);
    const greens::ReducedGreen g(o);
    for (double r : {0.0, 0.5, 3.0, 20.0}) {
      CHECK(kernel_e(o, r) == g(r));
      CHECK(kernel_e(o, -r) == kernel_e(o, r));
    }
  }
}

TEST_CASE("E carries unit mass on a wide grid") {
  const auto o = FractionalOrder::from_beta(0.5);
  const KernelEvaluator e(KernelSpec{KernelKind::E, o, 0.5});
  const double h = 0.05;
  const int m = 40000;  // |x| <= 2000
  double mass = e(0.0);
  for (int j = 1; j <= m; ++j) mass += 2.0 * e(j * h);
  CHECK(std::abs(h * mass - 1.0) < 1e-4);
}

TEST_CASE("parity of every kind") {
  for (double beta : {0.1, 0.5, 0.9}) {
    const auto o = FractionalOrder::from_beta(beta);
    for (auto kind : kAllKinds) {
      const KernelEvaluator k(KernelSpec{kind, o, 1.0});
      for (double r : {0.2, 1.0, 3.7, 9.0}) {
        INFO(kind_name(kind) << " beta=" << beta << " r=" << r);
        if (is_odd(kind)) {
          CHECK(k(-r) == -k(r));
        } else {
          CHECK(k(-r) == k(r));
        }
      }
    }
  }
}

TEST_CASE("scaling with the smoothing length") {
  const auto o = FractionalOrder::from_beta(0.5);
  for (auto kind : kAllKinds) {
    const KernelSpec unit{kind, o, 1.0};
    CHECK(scaled(unit, 0.8) == KernelEvaluator(unit).unscaled(0.8));
  }
  CHECK(scaled(KernelSpec{KernelKind::Eta, o, 0.25}, 0.0) == Approx(eta(0.0) / 0.25).epsilon(1e-15));
  for (double eps : {0.5, 2.0}) {
    const KernelSpec s{KernelKind::Eta, o, eps};
    const double mass = oracle::integrate([&](double x) { return scaled(s, x); }, -40.0 * eps, 40.0 * eps, 1e-12);
    CHECK(std::abs(mass - 1.0) < 1e-10);
  }
  CHECK(scaled(KernelSpec{KernelKind::Gd, o, 2.0}, 1.0) == Approx(0.5 * kernel_gd(o, 0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(scaled(KernelSpec{KernelKind::Eta, o, 0.0}, 1.0), DomainError);
  CHECK_THROWS_AS(scaled(KernelSpec{KernelKind::Eta, o, -1.0}, 1.0), DomainError);
}

TEST_CASE("kind names round-trip") {
  for (auto kind : kAllKinds) CHECK(parse_kind(kind_name(kind)) == kind);
  CHECK_FALSE(parse_kind("gauss").has_value());
  CHECK(is_odd(KernelKind::Eta1));
  CHECK(is_odd(KernelKind::F));
  CHECK_FALSE(is_odd(KernelKind::K));
}

TEST_CASE("tabulated kernels stay within the interpolation bound") {
  const auto o = FractionalOrder::from_beta(0.5);
  for (auto kind : {KernelKind::Gd, KernelKind::F, KernelKind::K, KernelKind::E}) {
    const KernelEvaluator k(KernelSpec{kind, o, 1.0});
    const KernelTable table(k, 20.0, 1e-4);
    CHECK(table.max_midpoint_error() < 1e-8);
    double worst = 0.0;
    for (double r = -25.0; r <= 25.0; r += 0.0137) worst = std::max(worst, std::abs(table(r) - k(r)));
    CHECK(worst < 1e-8);
  }
  const KernelEvaluator k(KernelSpec{KernelKind::Eta, o, 1.0});
  CHECK_THROWS_AS(KernelTable(k, 1.0, 2.0), DomainError);
}
