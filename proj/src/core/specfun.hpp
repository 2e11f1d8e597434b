#pragma once

// Parabolic cylinder functions U(a,z), V(a,z), D_nu(z) on the real line, and the
// Gaussian-weighted combinations S^nu, T^nu that every particle kernel is built from.
//
//   S^nu(z) = exp(-z^2/2) (D_{nu-1}(-sqrt2 z) + D_{nu-1}(sqrt2 z))      (even)
//   T^nu(z) = exp(-z^2/2) (D_{nu-1}(-sqrt2 z) - D_{nu-1}(sqrt2 z))      (odd)
//
// Evaluation regimes for U (z >= 0):
//   z <= series_radius               Maclaurin series (u1, u2)
//   series_radius < z < switch       Taylor integration of U'' = (z^2/4 + a) U,
//                                    started from the asymptotic expansion at `switch`
//   z >= switch                      asymptotic expansion, optimally truncated
// Negative arguments go through the connection formula with V. V is evaluated by
// its series below `switch` and by its asymptotic expansion above.

#include <cmath>

namespace fracdiff::specfun {

// Order of a parabolic cylinder function in both conventions; a + nu = -1/2.
struct PcfOrder {
  double a;
  double nu;

  static PcfOrder from_a(double a) { return {a, -0.5 - a}; }
  static PcfOrder from_nu(double nu) { return {-0.5 - nu, nu}; }
};

enum class Regime { Series, Asymptotic };

struct EvalRegime {
  double switch_radius = 8.0;
  double series_radius = 4.0;
  double rel_tol = 1e-16;
  int max_terms = 500;

  Regime select(double z) const {
    return std::abs(z) >= switch_radius ? Regime::Asymptotic : Regime::Series;
  }
  void validate() const;
};

double pcf_u(double a, double z, const EvalRegime& regime = {});
double pcf_v(double a, double z, const EvalRegime& regime = {});
double pcf_d(double nu, double z, const EvalRegime& regime = {});

double s_combo(double nu, double z, const EvalRegime& regime = {});
double t_combo(double nu, double z, const EvalRegime& regime = {});

// 1/Gamma(x); zero at the poles of Gamma.
double rgamma(double x);
// sin(pi x), cos(pi x) with exact zeros at the integers / half-integers.
double sinpi(double x);
double cospi(double x);

// Values at the origin (closed forms).
double pcf_u0(double a);
double pcf_du0(double a);
double pcf_v0(double a);
double pcf_dv0(double a);

namespace detail {

struct SeriesPair {
  long double even;  // exp(z^2/4) u1(a,z)
  long double odd;   // exp(z^2/4) u2(a,z)
};

// Power series of the even and odd solutions, without the Gaussian factor.
SeriesPair power_series(double a, double z, const EvalRegime& regime);

double u_series(double a, double z, const EvalRegime& regime);
double v_series(double a, double z, const EvalRegime& regime);

struct ValueAndSlope {
  long double value;
  long double slope;
};

// Asymptotic expansions for z > 0. The `_scaled` forms return exp(-z^2/4) U and
// exp(-z^2/4) V so they neither overflow nor underflow prematurely.
ValueAndSlope u_asymptotic(double a, double z);
double u_scaled_asymptotic(double a, double z);
double v_asymptotic(double a, double z);
double v_scaled_asymptotic(double a, double z);

// U(a,z) for 0 < z < switch_radius by backward Taylor integration from switch_radius.
double u_taylor(double a, double z, const EvalRegime& regime);

// exp(-z^2/4) U(a,z) and exp(-z^2/4) V(a,z) for z >= 0, any regime.
struct ScaledPair {
  double u;
  double v;
};
ScaledPair scaled_uv(double a, double z, const EvalRegime& regime);

// S^nu evaluated literally from D at +-sqrt2 z (no asymptotics; used as cross-check).
double s_combo_direct(double nu, double z, const EvalRegime& regime);

}  // namespace detail

}  // namespace fracdiff::specfun
