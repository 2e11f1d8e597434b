#include "greens.hpp"

#include <algorithm>
#include <memory>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "errors.hpp"
#include "specfun.hpp"

namespace fracdiff {

FractionalOrder FractionalOrder::from_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0)) {
    std::ostringstream os;
    os << "fractional order alpha=" << alpha << " outside (1, 2)";
    throw DomainError(os.str());
  }
  return FractionalOrder(alpha, alpha - 1.0);
}

FractionalOrder FractionalOrder::from_beta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    std::ostringstream os;
    os << "fractional order beta=" << beta << " outside (0, 1)";
    throw DomainError(os.str());
  }
  return FractionalOrder(beta + 1.0, beta);
}

namespace greens {

namespace {

namespace mp = boost::multiprecision;

constexpr unsigned kSeriesDigits = 60;
using SeriesReal = mp::number<mp::mpfr_float_backend<kSeriesDigits>, mp::et_off>;

constexpr long double kPiL = std::numbers::pi_v<long double>;
constexpr long double kLn10 = 2.302585092994045684017991454684364208L;

// log of Gamma(1 + (2k+1)/alpha) / (2k+1)!, the k-th series coefficient.
long double series_log_coeff(long double alpha, int k) {
  return std::lgamma(1.0L + (2.0L * k + 1.0L) / alpha) - std::lgamma(2.0L * k + 2.0L);
}

// log of Gamma(1 + alpha n) / n! x^{-alpha n}.
long double asym_log_magnitude(long double alpha, int n, long double log_x) {
  return std::lgamma(1.0L + alpha * n) - std::lgamma(n + 1.0L) - alpha * n * log_x;
}

// Largest series term at x (log scale). Also reports the index where terms have
// dropped `drop` below the peak.
struct SeriesScan {
  long double log_peak;
  int cutoff;
};

SeriesScan scan_series(long double alpha, long double log_x, long double drop, int max_terms) {
  SeriesScan scan{-std::numeric_limits<long double>::infinity(), max_terms};
  for (int k = 0; k < max_terms; ++k) {
    const long double t = series_log_coeff(alpha, k) + 2.0L * k * log_x;
    if (t > scan.log_peak) {
      scan.log_peak = t;
    } else if (t < scan.log_peak - drop) {
      scan.cutoff = k + 1;
      break;
    }
  }
  return scan;
}

// Smallest asymptotic term relative to the leading one (log scale).
long double asym_log_floor(long double alpha, long double log_x, int max_terms) {
  const long double first = asym_log_magnitude(alpha, 1, log_x);
  long double prev = first;
  for (int n = 2; n <= max_terms; ++n) {
    const long double t = asym_log_magnitude(alpha, n, log_x);
    if (t > prev) break;
    prev = t;
  }
  return prev - first;
}

template <class F>
double bisect_increasing(F&& f, double lo, double hi) {
  if (f(hi) < 0) return hi;
  if (f(lo) > 0) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// sum_{k} (-1)^k Gamma(1 + (2k+1)/alpha) / (2k+2)! M^{2k+2} in `Digits` decimal digits.
template <unsigned Digits>
long double h1_series(long double alpha, double split_point, int max_terms) {
  using Real = mp::number<mp::mpfr_float_backend<Digits>, mp::et_off>;
  const Real a = static_cast<double>(alpha);
  const Real m = split_point;
  const Real m2 = m * m;
  const Real stop = Real(10) * mp::pow(Real(10), -static_cast<int>(Digits) / 2 - 10);
  Real power = m2;
  Real factorial = 2;
  Real sum = 0;
  Real prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < max_terms; ++k) {
    const Real term = mp::tgamma(Real(1) + Real(2 * k + 1) / a) / factorial * power;
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (term < prev && term <= stop * mp::abs(sum)) return static_cast<long double>(sum);
    prev = term;
    power *= m2;
    factorial *= Real(2 * k + 3) * Real(2 * k + 4);
  }
  throw AccuracyError("characteristic_width: H1 series did not converge",
                      static_cast<double>(static_cast<long double>(sum) / kPiL));
}

}  // namespace

struct ReducedGreen::Coefficients {
  std::vector<SeriesReal> c;  // Gamma(1 + (2k+1)/alpha) / (2k+1)!
};

void ReducedGreenEval::validate() const {
  if (series_terms < 1 || asym_terms < 1) throw DomainError("ReducedGreenEval: term counts must be positive");
  if (!(std::isfinite(crossover) && crossover > 0.0)) {
    throw DomainError("ReducedGreenEval: crossover must be finite and positive");
  }
}

ReducedGreenEval ReducedGreenEval::tuned(const FractionalOrder& order) {
  ReducedGreenEval eval;
  const long double alpha = order.alpha();
  // Both errors relative to the leading magnitude of L; the gap grows with x.
  auto gap = [&](double x) {
    const long double lx = std::log(static_cast<long double>(x));
    const long double series_err =
        scan_series(alpha, lx, 1.0L, eval.series_terms).log_peak - (kSeriesDigits - 2) * kLn10;
    const long double log_l = asym_log_magnitude(alpha, 1, lx);
    return (series_err - log_l) - asym_log_floor(alpha, lx, eval.asym_terms);
  };
  eval.crossover = bisect_increasing(gap, 0.5, 40.0);
  return eval;
}

ReducedGreen::ReducedGreen(const FractionalOrder& order)
    : ReducedGreen(order, ReducedGreenEval::tuned(order)) {}

ReducedGreen::ReducedGreen(const FractionalOrder& order, const ReducedGreenEval& eval)
    : order_(order), eval_(eval) {
  eval_.validate();
  // Enough coefficients to converge a little past the crossover, so both
  // branches can be compared on an overlap.
  const long double alpha = order_.alpha();
  const long double lx = std::log(static_cast<long double>(eval_.crossover) * 1.1L);
  const SeriesScan scan = scan_series(alpha, lx, (kSeriesDigits + 20) * kLn10, eval_.series_terms);
  auto coeffs = std::make_shared<Coefficients>();
  coeffs->c.reserve(static_cast<std::size_t>(scan.cutoff));
  const SeriesReal a = order_.alpha();
  SeriesReal factorial = 1;
  for (int k = 0; k < scan.cutoff; ++k) {
    if (k > 0) factorial *= SeriesReal(2 * k) * SeriesReal(2 * k + 1);
    coeffs->c.push_back(mp::tgamma(SeriesReal(1) + SeriesReal(2 * k + 1) / a) / factorial);
  }
  coeffs_ = std::move(coeffs);
}

double ReducedGreen::series(double x) const {
  x = std::abs(x);
  const auto& c = coeffs_->c;
  const SeriesReal x2 = SeriesReal(x) * SeriesReal(x);
  const SeriesReal stop = mp::pow(SeriesReal(10), -static_cast<int>(kSeriesDigits) + 20);
  SeriesReal power = 1;
  SeriesReal sum = 0;
  SeriesReal prev = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < c.size(); ++k) {
    const SeriesReal term = c[k] * power;
    if (k % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
    if (term < prev && term <= stop * mp::abs(sum)) {
      return static_cast<double>(static_cast<long double>(sum) / kPiL);
    }
    prev = term;
    power *= x2;
  }
  std::ostringstream os;
  os << "reduced Green series did not converge (alpha=" << order_.alpha() << ", x=" << x << ", "
     << c.size() << " terms)";
  throw AccuracyError(os.str(), static_cast<double>(static_cast<long double>(sum) / kPiL));
}

double ReducedGreen::asymptotic(double x) const {
  const long double alpha = order_.alpha();
  x = std::abs(x);
  if (x == 0.0) throw DomainError("reduced Green asymptotic expansion undefined at x=0");
  const long double lx = std::log(static_cast<long double>(x));
  long double sum = 0.0L;
  long double prev = std::numeric_limits<long double>::infinity();
  for (int n = 1; n <= eval_.asym_terms; ++n) {
    const long double mag = std::exp(asym_log_magnitude(alpha, n, lx));
    if (mag > prev) break;
    const long double s = specfun::sinpi(static_cast<double>(alpha * n / 2.0L));
    sum += ((n % 2 == 1) ? mag : -mag) * s;
    if (mag <= 1e-21L * std::fabs(sum)) break;
    prev = mag;
  }
  return static_cast<double>(sum / (kPiL * x));
}

double ReducedGreen::operator()(double x) const {
  if (std::isnan(x)) throw DomainError("reduced Green function: NaN argument");
  if (std::isinf(x)) return 0.0;
  x = std::abs(x);
  return x < eval_.crossover ? series(x) : asymptotic(x);
}

double reduced_green(const FractionalOrder& order, double x) { return ReducedGreen(order)(x); }

double green_function(const ReducedGreen& reduced, double x, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "green_function: time must be positive and finite (t=" << t << ")";
    throw DomainError(os.str());
  }
  const double scale = std::pow(t, reduced.order().gamma());
  return reduced(x / scale) / scale;
}

double green_function(const FractionalOrder& order, double x, double t) {
  return green_function(ReducedGreen(order), x, t);
}

double width_partial(const FractionalOrder& order, double split_point) {
  if (!(split_point > 0.0) || !std::isfinite(split_point)) {
    throw DomainError("characteristic_width: split point must be positive and finite");
  }
  const long double alpha = order.alpha();
  const long double m = split_point;
  const long double lm = std::log(m);

  // H1 terms share the growth of the L series; pick the precision from the peak.
  constexpr int kMaxTerms = 20000;
  const long double peak_digits = scan_series(alpha, lm, 1.0L, kMaxTerms).log_peak / kLn10 + 2.0L * lm / kLn10;
  const long double need = std::max(0.0L, peak_digits) + 25.0L;
  long double h1;
  if (need <= 50) {
    h1 = h1_series<50>(alpha, split_point, kMaxTerms);
  } else if (need <= 100) {
    h1 = h1_series<100>(alpha, split_point, kMaxTerms);
  } else if (need <= 200) {
    h1 = h1_series<200>(alpha, split_point, kMaxTerms);
  } else if (need <= 400) {
    h1 = h1_series<400>(alpha, split_point, kMaxTerms);
  } else {
    std::ostringstream os;
    os << "characteristic_width: split point " << split_point << " needs " << static_cast<double>(need)
       << " digits for the series part";
    throw AccuracyError(os.str(), std::numeric_limits<double>::quiet_NaN());
  }
  h1 /= kPiL;

  // H2 = (M/pi) sum_n (-1)^n Gamma(1 + alpha n) sin(pi alpha n / 2) / (n! (1 - alpha n)) M^{-alpha n}
  long double h2 = 0.0L;
  long double prev = std::numeric_limits<long double>::infinity();
  for (int n = 1; n <= kMaxTerms; ++n) {
    const long double mag = std::exp(asym_log_magnitude(alpha, n, lm) - std::log(alpha * n - 1.0L));
    if (mag > prev) break;
    const long double s = specfun::sinpi(static_cast<double>(alpha * n / 2.0L));
    // (-1)^n / (1 - alpha n) = (-1)^{n+1} / (alpha n - 1)
    h2 += ((n % 2 == 1) ? mag : -mag) * s;
    if (mag <= 1e-21L * std::fabs(h2)) break;
    prev = mag;
  }
  h2 *= m / kPiL;
  return static_cast<double>(2.0L * (h1 + h2));
}

double default_split_point(const FractionalOrder& order) {
  const long double alpha = order.alpha();
  const long double target = std::log(1e-12L);
  return bisect_increasing(
      [&](double x) { return target - asym_log_floor(alpha, std::log(static_cast<long double>(x)), 20000); },
      0.5, 40.0);
}

WidthEstimate characteristic_width_checked(const FractionalOrder& order, double split_point) {
  WidthEstimate est{};
  est.split_point = split_point;
  est.value = width_partial(order, split_point);
  est.probe_split_point = split_point * kWidthProbeFactor;
  est.probe_value = width_partial(order, est.probe_split_point);
  return est;
}

double characteristic_width(const FractionalOrder& order, double split_point) {
  const WidthEstimate est = characteristic_width_checked(order, split_point);
  if (!(std::abs(est.value - est.probe_value) <= kWidthProbeTolerance)) {
    std::ostringstream os;
    os << "characteristic_width: estimate moved by " << std::abs(est.value - est.probe_value)
       << " when the split point went from " << est.split_point << " to " << est.probe_split_point;
    throw AccuracyError(os.str(), est.value);
  }
  return est.value;
}

double characteristic_width(const FractionalOrder& order) {
  return characteristic_width(order, default_split_point(order));
}

}  // namespace greens

}  // namespace fracdiff
