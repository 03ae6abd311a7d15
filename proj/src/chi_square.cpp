#include "nnts/selection.hpp"

#include <cmath>
#include <limits>

namespace nnts {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kEpsilon = 1e-17;

// Lower regularized gamma P(a, x) by its power series; converges quickly for
// x < a + 1.
double gamma_p_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < kMaxTerms; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEpsilon) {
      break;
    }
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized gamma Q(a, x) by the continued fraction (modified Lentz),
// for x >= a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEpsilon;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) {
      d = tiny;
    }
    c = b + an / c;
    if (std::abs(c) < tiny) {
      c = tiny;
    }
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEpsilon) {
      break;
    }
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0)) {
    throw InvalidArgument("gamma_q requires a > 0");
  }
  if (!(x >= 0.0)) {
    throw InvalidArgument("gamma_q requires x >= 0");
  }
  if (x == 0.0) {
    return 1.0;
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  if (x < a + 1.0) {
    return 1.0 - gamma_p_series(a, x);
  }
  return gamma_q_fraction(a, x);
}

double chi_square_sf(double x, int df) {
  if (df < 1) {
    throw InvalidArgument("chi-square degrees of freedom must be positive");
  }
  if (!(x >= 0.0)) {
    throw InvalidArgument("chi-square argument must be nonnegative");
  }
  return gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace nnts
