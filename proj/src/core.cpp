#include "nnts/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nnts {

namespace {

constexpr double kNormTolerance = 1e-12;

}  // namespace

double reduce_angle(double radians) {
  if (!std::isfinite(radians)) {
    throw InvalidArgument("angle is not finite");
  }
  if (radians > 0.0 && radians <= kTwoPi) {
    return radians;
  }
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) {
    r += kTwoPi;
  }
  // fmod can land on 2 pi after the shift for tiny negative inputs.
  if (r <= 0.0 || r > kTwoPi) {
    r = kTwoPi;
  }
  return r;
}

Angle Angle::from_radians(double radians) { return Angle(reduce_angle(radians)); }

Angle Angle::from_degrees(double degrees) {
  return Angle(reduce_angle(degrees * (std::numbers::pi / 180.0)));
}

NntsParams NntsParams::from_coefficients(ComplexVector c) {
  if (c.size() == 0) {
    throw InvalidArgument("coefficient vector is empty");
  }
  const double norm2 = c.squaredNorm();
  if (!(std::abs(norm2 - kSquaredNorm) <= kNormTolerance)) {
    throw InvalidArgument("coefficients violate sum |c_k|^2 = 1/(2 pi): got " +
                          std::to_string(norm2));
  }
  if (c[0].imag() != 0.0 || c[0].real() < 0.0) {
    throw InvalidArgument("c_0 must be a nonnegative real number");
  }
  return NntsParams(std::move(c));
}

NntsParams NntsParams::uniform(int order) {
  if (order < 0) {
    throw InvalidArgument("order must be nonnegative");
  }
  ComplexVector c = ComplexVector::Zero(order + 1);
  c[0] = Complex(std::sqrt(kSquaredNorm), 0.0);
  return NntsParams(std::move(c));
}

NntsParams canonicalize(const ComplexVector& c) {
  if (c.size() == 0) {
    throw InvalidArgument("coefficient vector is empty");
  }
  const double norm = c.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw ZeroVector("cannot canonicalize a zero (or non-finite) vector");
  }
  Eigen::Index anchor = 0;
  while (c[anchor] == Complex(0.0, 0.0)) {
    ++anchor;
  }
  const Complex phase = std::conj(c[anchor]) / std::abs(c[anchor]);
  ComplexVector out = c * (phase / (norm * std::sqrt(kTwoPi)));
  // The anchor is real by construction; drop the rounding residue.
  out[anchor] = Complex(std::abs(out[anchor]), 0.0);
  return NntsParams(std::move(out));
}

double density(const NntsParams& params, double theta) {
  const ComplexVector& c = params.coefficients();
  const Complex z = std::polar(1.0, theta);
  Complex sum = c[c.size() - 1];
  for (Eigen::Index k = c.size() - 2; k >= 0; --k) {
    sum = sum * z + c[k];
  }
  // |sum|^2 is computed as re^2 + im^2, so it is never negative.
  return std::norm(sum);
}

double density(const NntsParams& params, Angle theta) {
  return density(params, theta.radians());
}

ComplexMatrix interval_matrix(double a, double b, int order) {
  if (order < 0) {
    throw InvalidArgument("order must be nonnegative");
  }
  if (!(a >= 0.0 && b <= kTwoPi)) {
    throw InvalidArgument("interval endpoints must lie in [0, 2 pi]");
  }
  if (!(a < b)) {
    throw EmptyInterval("interval (" + std::to_string(a) + ", " +
                        std::to_string(b) + "] is empty");
  }
  // integral_a^b e^{is theta} = (2/s) sin(s h) e^{is m}, m the midpoint and h
  // the half width; equal to (i/s)(e^{isa} - e^{isb}) without cancellation.
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const int n = order + 1;
  ComplexMatrix out(n, n);
  for (int k = 0; k < n; ++k) {
    out(k, k) = Complex(b - a, 0.0);
  }
  for (int s = 1; s <= order; ++s) {
    const Complex upper = std::polar(2.0 * std::sin(s * half) / s, s * mid);
    // Entry (k, l) integrates e^{i(l-k) theta}: above the diagonal s = l - k.
    for (int k = 0; k + s < n; ++k) {
      out(k, k + s) = upper;
      out(k + s, k) = std::conj(upper);
    }
  }
  return out;
}

double hermitian_form(const ComplexVector& c, const ComplexMatrix& a) {
  return c.dot(a * c).real();
}

double cdf(const NntsParams& params, double b) {
  if (!(b >= 0.0 && b <= kTwoPi)) {
    throw InvalidArgument("cdf argument must lie in [0, 2 pi]");
  }
  if (b == 0.0) {
    return 0.0;
  }
  const double p = hermitian_form(params.coefficients(),
                                  interval_matrix(0.0, b, params.order()));
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace nnts
