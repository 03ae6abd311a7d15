#pragma once

// Nonnegative trigonometric sum (NNTS) densities on the circle.
//
// A density of order M is f(theta) = |sum_{k=0}^M c_k e^{ik theta}|^2 with
// complex coefficients normalized so that sum |c_k|^2 = 1/(2 pi). The global
// phase of c does not affect f; the canonical representative has c_0 real
// and nonnegative.

#include "nnts/types.hpp"

#include <span>

namespace nnts {

/// An angle in (0, 2 pi]. Values are reduced modulo 2 pi on construction and
/// a reduced value of 0 maps to 2 pi.
class Angle {
 public:
  static Angle from_radians(double radians);
  static Angle from_degrees(double degrees);

  double radians() const noexcept { return value_; }

  friend bool operator==(Angle, Angle) = default;

 private:
  explicit Angle(double value) : value_(value) {}
  double value_;
};

/// Reduce an arbitrary real angle into (0, 2 pi]. Values already inside the
/// interval are returned unchanged (bit for bit).
double reduce_angle(double radians);

/// Order M and coefficients c_0..c_M of an NNTS density. Instances always
/// satisfy the norm constraint and carry a real, nonnegative c_0.
class NntsParams {
 public:
  /// Wraps coefficients that already satisfy the invariants (norm within
  /// 1e-12, Im c_0 == 0, Re c_0 >= 0). Throws InvalidArgument otherwise; use
  /// canonicalize() for arbitrary vectors.
  static NntsParams from_coefficients(ComplexVector c);

  /// The uniform density of order M: c = (1/sqrt(2 pi), 0, ..., 0).
  static NntsParams uniform(int order);

  int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const ComplexVector& coefficients() const noexcept { return c_; }
  Complex operator[](int k) const { return c_[k]; }

 private:
  explicit NntsParams(ComplexVector c) : c_(std::move(c)) {}
  friend NntsParams canonicalize(const ComplexVector& c);

  ComplexVector c_;
};

/// Rescale c to squared norm 1/(2 pi) and rotate its global phase so that the
/// first nonzero coefficient (c_0 whenever it is nonzero) becomes real and
/// positive. Throws ZeroVector if c == 0.
NntsParams canonicalize(const ComplexVector& c);

/// f(theta) = |sum_k c_k e^{ik theta}|^2, evaluated by Horner's rule in O(M).
double density(const NntsParams& params, Angle theta);
double density(const NntsParams& params, double theta);

/// F(b) = integral_0^b f. Requires 0 <= b <= 2 pi; result clamped to [0, 1].
double cdf(const NntsParams& params, double b);

/// A = integral_a^b e e^H dtheta with e = (1, e^{-i theta}, ..., e^{-iM theta}).
/// Entry (k, l) is integral_a^b e^{-i(k-l) theta} dtheta, so that
/// c^H A c = F(b) - F(a). Requires 0 <= a < b <= 2 pi.
ComplexMatrix interval_matrix(double a, double b, int order);

/// Real part of c^H A c for Hermitian A.
double hermitian_form(const ComplexVector& c, const ComplexMatrix& a);

}  // namespace nnts
