#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nnts {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
/// Squared norm every coefficient vector carries: sum |c_k|^2 = 1/(2 pi).
inline constexpr double kSquaredNorm = 1.0 / kTwoPi;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A coefficient vector (or tangent step) with zero norm where a direction
/// is required.
class ZeroVector : public Error {
 public:
  using Error::Error;
};

class EmptyInterval : public Error {
 public:
  using Error::Error;
};

/// The density vanishes at an observation, so the log-likelihood is -inf.
class ZeroDensityAtDatum : public Error {
 public:
  ZeroDensityAtDatum(std::size_t index, const std::string& what)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// A cell with a positive count has zero model probability.
class ZeroCellProbability : public Error {
 public:
  ZeroCellProbability(std::size_t cell, const std::string& what)
      : Error(what), cell_(cell) {}
  std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

class InvalidNesting : public Error {
 public:
  using Error::Error;
};

class NoAcceptableModel : public Error {
 public:
  using Error::Error;
};

class EmptyData : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t column, const std::string& what)
      : Error("row " + std::to_string(row) + ", column " +
              std::to_string(column) + ": " + what),
        row_(row),
        column_(column) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

class PartitionMismatch : public Error {
 public:
  using Error::Error;
};

class NegativeCount : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class MissingOrder : public Error {
 public:
  using Error::Error;
};

}  // namespace nnts
