#pragma once

// Log-likelihoods of NNTS models as sums of logarithms of Hermitian forms,
// with the gradient, Hessian and Fisher information on the sphere
// sum |c_k|^2 = 1/(2 pi).
//
// Continuous data contribute ln(c^H E_j c) per observation, with
// E_j = e_j e_j^H and e_j = (1, e^{-i theta_j}, ..., e^{-iM theta_j}).
// Grouped data contribute N_k ln(c^H A_k c), A_k the integral of E over
// cell k. Reductions over observations use pairwise summation in a fixed
// tree order, so results do not depend on scheduling.

#include "nnts/core.hpp"
#include "nnts/partition.hpp"
#include "nnts/types.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace nnts {

namespace detail {
struct MatrixCache;
}

/// e = (1, e^{-i theta}, ..., e^{-iM theta}).
ComplexVector estat(double theta, int order);

/// Continuous circular observations, each reduced into (0, 2 pi].
class AngularSample {
 public:
  /// Throws EmptyData if thetas is empty.
  explicit AngularSample(std::vector<double> thetas);
  static AngularSample from_angles(std::span<const Angle> angles);

  std::size_t size() const noexcept { return thetas_.size(); }
  std::span<const double> thetas() const noexcept { return thetas_; }

  /// (M+1) x n matrix whose columns are the e-statistics, computed once per
  /// order and shared between copies.
  const ComplexMatrix& estat_matrix(int order) const;

 private:
  std::vector<double> thetas_;
  std::shared_ptr<detail::MatrixCache> cache_;
};

/// Counts N_1..N_Q attached to the cells of a partition.
class GroupedSample {
 public:
  /// Throws PartitionMismatch if the number of counts differs from the
  /// number of cells, NegativeCount on a negative count and EmptyData if all
  /// counts are zero.
  GroupedSample(Partition partition, std::vector<std::int64_t> counts);

  const Partition& partition() const noexcept { return partition_; }
  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::size_t cells() const noexcept { return counts_.size(); }
  std::int64_t total() const noexcept { return total_; }

  /// A_1..A_Q for the given order, computed lazily and cached.
  const std::vector<ComplexMatrix>& interval_matrices(int order) const;

 private:
  Partition partition_;
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
  std::shared_ptr<detail::MatrixCache> cache_;
};

using Dataset = std::variant<AngularSample, GroupedSample>;

/// n for continuous data, N = sum N_k for grouped data.
double observation_count(const Dataset& data);

/// A direction in the tangent space at some point c: Re(c^H eta) = 0.
struct TangentVector {
  ComplexVector eta;
};

/// sum_j ln f(theta_j). Throws ZeroDensityAtDatum if some f(theta_j) == 0.
double loglik_continuous(const NntsParams& params, const AngularSample& sample);

/// sum_k N_k ln(c^H A_k c). Cells with N_k == 0 are skipped. Throws
/// ZeroCellProbability if a cell with N_k > 0 has probability <= 0.
double loglik_grouped(const NntsParams& params, const GroupedSample& sample);

double loglik(const NntsParams& params, const Dataset& data);

/// Conjugate-derivative direction before projection:
/// sum_j e_j / (c^H e_j), or sum_k N_k A_k c / (c^H A_k c).
ComplexVector euclidean_grad(const NntsParams& params, const AngularSample& sample);
ComplexVector euclidean_grad(const NntsParams& params, const GroupedSample& sample);
ComplexVector euclidean_grad(const NntsParams& params, const Dataset& data);

/// P_c = (1/(2 pi)) I - c c^H.
ComplexMatrix tangent_projector(const NntsParams& params);

/// P_c v without forming the matrix.
ComplexVector project_tangent(const NntsParams& params, const ComplexVector& v);

/// P_c applied to the Euclidean gradient. For continuous data this is
/// (1/(2 pi)) sum_j e_j / (c^H e_j) - n c; for grouped data the same with
/// n replaced by N.
///
/// With this scaling the directional derivative of the log-likelihood along
/// a tangent direction v is tangent_inner(grad, v) = 4 pi Re(grad^H v).
TangentVector riemannian_grad(const NntsParams& params, const AngularSample& sample);
TangentVector riemannian_grad(const NntsParams& params, const GroupedSample& sample);
TangentVector riemannian_grad(const NntsParams& params, const Dataset& data);

/// The metric under which riemannian_grad is the gradient:
/// <u, v> = 4 pi Re(u^H v).
double tangent_inner(const ComplexVector& u, const ComplexVector& v);

/// -P_c sum_j E_j / (c^H E_j c). The projected Euclidean second derivative,
/// without a curvature term; for diagnostics only.
ComplexMatrix hessian(const NntsParams& params, const AngularSample& sample);

/// count * P_c, the negative expected Hessian for count observations.
ComplexMatrix fisher_info(double count, const NntsParams& params);

}  // namespace nnts
