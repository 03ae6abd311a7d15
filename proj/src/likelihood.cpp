#include "nnts/likelihood.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <string>

namespace nnts {

namespace detail {

struct MatrixCache {
  std::mutex mutex;
  std::map<int, ComplexMatrix> estat;
  std::map<int, std::vector<ComplexMatrix>> intervals;
};

}  // namespace detail

namespace {

constexpr std::size_t kPairwiseLeaf = 16;

// Pairwise (tree) reduction of term(i) over [begin, end). The split points
// depend only on the range, so the rounding is reproducible.
template <class T, class Term>
T pairwise_sum(std::size_t begin, std::size_t end, const T& zero, const Term& term) {
  if (end - begin <= kPairwiseLeaf) {
    T acc = zero;
    for (std::size_t i = begin; i < end; ++i) {
      acc += term(i);
    }
    return acc;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  T left = pairwise_sum(begin, mid, zero, term);
  left += pairwise_sum(mid, end, zero, term);
  return left;
}

void require_order(int order) {
  if (order < 0) {
    throw InvalidArgument("order must be nonnegative");
  }
}

// e_j^H c for every observation.
Eigen::VectorXcd projections(const NntsParams& params, const AngularSample& sample) {
  return sample.estat_matrix(params.order()).adjoint() * params.coefficients();
}

// |e_j^H c|^2 = f(theta_j), rejecting zeros.
Eigen::VectorXd datum_densities(const Eigen::VectorXcd& proj) {
  Eigen::VectorXd f(proj.size());
  for (Eigen::Index j = 0; j < proj.size(); ++j) {
    f[j] = std::norm(proj[j]);
    if (!(f[j] > 0.0)) {
      throw ZeroDensityAtDatum(static_cast<std::size_t>(j),
                               "density is zero at observation " + std::to_string(j));
    }
  }
  return f;
}

// c^H A_k c for every cell with a positive count; zero-count cells get 0.
std::vector<double> cell_probabilities(const NntsParams& params,
                                       const GroupedSample& sample) {
  const auto& mats = sample.interval_matrices(params.order());
  const auto counts = sample.counts();
  std::vector<double> p(sample.cells(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (counts[k] == 0) {
      continue;
    }
    p[k] = hermitian_form(params.coefficients(), mats[k]);
    if (!(p[k] > 0.0)) {
      throw ZeroCellProbability(k, "cell " + std::to_string(k) +
                                       " has zero probability but count " +
                                       std::to_string(counts[k]));
    }
  }
  return p;
}

}  // namespace

ComplexVector estat(double theta, int order) {
  require_order(order);
  ComplexVector e(order + 1);
  for (int k = 0; k <= order; ++k) {
    e[k] = std::polar(1.0, -k * theta);
  }
  e[0] = Complex(1.0, 0.0);
  return e;
}

AngularSample::AngularSample(std::vector<double> thetas)
    : thetas_(std::move(thetas)), cache_(std::make_shared<detail::MatrixCache>()) {
  if (thetas_.empty()) {
    throw EmptyData("angular sample has no observations");
  }
  for (double& t : thetas_) {
    t = reduce_angle(t);
  }
}

AngularSample AngularSample::from_angles(std::span<const Angle> angles) {
  std::vector<double> thetas;
  thetas.reserve(angles.size());
  for (Angle a : angles) {
    thetas.push_back(a.radians());
  }
  return AngularSample(std::move(thetas));
}

const ComplexMatrix& AngularSample::estat_matrix(int order) const {
  require_order(order);
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->estat.find(order);
  if (it == cache_->estat.end()) {
    ComplexMatrix e(order + 1, static_cast<Eigen::Index>(thetas_.size()));
    for (std::size_t j = 0; j < thetas_.size(); ++j) {
      e.col(static_cast<Eigen::Index>(j)) = estat(thetas_[j], order);
    }
    it = cache_->estat.emplace(order, std::move(e)).first;
  }
  return it->second;
}

GroupedSample::GroupedSample(Partition partition, std::vector<std::int64_t> counts)
    : partition_(std::move(partition)),
      counts_(std::move(counts)),
      cache_(std::make_shared<detail::MatrixCache>()) {
  if (counts_.size() != partition_.cells()) {
    throw PartitionMismatch("partition has " + std::to_string(partition_.cells()) +
                            " cells but " + std::to_string(counts_.size()) +
                            " counts were given");
  }
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (counts_[k] < 0) {
      throw NegativeCount("cell " + std::to_string(k) + " has negative count " +
                          std::to_string(counts_[k]));
    }
    total_ += counts_[k];
  }
  if (total_ < 1) {
    throw EmptyData("grouped sample has total count 0");
  }
}

const std::vector<ComplexMatrix>& GroupedSample::interval_matrices(int order) const {
  require_order(order);
  std::lock_guard lock(cache_->mutex);
  auto it = cache_->intervals.find(order);
  if (it == cache_->intervals.end()) {
    std::vector<ComplexMatrix> mats;
    mats.reserve(cells());
    for (std::size_t k = 0; k < cells(); ++k) {
      mats.push_back(interval_matrix(partition_.lower(k), partition_.upper(k), order));
    }
    it = cache_->intervals.emplace(order, std::move(mats)).first;
  }
  return it->second;
}

double observation_count(const Dataset& data) {
  return std::visit(
      [](const auto& d) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, AngularSample>) {
          return static_cast<double>(d.size());
        } else {
          return static_cast<double>(d.total());
        }
      },
      data);
}

double loglik_continuous(const NntsParams& params, const AngularSample& sample) {
  const Eigen::VectorXd f = datum_densities(projections(params, sample));
  return pairwise_sum(0, sample.size(), 0.0,
                      [&](std::size_t j) { return std::log(f[static_cast<Eigen::Index>(j)]); });
}

double loglik_grouped(const NntsParams& params, const GroupedSample& sample) {
  const std::vector<double> p = cell_probabilities(params, sample);
  const auto counts = sample.counts();
  return pairwise_sum(0, p.size(), 0.0, [&](std::size_t k) {
    return counts[k] == 0 ? 0.0 : static_cast<double>(counts[k]) * std::log(p[k]);
  });
}

double loglik(const NntsParams& params, const Dataset& data) {
  return std::visit(
      [&](const auto& d) {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, AngularSample>) {
          return loglik_continuous(params, d);
        } else {
          return loglik_grouped(params, d);
        }
      },
      data);
}

ComplexVector euclidean_grad(const NntsParams& params, const AngularSample& sample) {
  const ComplexMatrix& e = sample.estat_matrix(params.order());
  const Eigen::VectorXcd proj = projections(params, sample);
  datum_densities(proj);
  // c^H e_j = conj(e_j^H c).
  const ComplexVector zero = ComplexVector::Zero(params.order() + 1);
  return pairwise_sum(0, sample.size(), zero, [&](std::size_t j) -> ComplexVector {
    const auto col = static_cast<Eigen::Index>(j);
    return e.col(col) / std::conj(proj[col]);
  });
}

ComplexVector euclidean_grad(const NntsParams& params, const GroupedSample& sample) {
  const std::vector<double> p = cell_probabilities(params, sample);
  const auto& mats = sample.interval_matrices(params.order());
  const auto counts = sample.counts();
  const ComplexVector& c = params.coefficients();
  const ComplexVector zero = ComplexVector::Zero(params.order() + 1);
  return pairwise_sum(0, p.size(), zero, [&](std::size_t k) -> ComplexVector {
    if (counts[k] == 0) {
      return ComplexVector::Zero(c.size());
    }
    return (static_cast<double>(counts[k]) / p[k]) * (mats[k] * c);
  });
}

ComplexVector euclidean_grad(const NntsParams& params, const Dataset& data) {
  return std::visit([&](const auto& d) { return euclidean_grad(params, d); }, data);
}

ComplexMatrix tangent_projector(const NntsParams& params) {
  const ComplexVector& c = params.coefficients();
  const auto n = c.size();
  return ComplexMatrix::Identity(n, n) * kSquaredNorm - c * c.adjoint();
}

ComplexVector project_tangent(const NntsParams& params, const ComplexVector& v) {
  const ComplexVector& c = params.coefficients();
  return kSquaredNorm * v - c * c.dot(v);
}

TangentVector riemannian_grad(const NntsParams& params, const AngularSample& sample) {
  // P_c g simplifies because c^H g = n exactly.
  const double n = static_cast<double>(sample.size());
  return {kSquaredNorm * euclidean_grad(params, sample) - n * params.coefficients()};
}

TangentVector riemannian_grad(const NntsParams& params, const GroupedSample& sample) {
  return {project_tangent(params, euclidean_grad(params, sample))};
}

TangentVector riemannian_grad(const NntsParams& params, const Dataset& data) {
  return std::visit([&](const auto& d) { return riemannian_grad(params, d); }, data);
}

double tangent_inner(const ComplexVector& u, const ComplexVector& v) {
  return 2.0 * kTwoPi * u.dot(v).real();
}

ComplexMatrix hessian(const NntsParams& params, const AngularSample& sample) {
  const ComplexMatrix& e = sample.estat_matrix(params.order());
  const Eigen::VectorXd f = datum_densities(projections(params, sample));
  const auto dim = params.order() + 1;
  const ComplexMatrix zero = ComplexMatrix::Zero(dim, dim);
  const ComplexMatrix curvature =
      pairwise_sum(0, sample.size(), zero, [&](std::size_t j) -> ComplexMatrix {
        const auto col = static_cast<Eigen::Index>(j);
        return (e.col(col) * e.col(col).adjoint()) / f[col];
      });
  return -tangent_projector(params) * curvature;
}

ComplexMatrix fisher_info(double count, const NntsParams& params) {
  return count * tangent_projector(params);
}

}  // namespace nnts
