#include "nnts/optimizer.hpp"

#include "nnts/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

namespace nnts {

namespace {

constexpr double kTieTolerance = 1e-9;
// Log-likelihood changes below this (relative) size are rounding noise, not
// a decrease the step guard should react to.
constexpr double kNoiseFloor = 1e-13;

double safe_loglik(const NntsParams& params, const Dataset& data) {
  try {
    return loglik(params, data);
  } catch (const ZeroDensityAtDatum&) {
    return -std::numeric_limits<double>::infinity();
  } catch (const ZeroCellProbability&) {
    return -std::numeric_limits<double>::infinity();
  }
}

bool is_decrease(double candidate, double current) {
  return candidate < current - kNoiseFloor * (std::abs(current) + 1.0);
}

// Better-of ordering for multi-start results.
bool better(const FitResult& a, const FitResult& b) {
  if (std::abs(a.loglik - b.loglik) > kTieTolerance) {
    return a.loglik > b.loglik;
  }
  if (a.converged != b.converged) {
    return a.converged;
  }
  const ComplexVector& ca = a.params.coefficients();
  const ComplexVector& cb = b.params.coefficients();
  if (lexicographically_less(ca, cb)) {
    return true;
  }
  if (lexicographically_less(cb, ca)) {
    return false;
  }
  return a.start < b.start;
}

std::vector<NntsParams> start_points(const Dataset& data, int order,
                                     const SolverConfig& config) {
  std::vector<NntsParams> starts;
  starts.reserve(static_cast<std::size_t>(config.restarts) + 1);
  starts.push_back(init_from_data(data, order));
  for (int i = 1; i <= config.restarts; ++i) {
    std::mt19937_64 rng(start_seed(config.seed, i));
    starts.push_back(random_start(order, rng));
  }
  return starts;
}

template <class FitOne>
FitResult best_of_starts(const Dataset& data, int order, const SolverConfig& config,
                         const FitOne& fit_one) {
  config.validate();
  if (order < 0) {
    throw InvalidArgument("order must be nonnegative");
  }
  const std::vector<NntsParams> starts = start_points(data, order, config);
  std::optional<FitResult> best;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    FitResult r;
    try {
      r = fit_one(starts[i], static_cast<int>(i));
    } catch (const ZeroDensityAtDatum&) {
      continue;
    } catch (const ZeroCellProbability&) {
      continue;
    }
    if (!std::isfinite(r.loglik)) {
      continue;
    }
    if (!best || better(r, *best)) {
      best = std::move(r);
    }
  }
  if (!best) {
    throw Error("every start of the order " + std::to_string(order) +
                " fit hit a zero likelihood");
  }
  return *std::move(best);
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) {
    throw InvalidArgument("tol must be positive");
  }
  if (!(grad_tol > 0.0)) {
    throw InvalidArgument("grad_tol must be positive");
  }
  if (max_iters < 1) {
    throw InvalidArgument("max_iters must be at least 1");
  }
  if (restarts < 0) {
    throw InvalidArgument("restarts must be nonnegative");
  }
  if (max_halvings < 0) {
    throw InvalidArgument("max_halvings must be nonnegative");
  }
}

std::uint64_t start_seed(std::uint64_t seed, int index) {
  // splitmix64 finalizer over (seed, index).
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(index) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool lexicographically_less(const ComplexVector& a, const ComplexVector& b) {
  const auto n = std::min(a.size(), b.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    if (a[k].real() != b[k].real()) {
      return a[k].real() < b[k].real();
    }
    if (a[k].imag() != b[k].imag()) {
      return a[k].imag() < b[k].imag();
    }
  }
  return a.size() < b.size();
}

NntsParams init_from_data(const Dataset& data, int order) {
  if (order < 0) {
    throw InvalidArgument("order must be nonnegative");
  }
  ComplexVector avg = ComplexVector::Zero(order + 1);
  if (const auto* sample = std::get_if<AngularSample>(&data)) {
    avg = sample->estat_matrix(order).rowwise().sum() / static_cast<double>(sample->size());
  } else {
    const auto& grouped = std::get<GroupedSample>(data);
    const auto counts = grouped.counts();
    for (std::size_t k = 0; k < grouped.cells(); ++k) {
      if (counts[k] != 0) {
        avg += static_cast<double>(counts[k]) * estat(grouped.partition().midpoint(k), order);
      }
    }
    avg /= static_cast<double>(grouped.total());
  }
  try {
    return canonicalize(avg);
  } catch (const ZeroVector&) {
    return NntsParams::uniform(order);
  }
}

NntsParams random_start(int order, std::mt19937_64& rng) {
  if (order < 0) {
    throw InvalidArgument("order must be nonnegative");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector c(order + 1);
  for (int k = 0; k <= order; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    c[k] = Complex(re, im);
  }
  return canonicalize(c);
}

TangentVector scoring_step(const NntsParams& params, const Dataset& data) {
  TangentVector grad = riemannian_grad(params, data);
  grad.eta /= observation_count(data);
  return grad;
}

NntsParams retract(const NntsParams& params, const TangentVector& eta, Retraction kind) {
  if (eta.eta.size() != params.coefficients().size()) {
    throw InvalidArgument("tangent vector dimension does not match the order");
  }
  if (kind == Retraction::kDirection) {
    return canonicalize(eta.eta);
  }
  return canonicalize(params.coefficients() + eta.eta);
}

FitResult fit_from(const Dataset& data, const NntsParams& start,
                   const SolverConfig& config, int start_index) {
  config.validate();
  const double count = observation_count(data);

  FitResult r;
  r.params = start;
  r.start = start_index;
  r.loglik = loglik(start, data);

  for (int it = 1; it <= config.max_iters; ++it) {
    TangentVector eta = scoring_step(r.params, data);
    r.grad_norm = count * eta.eta.norm();

    NntsParams candidate = retract(r.params, eta, config.retraction);
    double candidate_ll = safe_loglik(candidate, data);
    if (config.step_guard) {
      int halvings = 0;
      while (is_decrease(candidate_ll, r.loglik) && halvings < config.max_halvings) {
        eta.eta *= 0.5;
        candidate = retract(r.params, eta, config.retraction);
        candidate_ll = safe_loglik(candidate, data);
        ++halvings;
      }
      if (is_decrease(candidate_ll, r.loglik)) {
        // No ascent along the scoring direction: stay put.
        candidate = r.params;
        candidate_ll = r.loglik;
      }
    } else if (!std::isfinite(candidate_ll)) {
      throw ZeroDensityAtDatum(0, "scoring step reached a point of zero likelihood");
    }

    r.step_norm = (candidate.coefficients() - r.params.coefficients()).norm();
    r.params = std::move(candidate);
    r.loglik = candidate_ll;
    r.iterations = it;
    if (config.record_trace) {
      r.trace.push_back({r.loglik, r.step_norm});
    }
    if (config.observer) {
      config.observer({start_index, it, &r.params, r.loglik, r.step_norm});
    }

    if (r.step_norm < config.tol) {
      r.grad_norm = riemannian_grad(r.params, data).eta.norm();
      if (r.grad_norm < config.grad_tol) {
        r.converged = true;
        break;
      }
      if (r.step_norm == 0.0) {
        break;  // stalled
      }
    }
  }
  if (!r.converged) {
    r.grad_norm = riemannian_grad(r.params, data).eta.norm();
  }
  return r;
}

FitResult fit(const Dataset& data, int order, const SolverConfig& config) {
  return best_of_starts(data, order, config, [&](const NntsParams& start, int index) {
    return fit_from(data, start, config, index);
  });
}

FitResult fit_baseline(const Dataset& data, int order, const SolverConfig& config) {
  if (order == 0) {
    config.validate();
    FitResult r;
    r.params = NntsParams::uniform(0);
    r.loglik = loglik(r.params, data);
    r.converged = true;
    r.grad_norm = 0.0;
    return r;
  }

  const auto dim = 2 * order + 1;
  auto to_coefficients = [order](const Eigen::VectorXd& x) {
    ComplexVector c(order + 1);
    c[0] = Complex(x[0], 0.0);
    for (int k = 1; k <= order; ++k) {
      c[k] = Complex(x[2 * k - 1], x[2 * k]);
    }
    return c;
  };
  auto objective = [&](const Eigen::VectorXd& x) {
    try {
      return -safe_loglik(canonicalize(to_coefficients(x)), data);
    } catch (const ZeroVector&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  NelderMeadOptions options;
  const long long budget = 40LL * config.max_iters * dim;
  options.max_evaluations =
      static_cast<int>(std::min<long long>(budget, std::numeric_limits<int>::max()));

  return best_of_starts(data, order, config, [&](const NntsParams& start, int index) {
    const ComplexVector& c = start.coefficients();
    Eigen::VectorXd x0(dim);
    x0[0] = c[0].real();
    for (int k = 1; k <= order; ++k) {
      x0[2 * k - 1] = c[k].real();
      x0[2 * k] = c[k].imag();
    }
    const NelderMeadResult nm = nelder_mead(objective, x0, options);
    FitResult r;
    r.params = canonicalize(to_coefficients(nm.x));
    r.loglik = loglik(r.params, data);
    r.iterations = nm.iterations;
    r.converged = nm.converged;
    r.grad_norm = riemannian_grad(r.params, data).eta.norm();
    r.start = index;
    return r;
  });
}

}  // namespace nnts
