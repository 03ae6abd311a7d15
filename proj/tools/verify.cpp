#include "verify.hpp"

#include "nnts/core.hpp"
#include "nnts/likelihood.hpp"
#include "nnts/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace nnts::tool {

namespace {

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

NntsParams random_params(int order, std::mt19937_64& rng) { return random_start(order, rng); }

// Two-component wrapped normal mixture.
AngularSample synthetic_sample(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double mu1 = kTwoPi * unit(rng);
  const double mu2 = kTwoPi * unit(rng);
  std::normal_distribution<double> spread(0.0, 0.7);
  std::vector<double> thetas;
  for (std::size_t j = 0; j < n; ++j) {
    const double mu = unit(rng) < 0.6 ? mu1 : mu2;
    thetas.push_back(mu + spread(rng));
  }
  return AngularSample(std::move(thetas));
}

GroupedSample synthetic_grouped(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> counts(1, 60);
  std::vector<std::int64_t> n(12);
  for (auto& c : n) {
    c = counts(rng);
  }
  std::vector<double> bounds{0.0};
  std::uniform_real_distribution<double> width(0.5, 1.5);
  double total = 0.0;
  std::vector<double> w(12);
  for (auto& x : w) {
    x = width(rng);
    total += x;
  }
  double acc = 0.0;
  for (double x : w) {
    acc += x;
    bounds.push_back(kTwoPi * acc / total);
  }
  return GroupedSample(Partition::from_bounds(bounds), n);
}

CheckResult check_normalization(std::mt19937_64& rng) {
  double worst = 0.0;
  constexpr int grid = 4096;
  for (int trial = 0; trial < 20; ++trial) {
    const NntsParams p = random_params(trial % 9, rng);
    double sum = 0.0;
    for (int j = 1; j <= grid; ++j) {
      sum += density(p, kTwoPi * j / grid);
    }
    worst = std::max(worst, std::abs(sum * kTwoPi / grid - 1.0));
    worst = std::max(worst, std::abs(kTwoPi * p.coefficients().squaredNorm() - 1.0));
  }
  return {"normalization", worst < 1e-10, fmt("max |integral - 1| = %.3e", worst)};
}

CheckResult check_nonnegativity(std::mt19937_64& rng) {
  double lowest = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 20; ++trial) {
    const NntsParams p = random_params(trial % 9, rng);
    for (int j = 1; j <= 10000; ++j) {
      lowest = std::min(lowest, density(p, kTwoPi * j / 10000.0));
    }
  }
  return {"nonnegativity", lowest >= 0.0, fmt("min density = %.3e", lowest)};
}

CheckResult check_cdf(std::mt19937_64& rng) {
  double worst = 0.0;
  bool monotone = true;
  for (int trial = 0; trial < 20; ++trial) {
    const NntsParams p = random_params(trial % 9, rng);
    worst = std::max(worst, std::abs(cdf(p, kTwoPi) - 1.0));
    worst = std::max(worst, std::abs(cdf(p, 0.0)));
    double prev = 0.0;
    for (int j = 1; j <= 200; ++j) {
      const double v = cdf(p, kTwoPi * j / 200.0);
      monotone = monotone && v >= prev - 1e-14;
      prev = v;
    }
  }
  return {"cdf", worst < 1e-12 && monotone,
          fmt("max endpoint error = %.3e, monotone = %.0f", worst, monotone ? 1.0 : 0.0)};
}

template <class Sample>
double gradient_error(const Sample& sample, int order, std::mt19937_64& rng,
                      double perturbation) {
  const NntsParams p = random_params(order, rng);
  NntsParams at = p;
  if (perturbation != 0.0) {
    ComplexVector shift = random_params(order, rng).coefficients();
    at = canonicalize(p.coefficients() + perturbation * shift);
  }
  const TangentVector grad = riemannian_grad(at, sample);
  double worst = 0.0;
  for (int d = 0; d < 4; ++d) {
    ComplexVector v = project_tangent(p, random_params(order, rng).coefficients());
    v /= v.norm();
    constexpr double h = 1e-6;
    const double up = loglik(canonicalize(p.coefficients() + h * v), Dataset(sample));
    const double down = loglik(canonicalize(p.coefficients() - h * v), Dataset(sample));
    const double numeric = (up - down) / (2.0 * h);
    const double analytic = tangent_inner(grad.eta, v);
    worst = std::max(worst, std::abs(numeric - analytic) / std::max(std::abs(analytic), 1.0));
  }
  return worst;
}

CheckResult check_gradient_continuous(std::mt19937_64& rng, double perturbation) {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const AngularSample s = synthetic_sample(40, rng);
    worst = std::max(worst, gradient_error(s, 1 + trial % 4, rng, perturbation));
  }
  return {"gradient-continuous", worst < 1e-6, fmt("max relative error = %.3e", worst)};
}

CheckResult check_gradient_grouped(std::mt19937_64& rng, double perturbation) {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const GroupedSample s = synthetic_grouped(rng);
    worst = std::max(worst, gradient_error(s, 1 + trial % 4, rng, perturbation));
  }
  return {"gradient-grouped", worst < 1e-6, fmt("max relative error = %.3e", worst)};
}

CheckResult check_fisher_null_space(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const NntsParams p = random_params(trial % 6, rng);
    worst = std::max(worst, (fisher_info(76.0, p) * p.coefficients()).norm());
  }
  return {"fisher-null-space", worst < 1e-12, fmt("max |I c| = %.3e", worst)};
}

CheckResult check_oracle(std::mt19937_64& rng) {
  SolverConfig config;
  config.restarts = 5;
  double worst = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    const Dataset data = synthetic_sample(30, rng);
    const int order = 1 + trial % 2;
    config.seed = rng();
    const double a = fit(data, order, config).loglik;
    const double b = fit_baseline(data, order, config).loglik;
    worst = std::max(worst, std::abs(a - b));
  }
  return {"oracle-equivalence", worst < 1e-3, fmt("max |l_scoring - l_simplex| = %.3e", worst)};
}

CheckResult check_reproducibility(std::mt19937_64& rng) {
  const Dataset data = synthetic_sample(50, rng);
  SolverConfig config;
  config.restarts = 4;
  config.seed = rng();
  const FitResult a = fit(data, 3, config);
  const FitResult b = fit(data, 3, config);
  const bool same = a.loglik == b.loglik && a.iterations == b.iterations &&
                    a.params.coefficients() == b.params.coefficients();
  return {"reproducibility", same, same ? "bit-identical" : "results differ"};
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<CheckResult> out;
  out.push_back(check_normalization(rng));
  out.push_back(check_nonnegativity(rng));
  out.push_back(check_cdf(rng));
  out.push_back(check_gradient_continuous(rng, options.gradient_perturbation));
  out.push_back(check_gradient_grouped(rng, options.gradient_perturbation));
  out.push_back(check_fisher_null_space(rng));
  out.push_back(check_oracle(rng));
  out.push_back(check_reproducibility(rng));
  return out;
}

}  // namespace nnts::tool
