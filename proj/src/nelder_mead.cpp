#include "nnts/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace nnts {

namespace {

struct Simplex {
  std::vector<Eigen::VectorXd> x;
  std::vector<double> f;
};

struct Run {
  Eigen::VectorXd x;
  double value;
  int evaluations;
  int iterations;
  bool converged;
};

Run run_once(const std::function<double(const Eigen::VectorXd&)>& f,
             const Eigen::VectorXd& x0, const NelderMeadOptions& opt, int budget) {
  const auto n = x0.size();
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  Simplex s;
  s.x.push_back(x0);
  s.f.push_back(eval(x0));
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd xi = x0;
    const double scale = std::abs(x0[i]) > 1e-8 ? std::abs(x0[i]) : 1.0;
    xi[i] += opt.initial_step * scale;
    s.x.push_back(xi);
    s.f.push_back(eval(xi));
  }

  std::vector<std::size_t> order(s.x.size());
  int iterations = 0;
  bool converged = false;
  while (evals < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[order.size() - 2];

    // Value-based test only: the objective may be flat along some directions
    // (e.g. scale), where the simplex never collapses.
    const double spread = s.f[worst] - s.f[best];
    if (std::isfinite(s.f[best]) &&
        spread <= opt.f_tol * (std::abs(s.f[best]) + 1.0)) {
      converged = true;
      break;
    }
    ++iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i != worst) {
        centroid += s.x[i];
      }
    }
    centroid /= static_cast<double>(n);

    const Eigen::VectorXd reflected = centroid + (centroid - s.x[worst]);
    const double fr = eval(reflected);
    if (fr < s.f[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - s.x[worst]);
      const double fe = eval(expanded);
      if (fe < fr) {
        s.x[worst] = expanded;
        s.f[worst] = fe;
      } else {
        s.x[worst] = reflected;
        s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[second_worst]) {
      s.x[worst] = reflected;
      s.f[worst] = fr;
      continue;
    }
    const bool outside = fr < s.f[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (s.x[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < (outside ? fr : s.f[worst])) {
      s.x[worst] = contracted;
      s.f[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i != best) {
        s.x[i] = s.x[best] + 0.5 * (s.x[i] - s.x[best]);
        s.f[i] = eval(s.x[i]);
      }
    }
  }

  const auto best_it = std::min_element(s.f.begin(), s.f.end());
  const auto best = static_cast<std::size_t>(best_it - s.f.begin());
  return {s.x[best], s.f[best], evals, iterations, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options) {
  NelderMeadResult result;
  result.x = x0;
  result.value = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    const int budget = options.max_evaluations - result.evaluations;
    if (budget <= 0) {
      break;
    }
    const Run run = run_once(f, result.x, options, budget);
    result.evaluations += run.evaluations;
    result.iterations += run.iterations;
    const double previous = result.value;
    if (run.value <= result.value) {
      result.x = run.x;
      result.value = run.value;
    }
    result.converged = run.converged;
    if (!run.converged) {
      break;
    }
    if (std::isfinite(previous) &&
        previous - result.value <= options.f_tol * (std::abs(result.value) + 1.0)) {
      break;
    }
  }
  return result;
}

}  // namespace nnts
