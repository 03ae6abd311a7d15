#pragma once

#include <Eigen/Dense>

#include <functional>

namespace nnts {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double f_tol = 1e-13;   // relative spread of simplex values
  int max_evaluations = 200000;
  int max_restarts = 20;  // rebuild the simplex at the best vertex
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes f with the Nelder-Mead simplex method (standard coefficients
/// 1, 2, 1/2, 1/2). After convergence the simplex is rebuilt around the best
/// point until a restart no longer improves the value.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const NelderMeadOptions& options = {});

}  // namespace nnts
