#pragma once

// Maximum likelihood fitting of NNTS models by Fisher scoring on the sphere.
//
// Each iteration takes the scoring step eta = grad l(c) / count, with
// count * P_c the Fisher information, and retracts c + eta back onto the
// sphere. A multi-start driver runs the iteration from the normalized
// average of the e-statistics and from random points, keeping the best
// local maximum.

#include "nnts/core.hpp"
#include "nnts/likelihood.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace nnts {

enum class Retraction {
  /// R(eta) = (c + eta) / (sqrt(2 pi) |c + eta|); R(0) = c.
  kShifted,
  /// R(eta) = eta / (sqrt(2 pi) |eta|). Does not fix c at eta = 0.
  kDirection,
};

struct IterateInfo {
  int start = 0;
  int iteration = 0;
  const NntsParams* params = nullptr;
  double loglik = 0.0;
  double step_norm = 0.0;
};

struct SolverConfig {
  double tol = 1e-10;       // on |c_{k+1} - c_k|
  double grad_tol = 1e-6;   // on |riemannian_grad| for the converged flag
  int max_iters = 50000;
  int restarts = 30;        // random starts on top of the data-driven start
  std::uint64_t seed = 0;
  bool step_guard = true;   // halve eta while the log-likelihood decreases
  int max_halvings = 30;
  Retraction retraction = Retraction::kShifted;
  bool record_trace = false;
  /// Called after every accepted iterate of every start.
  std::function<void(const IterateInfo&)> observer;

  /// Throws InvalidArgument on tol <= 0, max_iters < 1 or restarts < 0.
  void validate() const;
};

struct TraceEntry {
  double loglik = 0.0;
  double step_norm = 0.0;
};

struct FitResult {
  NntsParams params = NntsParams::uniform(0);
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  double step_norm = 0.0;
  int start = 0;  // index of the winning start; 0 is the data-driven start
  std::vector<TraceEntry> trace;
};

/// canonicalize of the average e-statistic: (1/n) sum_j e_j for continuous
/// data, (1/N) sum_k N_k e(midpoint_k) for grouped data. Falls back to the
/// uniform model if the average vanishes.
NntsParams init_from_data(const Dataset& data, int order);

/// A standard normal draw for each real and imaginary part, canonicalized.
NntsParams random_start(int order, std::mt19937_64& rng);

/// eta = riemannian_grad / count. Under the 1/(2 pi) norm, count * P_c maps
/// this eta to riemannian_grad / (2 pi).
TangentVector scoring_step(const NntsParams& params, const Dataset& data);

/// canonicalize(c + eta). Throws ZeroVector if eta == -c.
NntsParams retract(const NntsParams& params, const TangentVector& eta,
                   Retraction kind = Retraction::kShifted);

/// Scoring iteration from a single starting point.
FitResult fit_from(const Dataset& data, const NntsParams& start,
                   const SolverConfig& config, int start_index = 0);

/// Multi-start scoring fit. Starts whose likelihood becomes infinite are
/// abandoned. Among the remaining results the highest log-likelihood wins;
/// values within 1e-9 prefer a converged start, then the lexicographically
/// smallest coefficient vector, then the lower start index.
FitResult fit(const Dataset& data, int order, const SolverConfig& config = {});

/// Derivative-free reference fit: Nelder-Mead over the 2M+1 real coordinates
/// (c_0 real, then Re/Im of c_1..c_M), each candidate canonicalized before
/// evaluation. Same start schedule as fit().
FitResult fit_baseline(const Dataset& data, int order, const SolverConfig& config = {});

/// Seed for start `index` derived from the configured seed.
std::uint64_t start_seed(std::uint64_t seed, int index);

/// Strict ordering used for tie breaking: lexicographic on (Re, Im) pairs.
bool lexicographically_less(const ComplexVector& a, const ComplexVector& b);

}  // namespace nnts
