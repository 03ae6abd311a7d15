#pragma once

// Order selection for NNTS fits. An order-M model has 2M free parameters.

#include "nnts/types.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nnts {

/// -2 loglik + 2 (2M).
double aic(double loglik, int order);

/// -2 loglik + 2M ln n.
double bic(double loglik, int order, double n);

struct LrTest {
  double stat = 0.0;
  int df = 0;
  double pvalue = 1.0;
};

/// -2 (l_M - l_S) against a chi-square with 2 (M_S - M) degrees of freedom.
/// Throws InvalidNesting if order >= saturated_order or if the saturated
/// log-likelihood is below l_M by more than 1e-6.
LrTest lr_test(double loglik_m, double loglik_s, int order, int saturated_order);

/// Upper tail P(X > x) of a chi-square variable with df degrees of freedom,
/// via the regularized incomplete gamma function Q(df/2, x/2).
double chi_square_sf(double x, int df);

/// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.
double gamma_q(double a, double x);

/// Saturated order for Q cells: Q/2 for even Q, (Q-1)/2 for odd Q. The odd
/// case is an extrapolation; the LR degrees of freedom are then Q - 1 - 2M.
int saturated_order(std::size_t cells);

struct SelectionRow {
  int order = 0;
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  std::optional<LrTest> lr;
  bool best_aic = false;
  bool best_bic = false;
  bool parsimonious = false;
};

struct SelectionTable {
  std::vector<SelectionRow> rows;  // ascending order
  double sample_size = 0.0;
  std::optional<int> saturated;

  const SelectionRow* find(int order) const;
};

struct OrderFit {
  int order = 0;
  double loglik = 0.0;
};

/// Builds rows with AIC, BIC and flags. With a saturated order, rows with
/// order < saturated get an LR test against the saturated row, and the
/// parsimonious flag marks select_parsimonious(table, alpha) when one exists.
/// Ties in AIC or BIC flag the smallest order.
SelectionTable build_selection_table(std::vector<OrderFit> fits, double sample_size,
                                     std::optional<int> saturated = std::nullopt,
                                     double alpha = 0.01);

/// Smallest order whose LR test is not rejected (pvalue >= alpha). Throws
/// NoAcceptableModel if every LR test rejects (or the table has none).
int select_parsimonious(const SelectionTable& table, double alpha);

int best_aic_order(const SelectionTable& table);
int best_bic_order(const SelectionTable& table);

/// CSV with header M,loglik,aic,bic,lr_stat,lr_df,lr_pvalue,flags. Flags are
/// ';'-separated (best_aic, best_bic, parsimonious); missing LR cells are
/// empty.
void write_selection_csv(std::ostream& out, const SelectionTable& table);

}  // namespace nnts
