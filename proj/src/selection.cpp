#include "nnts/selection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace nnts {

namespace {

constexpr double kNestingSlack = 1e-6;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

double aic(double loglik, int order) { return -2.0 * loglik + 4.0 * order; }

double bic(double loglik, int order, double n) {
  if (!(n >= 1.0)) {
    throw InvalidArgument("BIC needs a sample size of at least 1");
  }
  return -2.0 * loglik + 2.0 * order * std::log(n);
}

LrTest lr_test(double loglik_m, double loglik_s, int order, int saturated_order) {
  if (order < 0 || order >= saturated_order) {
    throw InvalidNesting("LR test needs 0 <= M < M_S, got M=" + std::to_string(order) +
                         ", M_S=" + std::to_string(saturated_order));
  }
  if (loglik_s < loglik_m - kNestingSlack) {
    throw InvalidNesting("saturated log-likelihood " + format_double(loglik_s) +
                         " is below the nested model's " + format_double(loglik_m));
  }
  LrTest t;
  t.stat = std::max(0.0, -2.0 * (loglik_m - loglik_s));
  t.df = 2 * (saturated_order - order);
  t.pvalue = chi_square_sf(t.stat, t.df);
  return t;
}

int saturated_order(std::size_t cells) {
  if (cells < 1) {
    throw InvalidArgument("partition has no cells");
  }
  return static_cast<int>(cells / 2);
}

const SelectionRow* SelectionTable::find(int order) const {
  for (const auto& row : rows) {
    if (row.order == order) {
      return &row;
    }
  }
  return nullptr;
}

SelectionTable build_selection_table(std::vector<OrderFit> fits, double sample_size,
                                     std::optional<int> saturated, double alpha) {
  std::sort(fits.begin(), fits.end(),
            [](const OrderFit& a, const OrderFit& b) { return a.order < b.order; });
  SelectionTable table;
  table.sample_size = sample_size;
  table.saturated = saturated;
  if (fits.empty()) {
    return table;
  }
  for (const auto& f : fits) {
    SelectionRow row;
    row.order = f.order;
    row.loglik = f.loglik;
    row.aic = aic(f.loglik, f.order);
    row.bic = bic(f.loglik, f.order, sample_size);
    table.rows.push_back(row);
  }

  auto flag_min = [&](double SelectionRow::*field, bool SelectionRow::*flag) {
    auto it = std::min_element(
        table.rows.begin(), table.rows.end(),
        [&](const SelectionRow& a, const SelectionRow& b) { return a.*field < b.*field; });
    (*it).*flag = true;
  };
  flag_min(&SelectionRow::aic, &SelectionRow::best_aic);
  flag_min(&SelectionRow::bic, &SelectionRow::best_bic);

  if (saturated) {
    const SelectionRow* sat = table.find(*saturated);
    if (sat == nullptr) {
      throw InvalidArgument("LR tests need a fit at the saturated order " +
                            std::to_string(*saturated));
    }
    const double loglik_s = sat->loglik;
    for (auto& row : table.rows) {
      if (row.order < *saturated) {
        row.lr = lr_test(row.loglik, loglik_s, row.order, *saturated);
      }
    }
    try {
      const int chosen = select_parsimonious(table, alpha);
      for (auto& row : table.rows) {
        row.parsimonious = row.order == chosen;
      }
    } catch (const NoAcceptableModel&) {
      // No flag; callers that need a choice call select_parsimonious.
    }
  }
  return table;
}

int select_parsimonious(const SelectionTable& table, double alpha) {
  for (const auto& row : table.rows) {
    if (row.lr && row.lr->pvalue >= alpha) {
      return row.order;
    }
  }
  throw NoAcceptableModel("every likelihood-ratio test rejects at level " +
                          format_double(alpha) + "; raise the saturated order");
}

int best_aic_order(const SelectionTable& table) {
  for (const auto& row : table.rows) {
    if (row.best_aic) {
      return row.order;
    }
  }
  throw InvalidArgument("selection table is empty");
}

int best_bic_order(const SelectionTable& table) {
  for (const auto& row : table.rows) {
    if (row.best_bic) {
      return row.order;
    }
  }
  throw InvalidArgument("selection table is empty");
}

void write_selection_csv(std::ostream& out, const SelectionTable& table) {
  char buf[512];
  out << "M,loglik,aic,bic,lr_stat,lr_df,lr_pvalue,flags\n";
  for (const auto& row : table.rows) {
    std::snprintf(buf, sizeof buf, "%d,%.6f,%.6f,%.6f", row.order, row.loglik, row.aic,
                  row.bic);
    out << buf << ',';
    if (row.lr) {
      std::snprintf(buf, sizeof buf, "%.6f,%d,%.6g", row.lr->stat, row.lr->df,
                    row.lr->pvalue);
      out << buf;
    } else {
      out << ",,";
    }
    out << ',';
    std::string flags;
    auto add = [&](bool on, const char* name) {
      if (on) {
        flags += flags.empty() ? name : std::string(";") + name;
      }
    };
    add(row.best_aic, "best_aic");
    add(row.best_bic, "best_bic");
    add(row.parsimonious, "parsimonious");
    out << flags << '\n';
  }
}

}  // namespace nnts
