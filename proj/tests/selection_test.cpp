#include "nnts/selection.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace nnts {
namespace {

const std::vector<OrderFit> kFemale{{0, -40698.76}, {1, -40690.54}, {2, -40683.13}, {3, -40680.95},
                                    {4, -40680.69}, {5, -40676.68}, {6, -40673.26}};
const std::vector<OrderFit> kMale{{0, -107403.60}, {1, -107395.54}, {2, -107394.61}, {3, -107393.90},
                                  {4, -107392.45}, {5, -107384.24}, {6, -107382.17}};

TEST(InformationCriteria, TableValues) {
  EXPECT_NEAR(aic(-139.68, 0), 279.36, 1e-9);
  EXPECT_NEAR(aic(-107.97, 2), 223.94, 1e-9);
  EXPECT_EQ(aic(0.0, 0), 0.0);
  EXPECT_NEAR(bic(-107.97, 2, 76), 233.26, 0.005);
  EXPECT_NEAR(bic(-103.96, 4, 76), 242.57, 0.005);
  EXPECT_EQ(bic(-12.5, 0, 40), 25.0);
  EXPECT_THROW(bic(-1.0, 1, 0.5), InvalidArgument);
}

TEST(LrTest, Examples) {
  const LrTest f = lr_test(-40698.76, -40673.26, 0, 6);
  EXPECT_NEAR(f.stat, 51.00, 1e-8);
  EXPECT_EQ(f.df, 12);
  const LrTest m = lr_test(-107384.24, -107382.17, 5, 6);
  EXPECT_NEAR(m.stat, 4.14, 1e-8);
  EXPECT_EQ(m.df, 2);
  const LrTest same = lr_test(-10.0, -10.0, 2, 6);
  EXPECT_EQ(same.stat, 0.0);
  EXPECT_EQ(same.pvalue, 1.0);
}

TEST(LrTest, RejectsBadNesting) {
  EXPECT_THROW(lr_test(-10.0, -10.0, 6, 6), InvalidNesting);
  EXPECT_THROW(lr_test(-10.0, -11.0, 2, 6), InvalidNesting);
}

TEST(ChiSquare, ClosedFormAndEdges) {
  for (int df : {1, 2, 5, 12}) {
    EXPECT_EQ(chi_square_sf(0.0, df), 1.0);
  }
  EXPECT_NEAR(chi_square_sf(9.2103, 2), 0.0100, 1e-5);
  for (double x : {0.1, 1.0, 7.0, 40.0}) {
    EXPECT_NEAR(chi_square_sf(x, 2), std::exp(-x / 2), 1e-15);
    // df = 1: erfc(sqrt(x/2)).
    EXPECT_NEAR(chi_square_sf(x, 1), std::erfc(std::sqrt(x / 2)), 1e-14);
  }
  EXPECT_NEAR(chi_square_sf(20.09, 8), 0.0100, 5e-5);
  EXPECT_THROW(chi_square_sf(-1.0, 2), InvalidArgument);
  EXPECT_THROW(chi_square_sf(1.0, 0), InvalidArgument);
}

TEST(ChiSquare, MatchesQuadratureOracle) {
  for (int df : {2, 8, 10, 12}) {
    for (double x : {4.14, 19.74, 20.09, 51.00}) {
      EXPECT_NEAR(chi_square_sf(x, df), testing::chi_square_sf_by_quadrature(x, df), 1e-8)
          << "df " << df << " x " << x;
    }
  }
}

TEST(ChiSquare, GammaQBothBranches) {
  // Q(1, x) = e^{-x}; Q(a, x) + P(a, x) = 1 with P(1/2, x) = erf(sqrt x).
  for (double x : {0.3, 2.0, 15.0}) {
    EXPECT_NEAR(gamma_q(1.0, x), std::exp(-x), 1e-15);
    EXPECT_NEAR(gamma_q(0.5, x), std::erfc(std::sqrt(x)), 1e-14);
  }
}

TEST(SaturatedOrder, HalfTheCells) {
  EXPECT_EQ(saturated_order(12), 6);
  EXPECT_EQ(saturated_order(13), 6);
  EXPECT_EQ(saturated_order(2), 1);
}

TEST(Selection, FemaleTableParsimonious) {
  const SelectionTable t = build_selection_table(kFemale, 16379, 6, 0.01);
  EXPECT_EQ(select_parsimonious(t, 0.01), 2);
  const std::vector<double> expected{51.00, 34.56, 19.74, 15.38, 14.86, 6.84};
  for (int m = 0; m < 6; ++m) {
    ASSERT_TRUE(t.find(m)->lr.has_value());
    EXPECT_NEAR(t.find(m)->lr->stat, expected[m], 0.011);
    EXPECT_EQ(t.find(m)->lr->df, 12 - 2 * m);
  }
  EXPECT_FALSE(t.find(6)->lr.has_value());
  EXPECT_TRUE(t.find(2)->parsimonious);
}

TEST(Selection, MaleTableParsimonious) {
  const SelectionTable t = build_selection_table(kMale, 43229, 6, 0.01);
  EXPECT_EQ(select_parsimonious(t, 0.01), 5);
  const std::vector<double> expected{42.86, 26.74, 24.88, 23.46, 20.56, 4.14};
  for (int m = 0; m < 6; ++m) {
    EXPECT_NEAR(t.find(m)->lr->stat, expected[m], 0.011);
  }
}

TEST(Selection, AllZeroStatisticsPickSmallestOrder) {
  std::vector<OrderFit> flat;
  for (int m = 0; m <= 6; ++m) {
    flat.push_back({m, -100.0});
  }
  EXPECT_EQ(select_parsimonious(build_selection_table(flat, 50, 6), 0.01), 0);
}

TEST(Selection, NoAcceptableModel) {
  const std::vector<OrderFit> fits{{0, -200.0}, {1, -150.0}, {2, -100.0}};
  EXPECT_THROW(select_parsimonious(build_selection_table(fits, 60, 2), 0.01), NoAcceptableModel);
  EXPECT_THROW(select_parsimonious(build_selection_table(fits, 60), 0.01), NoAcceptableModel);
}

TEST(Selection, TurtleCriteriaFlags) {
  const std::vector<OrderFit> fits{{0, -139.68}, {1, -126.33}, {2, -107.97}, {3, -107.94},
                                   {4, -103.96}, {5, -103.33}, {6, -102.72}, {7, -102.49},
                                   {8, -100.88}, {9, -100.50}, {10, -100.27}};
  const SelectionTable t = build_selection_table(fits, 76);
  EXPECT_EQ(best_aic_order(t), 4);
  EXPECT_EQ(best_bic_order(t), 2);
  int aic_flags = 0;
  int bic_flags = 0;
  for (const auto& row : t.rows) {
    aic_flags += row.best_aic;
    bic_flags += row.best_bic;
    EXPECT_FALSE(row.lr.has_value());
  }
  EXPECT_EQ(aic_flags, 1);
  EXPECT_EQ(bic_flags, 1);
  EXPECT_NEAR(t.find(1)->aic, 256.66, 0.005);
  EXPECT_NEAR(t.find(1)->bic, 261.32, 0.005);
}

TEST(Selection, TiesFlagSmallestOrder) {
  const std::vector<OrderFit> fits{{0, -10.0}, {1, -8.0}, {2, -6.0}};
  const SelectionTable t = build_selection_table(fits, 100);
  EXPECT_EQ(best_aic_order(t), 0);  // aic 20, 20, 20
}

TEST(SelectionCsv, Layout) {
  const SelectionTable t = build_selection_table(kFemale, 16379, 6, 0.01);
  std::ostringstream out;
  write_selection_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "M,loglik,aic,bic,lr_stat,lr_df,lr_pvalue,flags");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.rfind("2,", 0) == 0) {
      EXPECT_NE(line.find("parsimonious"), std::string::npos);
      EXPECT_NE(line.find(",19.740000,8,"), std::string::npos);
    }
    if (line.rfind("6,", 0) == 0) {
      EXPECT_NE(line.find(",,,"), std::string::npos);
    }
  }
  EXPECT_EQ(rows, 7);
}

}  // namespace
}  // namespace nnts
