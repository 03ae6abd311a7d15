#pragma once

// fits.json: a self-describing record of an order sweep. Coefficients are
// stored as [re, im] pairs with round-trip precision, so reloading yields
// bit-identical parameters.

#include "nnts/optimizer.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace nnts::tool {

inline constexpr const char* kToolName = "nnts";
inline constexpr const char* kToolVersion = "0.1.0";

struct DatasetDescriptor {
  std::string path;
  std::string kind;       // "continuous" | "grouped"
  std::string unit;       // continuous only
  std::string partition;  // grouped only: "file" | "equal" | "calendar" | "calendar-leap"
  std::vector<double> bounds;
  double size = 0.0;      // n or N
};

struct ArchivedFit {
  int order = 0;
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  double grad_norm = 0.0;
  int start = 0;
  NntsParams params = NntsParams::uniform(0);
};

struct SelectionSummary {
  std::string criterion = "bic";
  std::optional<int> selected_order;
  bool lrt = false;
  double alpha = 0.01;
  std::optional<int> saturated_order;
  std::optional<int> parsimonious_order;
};

struct FitArchive {
  std::string tool = kToolName;
  std::string version = kToolVersion;
  DatasetDescriptor dataset;
  SolverConfig config;
  SelectionSummary selection;
  std::vector<ArchivedFit> fits;

  const ArchivedFit* find(int order) const;
};

ArchivedFit archive_fit(int order, const FitResult& result);

nlohmann::ordered_json to_json(const FitArchive& archive);

/// Throws InvalidArgument on schema problems or on coefficients more than
/// 1e-10 off the norm constraint.
FitArchive archive_from_json(const nlohmann::ordered_json& j);

void save_archive(const std::filesystem::path& path, const FitArchive& archive);
FitArchive load_archive(const std::filesystem::path& path);

}  // namespace nnts::tool
