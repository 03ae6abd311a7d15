#pragma once

// CSV ingestion of circular datasets.
//
// Continuous files hold one angle per row under a `theta` header. Grouped
// files hold either `lower,upper,count` rows (radians, defining the
// partition), `month,count` rows for a calendar partition, or a bare `count`
// column bound to a partition given by the caller. Lines starting with '#'
// are comments.

#include "nnts/likelihood.hpp"
#include "nnts/partition.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace nnts {

enum class Unit { kRadians, kDegrees, kFraction };
enum class DataKind { kContinuous, kGrouped };

/// Month lengths for the calendar partition.
enum class CalendarConvention {
  kCommonYear,    // Feb = 28 days, year = 365
  kLeapAveraged,  // Feb = 28.25 days, year = 365.25
};

struct DatasetSpec {
  std::filesystem::path path;
  DataKind kind = DataKind::kContinuous;
  Unit unit = Unit::kRadians;
  std::string theta_column = "theta";
  std::string count_column = "count";
  std::string month_column = "month";
  std::string lower_column = "lower";
  std::string upper_column = "upper";
};

Unit parse_unit(const std::string& name);
std::string to_string(Unit unit);

/// Converts to radians (degrees * pi/180, fraction * 2 pi) and reduces into
/// (0, 2 pi].
double to_radians(double value, Unit unit);

AngularSample read_continuous(std::istream& in, Unit unit,
                              const std::string& column = "theta");
AngularSample load_continuous(const DatasetSpec& spec);

/// Radians, one per row, printed with round-trip precision.
void write_continuous_csv(std::ostream& out, const AngularSample& sample);

/// With `lower,upper` columns the partition comes from the file and must
/// equal `partition` when both are given. Otherwise `partition` is required.
/// Throws PartitionMismatch, NegativeCount or ParseError.
GroupedSample read_grouped(std::istream& in, const std::optional<Partition>& partition,
                           const DatasetSpec& columns = {});
GroupedSample load_grouped(const DatasetSpec& spec,
                           const std::optional<Partition>& partition);

/// Bounds k 2 pi / Q for k = 0..Q.
Partition equal_partition(std::size_t cells);

std::array<double, 12> month_lengths(CalendarConvention convention);

/// Twelve cells with widths proportional to the month lengths.
Partition calendar_partition(CalendarConvention convention = CalendarConvention::kCommonYear);

}  // namespace nnts
