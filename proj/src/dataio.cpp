#include "nnts/dataio.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace nnts {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower_case(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based file line of each row

  std::optional<std::size_t> column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }
};

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) {
      break;
    }
    start = comma + 1;
  }
  return cells;
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty() || view.front() == '#') {
      continue;
    }
    auto cells = split(view);
    if (!have_header) {
      for (auto& c : cells) {
        c = lower_case(c);
      }
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ParseError(line_no, cells.size(),
                       "expected " + std::to_string(table.header.size()) +
                           " fields, found " + std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  if (!have_header) {
    throw EmptyData("file has no header line");
  }
  return table;
}

double parse_real(const std::string& text, std::size_t row, std::size_t col) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && *first == '+') {
    ++first;
  }
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError(row, col, "'" + text + "' is not a real number");
  }
  return value;
}

std::int64_t parse_count(const std::string& text, std::size_t row, std::size_t col) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw ParseError(row, col, "'" + text + "' is not an integer count");
  }
  if (value < 0) {
    throw NegativeCount("row " + std::to_string(row) + ": count " + text +
                        " is negative");
  }
  return value;
}

std::size_t parse_month(const std::string& text, std::size_t row, std::size_t col) {
  static constexpr std::array<std::string_view, 12> names = {
      "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};
  const std::string key = lower_case(text);
  for (std::size_t m = 0; m < names.size(); ++m) {
    if (key.size() >= 3 && key.compare(0, 3, names[m]) == 0) {
      return m;
    }
  }
  int number = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), number);
  if (ec == std::errc() && ptr == key.data() + key.size() && number >= 1 && number <= 12) {
    return static_cast<std::size_t>(number - 1);
  }
  throw ParseError(row, col, "'" + text + "' is not a month (1-12 or Jan-Dec)");
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return in;
}

}  // namespace

Unit parse_unit(const std::string& name) {
  const std::string key = lower_case(name);
  if (key == "radians" || key == "rad") {
    return Unit::kRadians;
  }
  if (key == "degrees" || key == "deg") {
    return Unit::kDegrees;
  }
  if (key == "fraction" || key == "fraction-of-period") {
    return Unit::kFraction;
  }
  throw InvalidArgument("unknown unit '" + name + "' (radians, degrees, fraction)");
}

std::string to_string(Unit unit) {
  switch (unit) {
    case Unit::kRadians:
      return "radians";
    case Unit::kDegrees:
      return "degrees";
    case Unit::kFraction:
      return "fraction";
  }
  return "radians";
}

double to_radians(double value, Unit unit) {
  switch (unit) {
    case Unit::kRadians:
      return reduce_angle(value);
    case Unit::kDegrees:
      return reduce_angle(value * (std::numbers::pi / 180.0));
    case Unit::kFraction:
      return reduce_angle(value * kTwoPi);
  }
  return reduce_angle(value);
}

AngularSample read_continuous(std::istream& in, Unit unit, const std::string& column) {
  const CsvTable table = read_csv(in);
  const auto col = table.column(lower_case(column));
  if (!col) {
    throw ParseError(1, 1, "missing column '" + column + "'");
  }
  std::vector<double> thetas;
  thetas.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const double v = parse_real(table.rows[i][*col], table.line_numbers[i], *col + 1);
    if (!std::isfinite(v)) {
      throw ParseError(table.line_numbers[i], *col + 1, "angle is not finite");
    }
    thetas.push_back(to_radians(v, unit));
  }
  if (thetas.empty()) {
    throw EmptyData("no observations in continuous dataset");
  }
  return AngularSample(std::move(thetas));
}

AngularSample load_continuous(const DatasetSpec& spec) {
  std::ifstream in = open_input(spec.path);
  return read_continuous(in, spec.unit, spec.theta_column);
}

void write_continuous_csv(std::ostream& out, const AngularSample& sample) {
  char buf[40];
  out << "theta\n";
  for (double t : sample.thetas()) {
    std::snprintf(buf, sizeof buf, "%.17g", t);
    out << buf << '\n';
  }
}

GroupedSample read_grouped(std::istream& in, const std::optional<Partition>& partition,
                           const DatasetSpec& columns) {
  const CsvTable table = read_csv(in);
  const auto count_col = table.column(lower_case(columns.count_column));
  if (!count_col) {
    throw ParseError(1, 1, "missing column '" + columns.count_column + "'");
  }
  const auto lower_col = table.column(lower_case(columns.lower_column));
  const auto upper_col = table.column(lower_case(columns.upper_column));
  const auto month_col = table.column(lower_case(columns.month_column));
  if (table.rows.empty()) {
    throw EmptyData("no cells in grouped dataset");
  }

  std::vector<std::int64_t> counts;
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    counts.push_back(parse_count(table.rows[i][*count_col], table.line_numbers[i],
                                 *count_col + 1));
  }

  if (lower_col && upper_col) {
    std::vector<double> bounds;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const double lo = parse_real(table.rows[i][*lower_col], table.line_numbers[i],
                                   *lower_col + 1);
      const double hi = parse_real(table.rows[i][*upper_col], table.line_numbers[i],
                                   *upper_col + 1);
      if (i == 0) {
        bounds.push_back(lo);
      } else if (lo != bounds.back()) {
        throw PartitionMismatch("cell " + std::to_string(i) +
                                " does not start where the previous one ends");
      }
      bounds.push_back(hi);
    }
    Partition from_file = [&] {
      try {
        return Partition::from_bounds(std::move(bounds));
      } catch (const InvalidArgument& e) {
        throw PartitionMismatch(std::string("cells do not partition (0, 2 pi]: ") + e.what());
      }
    }();
    if (partition && !(*partition == from_file)) {
      throw PartitionMismatch("file cells differ from the requested partition");
    }
    return GroupedSample(std::move(from_file), std::move(counts));
  }

  if (!partition) {
    throw PartitionMismatch("file has no lower/upper columns and no partition was given");
  }
  if (partition->cells() != counts.size()) {
    throw PartitionMismatch("partition has " + std::to_string(partition->cells()) +
                            " cells but the file has " + std::to_string(counts.size()) +
                            " rows");
  }
  if (month_col) {
    if (counts.size() != 12) {
      throw PartitionMismatch("month data needs exactly 12 rows");
    }
    std::vector<std::int64_t> by_month(12, -1);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      const std::size_t m =
          parse_month(table.rows[i][*month_col], table.line_numbers[i], *month_col + 1);
      if (by_month[m] >= 0) {
        throw ParseError(table.line_numbers[i], *month_col + 1, "duplicate month");
      }
      by_month[m] = counts[i];
    }
    counts = std::move(by_month);
  }
  return GroupedSample(*partition, std::move(counts));
}

GroupedSample load_grouped(const DatasetSpec& spec, const std::optional<Partition>& partition) {
  std::ifstream in = open_input(spec.path);
  return read_grouped(in, partition, spec);
}

Partition equal_partition(std::size_t cells) {
  if (cells < 1) {
    throw InvalidArgument("a partition needs at least one cell");
  }
  std::vector<double> bounds(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k) {
    bounds[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(cells);
  }
  bounds.back() = kTwoPi;
  return Partition::from_bounds(std::move(bounds));
}

std::array<double, 12> month_lengths(CalendarConvention convention) {
  const double february = convention == CalendarConvention::kCommonYear ? 28.0 : 28.25;
  return {31.0, february, 31.0, 30.0, 31.0, 30.0, 31.0, 31.0, 30.0, 31.0, 30.0, 31.0};
}

Partition calendar_partition(CalendarConvention convention) {
  const auto days = month_lengths(convention);
  double year = 0.0;
  for (double d : days) {
    year += d;
  }
  std::vector<double> bounds{0.0};
  double elapsed = 0.0;
  for (double d : days) {
    elapsed += d;
    bounds.push_back(kTwoPi * elapsed / year);
  }
  bounds.back() = kTwoPi;
  return Partition::from_bounds(std::move(bounds));
}

}  // namespace nnts
