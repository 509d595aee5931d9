#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "scp/dataset.hpp"

namespace scp {

/// Raw RFC 4180 table: quoted fields may hold commas, doubled quotes and line breaks.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// 1-based physical line on which each row starts.
  std::vector<std::size_t> row_lines;
};

CsvTable read_csv(std::istream& in, bool has_header = true);
void write_csv(std::ostream& out, const CsvTable& table);

/// Shortest text that reads back to the same double ("%.17g").
std::string format_double(double value);

/// A column chosen by header name or by zero-based position.
using ColumnRef = std::variant<std::string, std::size_t>;

struct ColumnSpec {
  ColumnRef x = std::string("s_x");
  ColumnRef y = std::string("s_y");
  ColumnRef response = std::string("y");
  bool has_header = true;
  /// Map coordinates into [0, 1]^2 with one scale for both axes, so
  /// distances (and bandwidths) are shrunk uniformly.
  bool rescale = false;
};

/// p -> (p - origin) * scale.
struct AffineMap {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double scale = 1.0;

  Point apply(Point p) const;
  Point invert(Point p) const;
};

struct RejectedRow {
  std::size_t line = 0;
  std::string reason;
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_accepted = 0;
  std::size_t rows_rejected = 0;
  std::vector<RejectedRow> rejections;
  /// Bounding box of accepted coordinates as read (before any rescaling).
  double min_x = 0.0, max_x = 0.0, min_y = 0.0, max_y = 0.0;
  double response_mean = 0.0;
  double response_variance = 0.0;
  double response_min = 0.0;
  double response_max = 0.0;
  /// Amount subtracted from the responses (0 unless centered afterwards).
  double centering_offset = 0.0;
  std::optional<AffineMap> rescale;

  std::string to_json() const;
};

struct LoadedDataset {
  SpatialDataset data;
  IngestReport report;
};

/// Rows with a wrong field count, unparsable numbers or non-finite values are
/// rejected with a reason. Throws IoError for unreadable files, InvalidArgument
/// for unknown columns and InsufficientData when nothing is accepted.
LoadedDataset load_csv(const std::string& path, const ColumnSpec& columns = {});
LoadedDataset load_csv(std::istream& in, const ColumnSpec& columns = {});

/// Columns s_x, s_y, y at full precision.
void write_dataset_csv(std::ostream& out, const SpatialDataset& data);
void write_dataset_csv(const std::string& path, const SpatialDataset& data);

struct HoldoutSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Uniform random partition of 0..n-1; each part sorted ascending.
HoldoutSplit split_holdout(std::size_t n, std::size_t n_validation, std::size_t n_test,
                           std::uint64_t seed);

/// Subtracts the response mean in place and returns it.
double center_responses(SpatialDataset& data);
void uncenter_responses(SpatialDataset& data, double offset);

}  // namespace scp
