#include "scp/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include "json.hpp"

#include "scp/errors.hpp"

namespace scp {
namespace {

bool needs_quotes(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

std::size_t resolve_column(const ColumnRef& ref, const CsvTable& table, const char* role) {
  if (const auto* index = std::get_if<std::size_t>(&ref)) {
    return *index;
  }
  const auto& name = std::get<std::string>(ref);
  const auto it = std::find(table.header.begin(), table.header.end(), name);
  if (it == table.header.end()) {
    throw InvalidArgument(std::string("load_csv: no column named '") + name + "' for " + role);
  }
  return static_cast<std::size_t>(it - table.header.begin());
}

std::optional<double> parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+') {
    text.remove_prefix(1);
  }
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

CsvTable read_csv(std::istream& in, bool has_header) {
  CsvTable table;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    const bool blank = row.size() == 1 && row[0].empty();
    if (!blank) {
      if (has_header && table.header.empty() && table.rows.empty()) {
        table.header = std::move(row);
      } else {
        table.rows.push_back(std::move(row));
        table.row_lines.push_back(row_line);
      }
    }
    row.clear();
  };

  char c;
  while (in.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') {
          ++line;
        }
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
        } else {
          field.push_back(c);
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (in.peek() == '\n') {
          break;
        }
        [[fallthrough]];
      case '\n':
        end_row();
        ++line;
        row_line = line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) {
    throw IoError("read_csv: unterminated quoted field starting on line " +
                  std::to_string(row_line));
  }
  if (!field.empty() || !row.empty() || field_started) {
    end_row();
  }
  return table;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  auto write_row = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) {
        out << ',';
      }
      if (needs_quotes(row[i])) {
        out << '"';
        for (char c : row[i]) {
          if (c == '"') {
            out << '"';
          }
          out << c;
        }
        out << '"';
      } else {
        out << row[i];
      }
    }
    out << '\n';
  };
  if (!table.header.empty()) {
    write_row(table.header);
  }
  for (const auto& row : table.rows) {
    write_row(row);
  }
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Point AffineMap::apply(Point p) const {
  return {(p.x - origin_x) * scale, (p.y - origin_y) * scale};
}

Point AffineMap::invert(Point p) const {
  return {p.x / scale + origin_x, p.y / scale + origin_y};
}

std::string IngestReport::to_json() const {
  nlohmann::ordered_json j;
  j["rows_read"] = rows_read;
  j["rows_accepted"] = rows_accepted;
  j["rows_rejected"] = rows_rejected;
  auto& rej = j["rejections"] = nlohmann::ordered_json::array();
  for (const auto& r : rejections) {
    rej.push_back({{"line", r.line}, {"reason", r.reason}});
  }
  j["bounding_box"] = {{"min_x", min_x}, {"max_x", max_x}, {"min_y", min_y}, {"max_y", max_y}};
  j["response"] = {{"mean", response_mean},
                   {"variance", response_variance},
                   {"min", response_min},
                   {"max", response_max}};
  j["centering_offset"] = centering_offset;
  if (rescale) {
    j["rescale"] = {{"origin_x", rescale->origin_x},
                    {"origin_y", rescale->origin_y},
                    {"scale", rescale->scale},
                    {"note", "bandwidths are interpreted in rescaled units"}};
  } else {
    j["rescale"] = nullptr;
  }
  return j.dump(2);
}

LoadedDataset load_csv(std::istream& in, const ColumnSpec& columns) {
  const CsvTable table = read_csv(in, columns.has_header);
  const std::size_t cx = resolve_column(columns.x, table, "x");
  const std::size_t cy = resolve_column(columns.y, table, "y");
  const std::size_t cr = resolve_column(columns.response, table, "response");
  const std::size_t needed = std::max({cx, cy, cr}) + 1;

  LoadedDataset out;
  IngestReport& report = out.report;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    ++report.rows_read;
    auto reject = [&](std::string reason) {
      ++report.rows_rejected;
      report.rejections.push_back({table.row_lines[r], std::move(reason)});
    };
    if (row.size() < needed) {
      reject("expected at least " + std::to_string(needed) + " fields, found " +
             std::to_string(row.size()));
      continue;
    }
    const auto x = parse_number(row[cx]);
    const auto y = parse_number(row[cy]);
    const auto v = parse_number(row[cr]);
    if (!x || !y || !v) {
      reject("unparsable number");
      continue;
    }
    if (!std::isfinite(*x) || !std::isfinite(*y)) {
      reject("non-finite coordinate");
      continue;
    }
    if (!std::isfinite(*v)) {
      reject("non-finite response");
      continue;
    }
    out.data.locations.push_back({*x, *y});
    out.data.responses.push_back(*v);
    ++report.rows_accepted;
  }
  if (report.rows_accepted == 0) {
    throw InsufficientData("load_csv: no rows accepted");
  }

  const auto& locs = out.data.locations;
  const auto [xmin, xmax] = std::minmax_element(locs.begin(), locs.end(),
                                                [](Point a, Point b) { return a.x < b.x; });
  const auto [ymin, ymax] = std::minmax_element(locs.begin(), locs.end(),
                                                [](Point a, Point b) { return a.y < b.y; });
  report.min_x = xmin->x;
  report.max_x = xmax->x;
  report.min_y = ymin->y;
  report.max_y = ymax->y;
  const auto& ys = out.data.responses;
  report.response_mean = mean(ys);
  report.response_variance = ys.size() > 1 ? sample_variance(ys) : 0.0;
  report.response_min = *std::min_element(ys.begin(), ys.end());
  report.response_max = *std::max_element(ys.begin(), ys.end());

  if (columns.rescale) {
    const double extent = std::max(report.max_x - report.min_x, report.max_y - report.min_y);
    AffineMap map{report.min_x, report.min_y, extent > 0.0 ? 1.0 / extent : 1.0};
    for (Point& p : out.data.locations) {
      p = map.apply(p);
    }
    report.rescale = map;
  }
  return out;
}

LoadedDataset load_csv(const std::string& path, const ColumnSpec& columns) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("load_csv: cannot open " + path);
  }
  return load_csv(in, columns);
}

void write_dataset_csv(std::ostream& out, const SpatialDataset& data) {
  data.validate();
  out << "s_x,s_y,y\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_double(data.locations[i].x) << ',' << format_double(data.locations[i].y) << ','
        << format_double(data.responses[i]) << '\n';
  }
}

void write_dataset_csv(const std::string& path, const SpatialDataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("write_dataset_csv: cannot open " + path);
  }
  write_dataset_csv(out, data);
  if (!out) {
    throw IoError("write_dataset_csv: write failed for " + path);
  }
}

HoldoutSplit split_holdout(std::size_t n, std::size_t n_validation, std::size_t n_test,
                           std::uint64_t seed) {
  if (n_validation > n || n_test > n - n_validation) {
    throw InvalidArgument("split_holdout: validation + test exceeds n");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  HoldoutSplit split;
  const auto v_end = order.begin() + static_cast<std::ptrdiff_t>(n_validation);
  const auto t_end = v_end + static_cast<std::ptrdiff_t>(n_test);
  split.validation.assign(order.begin(), v_end);
  split.test.assign(v_end, t_end);
  split.train.assign(t_end, order.end());
  for (auto* part : {&split.train, &split.validation, &split.test}) {
    std::sort(part->begin(), part->end());
  }
  return split;
}

double center_responses(SpatialDataset& data) {
  if (data.empty()) {
    return 0.0;
  }
  const double offset = mean(data.responses);
  for (double& y : data.responses) {
    y -= offset;
  }
  return offset;
}

void uncenter_responses(SpatialDataset& data, double offset) {
  for (double& y : data.responses) {
    y += offset;
  }
}

}  // namespace scp
