#include "certreg/dataset.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace certreg {

Dataset Dataset::select(const std::vector<std::size_t>& rows) const {
  Dataset out;
  out.feature_names = feature_names;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), x.cols());
  out.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) =
        x.row(static_cast<Eigen::Index>(rows[i]));
    out.y(static_cast<Eigen::Index>(i)) = y(static_cast<Eigen::Index>(rows[i]));
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (const char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == ',' && !quoted) {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  for (auto& s : cells) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t start = 0;
    while (start < s.size() && s[start] == ' ') ++start;
    s.erase(0, start);
  }
  return cells;
}

bool is_missing(const std::string& cell) {
  return cell.empty() || cell == "NA" || cell == "?";
}

bool parse_number(const std::string& cell, double* out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end != begin + cell.size()) return false;
  *out = value;
  return true;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& target_column,
                 bool one_hot) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("CSV file is empty: " + path);
  const std::vector<std::string> header = split_csv_line(line);
  const std::size_t ncols = header.size();

  std::size_t target_idx = ncols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (header[c] == target_column) target_idx = c;
  if (target_idx == ncols)
    throw std::invalid_argument("target column not found: " + target_column);

  std::vector<std::vector<std::string>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != ncols) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected " << ncols << " cells, got "
         << cells.size();
      throw std::runtime_error(os.str());
    }
    for (std::size_t c = 0; c < ncols; ++c) {
      if (is_missing(cells[c])) {
        std::ostringstream os;
        os << path << ":" << lineno << ": missing value in column '" << header[c]
           << "'";
        throw std::runtime_error(os.str());
      }
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) throw std::runtime_error("CSV file has no data rows: " + path);

  // A column is numeric only if every cell parses fully as a number.
  std::vector<bool> numeric(ncols, true);
  for (std::size_t c = 0; c < ncols; ++c) {
    double ignored;
    for (const auto& row : rows)
      if (!parse_number(row[c], &ignored)) {
        numeric[c] = false;
        break;
      }
  }
  if (!numeric[target_idx])
    throw std::invalid_argument("target column must be numeric: " + target_column);

  // Categorical levels in first-appearance order.
  std::vector<std::vector<std::string>> levels(ncols);
  std::vector<std::unordered_map<std::string, std::size_t>> level_index(ncols);
  for (std::size_t c = 0; c < ncols; ++c) {
    if (numeric[c] || c == target_idx) continue;
    if (!one_hot)
      throw std::invalid_argument("non-numeric column '" + header[c] +
                                  "' requires one-hot encoding");
    for (const auto& row : rows) {
      if (level_index[c].emplace(row[c], levels[c].size()).second)
        levels[c].push_back(row[c]);
    }
  }

  Dataset ds;
  std::vector<std::size_t> col_offsets(ncols, 0);
  std::size_t width = 0;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (c == target_idx) continue;
    col_offsets[c] = width;
    if (numeric[c]) {
      ds.feature_names.push_back(header[c]);
      width += 1;
    } else {
      for (const auto& level : levels[c])
        ds.feature_names.push_back(header[c] + "=" + level);
      width += levels[c].size();
    }
  }

  ds.x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                               static_cast<Eigen::Index>(width));
  ds.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < ncols; ++c) {
      if (c == target_idx) {
        double value = 0.0;
        parse_number(rows[r][c], &value);
        ds.y(static_cast<Eigen::Index>(r)) = value;
      } else if (numeric[c]) {
        double value = 0.0;
        parse_number(rows[r][c], &value);
        ds.x(static_cast<Eigen::Index>(r),
             static_cast<Eigen::Index>(col_offsets[c])) = value;
      } else {
        const std::size_t level = level_index[c].at(rows[r][c]);
        ds.x(static_cast<Eigen::Index>(r),
             static_cast<Eigen::Index>(col_offsets[c] + level)) = 1.0;
      }
    }
  }
  return ds;
}

}  // namespace certreg
