#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace certreg {

struct Dataset {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::string> feature_names;

  std::size_t size() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }

  Dataset select(const std::vector<std::size_t>& rows) const;
};

/// Reads a headered CSV into a numeric matrix. Columns whose cells do not all
/// parse as numbers are treated as categorical and one-hot expanded, with
/// category order fixed by first appearance. Missing cells ("", "NA", "?")
/// are a hard error reported with their row and column. The target column
/// must be numeric.
Dataset load_csv(const std::string& path, const std::string& target_column,
                 bool one_hot = true);

}  // namespace certreg
