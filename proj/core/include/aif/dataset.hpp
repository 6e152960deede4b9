#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aif {

/// Row-major n x d matrix of finite doubles.
class DataMatrix {
 public:
  DataMatrix() = default;
  DataMatrix(std::size_t rows, std::size_t cols);
  DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);
  static DataMatrix FromRows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }
  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  const std::vector<double>& values() const noexcept { return values_; }

  std::vector<double> Column(std::size_t j) const;

  friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

struct Dataset {
  std::vector<std::string> columns;
  DataMatrix data;
  std::string provenance;

  /// Index of a column by exact name, or npos.
  std::size_t ColumnIndex(const std::string& name) const;
  Dataset WithoutColumn(const std::string& name) const;
};

/// Reads comma-separated values with a header row. Every cell must parse as a
/// finite number; errors name the offending line and column. Blank lines are
/// skipped; a file with a header but no rows yields an empty dataset.
Dataset ReadCsv(std::istream& in, const std::string& provenance = "<stream>");
Dataset ReadCsvFile(const std::filesystem::path& path);

/// Shortest round-trip decimal representation (std::to_chars).
std::string FormatDouble(double value);

void WriteCsv(std::ostream& out, const Dataset& dataset);

/// Per-column z-scoring parameters.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // population standard deviation; 1 for constant columns

  static Standardizer Fit(const DataMatrix& data);
  DataMatrix Apply(const DataMatrix& data) const;
};

}  // namespace aif
