#include "aif/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "aif/error.hpp"

namespace aif {

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

DataMatrix::DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    Fail(ErrorCode::kDimensionMismatch, "data matrix value count does not match its shape");
  }
}

DataMatrix DataMatrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) Fail(ErrorCode::kDimensionMismatch, "ragged rows");
    values.insert(values.end(), r.begin(), r.end());
  }
  return DataMatrix(rows.size(), cols, std::move(values));
}

std::vector<double> DataMatrix::Column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::size_t Dataset::ColumnIndex(const std::string& name) const {
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j] == name) return j;
  }
  return std::string::npos;
}

Dataset Dataset::WithoutColumn(const std::string& name) const {
  const std::size_t drop = ColumnIndex(name);
  if (drop == std::string::npos) return *this;
  Dataset out;
  out.provenance = provenance;
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (j != drop) out.columns.push_back(columns[j]);
  }
  std::vector<double> values;
  values.reserve(data.rows() * out.columns.size());
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j != drop) values.push_back(data(i, j));
    }
  }
  out.data = DataMatrix(data.rows(), out.columns.size(), std::move(values));
  return out;
}

namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '"')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '"')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(Trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool IsBlank(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

}  // namespace

Dataset ReadCsv(std::istream& in, const std::string& provenance) {
  Dataset out;
  out.provenance = provenance;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    out.columns = SplitLine(line);
    have_header = true;
  }
  if (!have_header) Fail(ErrorCode::kEmptyInput, provenance + ": no header row");
  for (std::size_t j = 0; j < out.columns.size(); ++j) {
    if (out.columns[j].empty()) {
      Fail(ErrorCode::kParseError, provenance + ":" + std::to_string(line_no) + ": column " +
                                       std::to_string(j + 1) + " has an empty name");
    }
  }

  const std::size_t cols = out.columns.size();
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const auto cells = SplitLine(line);
    if (cells.size() != cols) {
      Fail(ErrorCode::kParseError, provenance + ":" + std::to_string(line_no) + ": expected " +
                                       std::to_string(cols) + " cells, found " +
                                       std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      const std::string& cell = cells[j];
      double v = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(v)) {
        Fail(ErrorCode::kParseError, provenance + ":" + std::to_string(line_no) + ": column '" +
                                         out.columns[j] + "' has non-numeric value '" + cell +
                                         "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  out.data = DataMatrix(rows, cols, std::move(values));
  return out;
}

Dataset ReadCsvFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  return ReadCsv(in, path.string());
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteCsv(std::ostream& out, const Dataset& dataset) {
  for (std::size_t j = 0; j < dataset.columns.size(); ++j) {
    if (j) out << ',';
    out << dataset.columns[j];
  }
  out << '\n';
  for (std::size_t i = 0; i < dataset.data.rows(); ++i) {
    for (std::size_t j = 0; j < dataset.data.cols(); ++j) {
      if (j) out << ',';
      out << FormatDouble(dataset.data(i, j));
    }
    out << '\n';
  }
}

Standardizer Standardizer::Fit(const DataMatrix& data) {
  if (data.empty()) Fail(ErrorCode::kEmptyInput, "cannot standardize an empty dataset");
  Standardizer s;
  s.mean.assign(data.cols(), 0.0);
  s.scale.assign(data.cols(), 1.0);
  const double n = static_cast<double>(data.rows());
  for (std::size_t j = 0; j < data.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) sum += data(i, j);
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < data.rows(); ++i) ss += (data(i, j) - mean) * (data(i, j) - mean);
    const double sd = std::sqrt(ss / n);
    s.mean[j] = mean;
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

DataMatrix Standardizer::Apply(const DataMatrix& data) const {
  if (data.cols() != mean.size()) Fail(ErrorCode::kDimensionMismatch, "standardizer width mismatch");
  DataMatrix out = data;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = (out(i, j) - mean[j]) / scale[j];
  }
  return out;
}

}  // namespace aif
