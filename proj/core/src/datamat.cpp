#include "saddlebench/datamat.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "saddlebench/format.hpp"
#include "saddlebench/rng.hpp"

namespace saddlebench {

DataMatrix DataMatrix::from_dense(std::size_t rows, std::size_t cols, std::vector<double> values) {
  if (values.size() != rows * cols) {
    throw std::invalid_argument("dense payload has " + std::to_string(values.size()) +
                                " values, expected " + std::to_string(rows * cols));
  }
  DataMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_storage_ = true;
  m.dense_ = std::move(values);
  m.nnz_ = 0;
  for (double v : m.dense_)
    if (v != 0.0) ++m.nnz_;
  m.finalize_norms();
  return m;
}

DataMatrix DataMatrix::from_entries(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries) {
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols) {
      throw std::out_of_range("matrix entry (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                              ") outside " + std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  std::sort(entries.begin(), entries.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      throw std::invalid_argument("duplicate matrix entry (" + std::to_string(entries[k].row) + ", " +
                                  std::to_string(entries[k].col) + ")");
    }
  }

  const std::size_t cells = rows * cols;
  if (cells > 0 && entries.size() > cells / 2) {
    std::vector<double> values(cells, 0.0);
    for (const auto& e : entries) values[e.row * cols + e.col] = e.value;
    return from_dense(rows, cols, std::move(values));
  }

  DataMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.dense_storage_ = false;
  m.nnz_ = entries.size();

  m.row_ptr_.assign(rows + 1, 0);
  m.row_col_.resize(entries.size());
  m.row_val_.resize(entries.size());
  for (const auto& e : entries) ++m.row_ptr_[e.row + 1];
  for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  for (std::size_t k = 0; k < entries.size(); ++k) {  // already sorted row-major
    m.row_col_[k] = entries[k].col;
    m.row_val_[k] = entries[k].value;
  }

  m.col_ptr_.assign(cols + 1, 0);
  m.col_row_.resize(entries.size());
  m.col_val_.resize(entries.size());
  for (const auto& e : entries) ++m.col_ptr_[e.col + 1];
  for (std::size_t j = 0; j < cols; ++j) m.col_ptr_[j + 1] += m.col_ptr_[j];
  std::vector<std::size_t> next(m.col_ptr_.begin(), m.col_ptr_.end() - 1);
  for (const auto& e : entries) {
    const std::size_t k = next[e.col]++;
    m.col_row_[k] = e.row;
    m.col_val_[k] = e.value;
  }

  m.finalize_norms();
  return m;
}

void DataMatrix::finalize_norms() {
  row_norms_.assign(rows_, 0.0);
  col_norms_.assign(cols_, 0.0);
  if (dense_storage_) {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const double v = dense_[i * cols_ + j];
        row_norms_[i] += v * v;
        col_norms_[j] += v * v;
      }
    }
  } else {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) row_norms_[i] += row_val_[k] * row_val_[k];
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) col_norms_[j] += col_val_[k] * col_val_[k];
  }
  frob_sq_ = 0.0;
  for (double& s : row_norms_) {
    frob_sq_ += s;
    s = std::sqrt(s);
  }
  for (double& s : col_norms_) s = std::sqrt(s);
  max_row_norm_ = row_norms_.empty() ? 0.0 : *std::max_element(row_norms_.begin(), row_norms_.end());
  max_col_norm_ = col_norms_.empty() ? 0.0 : *std::max_element(col_norms_.begin(), col_norms_.end());
}

double DataMatrix::entry(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) {
    throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " +
                            std::to_string(rows_) + "x" + std::to_string(cols_));
  }
  return entry_unchecked(i, j);
}

double DataMatrix::entry_unchecked(std::size_t i, std::size_t j) const {
  if (dense_storage_) return dense_[i * cols_ + j];
  const std::size_t* first = row_col_.data() + row_ptr_[i];
  const std::size_t* last = row_col_.data() + row_ptr_[i + 1];
  const std::size_t* it = std::lower_bound(first, last, j);
  if (it != last && *it == j) return row_val_[row_ptr_[i] + static_cast<std::size_t>(it - first)];
  return 0.0;
}

double DataMatrix::max_row_norm() const {
  if (rows_ == 0 || cols_ == 0) throw std::domain_error("max_row_norm of an empty matrix");
  return max_row_norm_;
}

double DataMatrix::max_col_norm() const {
  if (rows_ == 0 || cols_ == 0) throw std::domain_error("max_col_norm of an empty matrix");
  return max_col_norm_;
}

void DataMatrix::mat_vec(std::span<const double> x, std::span<double> out) const {
  if (x.size() != cols_ || out.size() != rows_) throw std::invalid_argument("mat_vec dimension mismatch");
  for (std::size_t i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for_each_in_row(i, [&](std::size_t j, double v) { acc += v * x[j]; });
    out[i] = acc;
  }
}

void DataMatrix::mat_t_vec(std::span<const double> y, std::span<double> out) const {
  if (y.size() != rows_ || out.size() != cols_) throw std::invalid_argument("mat_t_vec dimension mismatch");
  for (std::size_t j = 0; j < cols_; ++j) {
    double acc = 0.0;
    for_each_in_col(j, [&](std::size_t i, double v) { acc += v * y[i]; });
    out[j] = acc;
  }
}

std::vector<double> DataMatrix::mat_vec(std::span<const double> x) const {
  std::vector<double> out(rows_, 0.0);
  mat_vec(x, out);
  return out;
}

std::vector<double> DataMatrix::mat_t_vec(std::span<const double> y) const {
  std::vector<double> out(cols_, 0.0);
  mat_t_vec(y, out);
  return out;
}

double DataMatrix::row_dot(std::size_t i, std::span<const double> x) const {
  if (i >= rows_ || x.size() != cols_) throw std::invalid_argument("row_dot dimension mismatch");
  double acc = 0.0;
  for_each_in_row(i, [&](std::size_t j, double v) { acc += v * x[j]; });
  return acc;
}

void DataMatrix::row_axpy(std::size_t i, double alpha, std::span<double> x) const {
  if (i >= rows_ || x.size() != cols_) throw std::invalid_argument("row_axpy dimension mismatch");
  for_each_in_row(i, [&](std::size_t j, double v) { x[j] += alpha * v; });
}

namespace {

bool is_blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

double parse_double_token(std::string_view tok, std::size_t line_no, const char* what) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": malformed " + what);
  }
  return value;
}

std::size_t parse_index_token(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": malformed feature index");
  }
  return value;
}

}  // namespace

LabeledDataset parse_libsvm(std::istream& in, std::optional<std::size_t> dim_override) {
  std::vector<MatrixEntry> entries;
  std::vector<double> labels;
  std::size_t max_index = 0;  // 1-based
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;

    std::istringstream fields(line);
    std::string tok;
    fields >> tok;
    const double raw_label = parse_double_token(tok, line_no, "label");
    labels.push_back(raw_label <= 0.0 ? -1.0 : 1.0);
    const std::size_t row = labels.size() - 1;

    std::size_t prev_index = 0;
    while (fields >> tok) {
      const std::size_t colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed feature token '" + tok + "'");
      }
      const std::size_t index = parse_index_token(std::string_view(tok).substr(0, colon), line_no);
      if (index == 0) throw ParseError("line " + std::to_string(line_no) + ": feature index 0 (indices are 1-based)");
      if (index <= prev_index) {
        throw ParseError("line " + std::to_string(line_no) + ": feature indices must be strictly increasing");
      }
      const double value = parse_double_token(std::string_view(tok).substr(colon + 1), line_no, "feature value");
      entries.push_back({row, index - 1, value});
      prev_index = index;
      max_index = std::max(max_index, index);
    }
  }

  std::size_t dim = max_index;
  if (dim_override) {
    if (*dim_override < max_index) {
      throw std::invalid_argument("dimension override " + std::to_string(*dim_override) +
                                  " is smaller than max feature index " + std::to_string(max_index));
    }
    dim = *dim_override;
  }

  LabeledDataset data;
  data.matrix = DataMatrix::from_entries(labels.size(), dim, std::move(entries));
  data.labels = std::move(labels);
  return data;
}

LabeledDataset parse_libsvm_file(const std::string& path, std::optional<std::size_t> dim_override) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open dataset file: " + path);
  return parse_libsvm(in, dim_override);
}

void serialize_libsvm(const LabeledDataset& data, std::ostream& out) {
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << (data.labels[i] > 0.0 ? "+1" : "-1");
    data.matrix.for_each_in_row(i, [&](std::size_t j, double v) {
      if (v == 0.0) return;
      out << ' ' << (j + 1) << ':' << format_double(v);
    });
    out << '\n';
  }
}

std::string serialize_libsvm(const LabeledDataset& data) {
  std::ostringstream out;
  serialize_libsvm(data, out);
  return out.str();
}

SyntheticProblem gen_synthetic(std::size_t n, std::size_t d, double sigma, std::uint64_t seed) {
  if (n == 0 || d == 0) throw std::invalid_argument("synthetic dataset needs n >= 1 and d >= 1");
  if (sigma < 0.0) throw std::invalid_argument("synthetic noise level must be nonnegative");

  Rng rng(seed);
  std::vector<double> values(n * d);
  for (double& v : values) v = rng.normal();

  std::vector<double> model(d);
  for (double& v : model) v = rng.normal();

  SyntheticProblem problem;
  problem.data.matrix = DataMatrix::from_dense(n, d, std::move(values));
  problem.data.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double margin = problem.data.matrix.row_dot(i, model) + sigma * rng.normal();
    problem.data.labels[i] = margin >= 0.0 ? 1.0 : -1.0;
  }
  problem.planted_model = std::move(model);
  return problem;
}

}  // namespace saddlebench
