#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace saddlebench {

struct MatrixEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

// Design matrix with a row-major and a column-major index over the same
// payload. Rows drive per-sample work, columns drive per-feature work, and
// single entries are sampled directly by the entry-wise solvers, so all
// three access paths have to be cheap. Dense storage is selected
// automatically when more than half of the cells are populated.
//
// Immutable after construction; concurrent reads are safe.
class DataMatrix {
 public:
  DataMatrix() = default;

  // `values` is row-major with rows*cols elements.
  static DataMatrix from_dense(std::size_t rows, std::size_t cols, std::vector<double> values);
  // Duplicate (row, col) pairs are rejected. Explicitly stored zeros are kept.
  static DataMatrix from_entries(std::size_t rows, std::size_t cols, std::vector<MatrixEntry> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return nnz_; }
  bool is_dense() const noexcept { return dense_storage_; }

  // Bounds-checked; absent sparse entries read as 0.
  double entry(std::size_t i, std::size_t j) const;
  // Hot path used by the samplers, no bounds check.
  double entry_unchecked(std::size_t i, std::size_t j) const;

  const std::vector<double>& row_norms() const noexcept { return row_norms_; }
  const std::vector<double>& col_norms() const noexcept { return col_norms_; }
  double max_row_norm() const;  // throws std::domain_error on an empty matrix
  double max_col_norm() const;
  double frobenius_norm_sq() const noexcept { return frob_sq_; }

  // out = A x  /  out = A^T y; dimensions are checked.
  void mat_vec(std::span<const double> x, std::span<double> out) const;
  void mat_t_vec(std::span<const double> y, std::span<double> out) const;
  std::vector<double> mat_vec(std::span<const double> x) const;
  std::vector<double> mat_t_vec(std::span<const double> y) const;

  double row_dot(std::size_t i, std::span<const double> x) const;
  // x += alpha * a_i over the stored entries of row i.
  void row_axpy(std::size_t i, double alpha, std::span<double> x) const;

  // f(col, value) over the stored entries of row i, ascending col.
  template <typename F>
  void for_each_in_row(std::size_t i, F&& f) const {
    if (dense_storage_) {
      const double* base = dense_.data() + i * cols_;
      for (std::size_t j = 0; j < cols_; ++j) f(j, base[j]);
    } else {
      for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) f(row_col_[k], row_val_[k]);
    }
  }

  // f(row, value) over the stored entries of column j, ascending row.
  template <typename F>
  void for_each_in_col(std::size_t j, F&& f) const {
    if (dense_storage_) {
      for (std::size_t i = 0; i < rows_; ++i) f(i, dense_[i * cols_ + j]);
    } else {
      for (std::size_t k = col_ptr_[j]; k < col_ptr_[j + 1]; ++k) f(col_row_[k], col_val_[k]);
    }
  }

 private:
  void finalize_norms();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t nnz_ = 0;
  bool dense_storage_ = false;

  std::vector<double> dense_;  // row-major, rows*cols when dense

  std::vector<std::size_t> row_ptr_;  // rows+1
  std::vector<std::size_t> row_col_;
  std::vector<double> row_val_;
  std::vector<std::size_t> col_ptr_;  // cols+1
  std::vector<std::size_t> col_row_;
  std::vector<double> col_val_;

  std::vector<double> row_norms_;
  std::vector<double> col_norms_;
  double max_row_norm_ = 0.0;
  double max_col_norm_ = 0.0;
  double frob_sq_ = 0.0;
};

struct LabeledDataset {
  DataMatrix matrix;
  std::vector<double> labels;  // entries are exactly -1.0 or +1.0

  std::size_t size() const noexcept { return labels.size(); }
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// LIBSVM text lines: `label idx:val [idx:val ...]` with 1-based strictly
// increasing indices. Labels <= 0 map to -1, the rest to +1. The feature
// count is the largest index seen unless dim_override is given.
LabeledDataset parse_libsvm(std::istream& in, std::optional<std::size_t> dim_override = std::nullopt);
LabeledDataset parse_libsvm_file(const std::string& path, std::optional<std::size_t> dim_override = std::nullopt);

// Emits 1-based ascending indices, %.17g values, '\n' line endings.
void serialize_libsvm(const LabeledDataset& data, std::ostream& out);
std::string serialize_libsvm(const LabeledDataset& data);

struct SyntheticProblem {
  LabeledDataset data;
  std::vector<double> planted_model;
};

// Matrix and planted model have i.i.d. standard normal entries; labels are
// sign(a_i . model + noise) with noise ~ N(0, sigma^2). Deterministic in the
// seed; sign(0) counts as +1.
SyntheticProblem gen_synthetic(std::size_t n, std::size_t d, double sigma, std::uint64_t seed);

}  // namespace saddlebench
