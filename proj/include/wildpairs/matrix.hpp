#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "wildpairs/field.hpp"

namespace wildpairs {

using Vec = std::vector<Elem>;

/// Dense row-major matrix over a Field. 0-extent matrices are legal.
class Mat {
 public:
  Mat(const Field& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols) {}

  static Mat zero(const Field& f, std::size_t rows, std::size_t cols) {
    return Mat(f, rows, cols);
  }
  static Mat identity(const Field& f, std::size_t n);
  static Mat scalar(const Field& f, std::size_t n, Elem lambda);
  /// Row-major integer literals reduced mod p.
  static Mat from_ints(const Field& f, std::size_t rows, std::size_t cols,
                       std::initializer_list<std::int64_t> values);
  static Mat from_rows(const Field& f, const std::vector<std::vector<std::int64_t>>& rows);
  /// Columns given as vectors of equal length `rows`.
  static Mat from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Elem& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Scalar get(std::size_t i, std::size_t j) const { return {field_, (*this)(i, j)}; }
  void set(std::size_t i, std::size_t j, const Scalar& s);

  std::span<const Elem> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  std::span<Elem> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  Vec column(std::size_t j) const;
  std::span<const Elem> data() const { return data_; }
  std::span<Elem> data() { return data_; }

  bool is_zero() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Elem> data_;
};

Mat operator+(const Mat& a, const Mat& b);
Mat operator-(const Mat& a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator-(const Mat& a);
Mat scale(Elem s, const Mat& a);
Mat scale(const Scalar& s, const Mat& a);
Vec apply(const Mat& a, std::span<const Elem> v);

Mat transpose(const Mat& m);
/// Entrywise involution.
Mat conjugate(const Mat& m);
/// Conjugate transpose, A* = conj(A)^T.
Mat star(const Mat& m);

Mat power(const Mat& m, std::size_t k);
Elem trace(const Mat& m);

/// Reduced row echelon form with the deterministic pivot rule: scan columns
/// left to right, take the first row at or below the current one with a
/// nonzero entry.
struct Echelon {
  Mat reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
Echelon rref(Mat m);

std::size_t rank(const Mat& m);
Elem det(const Mat& m);
bool is_invertible(const Mat& m);
/// Throws DimensionMismatch for non-square input, SingularMatrix if det = 0.
Mat inverse(const Mat& m);

/// Null space of `coeffs` (vectors x with coeffs * x = 0), returned as the
/// rows of the reduced echelon basis, so equal subspaces give equal output.
std::vector<Vec> solve_homogeneous(const Mat& coeffs);
/// Column-vector basis of the null space (cols() x k).
Mat kernel(const Mat& m);
/// Column basis of the column space, taken from the pivot columns.
Mat image(const Mat& m);
/// Reduced echelon basis (as rows) of the span of the given vectors.
std::vector<Vec> echelon_span(const Field& f, std::size_t dim, const std::vector<Vec>& vectors);
/// Solves a * x = b for one x, or nullopt when inconsistent.
std::optional<Vec> solve(const Mat& a, std::span<const Elem> b);

Mat direct_sum(const Mat& a, const Mat& b);
Mat direct_sum(const std::vector<Mat>& blocks, const Field& f);
/// Grid of blocks; heights agree along block rows, widths along block columns.
Mat block_assemble(const std::vector<std::vector<Mat>>& grid);
Mat slice(const Mat& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

void require_same_field(const Mat& a, const Mat& b, const char* what);

}  // namespace wildpairs
