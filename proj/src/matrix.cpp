#include "wildpairs/matrix.hpp"

#include <string>
#include <utility>

namespace wildpairs {

namespace {

std::string extents(const Mat& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

void require_same_field(const Mat& a, const Mat& b, const char* what) {
  if (!(a.field() == b.field()))
    throw FieldMismatch(std::string(what) + ": matrices over different fields");
}

Mat Mat::identity(const Field& f, std::size_t n) { return scalar(f, n, f.one()); }

Mat Mat::scalar(const Field& f, std::size_t n, Elem lambda) {
  Mat m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = lambda;
  return m;
}

Mat Mat::from_ints(const Field& f, std::size_t rows, std::size_t cols,
                   std::initializer_list<std::int64_t> values) {
  if (values.size() != rows * cols)
    throw DimensionMismatch("from_ints: expected " + std::to_string(rows * cols) +
                            " values, got " + std::to_string(values.size()));
  Mat m(f, rows, cols);
  std::size_t k = 0;
  for (auto v : values) m.data_[k++] = f.from_int(v);
  return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<std::vector<std::int64_t>>& rows) {
  std::size_t c = rows.empty() ? 0 : rows.front().size();
  Mat m(f, rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DimensionMismatch("from_rows: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
  }
  return m;
}

Mat Mat::from_columns(const Field& f, std::size_t rows, const std::vector<Vec>& cols) {
  Mat m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw DimensionMismatch("from_columns: column length");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

void Mat::set(std::size_t i, std::size_t j, const Scalar& s) {
  if (!(s.field() == field_)) throw FieldMismatch("set: scalar from another field");
  (*this)(i, j) = s.elem();
}

Vec Mat::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

bool Mat::is_zero() const {
  for (const auto& e : data_)
    if (e.c0 != 0 || e.c1 != 0) return false;
  return true;
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_field(a, b, "add");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("add: " + extents(a) + " vs " + extents(b));
  Mat r(a.field(), a.rows(), a.cols());
  const Field& f = a.field();
  for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = f.add(a.data()[k], b.data()[k]);
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_field(a, b, "sub");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("sub: " + extents(a) + " vs " + extents(b));
  Mat r(a.field(), a.rows(), a.cols());
  const Field& f = a.field();
  for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = f.sub(a.data()[k], b.data()[k]);
  return r;
}

Mat operator-(const Mat& a) {
  Mat r(a.field(), a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = a.field().neg(a.data()[k]);
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_field(a, b, "mul");
  if (a.cols() != b.rows())
    throw DimensionMismatch("mul: " + extents(a) + " * " + extents(b));
  const Field& f = a.field();
  Mat r(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Elem aik = a(i, k);
      if (f.is_zero(aik)) continue;
      auto brow = b.row(k);
      auto rrow = r.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j)
        rrow[j] = f.add(rrow[j], f.mul(aik, brow[j]));
    }
  return r;
}

Mat scale(Elem s, const Mat& a) {
  Mat r(a.field(), a.rows(), a.cols());
  for (std::size_t k = 0; k < a.data().size(); ++k) r.data()[k] = a.field().mul(s, a.data()[k]);
  return r;
}

Mat scale(const Scalar& s, const Mat& a) {
  if (!(s.field() == a.field())) throw FieldMismatch("scale: scalar from another field");
  return scale(s.elem(), a);
}

Vec apply(const Mat& a, std::span<const Elem> v) {
  if (v.size() != a.cols()) throw DimensionMismatch("apply: vector length");
  const Field& f = a.field();
  Vec r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem s = f.zero();
    for (std::size_t j = 0; j < a.cols(); ++j) s = f.add(s, f.mul(a(i, j), v[j]));
    r[i] = s;
  }
  return r;
}

Mat transpose(const Mat& m) {
  Mat r(m.field(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
  return r;
}

Mat conjugate(const Mat& m) {
  Mat r(m.field(), m.rows(), m.cols());
  for (std::size_t k = 0; k < m.data().size(); ++k) r.data()[k] = m.field().conj(m.data()[k]);
  return r;
}

Mat star(const Mat& m) {
  Mat r(m.field(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m.field().conj(m(i, j));
  return r;
}

Mat power(const Mat& m, std::size_t k) {
  if (!m.is_square()) throw DimensionMismatch("power: non-square " + extents(m));
  Mat result = Mat::identity(m.field(), m.rows());
  Mat base = m;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Elem trace(const Mat& m) {
  if (!m.is_square()) throw DimensionMismatch("trace: non-square " + extents(m));
  Elem s = m.field().zero();
  for (std::size_t i = 0; i < m.rows(); ++i) s = m.field().add(s, m(i, i));
  return s;
}

Echelon rref(Mat m) {
  const Field& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && f.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    Elem inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      Elem factor = m(i, c);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Elem det(const Mat& m0) {
  if (!m0.is_square()) throw DimensionMismatch("det: non-square " + extents(m0));
  const Field& f = m0.field();
  Mat m = m0;
  std::size_t n = m.rows();
  Elem d = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && f.is_zero(m(piv, c))) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = f.neg(d);
    }
    d = f.mul(d, m(c, c));
    Elem inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      Elem factor = f.mul(m(i, c), inv);
      if (f.is_zero(factor)) continue;
      for (std::size_t j = c; j < n; ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(c, j)));
    }
  }
  return d;
}

bool is_invertible(const Mat& m) { return m.is_square() && rank(m) == m.rows(); }

Mat inverse(const Mat& m) {
  if (!m.is_square()) throw DimensionMismatch("inverse: non-square " + extents(m));
  std::size_t n = m.rows();
  Echelon e = rref(hstack(m, Mat::identity(m.field(), n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1))
    throw SingularMatrix("inverse: matrix is singular");
  return slice(e.reduced, 0, n, n, n);
}

std::vector<Vec> solve_homogeneous(const Mat& coeffs) {
  const Field& f = coeffs.field();
  Echelon e = rref(coeffs);
  std::size_t n = coeffs.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, f.zero());
    v[free] = f.one();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = f.neg(e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return echelon_span(f, n, basis);
}

std::vector<Vec> echelon_span(const Field& f, std::size_t dim, const std::vector<Vec>& vectors) {
  Mat m(f, vectors.size(), dim);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw DimensionMismatch("echelon_span: vector length");
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = vectors[i][j];
  }
  Echelon e = rref(std::move(m));
  std::vector<Vec> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    auto row = e.reduced.row(r);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

Mat kernel(const Mat& m) { return Mat::from_columns(m.field(), m.cols(), solve_homogeneous(m)); }

Mat image(const Mat& m) {
  Echelon e = rref(m);
  std::vector<Vec> cols;
  for (auto c : e.pivots) cols.push_back(m.column(c));
  return Mat::from_columns(m.field(), m.rows(), cols);
}

std::optional<Vec> solve(const Mat& a, std::span<const Elem> b) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: right-hand side length");
  Mat aug(a.field(), a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Echelon e = rref(std::move(aug));
  Vec x(a.cols(), a.field().zero());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  require_same_field(a, b, "direct_sum");
  Mat r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, a.cols() + j) = b(i, j);
  return r;
}

Mat direct_sum(const std::vector<Mat>& blocks, const Field& f) {
  Mat r(f, 0, 0);
  for (const auto& b : blocks) r = direct_sum(r, b);
  return r;
}

Mat block_assemble(const std::vector<std::vector<Mat>>& grid) {
  if (grid.empty() || grid.front().empty())
    throw DimensionMismatch("block_assemble: empty grid");
  const Field& f = grid.front().front().field();
  std::size_t bc = grid.front().size();
  std::vector<std::size_t> heights, widths(bc);
  for (std::size_t j = 0; j < bc; ++j) widths[j] = grid.front()[j].cols();
  for (const auto& row : grid) {
    if (row.size() != bc) throw DimensionMismatch("block_assemble: ragged grid");
    heights.push_back(row.front().rows());
    for (std::size_t j = 0; j < bc; ++j) {
      if (!(row[j].field() == f)) throw FieldMismatch("block_assemble: mixed fields");
      if (row[j].rows() != heights.back() || row[j].cols() != widths[j])
        throw DimensionMismatch("block_assemble: block " + extents(row[j]) +
                                " does not fit its row/column");
    }
  }
  std::size_t total_r = 0, total_c = 0;
  for (auto h : heights) total_r += h;
  for (auto w : widths) total_c += w;
  Mat r(f, total_r, total_c);
  std::size_t r0 = 0;
  for (std::size_t bi = 0; bi < grid.size(); ++bi) {
    std::size_t c0 = 0;
    for (std::size_t bj = 0; bj < bc; ++bj) {
      const Mat& b = grid[bi][bj];
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) r(r0 + i, c0 + j) = b(i, j);
      c0 += widths[bj];
    }
    r0 += heights[bi];
  }
  return r;
}

Mat slice(const Mat& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > m.rows() || c0 + cols > m.cols())
    throw DimensionMismatch("slice out of range of " + extents(m));
  Mat r(m.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r(i, j) = m(r0 + i, c0 + j);
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  require_same_field(a, b, "hstack");
  if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row counts differ");
  Mat r(a.field(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

Mat vstack(const Mat& a, const Mat& b) {
  require_same_field(a, b, "vstack");
  if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column counts differ");
  Mat r(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

}  // namespace wildpairs
