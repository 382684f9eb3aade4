#include "netcomp/matrix.hpp"

#include <algorithm>
#include <sstream>

#include "netcomp/error.hpp"

namespace netcomp {

Matrix::Matrix(std::size_t r, std::size_t c, std::vector<Element> e)
    : rows(r), cols(c), entries(std::move(e)) {
  if (entries.size() != rows * cols) throw InvalidArgument("matrix entry count mismatch");
}

Matrix Matrix::identity(const Algebra& alg, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = alg.one();
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](Element e) { return e == 0; });
}

Matrix Matrix::transpose() const {
  Matrix t(cols, rows);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix mat_mul(const Algebra& alg, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw InvalidArgument("matrix dimension mismatch in product");
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const Element x = a(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        out(i, j) = alg.add(out(i, j), alg.mul(x, b(k, j)));
    }
  return out;
}

Matrix mat_add(const Algebra& alg, const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) throw InvalidArgument("matrix dimension mismatch in sum");
  Matrix out(a.rows, a.cols);
  for (std::size_t i = 0; i < a.entries.size(); ++i)
    out.entries[i] = alg.add(a.entries[i], b.entries[i]);
  return out;
}

Matrix mat_scale(const Algebra& alg, Element s, const Matrix& a) {
  Matrix out = a;
  for (auto& e : out.entries) e = alg.mul(s, e);
  return out;
}

std::vector<Element> vec_mat(const Algebra& alg, std::span<const Element> v, const Matrix& m) {
  if (v.size() != m.rows) throw InvalidArgument("vector length does not match matrix rows");
  std::vector<Element> out(m.cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j) out[j] = alg.add(out[j], alg.mul(v[i], m(i, j)));
  }
  return out;
}

namespace {

void require_field(const Algebra& alg, const char* op) {
  if (!alg.is_field())
    throw InvalidArgument(std::string(op) + " requires a field, got " + alg.spec());
}

struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
  Element det_factor;  // product of pivots with sign of swaps
};

// Reduced row echelon form; tracks the determinant for square input.
Echelon rref(const Algebra& alg, Matrix m) {
  Echelon e{std::move(m), {}, alg.one()};
  Matrix& a = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < a.cols; ++j) std::swap(a(pivot, j), a(row, j));
      e.det_factor = alg.neg(e.det_factor);
    }
    const Element p = a(row, col);
    e.det_factor = alg.mul(e.det_factor, p);
    const Element inv = *alg.inverse(p);
    for (std::size_t j = 0; j < a.cols; ++j) a(row, j) = alg.mul(a(row, j), inv);
    for (std::size_t r = 0; r < a.rows; ++r) {
      if (r == row || a(r, col) == 0) continue;
      const Element f = a(r, col);
      for (std::size_t j = 0; j < a.cols; ++j) a(r, j) = alg.sub(a(r, j), alg.mul(f, a(row, j)));
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

Element mat_det(const Algebra& alg, const Matrix& m) {
  require_field(alg, "determinant");
  if (m.rows != m.cols) throw InvalidArgument("determinant requires a square matrix");
  const Echelon e = rref(alg, m);
  return e.pivot_cols.size() == m.rows ? e.det_factor : 0;
}

std::optional<Matrix> mat_inverse(const Algebra& alg, const Matrix& m) {
  require_field(alg, "inverse");
  if (m.rows != m.cols) throw InvalidArgument("inverse requires a square matrix");
  const std::size_t n = m.rows;
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = alg.one();
  }
  const Echelon e = rref(alg, aug);
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::size_t mat_rank(const Algebra& alg, const Matrix& m) {
  require_field(alg, "rank");
  return rref(alg, m).pivot_cols.size();
}

std::optional<std::vector<Element>> mat_nullspace_vector(const Algebra& alg, const Matrix& m) {
  require_field(alg, "nullspace");
  // d M = 0  <=>  M^t d^t = 0: solve the right nullspace of the transpose.
  const Echelon e = rref(alg, m.transpose());
  const std::size_t n = m.rows;
  if (e.pivot_cols.size() == n) return std::nullopt;
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::size_t free_col = 0;
  while (is_pivot[free_col]) ++free_col;
  std::vector<Element> d(n, 0);
  d[free_col] = alg.one();
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
    d[e.pivot_cols[r]] = alg.neg(e.reduced(r, free_col));
  return d;
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (r) out << ';';
    for (std::size_t c = 0; c < m.cols; ++c) {
      if (c) out << ' ';
      out << m(r, c);
    }
  }
  return out.str();
}

Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols,
                    const Algebra& alg) {
  Matrix m(rows, cols);
  std::size_t r = 0;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    const std::string row_text = text.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    if (r >= rows) throw ParseError("matrix has more than " + std::to_string(rows) + " rows: '" + text + "'");
    std::istringstream in(row_text);
    std::string tok;
    std::size_t c = 0;
    while (in >> tok) {
      if (c >= cols) throw ParseError("matrix row has more than " + std::to_string(cols) + " entries: '" + text + "'");
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        throw ParseError("malformed matrix entry '" + tok + "'");
      }
      if (used != tok.size()) throw ParseError("malformed matrix entry '" + tok + "'");
      if (v >= alg.size()) throw ParseError("matrix entry " + tok + " is not an element of " + alg.spec());
      m(r, c++) = static_cast<Element>(v);
    }
    if (c != cols) throw ParseError("matrix row has " + std::to_string(c) + " entries, expected " + std::to_string(cols) + ": '" + text + "'");
    ++r;
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  if (r != rows) throw ParseError("matrix has " + std::to_string(r) + " rows, expected " + std::to_string(rows) + ": '" + text + "'");
  return m;
}

}  // namespace netcomp
