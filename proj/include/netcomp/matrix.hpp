#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netcomp/algebra.hpp"

namespace netcomp {

// Dense row-major matrix of canonical element encodings. The algebra is
// supplied to each operation rather than stored.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Element> entries;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}
  Matrix(std::size_t r, std::size_t c, std::vector<Element> e);

  static Matrix identity(const Algebra& alg, std::size_t n);

  Element& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  Element operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
  std::span<const Element> row(std::size_t r) const {
    return {entries.data() + r * cols, cols};
  }

  bool is_zero() const;
  Matrix transpose() const;

  bool operator==(const Matrix&) const = default;
};

Matrix mat_mul(const Algebra& alg, const Matrix& a, const Matrix& b);
Matrix mat_add(const Algebra& alg, const Matrix& a, const Matrix& b);
Matrix mat_scale(const Algebra& alg, Element s, const Matrix& a);
// Row vector times matrix.
std::vector<Element> vec_mat(const Algebra& alg, std::span<const Element> v, const Matrix& m);

// Field-only operations (Gaussian elimination). Throw InvalidArgument over a
// non-field ring or for non-square input.
Element mat_det(const Algebra& alg, const Matrix& m);
std::optional<Matrix> mat_inverse(const Algebra& alg, const Matrix& m);
std::size_t mat_rank(const Algebra& alg, const Matrix& m);

// Some nonzero d with d * m = 0, or nullopt when the rows are independent.
// Deterministic: the first free variable of the reduced system is set to 1
// and all other free variables to 0.
std::optional<std::vector<Element>> mat_nullspace_vector(const Algebra& alg, const Matrix& m);

// Rows separated by ';', entries by single spaces: "1 0;0 1".
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols,
                    const Algebra& alg);

}  // namespace netcomp
