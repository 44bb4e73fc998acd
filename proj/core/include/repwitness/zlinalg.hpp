#pragma once

// Exact integer linear algebra: Smith normal form and the exterior algebra
// over Z. Nothing in here touches floating point.

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace repwitness {

using Integer = boost::multiprecision::cpp_int;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Matrix whose j-th column is columns[j]; every column must have length `rows`.
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  IntMatrix transpose() const;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntVector operator*(const IntMatrix& a, const IntVector& v);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_rank.
struct SnfResult {
  IntMatrix U;
  IntMatrix V;
  IntMatrix D;
  std::size_t rank = 0;
  std::vector<Integer> divisors;

  /// Product of the elementary divisors: the order of the torsion part of coker M.
  Integer torsion_order() const;
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& m);

/// A Z-basis of {v : M v = 0}, read off from the trailing columns of V.
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// Sparse element of the k-th exterior power of Z^n. Basis k-vectors are keyed
/// by strictly increasing 0-based index tuples; zero coefficients are never stored.
class ExteriorElement {
 public:
  using Key = std::vector<std::size_t>;

  ExteriorElement(std::size_t degree, std::size_t rank);

  static ExteriorElement scalar(std::size_t rank, const Integer& value);
  static ExteriorElement vector(const IntVector& v);
  /// e_{i1} ^ ... ^ e_{ik}; indices need not be sorted (sign follows the
  /// permutation) and repeated indices give zero.
  static ExteriorElement basis(std::size_t rank, const std::vector<std::size_t>& indices);

  std::size_t degree() const noexcept { return degree_; }
  std::size_t rank() const noexcept { return rank_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const std::map<Key, Integer>& terms() const noexcept { return terms_; }

  Integer coefficient(const Key& sorted_indices) const;
  /// Adds `value` to the coefficient of a sorted key.
  void add_term(const Key& sorted_indices, const Integer& value);

  ExteriorElement& operator+=(const ExteriorElement& other);
  ExteriorElement& operator-=(const ExteriorElement& other);
  ExteriorElement& operator*=(const Integer& factor);
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
  friend ExteriorElement operator*(const Integer& f, ExteriorElement a) { return a *= f; }
  ExteriorElement operator-() const;
  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) = default;

  /// Human readable form, e.g. "x1^x3 + 2*x2^x4". `labels[i]` names basis
  /// vector i; defaults to e1, e2, ...
  std::string to_string(const std::vector<std::string>& labels = {}) const;

 private:
  std::size_t degree_;
  std::size_t rank_;
  std::map<Key, Integer> terms_;
};

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

/// The coefficient of e_1 ^ ... ^ e_n for an element of top degree.
Integer top_det(const ExteriorElement& a);

/// Image of `a` under the map induced on exterior powers by T: Z^n -> Z^m.
ExteriorElement push_forward(const ExteriorElement& a, const IntMatrix& t);

}  // namespace repwitness
