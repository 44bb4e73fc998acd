#include "repwitness/zlinalg.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "repwitness/errors.hpp"

namespace repwitness {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DomainError("IntMatrix: ragged initializer");
    for (long long v : r) entries_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVector>& columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw DomainError("IntMatrix::from_columns: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Integer& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
}

void IntMatrix::negate_row(std::size_t i) {
  for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
}

void IntMatrix::negate_col(std::size_t j) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("IntMatrix product: shape mismatch");
  IntMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

IntVector operator*(const IntMatrix& a, const IntVector& v) {
  if (a.cols_ != v.size()) throw DomainError("IntMatrix-vector product: shape mismatch");
  IntVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out[i] += a(i, j) * v[j];
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

Integer SnfResult::torsion_order() const {
  Integer t = 1;
  for (const auto& d : divisors) t *= d;
  return t;
}

namespace {

struct SnfWork {
  IntMatrix a;
  IntMatrix u;
  IntMatrix v;

  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
  }
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_row_multiple(dst, src, f);
    u.add_row_multiple(dst, src, f);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    a.add_col_multiple(dst, src, f);
    v.add_col_multiple(dst, src, f);
  }
};

// Smallest nonzero |entry| in the lower-right block starting at (t, t).
std::optional<std::pair<std::size_t, std::size_t>> min_block_entry(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer v = abs(a(i, j));
      if (!best || v < best_abs) {
        best = {i, j};
        best_abs = v;
        if (best_abs == 1) return best;
      }
    }
  return best;
}

// Moves the smallest nonzero entry of row t / column t (from t on) to (t, t).
void select_cross_pivot(SnfWork& w, std::size_t t) {
  std::size_t bi = t, bj = t;
  Integer best = w.a(t, t) == 0 ? Integer(-1) : Integer(abs(w.a(t, t)));
  for (std::size_t i = t + 1; i < w.a.rows(); ++i) {
    if (w.a(i, t) == 0) continue;
    Integer v = abs(w.a(i, t));
    if (best < 0 || v < best) best = v, bi = i, bj = t;
  }
  for (std::size_t j = t + 1; j < w.a.cols(); ++j) {
    if (w.a(t, j) == 0) continue;
    Integer v = abs(w.a(t, j));
    if (best < 0 || v < best) best = v, bi = t, bj = j;
  }
  w.swap_rows(t, bi);
  w.swap_cols(t, bj);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t t = 0;
  for (; t < limit; ++t) {
    auto pivot = min_block_entry(w.a, t);
    if (!pivot) break;
    w.swap_rows(t, pivot->first);
    w.swap_cols(t, pivot->second);

    for (;;) {
      select_cross_pivot(w, t);
      bool clear = true;
      const Integer p = w.a(t, t);
      for (std::size_t i = t + 1; i < w.a.rows(); ++i) {
        if (w.a(i, t) == 0) continue;
        w.add_row(i, t, -(w.a(i, t) / p));
        if (w.a(i, t) != 0) clear = false;
      }
      for (std::size_t j = t + 1; j < w.a.cols(); ++j) {
        if (w.a(t, j) == 0) continue;
        w.add_col(j, t, -(w.a(t, j) / p));
        if (w.a(t, j) != 0) clear = false;
      }
      if (!clear) continue;

      // Divisibility: pull an offending row into row t and go around again.
      bool divisible = true;
      for (std::size_t i = t + 1; i < w.a.rows() && divisible; ++i)
        for (std::size_t j = t + 1; j < w.a.cols(); ++j)
          if (w.a(i, j) % p != 0) {
            w.add_row(t, i, 1);
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (w.a(t, t) < 0) {
      w.a.negate_row(t);
      w.u.negate_row(t);
    }
  }

  SnfResult r;
  r.rank = t;
  for (std::size_t i = 0; i < t; ++i) r.divisors.push_back(w.a(i, i));
  r.D = std::move(w.a);
  r.U = std::move(w.u);
  r.V = std::move(w.v);
  return r;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  SnfResult snf = smith_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) basis.push_back(snf.V.column(j));
  return basis;
}

// ---------------------------------------------------------------------------
// Exterior algebra

namespace {

// Sign of the shuffle that sorts the concatenation of two sorted, disjoint keys.
int merge_sign(const ExteriorElement::Key& a, const ExteriorElement::Key& b) {
  std::size_t inversions = 0;
  std::size_t j = 0;
  for (std::size_t x : a) {
    while (j < b.size() && b[j] < x) ++j;
    inversions += j;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

bool disjoint(const ExteriorElement::Key& a, const ExteriorElement::Key& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return true;
}

}  // namespace

// degree > rank is allowed; such an element is always zero.
ExteriorElement::ExteriorElement(std::size_t degree, std::size_t rank) : degree_(degree), rank_(rank) {}

ExteriorElement ExteriorElement::scalar(std::size_t rank, const Integer& value) {
  ExteriorElement e(0, rank);
  e.add_term({}, value);
  return e;
}

ExteriorElement ExteriorElement::vector(const IntVector& v) {
  ExteriorElement e(1, v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e.add_term({i}, v[i]);
  return e;
}

ExteriorElement ExteriorElement::basis(std::size_t rank, const std::vector<std::size_t>& indices) {
  ExteriorElement e(indices.size(), rank);
  for (std::size_t i : indices)
    if (i >= rank) throw DomainError("ExteriorElement::basis: index out of range");
  Key key = indices;
  int sign = 1;
  // insertion sort, counting transpositions
  for (std::size_t i = 1; i < key.size(); ++i)
    for (std::size_t j = i; j > 0 && key[j - 1] > key[j]; --j) {
      std::swap(key[j - 1], key[j]);
      sign = -sign;
    }
  if (std::adjacent_find(key.begin(), key.end()) != key.end()) return e;
  e.add_term(key, sign);
  return e;
}

Integer ExteriorElement::coefficient(const Key& sorted_indices) const {
  auto it = terms_.find(sorted_indices);
  return it == terms_.end() ? Integer(0) : it->second;
}

void ExteriorElement::add_term(const Key& sorted_indices, const Integer& value) {
  if (value == 0) return;
  if (sorted_indices.size() != degree_) throw DomainError("ExteriorElement: key has wrong degree");
  auto [it, inserted] = terms_.try_emplace(sorted_indices, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

ExteriorElement& ExteriorElement::operator+=(const ExteriorElement& other) {
  if (other.degree_ != degree_ || other.rank_ != rank_)
    throw DomainError("ExteriorElement: adding elements of different degree or rank");
  for (const auto& [k, v] : other.terms_) add_term(k, v);
  return *this;
}

ExteriorElement& ExteriorElement::operator-=(const ExteriorElement& other) { return *this += -other; }

ExteriorElement& ExteriorElement::operator*=(const Integer& factor) {
  if (factor == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= factor;
  return *this;
}

ExteriorElement ExteriorElement::operator-() const {
  ExteriorElement e = *this;
  for (auto& [k, v] : e.terms_) v = -v;
  return e;
}

std::string ExteriorElement::to_string(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, coeff] : terms_) {
    Integer c = coeff;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    Integer a = abs(c);
    if (a != 1 || key.empty()) os << a << (key.empty() ? "" : "*");
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) os << "^";
      if (key[i] < labels.size()) os << labels[key[i]];
      else os << 'e' << key[i] + 1;
    }
  }
  return os.str();
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
  if (a.rank() != b.rank()) throw DomainError("wedge: ambient rank mismatch");
  ExteriorElement out(a.degree() + b.degree(), a.rank());
  if (out.degree() > out.rank()) return out;
  for (const auto& [ka, va] : a.terms())
    for (const auto& [kb, vb] : b.terms()) {
      if (!disjoint(ka, kb)) continue;
      ExteriorElement::Key k;
      k.reserve(ka.size() + kb.size());
      std::merge(ka.begin(), ka.end(), kb.begin(), kb.end(), std::back_inserter(k));
      Integer c = va * vb;
      if (merge_sign(ka, kb) < 0) c = -c;
      out.add_term(k, c);
    }
  return out;
}

Integer top_det(const ExteriorElement& a) {
  if (a.degree() != a.rank()) throw DomainError("top_det: element is not of top degree");
  ExteriorElement::Key k(a.rank());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = i;
  return a.coefficient(k);
}

ExteriorElement push_forward(const ExteriorElement& a, const IntMatrix& t) {
  if (t.cols() != a.rank()) throw DomainError("push_forward: matrix column count differs from ambient rank");
  std::vector<ExteriorElement> images;
  images.reserve(t.cols());
  for (std::size_t j = 0; j < t.cols(); ++j) images.push_back(ExteriorElement::vector(t.column(j)));

  ExteriorElement out(a.degree(), t.rows());
  for (const auto& [key, coeff] : a.terms()) {
    ExteriorElement term = ExteriorElement::scalar(t.rows(), coeff);
    for (std::size_t idx : key) {
      term = wedge(term, images[idx]);
      if (term.is_zero()) break;
    }
    if (!term.is_zero()) out += term;
  }
  return out;
}

}  // namespace repwitness
