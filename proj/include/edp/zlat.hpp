#pragma once

// Exact integer-lattice engine: Smith normal form, cokernels, p-indices of
// sublattices and membership in the image of a torus on (Q/Z)^d.
//
// Every entry is an arbitrary precision integer; nothing in this header uses
// fixed-width arithmetic on matrix entries.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "edp/error.hpp"

namespace edp {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

inline Int abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Euclidean remainder in [0, |m|).
inline Int mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += abs(m);
  return r;
}

/// Exponent of p in x; x must be nonzero.
inline unsigned p_valuation(Int x, const Int& p) {
  if (x == 0) fail(ErrorCode::InvalidInput, "p-adic valuation of zero");
  x = abs(x);
  unsigned v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

/// True iff n = p^k for some k >= 0.
inline bool is_power_of(Int n, const Int& p) {
  if (n <= 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

// ---------------------------------------------------------------------------
// Q/Z

/// An element of Q/Z stored as a reduced fraction num/den with 0 <= num < den.
class QZ {
 public:
  QZ() = default;
  QZ(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  QZ operator+(const QZ& o) const { return QZ(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
  QZ operator-(const QZ& o) const { return QZ(num_ * o.den_ - o.num_ * den_, den_ * o.den_); }
  QZ operator-() const { return QZ(-num_, den_); }
  QZ& operator+=(const QZ& o) { return *this = *this + o; }
  QZ& operator-=(const QZ& o) { return *this = *this - o; }
  friend QZ operator*(const Int& k, const QZ& x) { return QZ(k * x.num_, x.den_); }

  /// Order of the element in Q/Z.
  const Int& order() const { return den_; }

  friend bool operator==(const QZ& a, const QZ& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const QZ& a, const QZ& b) { return !(a == b); }
  friend bool operator<(const QZ& a, const QZ& b) { return a.num_ * b.den_ < b.num_ * a.den_; }

  std::string str() const { return num_ == 0 ? "0" : num_.str() + "/" + den_.str(); }
  friend std::ostream& operator<<(std::ostream& os, const QZ& x) { return os << x.str(); }

 private:
  void normalize() {
    if (den_ == 0) fail(ErrorCode::InvalidInput, "zero denominator in Q/Z element");
    if (den_ < 0) {
      den_ = -den_;
      num_ = -num_;
    }
    num_ = mod(num_, den_);
    Int g = gcd(num_, den_);
    if (num_ == 0) {
      den_ = 1;
    } else {
      num_ /= g;
      den_ /= g;
    }
  }

  Int num_ = 0;
  Int den_ = 1;
};

using QZVector = std::vector<QZ>;

inline bool is_zero(const QZVector& v) {
  return std::all_of(v.begin(), v.end(), [](const QZ& x) { return x.is_zero(); });
}

// ---------------------------------------------------------------------------
// Matrices

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) fail(ErrorCode::InvalidInput, "matrix entry count mismatch");
  }
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    for (const auto& r : rows) {
      if (r.size() != cols_) fail(ErrorCode::InvalidInput, "ragged matrix literal");
      entries_.insert(entries_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& columns, std::size_t height) {
    IntMatrix m(height, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != height) fail(ErrorCode::InvalidInput, "column length mismatch");
      for (std::size_t i = 0; i < height; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t width) {
    IntMatrix m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != width) fail(ErrorCode::InvalidInput, "row length mismatch");
      for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Int>& entries() const { return entries_; }

  Int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  IntVector row(std::size_t i) const {
    return IntVector(entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) fail(ErrorCode::InvalidInput, "matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Int& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend IntVector operator*(const IntMatrix& a, const IntVector& v) {
    if (a.cols_ != v.size()) fail(ErrorCode::InvalidInput, "matrix-vector shape mismatch");
    IntVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a(i, j) * v[j];
    return r;
  }

  friend QZVector operator*(const IntMatrix& a, const QZVector& v) {
    if (a.cols_ != v.size()) fail(ErrorCode::InvalidInput, "matrix-vector shape mismatch");
    QZVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j)
        if (a(i, j) != 0 && !v[j].is_zero()) r[i] += a(i, j) * v[j];
    return r;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }
  friend bool operator<(const IntMatrix& a, const IntMatrix& b) {
    return std::tie(a.rows_, a.cols_, a.entries_) < std::tie(b.rows_, b.cols_, b.entries_);
  }

  bool is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += k * (*this)(src, j);
  }
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += k * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> entries_;
};

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithDecomposition {
  IntMatrix D;
  IntMatrix U;  ///< rows x rows, unimodular
  IntMatrix V;  ///< cols x cols, unimodular
  IntMatrix U_inv;
  IntMatrix V_inv;
  std::vector<Int> invariant_factors;  ///< diagonal of D: nonzero entries, then zeros
  std::size_t rank = 0;
};

namespace detail {

// Position of the entry of smallest nonzero absolute value in the trailing
// block starting at (t, t); ties resolve to the first row, then first column.
inline std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(const IntMatrix& a, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Int best_abs;
  for (std::size_t i = t; i < a.rows(); ++i)
    for (std::size_t j = t; j < a.cols(); ++j) {
      const Int& x = a(i, j);
      if (x == 0) continue;
      Int ax = abs(x);
      if (!best || ax < best_abs) {
        best = {i, j};
        best_abs = ax;
      }
    }
  return best;
}

}  // namespace detail

/// U * M * V = D with D diagonal, d_i | d_{i+1}, all d_i >= 0.
inline SmithDecomposition smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(r), ui = IntMatrix::identity(r);
  IntMatrix v = IntMatrix::identity(c), vi = IntMatrix::identity(c);

  auto row_swap = [&](std::size_t x, std::size_t y) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
    ui.swap_cols(x, y);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
    vi.swap_rows(x, y);
  };
  // row[dst] += k row[src]; the inverse update is col[src] -= k col[dst].
  auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_row(dst, src, k);
    u.add_row(dst, src, k);
    ui.add_col(src, dst, -k);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& k) {
    a.add_col(dst, src, k);
    v.add_col(dst, src, k);
    vi.add_row(src, dst, -k);
  };

  std::size_t t = 0;
  const std::size_t n = std::min(r, c);
  for (; t < n; ++t) {
    auto pivot = detail::smallest_pivot(a, t);
    if (!pivot) break;
    row_swap(t, pivot->first);
    col_swap(t, pivot->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        row_add(i, t, -q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        col_add(j, t, -q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Bring the smallest remainder in row t / column t to the pivot.
        std::size_t bi = t, bj = t;
        Int best = abs(a(t, t));
        for (std::size_t i = t + 1; i < r; ++i)
          if (a(i, t) != 0 && abs(a(i, t)) < best) best = abs(a(i, t)), bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(t, j) != 0 && abs(a(t, j)) < best) best = abs(a(t, j)), bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Pivot must divide the rest of the trailing block.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < r && !bad_row; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      row_add(t, *bad_row, 1);
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      u.negate_row(t);
      for (std::size_t i = 0; i < r; ++i) ui(i, t) = -ui(i, t);
    }
  }

  SmithDecomposition out{a, u, v, ui, vi, {}, t};
  for (std::size_t i = 0; i < n; ++i) out.invariant_factors.push_back(a(i, i));
  return out;
}

inline std::size_t rank(const IntMatrix& m) { return smith_normal_form(m).rank; }

// ---------------------------------------------------------------------------
// Finite abelian groups

struct FiniteAbelianStructure {
  std::vector<Int> invariant_factors;  ///< each > 1, each dividing the next
  std::size_t free_rank = 0;

  bool is_finite() const { return free_rank == 0; }
  /// Order of the torsion part.
  Int torsion_order() const {
    Int o = 1;
    for (const auto& f : invariant_factors) o *= f;
    return o;
  }
  bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  friend bool operator==(const FiniteAbelianStructure&, const FiniteAbelianStructure&) = default;
};

/// Structure of Z^rows / (column lattice of M).
inline FiniteAbelianStructure cokernel_structure(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  FiniteAbelianStructure s;
  for (std::size_t i = 0; i < snf.rank; ++i)
    if (snf.invariant_factors[i] > 1) s.invariant_factors.push_back(snf.invariant_factors[i]);
  s.free_rank = m.rows() - snf.rank;
  return s;
}

/// Largest r such that (Z/p)^r embeds in the torsion part.
inline std::size_t p_rank(const FiniteAbelianStructure& s, const Int& p) {
  return static_cast<std::size_t>(
      std::count_if(s.invariant_factors.begin(), s.invariant_factors.end(), [&](const Int& f) { return f % p == 0; }));
}

/// p-adic valuation of [Z^d : span(vectors)]; nullopt when the span has rank < d.
inline std::optional<unsigned> sublattice_p_index(const std::vector<IntVector>& vectors, std::size_t d, const Int& p) {
  if (d == 0) return 0u;
  if (vectors.empty()) return std::nullopt;
  auto snf = smith_normal_form(IntMatrix::from_columns(vectors, d));
  if (snf.rank < d) return std::nullopt;
  unsigned v = 0;
  for (std::size_t i = 0; i < d; ++i) v += p_valuation(snf.invariant_factors[i], p);
  return v;
}

/// Whether v lies in W * (Q/Z)^d for the m x d integer matrix W.
inline bool torsion_image_membership(const QZVector& v, const IntMatrix& w) {
  if (v.size() != w.rows()) fail(ErrorCode::InvalidInput, "membership vector length mismatch");
  if (is_zero(v)) return true;
  auto snf = smith_normal_form(w);
  QZVector uv = snf.U * v;
  for (std::size_t i = snf.rank; i < uv.size(); ++i)
    if (!uv[i].is_zero()) return false;
  return true;
}

/// Precomputed reduction modulo the image of (Q/Z)^d under a fixed W.
/// Two vectors are congruent iff their keys agree.
class TorsionImageReducer {
 public:
  TorsionImageReducer() = default;
  explicit TorsionImageReducer(const IntMatrix& w) : rows_(w.rows()) {
    auto snf = smith_normal_form(w);
    u_ = std::move(snf.U);
    rank_ = snf.rank;
  }

  QZVector key(const QZVector& v) const {
    if (v.size() != rows_) fail(ErrorCode::InvalidInput, "reducer vector length mismatch");
    QZVector out;
    out.reserve(rows_ - rank_);
    for (std::size_t i = rank_; i < rows_; ++i) {
      QZ acc;
      for (std::size_t j = 0; j < rows_; ++j)
        if (u_(i, j) != 0 && !v[j].is_zero()) acc += u_(i, j) * v[j];
      out.push_back(acc);
    }
    return out;
  }

  bool contains(const QZVector& v) const { return is_zero(key(v)); }

 private:
  std::size_t rows_ = 0;
  std::size_t rank_ = 0;
  IntMatrix u_;
};

/// Basis of the (saturated) integer kernel {x : M x = 0}.
inline std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  auto snf = smith_normal_form(m);
  std::vector<IntVector> basis;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) basis.push_back(snf.V.column(j));
  return basis;
}

/// An integer solution of M x = b, if one exists (free coordinates set to 0).
inline std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) fail(ErrorCode::InvalidInput, "right-hand side length mismatch");
  auto snf = smith_normal_form(m);
  IntVector ub = snf.U * b;
  IntVector y(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < snf.rank) {
      if (ub[i] % snf.invariant_factors[i] != 0) return std::nullopt;
      y[i] = ub[i] / snf.invariant_factors[i];
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * y;
}

/// Determinant via fraction-free elimination (Bareiss).
inline Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::InvalidInput, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace edp
