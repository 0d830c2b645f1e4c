#pragma once

// Dense exact linear algebra over a prime field F_p.
//
// Row-vector convention: vectors are rows, a matrix acts on the right, and
// the composite "f then g" is product(F, G).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "diffmod/error.hpp"

namespace diffmod {

using Scalar = std::uint32_t;

namespace fp {

inline bool is_prime(Scalar p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (Scalar d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

inline Scalar add(Scalar a, Scalar b, Scalar p) {
  Scalar s = a + b;
  return s >= p ? s - p : s;
}
inline Scalar sub(Scalar a, Scalar b, Scalar p) { return a >= b ? a - b : a + p - b; }
inline Scalar neg(Scalar a, Scalar p) { return a == 0 ? 0 : p - a; }
inline Scalar mul(Scalar a, Scalar b, Scalar p) {
  return static_cast<Scalar>(static_cast<std::uint64_t>(a) * b % p);
}
inline Scalar inv(Scalar a, Scalar p) {
  // Extended Euclid; a must be nonzero mod p.
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (t < 0) t += p;
  return static_cast<Scalar>(t);
}
inline Scalar reduce(long long v, Scalar p) {
  long long r = v % static_cast<long long>(p);
  return static_cast<Scalar>(r < 0 ? r + p : r);
}

}  // namespace fp

class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, Scalar p) : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
    require(p < 65536 && fp::is_prime(p), ErrorKind::NotPrime,
            "modulus " + std::to_string(p) + " is not a prime below 2^16");
  }

  static Matrix zero(std::size_t rows, std::size_t cols, Scalar p) { return Matrix(rows, cols, p); }

  static Matrix identity(std::size_t n, Scalar p) {
    Matrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % p;
    return m;
  }

  /// Entries are reduced mod p; negative values are allowed.
  static Matrix from_rows(const std::vector<std::vector<long long>>& rows, Scalar p, std::size_t cols_if_empty = 0) {
    std::size_t c = rows.empty() ? cols_if_empty : rows.front().size();
    Matrix m(rows.size(), c, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      require(rows[i].size() == c, ErrorKind::DimensionMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m.data_[i * c + j] = fp::reduce(rows[i][j], p);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar modulus() const noexcept { return p_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Scalar operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, Scalar v) { data_[i * cols_ + j] = v % p_; }

  std::span<const Scalar> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
  std::span<Scalar> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  const std::vector<Scalar>& data() const noexcept { return data_; }

  bool is_zero() const {
    for (Scalar v : data_)
      if (v != 0) return false;
    return true;
  }

  std::vector<std::vector<long long>> to_rows() const {
    std::vector<std::vector<long long>> out(rows_, std::vector<long long>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.p_ == b.p_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Scalar p_ = 2;
  std::vector<Scalar> data_;
};

namespace detail {

inline void check_same_field(const Matrix& a, const Matrix& b) {
  require(a.modulus() == b.modulus(), ErrorKind::DimensionMismatch, "matrices over different fields");
}

// In-place reduced row echelon form restricted to the first `pivot_cols`
// columns (the remaining columns are carried along, e.g. an augmented
// right-hand side). Returns pivot columns.
inline std::vector<std::size_t> reduce_in_place(Matrix& m, std::size_t pivot_cols) {
  const Scalar p = m.modulus();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r) {
      auto a = m.row(sel), b = m.row(r);
      for (std::size_t j = c; j < cols; ++j) std::swap(a[j], b[j]);
    }
    auto pr = m.row(r);
    if (pr[c] != 1) {
      Scalar s = fp::inv(pr[c], p);
      for (std::size_t j = c; j < cols; ++j) pr[j] = fp::mul(pr[j], s, p);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto ri = m.row(i);
      Scalar f = ri[c];
      if (f == 0) continue;
      if (p == 2) {
        for (std::size_t j = c; j < cols; ++j) ri[j] ^= pr[j];
      } else {
        Scalar nf = p - f;
        for (std::size_t j = c; j < cols; ++j)
          if (pr[j] != 0) ri[j] = static_cast<Scalar>((ri[j] + static_cast<std::uint64_t>(nf) * pr[j]) % p);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

inline RrefResult rref(const Matrix& m) {
  RrefResult out{m, 0, {}};
  out.pivots = detail::reduce_in_place(out.reduced, m.cols());
  out.rank = out.pivots.size();
  return out;
}

inline std::size_t rank(const Matrix& m) {
  if (m.empty()) return 0;
  Matrix w = m;
  return detail::reduce_in_place(w, w.cols()).size();
}

inline Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows(), m.modulus());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m(i, j);
  return t;
}

inline Matrix product(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  require(a.cols() == b.rows(), ErrorKind::DimensionMismatch,
          "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  const Scalar p = a.modulus();
  Matrix c(a.rows(), b.cols(), p);
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      Scalar f = a(i, k);
      if (f == 0) continue;
      auto br = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += static_cast<std::uint64_t>(f) * br[j];
      if ((k & 0xff) == 0xff)
        for (auto& v : acc) v %= p;
    }
    auto cr = c.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) cr[j] = static_cast<Scalar>(acc[j] % p);
  }
  return c;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) { return product(a, b); }

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorKind::DimensionMismatch, "sum of mismatched shapes");
  Matrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto cr = c.row(i);
    auto br = b.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) cr[j] = fp::add(cr[j], br[j], a.modulus());
  }
  return c;
}

inline Matrix scale(const Matrix& a, Scalar s) {
  Matrix c = a;
  s %= a.modulus();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (auto& v : c.row(i)) v = fp::mul(v, s, a.modulus());
  return c;
}

inline Matrix operator-(const Matrix& a) { return scale(a, a.modulus() - 1); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return a + (-b); }

/// Left kernel: rows form a basis of { v : v * m = 0 }, in canonical
/// (free-coordinate) form.
inline Matrix kernel_basis(const Matrix& m) {
  const Scalar p = m.modulus();
  Matrix t = transpose(m);
  auto pivots = detail::reduce_in_place(t, t.cols());
  const std::size_t n = m.rows();
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix k(n - pivots.size(), n, p);
  std::size_t r = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    k.at(r, f) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) k.at(r, pivots[i]) = fp::neg(t(i, f), p);
    ++r;
  }
  return k;
}

/// Right null space: rows form a basis of { v : m * v^T = 0 }.
inline Matrix null_space(const Matrix& m) { return kernel_basis(transpose(m)); }

/// Solves x * a = b. Each row of x is the solution whose free coordinates
/// are zero. Returns nullopt when some row of b lies outside the row space
/// of a.
inline std::optional<Matrix> solve_through(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  require(a.cols() == b.cols(), ErrorKind::DimensionMismatch, "solve_through column mismatch");
  const Scalar p = a.modulus();
  const std::size_t n = a.rows(), k = b.rows(), c = a.cols();
  Matrix aug(c, n + k, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < c; ++j) aug.at(j, i) = a(i, j);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < c; ++j) aug.at(j, n + i) = b(i, j);
  auto pivots = detail::reduce_in_place(aug, n);
  for (std::size_t r = pivots.size(); r < c; ++r)
    for (std::size_t j = n; j < n + k; ++j)
      if (aug(r, j) != 0) return std::nullopt;
  Matrix x(k, n, p);
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t i = 0; i < k; ++i) x.at(i, pivots[r]) = aug(r, n + i);
  return x;
}

/// Nonzero rows of the reduced echelon form.
inline Matrix row_space_basis(const Matrix& m) {
  Matrix w = m;
  auto piv = detail::reduce_in_place(w, w.cols());
  Matrix out(piv.size(), m.cols(), m.modulus());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = w(i, j);
  return out;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto x = solve_through(m, Matrix::identity(m.rows(), m.modulus()));
  if (!x) return std::nullopt;
  if (!(product(m, *x) == Matrix::identity(m.rows(), m.modulus()))) return std::nullopt;
  return x;
}

inline Matrix hstack(std::span<const Matrix> ms) {
  require(!ms.empty(), ErrorKind::DimensionMismatch, "hstack of nothing");
  std::size_t rows = ms[0].rows(), cols = 0;
  for (const auto& m : ms) {
    detail::check_same_field(ms[0], m);
    require(m.rows() == rows, ErrorKind::DimensionMismatch, "hstack row mismatch");
    cols += m.cols();
  }
  Matrix out(rows, cols, ms[0].modulus());
  std::size_t off = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, off + j) = m(i, j);
    off += m.cols();
  }
  return out;
}

inline Matrix vstack(std::span<const Matrix> ms) {
  require(!ms.empty(), ErrorKind::DimensionMismatch, "vstack of nothing");
  std::size_t cols = ms[0].cols(), rows = 0;
  for (const auto& m : ms) {
    detail::check_same_field(ms[0], m);
    require(m.cols() == cols, ErrorKind::DimensionMismatch, "vstack column mismatch");
    rows += m.rows();
  }
  Matrix out(rows, cols, ms[0].modulus());
  std::size_t off = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < cols; ++j) out.at(off + i, j) = m(i, j);
    off += m.rows();
  }
  return out;
}

inline Matrix hstack(std::initializer_list<Matrix> ms) { return hstack(std::span<const Matrix>(ms.begin(), ms.size())); }
inline Matrix vstack(std::initializer_list<Matrix> ms) { return vstack(std::span<const Matrix>(ms.begin(), ms.size())); }

inline Matrix block_diag(std::span<const Matrix> ms) {
  require(!ms.empty(), ErrorKind::DimensionMismatch, "block_diag of nothing");
  std::size_t rows = 0, cols = 0;
  for (const auto& m : ms) {
    detail::check_same_field(ms[0], m);
    rows += m.rows();
    cols += m.cols();
  }
  Matrix out(rows, cols, ms[0].modulus());
  std::size_t ro = 0, co = 0;
  for (const auto& m : ms) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) out.at(ro + i, co + j) = m(i, j);
    ro += m.rows();
    co += m.cols();
  }
  return out;
}

inline Matrix block_diag(std::initializer_list<Matrix> ms) {
  return block_diag(std::span<const Matrix>(ms.begin(), ms.size()));
}

/// 2x2 block assembly [[a, b], [c, d]].
inline Matrix blocks2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
  return vstack({hstack({a, b}), hstack({c, d})});
}

inline Matrix submatrix(const Matrix& m, std::size_t r0, std::size_t rn, std::size_t c0, std::size_t cn) {
  require(r0 + rn <= m.rows() && c0 + cn <= m.cols(), ErrorKind::DimensionMismatch, "submatrix out of range");
  Matrix out(rn, cn, m.modulus());
  for (std::size_t i = 0; i < rn; ++i)
    for (std::size_t j = 0; j < cn; ++j) out.at(i, j) = m(r0 + i, c0 + j);
  return out;
}

inline Matrix row_vector(std::span<const Scalar> v, Scalar p) {
  Matrix out(1, v.size(), p);
  for (std::size_t j = 0; j < v.size(); ++j) out.at(0, j) = v[j] % p;
  return out;
}

}  // namespace diffmod
