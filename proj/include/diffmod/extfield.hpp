#pragma once

// Arithmetic in a finite extension F_{p^k} of a prime field, used to test
// nonsingularity of generic linear combinations of matrices.

#include <cstdint>
#include <random>
#include <vector>

#include "diffmod/exactla.hpp"

namespace diffmod {

class ExtensionField {
 public:
  using Elem = std::vector<Scalar>;  // coefficients of 1, x, ..., x^{k-1}

  /// Picks the smallest prime degree k with p^k >= 2^30 and a random monic
  /// irreducible modulus of that degree.
  explicit ExtensionField(Scalar p, std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : p_(p) {
    k_ = 2;
    auto big_enough = [&] {
      std::uint64_t q = 1;
      for (std::size_t i = 0; i < k_; ++i) {
        q *= p_;
        if (q >= (std::uint64_t{1} << 30)) return true;
      }
      return false;
    };
    while (!fp::is_prime(static_cast<Scalar>(k_)) || !big_enough()) ++k_;
    order_ = 1;
    for (std::size_t i = 0; i < k_; ++i) order_ *= p_;
    std::mt19937_64 gen(seed);
    do {
      modulus_.assign(k_, 0);
      for (auto& c : modulus_) c = static_cast<Scalar>(gen() % p_);
    } while (!irreducible());
  }

  Scalar characteristic() const noexcept { return p_; }
  std::size_t degree() const noexcept { return k_; }

  Elem zero() const { return Elem(k_, 0); }
  Elem one() const {
    Elem e(k_, 0);
    e[0] = 1;
    return e;
  }
  Elem embed(Scalar s) const {
    Elem e(k_, 0);
    e[0] = s % p_;
    return e;
  }
  Elem random(std::mt19937_64& gen) const {
    Elem e(k_);
    for (auto& c : e) c = static_cast<Scalar>(gen() % p_);
    return e;
  }

  static bool is_zero(const Elem& a) {
    for (auto c : a)
      if (c) return false;
    return true;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = fp::add(a[i], b[i], p_);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = fp::sub(a[i], b[i], p_);
    return r;
  }
  void add_scaled(Elem& acc, const Elem& a, Scalar s) const {
    if (s == 0) return;
    for (std::size_t i = 0; i < k_; ++i) acc[i] = fp::add(acc[i], fp::mul(a[i], s, p_), p_);
  }

  Elem mul(const Elem& a, const Elem& b) const {
    std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
    for (std::size_t i = 0; i < k_; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    }
    for (std::size_t i = 2 * k_ - 1; i-- > k_;) {
      const std::uint64_t c = prod[i];
      if (!c) continue;
      // x^k = -(modulus_0 + ... + modulus_{k-1} x^{k-1})
      for (std::size_t j = 0; j < k_; ++j)
        prod[i - k_ + j] = (prod[i - k_ + j] + (p_ - modulus_[j]) % p_ * c) % p_;
      prod[i] = 0;
    }
    Elem r(k_);
    for (std::size_t i = 0; i < k_; ++i) r[i] = static_cast<Scalar>(prod[i]);
    return r;
  }

  Elem pow(Elem a, std::uint64_t e) const {
    Elem r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Elem inv(const Elem& a) const { return pow(a, order_ - 2); }

  /// Gaussian elimination on a square matrix.
  bool nonsingular(std::vector<std::vector<Elem>> m) const {
    const std::size_t n = m.size();
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && is_zero(m[piv][c])) ++piv;
      if (piv == n) return false;
      std::swap(m[piv], m[c]);
      Elem iv = inv(m[c][c]);
      for (std::size_t r = c + 1; r < n; ++r) {
        if (is_zero(m[r][c])) continue;
        Elem f = mul(m[r][c], iv);
        for (std::size_t j = c; j < n; ++j) m[r][j] = sub(m[r][j], mul(f, m[c][j]));
      }
    }
    return true;
  }

 private:
  bool irreducible() const {
    for (Scalar a = 0; a < p_; ++a) {
      // Horner evaluation of x^k + modulus(x) at a.
      Scalar v = 1;
      for (std::size_t i = k_; i-- > 0;) v = fp::add(fp::mul(v, a, p_), modulus_[i], p_);
      if (v == 0) return false;
    }
    // With k prime and no roots, f is irreducible iff x^{p^k} = x mod f.
    Elem x = zero();
    x[1] = 1;
    Elem r = x;
    for (std::size_t i = 0; i < k_; ++i) r = pow(r, p_);
    return r == x;
  }

  Scalar p_;
  std::size_t k_ = 2;
  std::uint64_t order_ = 0;
  Elem modulus_;  // low coefficients of the monic modulus
};

}  // namespace diffmod
