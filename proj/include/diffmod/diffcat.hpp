#pragma once

// Differential modules (M, e) with e^2 = 0, contractibles RD(X), their hom
// spaces, and the identification with modules over A[d]/(d^2).

#include <cstdint>
#include <optional>
#include <vector>

#include "diffmod/error.hpp"
#include "diffmod/exactla.hpp"
#include "diffmod/modrep.hpp"

namespace diffmod {

class DifferentialModule {
 public:
  const Representation& underlying() const noexcept { return m_; }
  const ModuleMorphism& epsilon() const noexcept { return e_; }
  const AlgebraPtr& algebra() const noexcept { return m_.algebra(); }
  std::size_t total_dim() const noexcept { return m_.total_dim(); }

  friend DifferentialModule make_differential(const Representation& m, const ModuleMorphism& e);
  friend DifferentialModule make_differential_trusted(const Representation& m, const ModuleMorphism& e);

  friend bool operator==(const DifferentialModule& a, const DifferentialModule& b) {
    return a.m_ == b.m_ && a.e_ == b.e_;
  }

 private:
  DifferentialModule(Representation m, ModuleMorphism e) : m_(std::move(m)), e_(std::move(e)) {}
  Representation m_;
  ModuleMorphism e_;
};

inline DifferentialModule make_differential(const Representation& m, const ModuleMorphism& e) {
  require(e.source() == m && e.target() == m, ErrorKind::NotEndomorphism, "differential must be an endomorphism of M");
  require(compose(e, e).is_zero(), ErrorKind::NotSquareZero, "differential does not square to zero");
  return DifferentialModule(m, e);
}

inline DifferentialModule make_differential_trusted(const Representation& m, const ModuleMorphism& e) {
  return DifferentialModule(m, e);
}

inline DifferentialModule zero_differential(const Representation& m) {
  return make_differential_trusted(m, ModuleMorphism::zero(m, m));
}

class DiffMorphism {
 public:
  DiffMorphism(DifferentialModule source, DifferentialModule target, ModuleMorphism map)
      : src_(std::move(source)), tgt_(std::move(target)), map_(std::move(map)) {
    require(map_.source() == src_.underlying() && map_.target() == tgt_.underlying(), ErrorKind::DimensionMismatch,
            "map does not run between the underlying modules");
    require(compose(src_.epsilon(), map_) == compose(map_, tgt_.epsilon()), ErrorKind::NotMorphism,
            "map does not intertwine the differentials");
  }

  static DiffMorphism trusted(DifferentialModule source, DifferentialModule target, ModuleMorphism map) {
    return DiffMorphism(std::move(source), std::move(target), std::move(map), 0);
  }

  const DifferentialModule& source() const noexcept { return src_; }
  const DifferentialModule& target() const noexcept { return tgt_; }
  const ModuleMorphism& map() const noexcept { return map_; }

 private:
  DiffMorphism(DifferentialModule s, DifferentialModule t, ModuleMorphism m, int)
      : src_(std::move(s)), tgt_(std::move(t)), map_(std::move(m)) {}
  DifferentialModule src_;
  DifferentialModule tgt_;
  ModuleMorphism map_;
};

inline DiffMorphism compose(const DiffMorphism& f, const DiffMorphism& g) {
  return DiffMorphism::trusted(f.source(), g.target(), compose(f.map(), g.map()));
}

/// (X (+) X, [[0,0],[1,0]]): the second summand maps identically onto the first.
inline DifferentialModule contractible(const Representation& x) {
  const Scalar p = x.modulus();
  Representation xx = direct_sum_module(x, x);
  std::vector<Matrix> maps;
  for (auto d : x.dims()) {
    Matrix z(d, d, p);
    maps.push_back(blocks2x2(z, z, Matrix::identity(d, p), z));
  }
  return make_differential_trusted(xx, ModuleMorphism::trusted(xx, xx, std::move(maps)));
}

inline bool is_contractible_shape(const DifferentialModule& d) {
  const auto& dims = d.underlying().dims();
  for (auto n : dims)
    if (n % 2) return false;
  std::vector<std::size_t> half;
  for (auto n : dims) half.push_back(n / 2);
  const Scalar p = d.underlying().modulus();
  for (std::size_t v = 0; v < dims.size(); ++v) {
    Matrix z(half[v], half[v], p);
    if (!(d.epsilon().map(v) == blocks2x2(z, z, Matrix::identity(half[v], p), z))) return false;
  }
  return true;
}

/// Basis of the morphisms M1 -> M2 intertwining the differentials.
inline std::vector<DiffMorphism> hom_diff(const DifferentialModule& d1, const DifferentialModule& d2) {
  require(d1.underlying().same_algebra(d2.underlying()), ErrorKind::AlgebraMismatch,
          "hom between differential modules over different algebras");
  auto h = hom_basis(d1.underlying(), d2.underlying());
  std::vector<DiffMorphism> out;
  if (h.empty()) return out;
  const Scalar p = d1.underlying().modulus();
  const std::size_t w = flat_width(d1.underlying(), d2.underlying());
  std::vector<ModuleMorphism> defects;
  for (const auto& f : h) defects.push_back(compose(d1.epsilon(), f) - compose(f, d2.epsilon()));
  Matrix k = kernel_basis(flatten_all(defects, w, p));
  for (std::size_t r = 0; r < k.rows(); ++r) {
    std::vector<Scalar> c(k.row(r).begin(), k.row(r).end());
    out.push_back(DiffMorphism::trusted(d1, d2, combine(h, c)));
  }
  return out;
}

inline std::size_t hom_diff_dim(const DifferentialModule& d1, const DifferentialModule& d2) {
  return hom_diff(d1, d2).size();
}

/// X when d is literally RD(X): epsilon of contractible shape and every arrow
/// acting by the same block on both summands.
inline std::optional<Representation> contractible_base(const DifferentialModule& d) {
  if (!is_contractible_shape(d)) return std::nullopt;
  const Representation& m = d.underlying();
  const auto& arrows = m.algebra()->quiver().arrows();
  std::vector<std::size_t> half;
  for (auto n : m.dims()) half.push_back(n / 2);
  std::vector<Matrix> actions;
  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const std::size_t s = half[arrows[a].source], t = half[arrows[a].target];
    const Matrix& act = m.action(a);
    Matrix top = submatrix(act, 0, s, 0, t);
    if (!(act == blocks2x2(top, Matrix(s, t, m.modulus()), Matrix(s, t, m.modulus()), top))) return std::nullopt;
    actions.push_back(std::move(top));
  }
  return Representation::trusted(m.algebra(), std::move(half), std::move(actions));
}

struct ParametrizedHom {
  std::vector<DiffMorphism> basis;
  std::vector<ModuleMorphism> parametrization;
};

/// The map D -> RD(X) determined by g : M -> X, namely (g, e g).
inline DiffMorphism map_to_contractible(const DifferentialModule& d, const DifferentialModule& rdx,
                                        const ModuleMorphism& g) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < g.maps().size(); ++v)
    maps.push_back(hstack({g.map(v), product(d.epsilon().map(v), g.map(v))}));
  return DiffMorphism::trusted(d, rdx, ModuleMorphism::trusted(d.underlying(), rdx.underlying(), std::move(maps)));
}

/// The map RD(X) -> D determined by g : X -> M, namely (g e ; g).
inline DiffMorphism map_from_contractible(const DifferentialModule& rdx, const DifferentialModule& d,
                                          const ModuleMorphism& g) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < g.maps().size(); ++v)
    maps.push_back(vstack({product(g.map(v), d.epsilon().map(v)), g.map(v)}));
  return DiffMorphism::trusted(rdx, d, ModuleMorphism::trusted(rdx.underlying(), d.underlying(), std::move(maps)));
}

inline ParametrizedHom hom_to_contractible(const DifferentialModule& d, const Representation& x) {
  ParametrizedHom out;
  DifferentialModule rdx = contractible(x);
  out.parametrization = hom_basis(d.underlying(), x);
  for (const auto& g : out.parametrization) out.basis.push_back(map_to_contractible(d, rdx, g));
  return out;
}

inline ParametrizedHom hom_from_contractible(const Representation& x, const DifferentialModule& d) {
  ParametrizedHom out;
  DifferentialModule rdx = contractible(x);
  out.parametrization = hom_basis(x, d.underlying());
  for (const auto& g : out.parametrization) out.basis.push_back(map_from_contractible(rdx, d, g));
  return out;
}

/// (D M, D e) over the opposite algebra.
inline DifferentialModule dualize(const DifferentialModule& d) {
  return make_differential_trusted(dualize(d.underlying()), dualize(d.epsilon()));
}

/// D f : D(target) -> D(source).
inline DiffMorphism dualize(const DiffMorphism& f) {
  return DiffMorphism::trusted(dualize(f.target()), dualize(f.source()), dualize(f.map()));
}

// ---------------------------------------------------------------------------
// Modules over the dual-numbers extension

inline Representation to_lambda_module(const DifferentialModule& d) {
  const AlgebraPtr& a = d.algebra();
  AlgebraPtr lambda = a->dual_numbers();
  std::vector<Matrix> actions = d.underlying().actions();
  for (std::size_t v = 0; v < a->vertex_count(); ++v) actions.push_back(d.epsilon().map(v));
  return Representation::trusted(lambda, d.underlying().dims(), std::move(actions));
}

inline ModuleMorphism to_lambda_morphism(const DiffMorphism& f) {
  return ModuleMorphism::trusted(to_lambda_module(f.source()), to_lambda_module(f.target()), f.map().maps());
}

inline DifferentialModule from_lambda_module(const Representation& m) {
  const AlgebraPtr& lambda = m.algebra();
  require(lambda->is_dual_numbers_extension(), ErrorKind::AlgebraMismatch, "module is not over a dual-numbers extension");
  AlgebraPtr a = lambda->base();
  require(a != nullptr, ErrorKind::InvalidInput, "base algebra of the dual-numbers extension is no longer alive");
  std::vector<Matrix> actions(m.actions().begin(), m.actions().begin() + static_cast<long>(a->arrow_count()));
  Representation under = Representation::trusted(a, m.dims(), std::move(actions));
  std::vector<Matrix> eps;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) eps.push_back(m.action(lambda->d_loop(v)));
  ModuleMorphism e = ModuleMorphism::trusted(under, under, std::move(eps));
  require(compose(e, e).is_zero(), ErrorKind::NotSquareZero, "d-action does not square to zero");
  return make_differential_trusted(under, e);
}

inline DiffMorphism from_lambda_morphism(const ModuleMorphism& f) {
  return DiffMorphism::trusted(from_lambda_module(f.source()), from_lambda_module(f.target()),
                               ModuleMorphism::trusted(from_lambda_module(f.source()).underlying(),
                                                       from_lambda_module(f.target()).underlying(), f.maps()));
}

// ---------------------------------------------------------------------------
// Enumeration of differentials on a fixed module

struct EnumerationOptions {
  std::uint64_t bound = std::uint64_t{1} << 20;
};

/// Every e in End(M) with e^2 = 0, in lexicographic order of its coefficient
/// vector over hom_basis(M, M).
inline std::vector<DifferentialModule> enumerate_differentials(const Representation& m,
                                                               const EnumerationOptions& opts = {}) {
  const Scalar p = m.modulus();
  auto h = hom_basis(m, m);
  const std::size_t k = h.size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < k; ++i) {
    require(total <= opts.bound / p, ErrorKind::EnumerationBoundExceeded,
            "p^dim End(M) exceeds the enumeration bound of " + std::to_string(opts.bound));
    total *= p;
  }
  std::vector<DifferentialModule> out;
  const std::size_t w = flat_width(m, m);
  std::vector<std::vector<Scalar>> flat;
  for (const auto& f : h) flat.push_back(f.flatten());
  std::vector<std::size_t> off{0};
  for (auto d : m.dims()) off.push_back(off.back() + d * d);

  std::vector<Scalar> cur(w, 0), coeffs(k, 0);
  auto square_zero = [&]() {
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
      const std::size_t n = m.dim(v);
      const Scalar* e = cur.data() + off[v];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          std::uint64_t s = 0;
          for (std::size_t t = 0; t < n; ++t) s += std::uint64_t(e[i * n + t]) * e[t * n + j];
          if (s % p) return false;
        }
    }
    return true;
  };
  auto emit = [&]() {
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < m.dims().size(); ++v) {
      Matrix e(m.dim(v), m.dim(v), p);
      for (std::size_t i = 0; i < m.dim(v) * m.dim(v); ++i) e.at(i / m.dim(v), i % m.dim(v)) = cur[off[v] + i];
      maps.push_back(std::move(e));
    }
    out.push_back(make_differential_trusted(m, ModuleMorphism::trusted(m, m, std::move(maps))));
  };
  for (std::uint64_t step = 0; step < total; ++step) {
    if (square_zero()) emit();
    // Odometer on the coefficients; a wrap adds p * h_i = 0, so every digit
    // change is a single addition of its basis vector.
    for (std::size_t i = k; i-- > 0;) {
      const auto& fi = flat[i];
      for (std::size_t t = 0; t < w; ++t)
        if (fi[t]) cur[t] = fp::add(cur[t], fi[t], p);
      if (++coeffs[i] < p) break;
      coeffs[i] = 0;
    }
  }
  return out;
}

}  // namespace diffmod
