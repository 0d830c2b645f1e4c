#pragma once

// Finite-dimensional right modules over a bound quiver algebra, presented as
// quiver representations: a vector space per vertex and a matrix per arrow
// (shape dims[source] x dims[target]).

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "diffmod/error.hpp"
#include "diffmod/exactla.hpp"
#include "diffmod/extfield.hpp"
#include "diffmod/quiveralg.hpp"

namespace diffmod {

class Representation {
  struct Data {
    AlgebraPtr algebra;
    std::vector<std::size_t> dims;
    std::vector<Matrix> actions;
  };

 public:
  Representation(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> actions)
      : d_(std::make_shared<Data>(Data{std::move(algebra), std::move(dims), std::move(actions)})) {
    validate();
  }

  /// Skips validation; for constructions that are correct by design.
  static Representation trusted(AlgebraPtr algebra, std::vector<std::size_t> dims, std::vector<Matrix> actions) {
    return Representation(std::make_shared<Data>(Data{std::move(algebra), std::move(dims), std::move(actions)}));
  }

  static Representation zero(const AlgebraPtr& algebra) {
    std::vector<std::size_t> dims(algebra->vertex_count(), 0);
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < algebra->arrow_count(); ++a) actions.emplace_back(0, 0, algebra->modulus());
    return trusted(algebra, dims, actions);
  }

  const AlgebraPtr& algebra() const noexcept { return d_->algebra; }
  Scalar modulus() const noexcept { return d_->algebra->modulus(); }
  const std::vector<std::size_t>& dims() const noexcept { return d_->dims; }
  std::size_t dim(std::size_t v) const { return d_->dims[v]; }
  std::size_t total_dim() const noexcept {
    std::size_t s = 0;
    for (auto d : d_->dims) s += d;
    return s;
  }
  bool is_zero() const noexcept { return total_dim() == 0; }
  const std::vector<Matrix>& actions() const noexcept { return d_->actions; }
  const Matrix& action(std::size_t a) const { return d_->actions[a]; }

  /// Matrix of the action of a path, dims[source] x dims[target].
  Matrix path_action(const Path& path) const {
    Matrix m = Matrix::identity(dim(path.source), modulus());
    for (auto a : path.arrows) m = product(m, action(a));
    return m;
  }
  Matrix basis_action(std::size_t basis_index) const { return path_action(d_->algebra->basis()[basis_index]); }

  bool same_algebra(const Representation& other) const { return d_->algebra->same_as(*other.d_->algebra); }

  friend bool operator==(const Representation& a, const Representation& b) {
    if (a.d_ == b.d_) return true;
    return a.same_algebra(b) && a.dims() == b.dims() && a.actions() == b.actions();
  }

 private:
  explicit Representation(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

  void validate() const {
    const Algebra& A = *d_->algebra;
    require(d_->dims.size() == A.vertex_count(), ErrorKind::DimensionMismatch, "one dimension per vertex expected");
    require(d_->actions.size() == A.arrow_count(), ErrorKind::DimensionMismatch, "one matrix per arrow expected");
    for (std::size_t a = 0; a < A.arrow_count(); ++a) {
      const auto& arr = A.quiver().arrows()[a];
      const Matrix& m = d_->actions[a];
      require(m.rows() == dim(arr.source) && m.cols() == dim(arr.target) && m.modulus() == A.modulus(),
              ErrorKind::DimensionMismatch, "arrow '" + arr.name + "' has a matrix of the wrong shape");
    }
    for (std::size_t r = 0; r < A.parsed_relations().size(); ++r) {
      const auto& rel = A.parsed_relations()[r];
      if (rel.empty()) continue;
      Matrix acc(dim(rel.front().path.source), dim(rel.front().path.target), A.modulus());
      for (const auto& t : rel) acc = acc + scale(path_action(t.path), t.coeff);
      require(acc.is_zero(), ErrorKind::RelationViolated, "relation " + std::to_string(r) + " does not hold");
    }
  }

  std::shared_ptr<const Data> d_;
};

class ModuleMorphism {
 public:
  ModuleMorphism(Representation source, Representation target, std::vector<Matrix> maps)
      : src_(std::move(source)), tgt_(std::move(target)), maps_(std::move(maps)) {
    validate();
  }

  static ModuleMorphism trusted(Representation source, Representation target, std::vector<Matrix> maps) {
    return ModuleMorphism(std::move(source), std::move(target), std::move(maps), Unchecked{});
  }

  static ModuleMorphism identity(const Representation& m) {
    std::vector<Matrix> maps;
    for (auto d : m.dims()) maps.push_back(Matrix::identity(d, m.modulus()));
    return trusted(m, m, std::move(maps));
  }
  static ModuleMorphism zero(const Representation& source, const Representation& target) {
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < source.dims().size(); ++v)
      maps.emplace_back(source.dim(v), target.dim(v), source.modulus());
    return trusted(source, target, std::move(maps));
  }

  const Representation& source() const noexcept { return src_; }
  const Representation& target() const noexcept { return tgt_; }
  const std::vector<Matrix>& maps() const noexcept { return maps_; }
  const Matrix& map(std::size_t v) const { return maps_[v]; }

  bool is_zero() const {
    for (const auto& m : maps_)
      if (!m.is_zero()) return false;
    return true;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (const auto& m : maps_) r += diffmod::rank(m);
    return r;
  }
  bool is_mono() const { return rank() == src_.total_dim(); }
  bool is_epi() const { return rank() == tgt_.total_dim(); }
  bool is_iso() const {
    for (std::size_t v = 0; v < maps_.size(); ++v)
      if (maps_[v].rows() != maps_[v].cols() || diffmod::rank(maps_[v]) != maps_[v].rows()) return false;
    return true;
  }

  /// Entries of all vertex maps, concatenated row-major.
  std::vector<Scalar> flatten() const {
    std::vector<Scalar> out;
    for (const auto& m : maps_) out.insert(out.end(), m.data().begin(), m.data().end());
    return out;
  }

  friend bool operator==(const ModuleMorphism& a, const ModuleMorphism& b) {
    return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.maps_ == b.maps_;
  }

 private:
  struct Unchecked {};
  ModuleMorphism(Representation source, Representation target, std::vector<Matrix> maps, Unchecked)
      : src_(std::move(source)), tgt_(std::move(target)), maps_(std::move(maps)) {}

  void validate() const {
    require(src_.same_algebra(tgt_), ErrorKind::AlgebraMismatch, "morphism between modules over different algebras");
    const Algebra& A = *src_.algebra();
    require(maps_.size() == A.vertex_count(), ErrorKind::DimensionMismatch, "one map per vertex expected");
    for (std::size_t v = 0; v < maps_.size(); ++v)
      require(maps_[v].rows() == src_.dim(v) && maps_[v].cols() == tgt_.dim(v), ErrorKind::DimensionMismatch,
              "vertex map of the wrong shape");
    for (std::size_t a = 0; a < A.arrow_count(); ++a) {
      const auto& arr = A.quiver().arrows()[a];
      require(product(src_.action(a), maps_[arr.target]) == product(maps_[arr.source], tgt_.action(a)),
              ErrorKind::NotMorphism, "maps do not commute with arrow '" + arr.name + "'");
    }
  }

  Representation src_;
  Representation tgt_;
  std::vector<Matrix> maps_;
};

/// The composite "f then g", written fg.
inline ModuleMorphism compose(const ModuleMorphism& f, const ModuleMorphism& g) {
  require(f.target() == g.source(), ErrorKind::DimensionMismatch, "composition of non-composable morphisms");
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.maps().size(); ++v) maps.push_back(product(f.map(v), g.map(v)));
  return ModuleMorphism::trusted(f.source(), g.target(), std::move(maps));
}

inline ModuleMorphism operator+(const ModuleMorphism& f, const ModuleMorphism& g) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.maps().size(); ++v) maps.push_back(f.map(v) + g.map(v));
  return ModuleMorphism::trusted(f.source(), f.target(), std::move(maps));
}

inline ModuleMorphism scale(const ModuleMorphism& f, Scalar c) {
  std::vector<Matrix> maps;
  for (const auto& m : f.maps()) maps.push_back(scale(m, c));
  return ModuleMorphism::trusted(f.source(), f.target(), std::move(maps));
}

inline ModuleMorphism operator-(const ModuleMorphism& f, const ModuleMorphism& g) {
  return f + scale(g, g.source().modulus() - 1);
}

/// Linear combination sum_i c_i * fs[i] (fs nonempty).
inline ModuleMorphism combine(std::span<const ModuleMorphism> fs, std::span<const Scalar> coeffs) {
  const Scalar p = fs[0].source().modulus();
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < fs[0].maps().size(); ++v) {
    Matrix acc(fs[0].map(v).rows(), fs[0].map(v).cols(), p);
    std::vector<Scalar> buf(acc.data().size(), 0);
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Scalar c = coeffs[i] % p;
      if (c == 0) continue;
      const auto& d = fs[i].map(v).data();
      for (std::size_t t = 0; t < d.size(); ++t) buf[t] = static_cast<Scalar>((buf[t] + std::uint64_t(c) * d[t]) % p);
    }
    for (std::size_t r = 0; r < acc.rows(); ++r)
      for (std::size_t c = 0; c < acc.cols(); ++c) acc.at(r, c) = buf[r * acc.cols() + c];
    maps.push_back(std::move(acc));
  }
  return ModuleMorphism::trusted(fs[0].source(), fs[0].target(), std::move(maps));
}

/// Rows are the flattened morphisms.
inline Matrix flatten_all(std::span<const ModuleMorphism> fs, std::size_t width, Scalar p) {
  Matrix out(fs.size(), width, p);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto v = fs[i].flatten();
    for (std::size_t j = 0; j < width; ++j) out.at(i, j) = v[j];
  }
  return out;
}

inline std::size_t flat_width(const Representation& m, const Representation& n) {
  std::size_t w = 0;
  for (std::size_t v = 0; v < m.dims().size(); ++v) w += m.dim(v) * n.dim(v);
  return w;
}

// ---------------------------------------------------------------------------
// Direct sums

struct DirectSum {
  Representation module;
  std::vector<ModuleMorphism> injections;
  std::vector<ModuleMorphism> projections;
};

inline Representation direct_sum_module(std::span<const Representation> ms) {
  require(!ms.empty(), ErrorKind::InvalidInput, "direct sum of nothing");
  const AlgebraPtr& A = ms[0].algebra();
  for (const auto& m : ms) require(m.same_algebra(ms[0]), ErrorKind::AlgebraMismatch, "direct sum across algebras");
  std::vector<std::size_t> dims(A->vertex_count(), 0);
  for (const auto& m : ms)
    for (std::size_t v = 0; v < dims.size(); ++v) dims[v] += m.dim(v);
  std::vector<Matrix> actions;
  for (std::size_t a = 0; a < A->arrow_count(); ++a) {
    std::vector<Matrix> blocks;
    for (const auto& m : ms) blocks.push_back(m.action(a));
    actions.push_back(block_diag(blocks));
  }
  return Representation::trusted(A, dims, actions);
}

inline DirectSum direct_sum(std::span<const Representation> ms) {
  DirectSum out{direct_sum_module(ms), {}, {}};
  const Scalar p = ms[0].modulus();
  const std::size_t nv = ms[0].dims().size();
  std::vector<std::size_t> off(nv, 0);
  for (const auto& m : ms) {
    std::vector<Matrix> inj, proj;
    for (std::size_t v = 0; v < nv; ++v) {
      Matrix i(m.dim(v), out.module.dim(v), p), q(out.module.dim(v), m.dim(v), p);
      for (std::size_t k = 0; k < m.dim(v); ++k) {
        i.at(k, off[v] + k) = 1;
        q.at(off[v] + k, k) = 1;
      }
      inj.push_back(std::move(i));
      proj.push_back(std::move(q));
      off[v] += m.dim(v);
    }
    out.injections.push_back(ModuleMorphism::trusted(m, out.module, std::move(inj)));
    out.projections.push_back(ModuleMorphism::trusted(out.module, m, std::move(proj)));
  }
  return out;
}

inline DirectSum direct_sum(const Representation& m, const Representation& n) {
  std::vector<Representation> ms{m, n};
  return direct_sum(ms);
}

inline Representation direct_sum_module(const Representation& m, const Representation& n) {
  std::vector<Representation> ms{m, n};
  return direct_sum_module(ms);
}

/// f1 (+) f2 : M1 (+) M2 -> N1 (+) N2.
inline ModuleMorphism direct_sum_map(const ModuleMorphism& f, const ModuleMorphism& g) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.maps().size(); ++v) maps.push_back(block_diag({f.map(v), g.map(v)}));
  return ModuleMorphism::trusted(direct_sum_module(f.source(), g.source()), direct_sum_module(f.target(), g.target()),
                                 std::move(maps));
}

// ---------------------------------------------------------------------------
// Sub and quotient modules

struct Subobject {
  Representation module;
  ModuleMorphism inclusion;
};

struct Quotient {
  Representation module;
  ModuleMorphism projection;
};

/// Submodule spanned per vertex by the rows of spans[v]; the span must be
/// closed under the arrow actions.
inline Subobject submodule(const Representation& m, const std::vector<Matrix>& spans) {
  const Algebra& A = *m.algebra();
  std::vector<Matrix> bases;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) {
    bases.push_back(row_space_basis(spans[v]));
    dims.push_back(bases.back().rows());
  }
  std::vector<Matrix> actions;
  for (std::size_t a = 0; a < A.arrow_count(); ++a) {
    const auto& arr = A.quiver().arrows()[a];
    auto x = solve_through(bases[arr.target], product(bases[arr.source], m.action(a)));
    require(x.has_value(), ErrorKind::InvalidInput, "subspace is not closed under arrow '" + arr.name + "'");
    actions.push_back(std::move(*x));
  }
  Representation sub = Representation::trusted(m.algebra(), dims, actions);
  return {sub, ModuleMorphism::trusted(sub, m, bases)};
}

namespace detail {

// Unit rows spanning a complement of the row space of `basis_rows` (which
// must be in reduced echelon form).
inline Matrix complement_rows(const Matrix& rref_rows, std::size_t n, Scalar p) {
  std::vector<bool> pivot(n, false);
  for (std::size_t r = 0; r < rref_rows.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rref_rows(r, c) != 0) {
        pivot[c] = true;
        break;
      }
  std::size_t k = 0;
  for (std::size_t c = 0; c < n; ++c) k += pivot[c] ? 0 : 1;
  Matrix out(k, n, p);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) out.at(r++, c) = 1;
  return out;
}

}  // namespace detail

/// Quotient by the submodule spanned by spans[v]; the complement used for
/// coordinates consists of unit vectors at non-pivot positions.
inline Quotient quotient(const Representation& m, const std::vector<Matrix>& spans) {
  const Algebra& A = *m.algebra();
  const Scalar p = m.modulus();
  std::vector<Matrix> comps, projs;
  std::vector<std::size_t> dims;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) {
    Matrix b = row_space_basis(spans[v]);
    Matrix e = detail::complement_rows(b, m.dim(v), p);
    Matrix t = vstack({b, e});
    auto tinv = inverse(t);
    require(tinv.has_value(), ErrorKind::ValidationFailed, "complement construction failed");
    projs.push_back(submatrix(*tinv, 0, m.dim(v), b.rows(), e.rows()));
    dims.push_back(e.rows());
    comps.push_back(std::move(e));
  }
  std::vector<Matrix> actions;
  for (std::size_t a = 0; a < A.arrow_count(); ++a) {
    const auto& arr = A.quiver().arrows()[a];
    actions.push_back(product(product(comps[arr.source], m.action(a)), projs[arr.target]));
  }
  Representation q = Representation::trusted(m.algebra(), dims, actions);
  return {q, ModuleMorphism::trusted(m, q, projs)};
}

inline Subobject kernel(const ModuleMorphism& f) {
  const Algebra& A = *f.source().algebra();
  std::vector<Matrix> spans;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) spans.push_back(kernel_basis(f.map(v)));
  std::vector<std::size_t> dims;
  for (const auto& s : spans) dims.push_back(s.rows());
  std::vector<Matrix> actions;
  for (std::size_t a = 0; a < A.arrow_count(); ++a) {
    const auto& arr = A.quiver().arrows()[a];
    auto x = solve_through(spans[arr.target], product(spans[arr.source], f.source().action(a)));
    require(x.has_value(), ErrorKind::NotMorphism, "kernel not closed; input is not a morphism");
    actions.push_back(std::move(*x));
  }
  Representation k = Representation::trusted(f.source().algebra(), dims, actions);
  return {k, ModuleMorphism::trusted(k, f.source(), spans)};
}

struct ImageFactorization {
  Representation module;
  ModuleMorphism inclusion;      // Im f -> target
  ModuleMorphism corestriction;  // source -> Im f
};

inline ImageFactorization image(const ModuleMorphism& f) {
  std::vector<Matrix> spans(f.maps().begin(), f.maps().end());
  auto sub = submodule(f.target(), spans);
  std::vector<Matrix> co;
  for (std::size_t v = 0; v < f.maps().size(); ++v) {
    auto x = solve_through(sub.inclusion.map(v), f.map(v));
    co.push_back(std::move(*x));
  }
  return {sub.module, sub.inclusion, ModuleMorphism::trusted(f.source(), sub.module, co)};
}

inline Quotient cokernel(const ModuleMorphism& f) {
  std::vector<Matrix> spans(f.maps().begin(), f.maps().end());
  return quotient(f.target(), spans);
}

/// rad M = M J, the sum of the images of all arrow actions.
inline Subobject radical(const Representation& m) {
  const Algebra& A = *m.algebra();
  std::vector<Matrix> spans;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) {
    std::vector<Matrix> parts{Matrix(0, m.dim(v), m.modulus())};
    for (std::size_t a = 0; a < A.arrow_count(); ++a)
      if (A.quiver().arrows()[a].target == v) parts.push_back(m.action(a));
    spans.push_back(vstack(parts));
  }
  return submodule(m, spans);
}

inline Quotient top(const Representation& m) {
  auto rad = radical(m);
  return quotient(m, rad.inclusion.maps());
}

inline std::vector<std::size_t> top_dims(const Representation& m) {
  const Algebra& A = *m.algebra();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) {
    std::vector<Matrix> parts{Matrix(0, m.dim(v), m.modulus())};
    for (std::size_t a = 0; a < A.arrow_count(); ++a)
      if (A.quiver().arrows()[a].target == v) parts.push_back(m.action(a));
    out.push_back(m.dim(v) - rank(vstack(parts)));
  }
  return out;
}

inline std::vector<std::size_t> socle_dims(const Representation& m) {
  const Algebra& A = *m.algebra();
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) {
    std::vector<Matrix> parts{Matrix(m.dim(v), 0, m.modulus())};
    for (std::size_t a = 0; a < A.arrow_count(); ++a)
      if (A.quiver().arrows()[a].source == v) parts.push_back(m.action(a));
    out.push_back(m.dim(v) - rank(hstack(parts)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free (projective) modules  P = (+)_k e_{v_k} A

class FreeModule {
 public:
  FreeModule(const AlgebraPtr& algebra, std::vector<std::size_t> generators)
      : rep_(Representation::zero(algebra)), generators_(std::move(generators)) {
    const Algebra& A = *algebra;
    const std::size_t nv = A.vertex_count();
    local_.assign(A.dim(), 0);
    std::vector<std::vector<std::size_t>> count(nv, std::vector<std::size_t>(nv, 0));
    for (std::size_t b = 0; b < A.dim(); ++b) {
      const auto& path = A.basis()[b];
      local_[b] = count[path.source][path.target]++;
    }
    std::vector<std::size_t> dims(nv, 0);
    for (auto g : generators_) {
      offset_.push_back(dims);
      for (std::size_t w = 0; w < nv; ++w) dims[w] += count[g][w];
    }
    std::vector<Matrix> actions;
    for (std::size_t a = 0; a < A.arrow_count(); ++a) {
      const auto& arr = A.quiver().arrows()[a];
      Matrix m(dims[arr.source], dims[arr.target], A.modulus());
      const std::size_t ae = A.arrow_element(a);
      for (std::size_t k = 0; k < generators_.size(); ++k)
        for (auto b : A.paths_from(generators_[k])) {
          if (A.basis()[b].target != arr.source) continue;
          auto prod = A.multiply(b, ae);
          for (std::size_t c = 0; c < A.dim(); ++c)
            if (prod[c] != 0) m.at(offset_[k][arr.source] + local_[b], offset_[k][arr.target] + local_[c]) = prod[c];
        }
      actions.push_back(std::move(m));
    }
    rep_ = Representation::trusted(algebra, dims, actions);
  }

  const Representation& rep() const noexcept { return rep_; }
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  std::size_t rank() const noexcept { return generators_.size(); }
  const AlgebraPtr& algebra() const noexcept { return rep_.algebra(); }

  /// Coordinate (at vertex target(b)) of the element g_k * b.
  std::size_t coordinate(std::size_t k, std::size_t basis_index) const {
    const auto& path = rep_.algebra()->basis()[basis_index];
    return offset_[k][path.target] + local_[basis_index];
  }
  std::size_t generator_coordinate(std::size_t k) const {
    return coordinate(k, rep_.algebra()->idempotent(generators_[k]));
  }

  /// Free module on the concatenated generator lists; its representation is
  /// literally the direct sum of the two.
  friend FreeModule concat(const FreeModule& a, const FreeModule& b) {
    auto g = a.generators_;
    g.insert(g.end(), b.generators_.begin(), b.generators_.end());
    return FreeModule(a.algebra(), g);
  }

 private:
  Representation rep_;
  std::vector<std::size_t> generators_;
  std::vector<std::vector<std::size_t>> offset_;
  std::vector<std::size_t> local_;
};

namespace detail {

// Cached actions of algebra basis elements on a fixed module.
class BasisActions {
 public:
  explicit BasisActions(const Representation& m) : m_(m), cache_(m.algebra()->dim()) {}
  const Matrix& operator()(std::size_t b) {
    if (!cache_[b]) cache_[b] = m_.basis_action(b);
    return *cache_[b];
  }

 private:
  const Representation& m_;
  std::vector<std::optional<Matrix>> cache_;
};

}  // namespace detail

/// The homomorphism F -> N sending generator k to images[k] in N_{v_k}.
inline ModuleMorphism map_from_free(const FreeModule& f, const Representation& n,
                                    const std::vector<std::vector<Scalar>>& images) {
  const Algebra& A = *f.algebra();
  const Scalar p = n.modulus();
  detail::BasisActions act(n);
  std::vector<Matrix> maps;
  for (std::size_t w = 0; w < A.vertex_count(); ++w) maps.emplace_back(f.rep().dim(w), n.dim(w), p);
  for (std::size_t k = 0; k < f.rank(); ++k) {
    const std::size_t v = f.generators()[k];
    Matrix y = row_vector(images[k], p);
    for (auto b : A.paths_from(v)) {
      const std::size_t w = A.basis()[b].target;
      Matrix row = product(y, act(b));
      const std::size_t r = f.coordinate(k, b);
      for (std::size_t j = 0; j < n.dim(w); ++j) maps[w].at(r, j) = row(0, j);
    }
  }
  return ModuleMorphism::trusted(f.rep(), n, std::move(maps));
}

inline Representation projective_module(const AlgebraPtr& a, std::size_t v) { return FreeModule(a, {v}).rep(); }

inline std::vector<Representation> indecomposable_projectives(const AlgebraPtr& a) {
  std::vector<Representation> out;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) out.push_back(projective_module(a, v));
  return out;
}

inline FreeModule regular_free_module(const AlgebraPtr& a) {
  std::vector<std::size_t> gens;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) gens.push_back(v);
  return FreeModule(a, gens);
}

inline Representation regular_module(const AlgebraPtr& a) { return regular_free_module(a).rep(); }

inline Representation simple_module(const AlgebraPtr& a, std::size_t v) {
  std::vector<std::size_t> dims(a->vertex_count(), 0);
  dims[v] = 1;
  std::vector<Matrix> actions;
  for (const auto& arr : a->quiver().arrows()) actions.emplace_back(dims[arr.source], dims[arr.target], a->modulus());
  return Representation::trusted(a, dims, actions);
}

inline std::vector<Representation> simple_modules(const AlgebraPtr& a) {
  std::vector<Representation> out;
  for (std::size_t v = 0; v < a->vertex_count(); ++v) out.push_back(simple_module(a, v));
  return out;
}

// ---------------------------------------------------------------------------
// Projective covers

struct ProjectiveCover {
  FreeModule projective;
  ModuleMorphism pi;
};

/// Generators are lifts of a basis of top(M): unit vectors complementing rad M.
inline ProjectiveCover projective_cover(const Representation& m) {
  require(!m.is_zero(), ErrorKind::ZeroModule, "projective cover of the zero module");
  const Algebra& A = *m.algebra();
  auto rad = radical(m);
  std::vector<std::size_t> gens;
  std::vector<std::vector<Scalar>> images;
  for (std::size_t v = 0; v < A.vertex_count(); ++v) {
    Matrix r = row_space_basis(rad.inclusion.map(v));
    Matrix e = detail::complement_rows(r, m.dim(v), m.modulus());
    for (std::size_t i = 0; i < e.rows(); ++i) {
      gens.push_back(v);
      images.emplace_back(e.row(i).begin(), e.row(i).end());
    }
  }
  FreeModule f(m.algebra(), gens);
  ModuleMorphism pi = map_from_free(f, m, images);
  require(pi.is_epi(), ErrorKind::ValidationFailed, "projective cover is not onto");
  return {std::move(f), std::move(pi)};
}

inline bool is_projective(const Representation& m) {
  if (m.is_zero()) return true;
  std::size_t cover_dim = 0;
  auto tops = top_dims(m);
  for (std::size_t v = 0; v < tops.size(); ++v)
    cover_dim += tops[v] * projective_module(m.algebra(), v).total_dim();
  return cover_dim == m.total_dim();
}

// ---------------------------------------------------------------------------
// Hom spaces

/// Basis of Hom(M, N) from the full commuting system
///   action_M(a) * f_target(a) - f_source(a) * action_N(a) = 0.
inline std::vector<ModuleMorphism> hom_basis_commuting(const Representation& m, const Representation& n) {
  require(m.same_algebra(n), ErrorKind::AlgebraMismatch, "Hom between modules over different algebras");
  const Algebra& A = *m.algebra();
  const Scalar p = m.modulus();
  const std::size_t nv = A.vertex_count();
  std::vector<std::size_t> off(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) off[v + 1] = off[v] + m.dim(v) * n.dim(v);
  const std::size_t unknowns = off[nv];
  std::size_t eqs = 0;
  for (const auto& arr : A.quiver().arrows()) eqs += m.dim(arr.source) * n.dim(arr.target);
  // Equations as rows, unknowns as columns; the solution set is the right null space.
  Matrix sys(eqs, unknowns, p);
  std::size_t row = 0;
  for (std::size_t a = 0; a < A.arrow_count(); ++a) {
    const auto& arr = A.quiver().arrows()[a];
    const std::size_t i = arr.source, j = arr.target;
    const Matrix& am = m.action(a);
    const Matrix& bn = n.action(a);
    for (std::size_t r = 0; r < m.dim(i); ++r)
      for (std::size_t c = 0; c < n.dim(j); ++c, ++row) {
        // sum_k A[r,k] f_j[k,c]
        for (std::size_t k = 0; k < m.dim(j); ++k)
          if (am(r, k)) sys.at(row, off[j] + k * n.dim(j) + c) = am(r, k);
        // - sum_k f_i[r,k] B[k,c]
        for (std::size_t k = 0; k < n.dim(i); ++k)
          if (bn(k, c)) {
            Scalar& e = sys.at(row, off[i] + r * n.dim(i) + k);
            e = fp::sub(e, bn(k, c), p);
          }
      }
  }
  Matrix sol = null_space(sys);
  std::vector<ModuleMorphism> out;
  for (std::size_t s = 0; s < sol.rows(); ++s) {
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < nv; ++v) {
      Matrix f(m.dim(v), n.dim(v), p);
      for (std::size_t r = 0; r < m.dim(v); ++r)
        for (std::size_t c = 0; c < n.dim(v); ++c) f.at(r, c) = sol(s, off[v] + r * n.dim(v) + c);
      maps.push_back(std::move(f));
    }
    out.push_back(ModuleMorphism::trusted(m, n, std::move(maps)));
  }
  return out;
}

/// Basis of Hom(M, N) through a projective presentation P1 -> P0 -> M -> 0:
/// a map is a choice of images of the generators of P0 killing the
/// generators of the kernel.
inline std::vector<ModuleMorphism> hom_basis_presented(const Representation& m, const Representation& n) {
  require(m.same_algebra(n), ErrorKind::AlgebraMismatch, "Hom between modules over different algebras");
  if (m.is_zero() || n.is_zero()) return {};
  const Algebra& A = *m.algebra();
  const Scalar p = m.modulus();
  const std::size_t nv = A.vertex_count();
  auto cover = projective_cover(m);
  const FreeModule& f = cover.projective;
  auto ker = kernel(cover.pi);
  detail::BasisActions act(n);

  std::vector<std::size_t> y_off(f.rank() + 1, 0);
  for (std::size_t k = 0; k < f.rank(); ++k) y_off[k + 1] = y_off[k] + n.dim(f.generators()[k]);
  const std::size_t unknowns = y_off[f.rank()];

  // Kernel generators, as elements of P0.
  std::vector<std::pair<std::size_t, std::vector<Scalar>>> relations;
  if (!ker.module.is_zero()) {
    auto krad = radical(ker.module);
    for (std::size_t v = 0; v < nv; ++v) {
      Matrix r = row_space_basis(krad.inclusion.map(v));
      Matrix e = detail::complement_rows(r, ker.module.dim(v), p);
      Matrix in_p = product(e, ker.inclusion.map(v));
      for (std::size_t i = 0; i < in_p.rows(); ++i) relations.emplace_back(v, std::vector<Scalar>(in_p.row(i).begin(), in_p.row(i).end()));
    }
  }
  std::size_t eqs = 0;
  for (const auto& rel : relations) eqs += n.dim(rel.first);
  Matrix sys(unknowns, eqs, p);
  std::size_t col = 0;
  for (const auto& [w, x] : relations) {
    for (std::size_t k = 0; k < f.rank(); ++k)
      for (auto b : A.paths_from(f.generators()[k])) {
        if (A.basis()[b].target != w) continue;
        Scalar c = x[f.coordinate(k, b)];
        if (c == 0) continue;
        const Matrix& nb = act(b);
        for (std::size_t r = 0; r < nb.rows(); ++r)
          for (std::size_t s = 0; s < nb.cols(); ++s)
            if (nb(r, s)) {
              Scalar& e = sys.at(y_off[k] + r, col + s);
              e = fp::add(e, fp::mul(c, nb(r, s), p), p);
            }
      }
    col += n.dim(w);
  }
  Matrix sol = kernel_basis(sys);

  std::vector<Matrix> sections;
  for (std::size_t v = 0; v < nv; ++v) {
    auto s = solve_through(cover.pi.map(v), Matrix::identity(m.dim(v), p));
    sections.push_back(std::move(*s));
  }
  std::vector<ModuleMorphism> out;
  for (std::size_t s = 0; s < sol.rows(); ++s) {
    std::vector<std::vector<Scalar>> images;
    for (std::size_t k = 0; k < f.rank(); ++k)
      images.emplace_back(sol.row(s).begin() + static_cast<long>(y_off[k]),
                          sol.row(s).begin() + static_cast<long>(y_off[k + 1]));
    auto phi = map_from_free(f, n, images);
    std::vector<Matrix> maps;
    for (std::size_t v = 0; v < nv; ++v) maps.push_back(product(sections[v], phi.map(v)));
    out.push_back(ModuleMorphism::trusted(m, n, std::move(maps)));
  }
  return out;
}

/// Unknown counts above this use the presentation route.
inline constexpr std::size_t kCommutingSystemLimit = 400;

inline std::vector<ModuleMorphism> hom_basis(const Representation& m, const Representation& n) {
  require(m.same_algebra(n), ErrorKind::AlgebraMismatch, "Hom between modules over different algebras");
  if (flat_width(m, n) <= kCommutingSystemLimit) return hom_basis_commuting(m, n);
  return hom_basis_presented(m, n);
}

inline std::size_t hom_dim(const Representation& m, const Representation& n) { return hom_basis(m, n).size(); }

/// Coordinates of f in a hom basis (nullopt if f is not in the span).
inline std::optional<std::vector<Scalar>> coordinates_in(const std::vector<ModuleMorphism>& basis,
                                                         const ModuleMorphism& f) {
  const std::size_t w = flat_width(f.source(), f.target());
  const Scalar p = f.source().modulus();
  Matrix b = basis.empty() ? Matrix(0, w, p) : flatten_all(basis, w, p);
  auto x = solve_through(b, row_vector(f.flatten(), p));
  if (!x) return std::nullopt;
  return std::vector<Scalar>(x->row(0).begin(), x->row(0).end());
}

// ---------------------------------------------------------------------------
// Duality D = Hom_k(-, k): A-modules -> A^op-modules

inline Representation dualize(const Representation& m) {
  AlgebraPtr op = m.algebra()->opposite();
  std::vector<Matrix> actions;
  for (const auto& a : m.actions()) actions.push_back(transpose(a));
  return Representation::trusted(op, m.dims(), actions);
}

/// D f : D N -> D M.
inline ModuleMorphism dualize(const ModuleMorphism& f) {
  std::vector<Matrix> maps;
  for (const auto& m : f.maps()) maps.push_back(transpose(m));
  return ModuleMorphism::trusted(dualize(f.target()), dualize(f.source()), std::move(maps));
}

inline std::vector<Representation> indecomposable_injectives(const AlgebraPtr& a) {
  std::vector<Representation> out;
  for (auto& p : indecomposable_projectives(a->opposite())) out.push_back(dualize(p));
  return out;
}

struct InjectiveEnvelope {
  Representation injective;
  ModuleMorphism iota;
};

inline InjectiveEnvelope injective_envelope(const Representation& m) {
  auto cover = projective_cover(dualize(m));
  auto iota = dualize(cover.pi);
  return {iota.target(), iota};
}

inline bool is_injective(const Representation& m) { return is_projective(dualize(m)); }

// ---------------------------------------------------------------------------
// Isomorphism

enum class IsoVerdict { Yes, No, Undecided };

inline std::string_view to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::Yes: return "yes";
    case IsoVerdict::No: return "no";
    case IsoVerdict::Undecided: return "undecided";
  }
  return "?";
}

struct IsoOptions {
  /// Exhaustive search over Hom coefficient vectors when p^dim <= this.
  std::uint64_t exhaustive_bound = std::uint64_t{1} << 16;
  /// Deterministic pseudo-random combinations tried before exhaustion.
  std::size_t trials = 48;
  /// Random combinations over a large extension field.
  std::size_t extension_trials = 3;
};

namespace detail {

inline bool generic_combination_invertible(const std::vector<ModuleMorphism>& h, std::size_t trials) {
  const Scalar p = h[0].source().modulus();
  ExtensionField f(p);
  std::mt19937_64 gen(0xa5a5ULL + h.size());
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<ExtensionField::Elem> c;
    for (std::size_t i = 0; i < h.size(); ++i) c.push_back(f.random(gen));
    bool ok = true;
    for (std::size_t v = 0; v < h[0].maps().size() && ok; ++v) {
      const std::size_t n = h[0].map(v).rows();
      std::vector<std::vector<ExtensionField::Elem>> m(n, std::vector<ExtensionField::Elem>(n, f.zero()));
      for (std::size_t i = 0; i < h.size(); ++i) {
        const Matrix& a = h[i].map(v);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t col = 0; col < n; ++col) f.add_scaled(m[r][col], c[i], a(r, col));
      }
      ok = f.nonsingular(std::move(m));
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

inline IsoVerdict is_isomorphic(const Representation& m, const Representation& n, const IsoOptions& opts = {}) {
  require(m.same_algebra(n), ErrorKind::AlgebraMismatch, "isomorphism test across algebras");
  if (m.dims() != n.dims()) return IsoVerdict::No;
  if (m.is_zero()) return IsoVerdict::Yes;
  if (m == n) return IsoVerdict::Yes;
  if (top_dims(m) != top_dims(n) || socle_dims(m) != socle_dims(n)) return IsoVerdict::No;
  if (radical(m).module.dims() != radical(n).module.dims()) return IsoVerdict::No;
  auto h = hom_basis(m, n);
  if (h.empty()) return IsoVerdict::No;
  const Scalar p = m.modulus();
  std::mt19937_64 gen(0x5eedULL + h.size());
  std::vector<Scalar> c(h.size());
  for (std::size_t i = 0; i < h.size(); ++i)
    if (h[i].is_iso()) return IsoVerdict::Yes;
  for (std::size_t t = 0; t < opts.trials; ++t) {
    for (auto& x : c) x = static_cast<Scalar>(gen() % p);
    if (combine(h, c).is_iso()) return IsoVerdict::Yes;
  }
  std::size_t e_m = hom_dim(m, m), e_n = hom_dim(n, n), back = hom_dim(n, m);
  if (e_m != h.size() || e_n != h.size() || back != h.size()) return IsoVerdict::No;
  // An isomorphism after extending scalars descends to F_p (Noether-Deuring).
  if (detail::generic_combination_invertible(h, opts.extension_trials)) return IsoVerdict::Yes;
  double space = 1;
  for (std::size_t i = 0; i < h.size(); ++i) space *= p;
  if (space <= static_cast<double>(opts.exhaustive_bound)) {
    std::fill(c.begin(), c.end(), 0);
    while (true) {
      std::size_t i = h.size();
      while (i > 0) {
        --i;
        if (++c[i] < p) break;
        c[i] = 0;
        if (i == 0) return IsoVerdict::No;
      }
      if (combine(h, c).is_iso()) return IsoVerdict::Yes;
    }
  }
  return IsoVerdict::Undecided;
}

}  // namespace diffmod
