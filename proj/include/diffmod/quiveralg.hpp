#pragma once

// Finite-dimensional algebras presented as bound quiver algebras kQ/I over
// F_p, together with their opposites and dual-numbers extensions A[d]/(d^2).
//
// Paths are read left to right ("a then b"), matching right modules and the
// row-vector convention of exactla.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "diffmod/error.hpp"
#include "diffmod/exactla.hpp"

namespace diffmod {

struct ArrowSpec {
  std::string name;
  std::string from;
  std::string to;
};

struct Arrow {
  std::string name;
  std::size_t source = 0;
  std::size_t target = 0;
};

class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, const std::vector<ArrowSpec>& arrows) : vertices_(std::move(vertices)) {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        require(vertices_[i] != vertices_[j], ErrorKind::InvalidInput, "duplicate vertex '" + vertices_[i] + "'");
    for (const auto& a : arrows) {
      require(!find_arrow(a.name), ErrorKind::InvalidInput, "duplicate arrow '" + a.name + "'");
      auto s = find_vertex(a.from), t = find_vertex(a.to);
      require(s && t, ErrorKind::InvalidInput, "arrow '" + a.name + "' has an undeclared endpoint");
      arrows_.push_back({a.name, *s, *t});
    }
  }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<Arrow>& arrows() const noexcept { return arrows_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  std::optional<std::size_t> find_vertex(const std::string& name) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i] == name) return i;
    return std::nullopt;
  }
  std::optional<std::size_t> find_arrow(const std::string& name) const {
    for (std::size_t i = 0; i < arrows_.size(); ++i)
      if (arrows_[i].name == name) return i;
    return std::nullopt;
  }
  std::size_t vertex_index(const std::string& name) const {
    auto v = find_vertex(name);
    require(v.has_value(), ErrorKind::InvalidInput, "unknown vertex '" + name + "'");
    return *v;
  }
  std::size_t arrow_index(const std::string& name) const {
    auto a = find_arrow(name);
    require(a.has_value(), ErrorKind::InvalidInput, "unknown arrow '" + name + "'");
    return *a;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
};

struct RelationTerm {
  long long coeff = 1;
  std::vector<std::string> path;  // arrow names, read left to right
};

struct Relation {
  std::vector<RelationTerm> terms;
};

/// A path in the quiver; the trivial path at v has no arrows and source = target = v.
struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const noexcept { return arrows.size(); }
  bool trivial() const noexcept { return arrows.empty(); }

  friend bool operator==(const Path&, const Path&) = default;
};

namespace detail {

// Basis order: shorter paths first, then arrow sequence, then source.
inline bool path_less(const Path& a, const Path& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.arrows != b.arrows) return a.arrows < b.arrows;
  return a.source < b.source;
}

struct ParsedTerm {
  Scalar coeff;
  Path path;
};

inline std::vector<std::size_t> path_key(const Path& p) {
  std::vector<std::size_t> k{p.source};
  k.insert(k.end(), p.arrows.begin(), p.arrows.end());
  return k;
}

}  // namespace detail

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations, Scalar p, std::size_t cap);

class Algebra : public std::enable_shared_from_this<Algebra> {
  struct Token {};

 public:
  Algebra(Token, Quiver q, std::vector<Relation> rels, Scalar p, std::size_t cap)
      : quiver_(std::move(q)), relations_(std::move(rels)), p_(p), cap_(cap) {}
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const Quiver& quiver() const noexcept { return quiver_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  Scalar modulus() const noexcept { return p_; }
  std::size_t nilpotency_cap() const noexcept { return cap_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  std::size_t vertex_count() const noexcept { return quiver_.vertex_count(); }
  std::size_t arrow_count() const noexcept { return quiver_.arrow_count(); }
  const std::vector<Path>& basis() const noexcept { return basis_; }

  /// Basis index of the vertex idempotent e_v.
  std::size_t idempotent(std::size_t v) const { return idempotents_[v]; }
  /// Basis index of arrow a (arrows are never killed by admissible relations).
  std::size_t arrow_element(std::size_t a) const { return arrow_elements_[a]; }

  /// Coefficient of basis element k in b_i * b_j.
  Scalar structure(std::size_t i, std::size_t j, std::size_t k) const { return table_[(i * dim() + j) * dim() + k]; }
  std::span<const Scalar> multiply(std::size_t i, std::size_t j) const {
    return {table_.data() + (i * dim() + j) * dim(), dim()};
  }

  /// Basis indices of paths starting at v (ordered as in the basis).
  const std::vector<std::size_t>& paths_from(std::size_t v) const { return paths_from_[v]; }

  /// Coordinates of an arbitrary path in the basis.
  std::vector<Scalar> normal_form(const Path& path) const {
    std::vector<Scalar> out(dim(), 0);
    if (path.length() > cap_) return out;
    auto it = normal_forms_.find(detail::path_key(path));
    if (it == normal_forms_.end()) return out;
    return it->second;
  }

  std::string path_name(const Path& path) const {
    if (path.trivial()) return "e_" + quiver_.vertices()[path.source];
    std::string s;
    for (std::size_t i = 0; i < path.arrows.size(); ++i) {
      if (i) s += "*";
      s += quiver_.arrows()[path.arrows[i]].name;
    }
    return s;
  }

  /// Canonical text of the presentation; equal keys mean equal algebras.
  const std::string& key() const noexcept { return key_; }
  bool same_as(const Algebra& other) const noexcept { return this == &other || key_ == other.key_; }

  bool is_dual_numbers_extension() const noexcept { return dual_extension_; }
  /// For a dual-numbers extension: the base algebra (may have expired).
  AlgebraPtr base() const { return base_.lock(); }
  /// For a dual-numbers extension: the arrow index of the loop d_v.
  std::size_t d_loop(std::size_t v) const { return base_arrow_count_ + v; }
  std::size_t base_arrow_count() const noexcept { return base_arrow_count_; }

  AlgebraPtr opposite() const;
  AlgebraPtr dual_numbers() const;

  bool hereditary() const noexcept { return relations_.empty(); }

  /// Relations with arrow indices resolved and coefficients reduced.
  const std::vector<std::vector<detail::ParsedTerm>>& parsed_relations() const noexcept { return parsed_; }

 private:
  friend AlgebraPtr build_algebra(const Quiver&, const std::vector<Relation>&, Scalar, std::size_t);
  void construct();

  Quiver quiver_;
  std::vector<Relation> relations_;
  std::vector<std::vector<detail::ParsedTerm>> parsed_;
  Scalar p_;
  std::size_t cap_;
  std::vector<Path> basis_;
  std::vector<Scalar> table_;
  std::vector<std::size_t> idempotents_;
  std::vector<std::size_t> arrow_elements_;
  std::vector<std::vector<std::size_t>> paths_from_;
  std::map<std::vector<std::size_t>, std::vector<Scalar>> normal_forms_;
  std::string key_;

  bool dual_extension_ = false;
  std::size_t base_arrow_count_ = 0;
  std::weak_ptr<const Algebra> base_;

  mutable std::mutex lazy_mu_;
  mutable std::shared_ptr<const Algebra> opposite_;
  mutable std::weak_ptr<const Algebra> opposite_back_;
  mutable std::shared_ptr<const Algebra> dual_;
};

namespace detail {

inline std::vector<std::vector<ParsedTerm>> parse_relations(const Quiver& q, const std::vector<Relation>& rels,
                                                            Scalar p) {
  std::vector<std::vector<ParsedTerm>> out;
  for (std::size_t r = 0; r < rels.size(); ++r) {
    std::vector<ParsedTerm> terms;
    std::optional<std::pair<std::size_t, std::size_t>> ends;
    for (const auto& t : rels[r].terms) {
      require(t.path.size() >= 2, ErrorKind::NonAdmissible,
              "relation " + std::to_string(r) + " has a term of length " + std::to_string(t.path.size()));
      Path path;
      for (std::size_t i = 0; i < t.path.size(); ++i) {
        std::size_t a = q.arrow_index(t.path[i]);
        const auto& arr = q.arrows()[a];
        if (i == 0) path.source = arr.source;
        else
          require(path.target == arr.source, ErrorKind::InvalidInput,
                  "relation " + std::to_string(r) + " contains a non-composable path");
        path.target = arr.target;
        path.arrows.push_back(a);
      }
      if (!ends) ends = {path.source, path.target};
      require(ends->first == path.source && ends->second == path.target, ErrorKind::InvalidInput,
              "relation " + std::to_string(r) + " mixes non-parallel paths");
      Scalar c = fp::reduce(t.coeff, p);
      if (c != 0) terms.push_back({c, std::move(path)});
    }
    out.push_back(std::move(terms));
  }
  return out;
}

inline std::string presentation_key(const Quiver& q, const std::vector<Relation>& rels, Scalar p, std::size_t cap) {
  std::ostringstream os;
  os << "p=" << p << ";cap=" << cap << ";V=";
  for (const auto& v : q.vertices()) os << v << ",";
  os << ";A=";
  for (const auto& a : q.arrows()) os << a.name << ":" << a.source << ">" << a.target << ",";
  os << ";R=";
  for (const auto& r : rels) {
    for (const auto& t : r.terms) {
      os << fp::reduce(t.coeff, p) << "*";
      for (const auto& n : t.path) os << n << ".";
      os << "+";
    }
    os << "|";
  }
  return os.str();
}

}  // namespace detail

inline void Algebra::construct() {
  const Quiver& q = quiver_;
  const std::size_t nv = q.vertex_count();
  parsed_ = detail::parse_relations(q, relations_, p_);
  const auto& rels = parsed_;
  key_ = detail::presentation_key(q, relations_, p_, cap_);

  // All paths of length <= cap.
  std::vector<Path> paths;
  for (std::size_t v = 0; v < nv; ++v) paths.push_back({v, v, {}});
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= cap_; ++len) {
    std::size_t level_end = paths.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (q.arrows()[a].source == paths[i].target) {
          Path np = paths[i];
          np.arrows.push_back(a);
          np.target = q.arrows()[a].target;
          paths.push_back(std::move(np));
        }
    level_begin = level_end;
  }
  // Columns: longest paths first so that long paths become pivots.
  std::vector<std::size_t> order(paths.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return detail::path_less(paths[y], paths[x]); });
  std::vector<Path> cols;
  for (auto i : order) cols.push_back(paths[i]);
  std::map<std::vector<std::size_t>, std::size_t> col_of;
  for (std::size_t c = 0; c < cols.size(); ++c) col_of[detail::path_key(cols[c])] = c;

  std::vector<std::vector<std::size_t>> ending_at(nv), starting_at(nv);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    ending_at[cols[c].target].push_back(c);
    starting_at[cols[c].source].push_back(c);
  }

  // Translates u*r*w of every relation, truncated modulo paths longer than cap.
  std::vector<std::vector<Scalar>> rows;
  for (const auto& rel : rels) {
    if (rel.empty()) continue;
    std::size_t minlen = rel.front().path.length();
    for (const auto& t : rel) minlen = std::min(minlen, t.path.length());
    if (minlen > cap_) continue;
    std::size_t s = rel.front().path.source, t = rel.front().path.target;
    for (auto uc : ending_at[s]) {
      const Path& u = cols[uc];
      if (u.length() + minlen > cap_) continue;
      for (auto wc : starting_at[t]) {
        const Path& w = cols[wc];
        if (u.length() + minlen + w.length() > cap_) continue;
        std::vector<Scalar> row(cols.size(), 0);
        bool any = false;
        for (const auto& term : rel) {
          if (u.length() + term.path.length() + w.length() > cap_) continue;
          Path full{u.source, w.target, u.arrows};
          full.arrows.insert(full.arrows.end(), term.path.arrows.begin(), term.path.arrows.end());
          full.arrows.insert(full.arrows.end(), w.arrows.begin(), w.arrows.end());
          std::size_t c = col_of.at(detail::path_key(full));
          row[c] = fp::add(row[c], term.coeff, p_);
          any = true;
        }
        if (any) rows.push_back(std::move(row));
      }
    }
  }
  Matrix sys(rows.size(), cols.size(), p_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) sys.at(i, j) = rows[i][j];
  auto red = rref(sys);
  std::vector<long> pivot_row(cols.size(), -1);
  for (std::size_t r = 0; r < red.pivots.size(); ++r) pivot_row[red.pivots[r]] = static_cast<long>(r);

  // Every path of length exactly cap must vanish.
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].length() != cap_) continue;
    bool zero = pivot_row[c] >= 0;
    if (zero) {
      auto row = red.reduced.row(static_cast<std::size_t>(pivot_row[c]));
      for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != c && row[j] != 0) zero = false;
    }
    require(zero, ErrorKind::CapTooSmall,
            "path " + path_name(cols[c]) + " of length " + std::to_string(cap_) + " is nonzero modulo the relations");
  }

  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols.size(); ++c)
    if (pivot_row[c] < 0) free_cols.push_back(c);
  std::sort(free_cols.begin(), free_cols.end(),
            [&](std::size_t x, std::size_t y) { return detail::path_less(cols[x], cols[y]); });
  std::vector<long> basis_of_col(cols.size(), -1);
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    basis_.push_back(cols[free_cols[i]]);
    basis_of_col[free_cols[i]] = static_cast<long>(i);
  }
  const std::size_t n = basis_.size();

  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<Scalar> nf(n, 0);
    if (pivot_row[c] < 0) {
      nf[static_cast<std::size_t>(basis_of_col[c])] = 1;
    } else {
      auto row = red.reduced.row(static_cast<std::size_t>(pivot_row[c]));
      for (auto fc : free_cols)
        if (row[fc] != 0) nf[static_cast<std::size_t>(basis_of_col[fc])] = fp::neg(row[fc], p_);
    }
    normal_forms_[detail::path_key(cols[c])] = std::move(nf);
  }

  idempotents_.assign(nv, 0);
  arrow_elements_.assign(q.arrow_count(), 0);
  paths_from_.assign(nv, {});
  for (std::size_t i = 0; i < n; ++i) {
    const Path& b = basis_[i];
    if (b.trivial()) idempotents_[b.source] = i;
    if (b.length() == 1) arrow_elements_[b.arrows[0]] = i;
    paths_from_[b.source].push_back(i);
  }

  table_.assign(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (basis_[i].target != basis_[j].source) continue;
      Path prod{basis_[i].source, basis_[j].target, basis_[i].arrows};
      prod.arrows.insert(prod.arrows.end(), basis_[j].arrows.begin(), basis_[j].arrows.end());
      auto nf = normal_form(prod);
      std::copy(nf.begin(), nf.end(), table_.begin() + static_cast<long>((i * n + j) * n));
    }

  // Associativity and the identity 1 = sum of e_v, checked on all basis triples.
  std::vector<Scalar> lhs(n), rhs(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(lhs.begin(), lhs.end(), 0);
        std::fill(rhs.begin(), rhs.end(), 0);
        for (std::size_t m = 0; m < n; ++m) {
          Scalar a = structure(i, j, m), b = structure(j, k, m);
          for (std::size_t t = 0; t < n; ++t) {
            if (a) lhs[t] = fp::add(lhs[t], fp::mul(a, structure(m, k, t), p_), p_);
            if (b) rhs[t] = fp::add(rhs[t], fp::mul(b, structure(i, m, t), p_), p_);
          }
        }
        require(lhs == rhs, ErrorKind::NotAssociative, "multiplication table is not associative");
      }
    }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Scalar> left(n, 0), right(n, 0);
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t t = 0; t < n; ++t) {
        left[t] = fp::add(left[t], structure(idempotents_[v], j, t), p_);
        right[t] = fp::add(right[t], structure(j, idempotents_[v], t), p_);
      }
    std::vector<Scalar> unit(n, 0);
    unit[j] = 1;
    require(left == unit && right == unit, ErrorKind::NotAssociative, "vertex idempotents do not sum to 1");
  }
}

inline AlgebraPtr build_algebra(const Quiver& quiver, const std::vector<Relation>& relations, Scalar p,
                                std::size_t cap) {
  require(fp::is_prime(p) && p < 65536, ErrorKind::NotPrime, "field size " + std::to_string(p) + " is not prime");
  auto a = std::make_shared<Algebra>(Algebra::Token{}, quiver, relations, p, cap);
  a->construct();
  return a;
}

inline AlgebraPtr Algebra::opposite() const {
  std::lock_guard lock(lazy_mu_);
  if (auto back = opposite_back_.lock()) return back;
  if (opposite_) return opposite_;
  std::vector<ArrowSpec> arrows;
  for (const auto& a : quiver_.arrows())
    arrows.push_back({a.name, quiver_.vertices()[a.target], quiver_.vertices()[a.source]});
  Quiver q(quiver_.vertices(), arrows);
  std::vector<Relation> rels = relations_;
  for (auto& r : rels)
    for (auto& t : r.terms) std::reverse(t.path.begin(), t.path.end());
  auto op = std::make_shared<Algebra>(Token{}, q, rels, p_, cap_);
  op->construct();
  op->opposite_back_ = shared_from_this();
  opposite_ = op;
  return op;
}

inline AlgebraPtr Algebra::dual_numbers() const {
  std::lock_guard lock(lazy_mu_);
  if (dual_) return dual_;
  std::vector<ArrowSpec> arrows;
  for (const auto& a : quiver_.arrows())
    arrows.push_back({a.name, quiver_.vertices()[a.source], quiver_.vertices()[a.target]});
  std::vector<std::string> d_names;
  for (const auto& v : quiver_.vertices()) {
    std::string name = "d_" + v;
    while (quiver_.find_arrow(name)) name = "d" + name;
    d_names.push_back(name);
    arrows.push_back({name, v, v});
  }
  Quiver q(quiver_.vertices(), arrows);
  std::vector<Relation> rels = relations_;
  for (std::size_t v = 0; v < quiver_.vertex_count(); ++v) rels.push_back({{{1, {d_names[v], d_names[v]}}}});
  for (const auto& a : quiver_.arrows())
    rels.push_back({{{1, {a.name, d_names[a.target]}}, {-1, {d_names[a.source], a.name}}}});
  auto lam = std::make_shared<Algebra>(Token{}, q, rels, p_, cap_ + 1);
  lam->construct();
  lam->dual_extension_ = true;
  lam->base_arrow_count_ = quiver_.arrow_count();
  lam->base_ = shared_from_this();
  dual_ = lam;
  return lam;
}

inline AlgebraPtr opposite_algebra(const AlgebraPtr& a) { return a->opposite(); }
inline AlgebraPtr dual_numbers_extension(const AlgebraPtr& a) { return a->dual_numbers(); }

}  // namespace diffmod
