#pragma once

// Gorenstein projective and injective modules over Iwanaga-Gorenstein
// algebras, Gorenstein dimensions, complete resolutions, and the Ext
// comparison between differential modules and their underlying modules.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "diffmod/diffcat.hpp"
#include "diffmod/error.hpp"
#include "diffmod/modrep.hpp"
#include "diffmod/resolve.hpp"

namespace diffmod {

/// Projective dimension, or nullopt if the resolution has not ended after
/// `cap` steps.
inline std::optional<std::size_t> projective_dimension(const Representation& m, std::size_t cap) {
  if (m.is_zero()) return 0;
  auto res = projective_resolution(m, cap);
  if (!res.terminated) return std::nullopt;
  return res.terms.size() - 1;
}

struct GorensteinProfile {
  AlgebraPtr algebra;
  std::optional<std::size_t> g_left;   // injective dimension of A as a left module
  std::optional<std::size_t> g_right;  // injective dimension of A as a right module
  std::size_t cap = 8;

  bool finite() const { return g_left.has_value() && g_right.has_value(); }
  std::size_t g() const {
    require(finite(), ErrorKind::ProfileInfinite, "regular module has no finite injective dimension within the cap");
    return std::max(*g_left, *g_right);
  }
};

/// Injective dimensions of the regular module on both sides, from projective
/// resolutions of its duals.
inline GorensteinProfile injective_dimension_regular(const AlgebraPtr& a, std::size_t cap = 8) {
  GorensteinProfile p{a, std::nullopt, std::nullopt, cap};
  p.g_right = projective_dimension(dualize(regular_module(a)), cap);
  p.g_left = projective_dimension(dualize(regular_module(a->opposite())), cap);
  return p;
}

enum class GpRoute { Direct, ViaUnderlying };

inline std::string_view to_string(GpRoute r) { return r == GpRoute::Direct ? "direct" : "via-underlying"; }

struct GpReport {
  bool verdict = true;
  std::vector<std::size_t> ext_witness;  // dim Ext^i(M, A) for i = 1..g
  GpRoute route = GpRoute::ViaUnderlying;
};

/// Over an Iwanaga-Gorenstein algebra with parameter g, M is Gorenstein
/// projective iff Ext^i(M, A) = 0 for 1 <= i <= g.
inline GpReport is_gp_module(const Representation& m, const GorensteinProfile& profile,
                             GpRoute route = GpRoute::ViaUnderlying) {
  require(m.algebra()->same_as(*profile.algebra), ErrorKind::AlgebraMismatch, "profile belongs to another algebra");
  const std::size_t g = profile.g();
  GpReport r{true, {}, route};
  if (g == 0 || m.is_zero()) {
    r.ext_witness.assign(g, 0);
    return r;
  }
  auto t = ext_dim(m, regular_module(m.algebra()), g);
  r.ext_witness.assign(t.dims.begin() + 1, t.dims.end());
  r.verdict = std::all_of(r.ext_witness.begin(), r.ext_witness.end(), [](std::size_t d) { return d == 0; });
  return r;
}

inline bool is_gi_module(const Representation& m, const GorensteinProfile& profile_op) {
  return is_gp_module(dualize(m), profile_op).verdict;
}

struct GpPair {
  GpReport direct;
  GpReport via_underlying;
  bool agree() const { return direct.verdict == via_underlying.verdict; }
};

inline GpPair is_gp_diff(const DifferentialModule& d, const GorensteinProfile& profile_lambda,
                         const GorensteinProfile& profile_base) {
  return {is_gp_module(to_lambda_module(d), profile_lambda, GpRoute::Direct),
          is_gp_module(d.underlying(), profile_base, GpRoute::ViaUnderlying)};
}

inline GpPair is_gi_diff(const DifferentialModule& d, const GorensteinProfile& profile_lambda_op,
                         const GorensteinProfile& profile_base_op) {
  return {is_gp_module(dualize(to_lambda_module(d)), profile_lambda_op, GpRoute::Direct),
          is_gp_module(dualize(d.underlying()), profile_base_op, GpRoute::ViaUnderlying)};
}

/// Smallest n <= cap with Omega^n M Gorenstein projective.
inline std::optional<std::size_t> gpd(const Representation& m, const GorensteinProfile& profile, std::size_t cap) {
  profile.g();
  if (m.is_zero()) return 0;
  auto res = projective_resolution(m, cap, true);
  for (std::size_t n = 0; n <= cap; ++n)
    if (is_gp_module(res.syzygy(n), profile).verdict) return n;
  return std::nullopt;
}

inline std::optional<std::size_t> gid(const Representation& m, const GorensteinProfile& profile_op, std::size_t cap) {
  return gpd(dualize(m), profile_op, cap);
}

// ---------------------------------------------------------------------------
// The four algebras around A: A, A^op, Lambda = A[d]/(d^2), Lambda^op

struct GorensteinSetting {
  AlgebraPtr base;
  AlgebraPtr base_op;
  AlgebraPtr lambda;
  AlgebraPtr lambda_op;
  GorensteinProfile p_base;
  GorensteinProfile p_base_op;
  GorensteinProfile p_lambda;
  GorensteinProfile p_lambda_op;

  static GorensteinSetting make(const AlgebraPtr& a, std::size_t cap = 8) {
    GorensteinSetting s{a, a->opposite(), a->dual_numbers(), a->dual_numbers()->opposite(), {}, {}, {}, {}};
    s.p_base = injective_dimension_regular(s.base, cap);
    s.p_base_op = injective_dimension_regular(s.base_op, cap);
    s.p_lambda = injective_dimension_regular(s.lambda, cap);
    s.p_lambda_op = injective_dimension_regular(s.lambda_op, cap);
    return s;
  }

  bool finite() const { return p_base.finite() && p_base_op.finite() && p_lambda.finite() && p_lambda_op.finite(); }
  /// Syzygy search bound: Gorenstein dimensions never exceed g.
  std::size_t dimension_cap() const { return std::max(p_base.g(), p_lambda.g()); }
};

struct DimensionPair {
  std::optional<std::size_t> direct;
  std::optional<std::size_t> via_underlying;
  bool agree() const { return direct == via_underlying; }
};

inline DimensionPair gpd_diff(const DifferentialModule& d, const GorensteinSetting& s) {
  const std::size_t cap = s.dimension_cap();
  return {gpd(to_lambda_module(d), s.p_lambda, cap), gpd(d.underlying(), s.p_base, cap)};
}

inline DimensionPair gid_diff(const DifferentialModule& d, const GorensteinSetting& s) {
  const std::size_t cap = s.dimension_cap();
  return {gpd(dualize(to_lambda_module(d)), s.p_lambda_op, cap), gpd(dualize(d.underlying()), s.p_base_op, cap)};
}

// ---------------------------------------------------------------------------
// Complete resolutions

/// ... -> P_1 -> P_0 -> P^0 -> P^1 -> ... through M = Im(P_0 -> P^0).
/// The left half iterates minimal left add(A)-approximations M^j -> P^j, which
/// dualize a projective cover sequence of Hom_A(M, A).
struct CompleteResolution {
  ProjectiveResolution right;
  std::vector<FreeModule> left_terms;         // P^0 .. P^{window-1}
  std::vector<ModuleMorphism> approximations;  // M^j -> P^j
  std::vector<Quotient> cosyzygies;            // P^j -> M^{j+1}
  ModuleSequence complex;                      // P_window .. P_0, P^0 .. P^{window-1}
  std::size_t window = 0;
  bool exact = false;
  ProperCertificate hom_into_projectives;
};

namespace detail {

// lambda_a : P_u -> P_v, left multiplication by an arrow a : v -> u.
inline ModuleMorphism left_multiplication(const AlgebraPtr& a, std::size_t arrow) {
  const auto& arr = a->quiver().arrows()[arrow];
  FreeModule pu(a, {arr.target});
  FreeModule pv(a, {arr.source});
  std::vector<Scalar> image(pv.rep().dim(arr.target), 0);
  image[pv.coordinate(0, a->arrow_element(arrow))] = 1;
  return map_from_free(pu, pv.rep(), {image});
}

}  // namespace detail

struct LeftApproximation {
  FreeModule projective;
  ModuleMorphism map;
};

/// Minimal left add(A)-approximation: generators of Hom(M, A) as a left
/// module, one vertex at a time, modulo maps factoring through an arrow.
inline LeftApproximation left_approximation(const Representation& m) {
  const AlgebraPtr& a = m.algebra();
  const std::size_t nv = a->vertex_count();
  const Scalar p = m.modulus();
  std::vector<Representation> proj = indecomposable_projectives(a);
  std::vector<std::vector<ModuleMorphism>> homs;
  for (std::size_t v = 0; v < nv; ++v) homs.push_back(hom_basis(m, proj[v]));
  std::vector<std::size_t> gens;
  std::vector<ModuleMorphism> chosen;
  for (std::size_t v = 0; v < nv; ++v) {
    if (homs[v].empty()) continue;
    const std::size_t w = flat_width(m, proj[v]);
    std::vector<ModuleMorphism> rad;
    for (std::size_t arrow = 0; arrow < a->arrow_count(); ++arrow) {
      const auto& arr = a->quiver().arrows()[arrow];
      if (arr.source != v) continue;
      ModuleMorphism la = detail::left_multiplication(a, arrow);
      for (const auto& h : homs[arr.target]) rad.push_back(compose(h, la));
    }
    Matrix r = rad.empty() ? Matrix(0, w, p) : row_space_basis(flatten_all(rad, w, p));
    Matrix all = flatten_all(homs[v], w, p);
    // Extend a basis of the radical part greedily by hom basis elements.
    Matrix span = r;
    for (std::size_t i = 0; i < homs[v].size(); ++i) {
      Matrix trial = vstack({span, submatrix(all, i, 1, 0, w)});
      if (rank(trial) > span.rows()) {
        span = trial;
        gens.push_back(v);
        chosen.push_back(homs[v][i]);
      }
    }
  }
  FreeModule f(a, gens);
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<Matrix> cols{Matrix(m.dim(v), 0, p)};
    for (const auto& g : chosen) cols.push_back(g.map(v));
    maps.push_back(hstack(cols));
  }
  return {f, ModuleMorphism::trusted(m, f.rep(), std::move(maps))};
}

inline CompleteResolution complete_resolution(const Representation& m, const GorensteinProfile& profile,
                                              std::size_t window = 3) {
  require(is_gp_module(m, profile).verdict, ErrorKind::NotGorensteinProjective,
          "complete resolutions exist only for Gorenstein projective modules");
  CompleteResolution out{projective_resolution(m, window, true), {}, {}, {}, {}, window, false, {}};
  Representation cur = m;
  for (std::size_t j = 0; j < window; ++j) {
    auto approx = left_approximation(cur);
    require(approx.map.is_mono(), ErrorKind::ValidationFailed, "left approximation of a cosyzygy is not injective");
    auto q = cokernel(approx.map);
    out.left_terms.push_back(approx.projective);
    out.approximations.push_back(approx.map);
    out.cosyzygies.push_back(q);
    cur = q.module;
  }

  ModuleSequence& s = out.complex;
  for (std::size_t i = window + 1; i-- > 0;) {
    s.objects.push_back(out.right.terms[i].rep());
    if (i > 0) s.maps.push_back(out.right.map(i));
  }
  for (std::size_t j = 0; j < window; ++j) {
    s.objects.push_back(out.left_terms[j].rep());
    if (j == 0)
      s.maps.push_back(compose(out.right.covers[0], out.approximations[0]));
    else
      s.maps.push_back(compose(out.cosyzygies[j - 1].projection, out.approximations[j]));
  }
  out.exact = is_exact(s);
  require(out.exact, ErrorKind::ValidationFailed, "complete resolution is not exact on its window");
  for (const auto& t : out.left_terms)
    require(is_projective(t.rep()), ErrorKind::ValidationFailed, "non-projective term");
  out.hom_into_projectives = is_proper(s, indecomposable_projectives(m.algebra()), Variance::Contravariant);
  require(out.hom_into_projectives.proper, ErrorKind::ValidationFailed,
          "complete resolution does not stay exact under Hom(-, P)");
  return out;
}

// ---------------------------------------------------------------------------
// Ext against contractibles versus Ext against the underlying test module

struct ExtTransferReport {
  ExtTable lambda_side;  // Ext over Lambda of (D, RD(X))
  ExtTable base_side;    // Ext over A of (M, X)
  bool lambda_vanishes = false;
  bool base_vanishes = false;
  bool degreewise_equal = false;
  std::size_t base_hom_dim = 0;  // dim Hom_A(M, X); reported, not part of the verdict
  bool agree() const { return lambda_vanishes == base_vanishes; }
};

namespace detail {

inline bool vanishes_above_zero(const ExtTable& t) {
  return std::all_of(t.dims.begin() + 1, t.dims.end(), [](std::size_t d) { return d == 0; });
}

}  // namespace detail

inline ExtTransferReport ext_transfer_check(const DifferentialModule& d, const Representation& x, std::size_t horizon) {
  ExtTransferReport r{ext_dim(to_lambda_module(d), to_lambda_module(contractible(x)), horizon),
                      ext_dim(d.underlying(), x, horizon)};
  r.lambda_vanishes = detail::vanishes_above_zero(r.lambda_side);
  r.base_vanishes = detail::vanishes_above_zero(r.base_side);
  r.degreewise_equal = std::equal(r.lambda_side.dims.begin() + 1, r.lambda_side.dims.end(),
                                  r.base_side.dims.begin() + 1, r.base_side.dims.end());
  r.base_hom_dim = r.base_side.dims[0];
  return r;
}

/// The covariant twin: Ext over Lambda of (RD(X), D) against Ext over A of
/// (X, M), computed through duality over the opposite algebras.
inline ExtTransferReport ext_transfer_check_covariant(const DifferentialModule& d, const Representation& x,
                                                      std::size_t horizon) {
  return ext_transfer_check(dualize(d), dualize(x), horizon);
}

}  // namespace diffmod
