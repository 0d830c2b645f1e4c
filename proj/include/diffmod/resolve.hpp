#pragma once

// Projective resolutions, the pullback lift of a short exact sequence to the
// differential category, lifted resolutions and coresolutions, Ext, and
// properness of exact sequences against finite test classes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "diffmod/diffcat.hpp"
#include "diffmod/error.hpp"
#include "diffmod/exactla.hpp"
#include "diffmod/modrep.hpp"

namespace diffmod {

// ---------------------------------------------------------------------------
// Projective resolutions of modules

/// C_len -> ... -> C_1 -> C_0 -> M -> 0 built from iterated projective covers.
/// Syzygy M_0 is M itself and M_{i+1} = Ker(pi_i : C_i -> M_i).
struct ProjectiveResolution {
  Representation target;
  std::vector<FreeModule> terms;
  std::vector<ModuleMorphism> covers;  // pi_i : C_i -> M_i
  std::vector<Subobject> syzygies;     // lambda_i : M_{i+1} -> C_i
  /// True when some syzygy vanished, so the resolution is complete.
  bool terminated = false;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }

  const Representation& syzygy(std::size_t i) const { return i == 0 ? target : syzygies[i - 1].module; }

  /// c_i : C_i -> C_{i-1} for i >= 1, and the augmentation for i = 0.
  ModuleMorphism map(std::size_t i) const {
    if (i == 0) return covers[0];
    return compose(covers[i], syzygies[i - 1].inclusion);
  }

  bool is_exact() const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (!covers[i].is_epi()) return false;
      if (!syzygies[i].inclusion.is_mono()) return false;
      if (!compose(syzygies[i].inclusion, covers[i]).is_zero()) return false;
      if (syzygies[i].module.total_dim() + syzygy(i).total_dim() != terms[i].rep().total_dim()) return false;
    }
    return true;
  }
};

namespace detail {

inline FreeModule empty_free(const AlgebraPtr& a) { return FreeModule(a, {}); }

}  // namespace detail

/// With pad = true, vanished syzygies are continued by zero terms up to
/// `length`, so that every index 0..length is populated.
inline ProjectiveResolution projective_resolution(const Representation& m, std::size_t length, bool pad = false) {
  ProjectiveResolution res{m, {}, {}, {}, false};
  Representation cur = m;
  for (std::size_t i = 0; i <= length; ++i) {
    if (cur.is_zero()) {
      res.terminated = true;
      if (!pad) break;
      FreeModule z = detail::empty_free(m.algebra());
      auto pi = ModuleMorphism::zero(z.rep(), cur);
      res.terms.push_back(z);
      res.covers.push_back(pi);
      res.syzygies.push_back(kernel(pi));
      continue;
    }
    auto cover = projective_cover(cur);
    auto ker = kernel(cover.pi);
    res.terms.push_back(cover.projective);
    res.covers.push_back(cover.pi);
    res.syzygies.push_back(ker);
    cur = ker.module;
    if (cur.is_zero()) res.terminated = true;
    if (res.terminated && !pad) break;
  }
  require(res.is_exact(), ErrorKind::ValidationFailed, "projective resolution is not exact");
  return res;
}

// ---------------------------------------------------------------------------
// One lifting step: 0 -> L -> C -> M -> 0 with a differential on M becomes
// 0 -> (C (+) L, e') -> RD(C) -> (M, e) -> 0.

struct LiftedSequence {
  ModuleMorphism lambda;  // L -> C
  ModuleMorphism pi;      // C -> M
  ModuleMorphism h;       // C -> C with h pi = pi e
  DifferentialModule left_term;
  DifferentialModule middle;
  DifferentialModule right;
  DiffMorphism incl;  // [[-1, h], [0, lambda]]
  DiffMorphism proj;  // (pi e ; pi)

  bool lift_equation_holds() const { return compose(h, pi) == compose(pi, right.epsilon()); }
  bool is_exact() const {
    return incl.map().is_mono() && proj.map().is_epi() && compose(incl.map(), proj.map()).is_zero() &&
           left_term.total_dim() + right.total_dim() == middle.total_dim();
  }
  bool maps_intertwine() const {
    return compose(left_term.epsilon(), incl.map()) == compose(incl.map(), middle.epsilon()) &&
           compose(middle.epsilon(), proj.map()) == compose(proj.map(), right.epsilon());
  }
  bool left_is_sum() const { return left_term.underlying() == direct_sum_module(pi.source(), lambda.source()); }
};

inline LiftedSequence lift_step(const FreeModule& c, const ModuleMorphism& pi, const ModuleMorphism& lam,
                                const DifferentialModule& d) {
  const Representation& cm = c.rep();
  const Representation& m = d.underlying();
  const Scalar p = m.modulus();
  const std::size_t nv = m.dims().size();
  require(pi.source() == cm && pi.target() == m, ErrorKind::DimensionMismatch, "pi must run from C to M");
  require(pi.is_epi(), ErrorKind::NotEpi, "pi is not onto");
  require(lam.target() == cm && lam.is_mono() && compose(lam, pi).is_zero() &&
              lam.source().total_dim() + m.total_dim() == cm.total_dim(),
          ErrorKind::NotKernel, "lambda is not a kernel of pi");
  const Representation& l = lam.source();

  // h : C -> C, one generator at a time.
  std::vector<std::vector<Scalar>> images;
  for (std::size_t k = 0; k < c.rank(); ++k) {
    const std::size_t v = c.generators()[k];
    Matrix e(1, cm.dim(v), p);
    e.at(0, c.generator_coordinate(k)) = 1;
    Matrix t = product(product(e, pi.map(v)), d.epsilon().map(v));
    auto x = solve_through(pi.map(v), t);
    require(x.has_value(), ErrorKind::LiftFailed, "pi e does not factor through pi");
    images.emplace_back(x->row(0).begin(), x->row(0).end());
  }
  ModuleMorphism h = map_from_free(c, cm, images);
  require(compose(h, pi) == compose(pi, d.epsilon()), ErrorKind::LiftFailed, "lift equation fails");

  DifferentialModule middle = contractible(cm);
  Representation left = direct_sum_module(cm, l);
  std::vector<Matrix> incl_maps, eps_maps;
  for (std::size_t v = 0; v < nv; ++v) {
    Matrix inc = blocks2x2(-Matrix::identity(cm.dim(v), p), h.map(v), Matrix(l.dim(v), cm.dim(v), p), lam.map(v));
    auto e = solve_through(inc, product(inc, middle.epsilon().map(v)));
    require(e.has_value(), ErrorKind::ValidationFailed, "image of the inclusion is not stable under the differential");
    eps_maps.push_back(std::move(*e));
    incl_maps.push_back(std::move(inc));
  }
  DifferentialModule left_term = make_differential(left, ModuleMorphism(left, left, std::move(eps_maps)));
  DiffMorphism incl(left_term, middle, ModuleMorphism(left, middle.underlying(), std::move(incl_maps)));
  DiffMorphism proj(middle, d, map_from_contractible(middle, d, pi).map());

  LiftedSequence out{lam, pi, h, left_term, middle, d, incl, proj};
  require(out.is_exact(), ErrorKind::ValidationFailed, "lifted sequence is not exact");
  return out;
}

// ---------------------------------------------------------------------------
// Resolutions of differential modules by contractibles on projectives

/// ... -> RD(Q_1) -> RD(Q_0) -> (M, e) -> 0 with Q_i = C_0 (+) ... (+) C_i.
struct LiftedResolution {
  DifferentialModule target;
  ProjectiveResolution base;
  std::vector<FreeModule> q;              // Q_i
  std::vector<DifferentialModule> terms;  // RD(Q_i)
  std::vector<DiffMorphism> maps;         // q_i : RD(Q_i) -> RD(Q_{i-1}), q_0 onto the target
  std::vector<LiftedSequence> steps;
  std::vector<Subobject> kernels;  // Ker q_i
  /// is_isomorphic(Ker q_i, Q_i (+) M_{i+1}) for each i.
  std::vector<IsoVerdict> kernel_checks;
  /// The target was already projective and is resolved by one term.
  bool projective_target = false;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }

  bool is_exact() const {
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const ModuleMorphism& f = maps[i].map();
      if (i == 0) {
        if (!f.is_epi()) return false;
        continue;
      }
      const ModuleMorphism& g = maps[i - 1].map();
      if (!compose(f, g).is_zero()) return false;
      if (f.rank() + g.rank() != terms[i - 1].total_dim()) return false;
    }
    return true;
  }

  bool terms_contractible_on_projectives() const {
    for (std::size_t i = 0; i < terms.size(); ++i)
      if (!(terms[i] == contractible(q[i].rep())) || !is_projective(q[i].rep())) return false;
    return true;
  }

  bool q_dimensions_match() const {
    if (projective_target) return true;
    std::size_t acc = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      acc += base.terms[i].rep().total_dim();
      if (q[i].rep().total_dim() != acc) return false;
    }
    return true;
  }

  /// sum (-1)^i dim RD(Q_i) = dim D + (-1)^n dim Ker q_n.
  bool euler_holds() const {
    if (terms.empty()) return target.total_dim() == 0;
    long long s = 0;
    for (std::size_t i = 0; i < terms.size(); ++i)
      s += (i % 2 ? -1 : 1) * static_cast<long long>(terms[i].total_dim());
    long long k = static_cast<long long>(kernels.back().module.total_dim());
    return s == static_cast<long long>(target.total_dim()) + (length() % 2 ? -k : k);
  }
};

namespace detail {

// Generators of a Lambda-projective D as a direct sum of RD(P_v)'s: lifts of
// a basis of the Lambda-top.
inline std::optional<std::pair<FreeModule, ModuleMorphism>> contractible_generators(const DifferentialModule& d) {
  Representation lm = to_lambda_module(d);
  if (!is_projective(lm)) return std::nullopt;
  auto cover = projective_cover(lm);
  const AlgebraPtr& a = d.algebra();
  std::vector<std::size_t> gens = cover.projective.generators();
  std::vector<std::vector<Scalar>> images;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::size_t v = gens[k];
    const Matrix& pm = cover.pi.map(v);
    auto r = pm.row(cover.projective.generator_coordinate(k));
    images.emplace_back(r.begin(), r.end());
  }
  FreeModule q(a, gens);
  return std::make_pair(q, map_from_free(q, d.underlying(), images));
}

}  // namespace detail

namespace detail {

/// Yes when f : X -> N corestricts to an isomorphism X -> K onto the
/// subobject K of N; otherwise the generic isomorphism test decides.
inline IsoVerdict iso_onto(const ModuleMorphism& f, const Subobject& k) {
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < f.maps().size(); ++v) {
    auto x = solve_through(k.inclusion.map(v), f.map(v));
    if (!x) return is_isomorphic(f.source(), k.module);
    maps.push_back(std::move(*x));
  }
  if (ModuleMorphism::trusted(f.source(), k.module, std::move(maps)).is_iso()) return IsoVerdict::Yes;
  return is_isomorphic(f.source(), k.module);
}

}  // namespace detail

inline LiftedResolution lift_resolution(const DifferentialModule& d, std::size_t length) {
  LiftedResolution out{d, projective_resolution(d.underlying(), length, true), {}, {}, {}, {}, {}, {}, false};
  if (d.total_dim() == 0) return out;
  const Scalar p = d.underlying().modulus();
  const std::size_t nv = d.underlying().dims().size();

  if (auto gen = detail::contractible_generators(d)) {
    out.projective_target = true;
    DifferentialModule t = contractible(gen->first.rep());
    DiffMorphism q0 = map_from_contractible(t, d, gen->second);
    require(q0.map().is_iso(), ErrorKind::ValidationFailed, "projective differential module is not contractible");
    out.q.push_back(gen->first);
    out.terms.push_back(t);
    out.maps.push_back(q0);
    out.kernels.push_back(kernel(q0.map()));
    out.kernel_checks.push_back(IsoVerdict::Yes);
    return out;
  }

  const ProjectiveResolution& base = out.base;
  DifferentialModule right = d;
  for (std::size_t i = 0; i <= length; ++i) {
    FreeModule qi = i == 0 ? base.terms[0] : concat(out.q.back(), base.terms[i]);
    ModuleMorphism pi = base.covers[0];
    ModuleMorphism lam = base.syzygies[0].inclusion;
    if (i > 0) {
      const Representation& prev = out.q.back().rep();
      auto sum = direct_sum_map(ModuleMorphism::identity(prev), base.covers[i]);
      pi = ModuleMorphism::trusted(qi.rep(), right.underlying(), sum.maps());
      const Subobject& syz = base.syzygies[i];
      std::vector<Matrix> lmaps;
      for (std::size_t v = 0; v < nv; ++v)
        lmaps.push_back(hstack({Matrix(syz.module.dim(v), prev.dim(v), p), syz.inclusion.map(v)}));
      lam = ModuleMorphism::trusted(syz.module, qi.rep(), std::move(lmaps));
    }
    LiftedSequence step = lift_step(qi, pi, lam, right);
    DiffMorphism qmap = i == 0 ? step.proj : compose(step.proj, out.steps.back().incl);
    auto ker = kernel(qmap.map());
    Representation expected = direct_sum_module(qi.rep(), base.syzygy(i + 1));
    out.kernel_checks.push_back(step.left_term.underlying() == expected ? detail::iso_onto(step.incl.map(), ker)
                                                                        : is_isomorphic(ker.module, expected));
    out.q.push_back(qi);
    out.terms.push_back(step.middle);
    out.maps.push_back(qmap);
    out.kernels.push_back(ker);
    right = step.left_term;
    out.steps.push_back(std::move(step));
  }
  require(out.is_exact(), ErrorKind::ValidationFailed, "lifted resolution is not exact");
  return out;
}

// ---------------------------------------------------------------------------
// Coresolutions by contractibles on injectives, through duality

/// 0 -> (M, e) -> RD(I_0) -> RD(I_1) -> ... obtained by dualizing a lifted
/// resolution of D(M, e) over the opposite algebra.
struct LiftedCoresolution {
  DifferentialModule target;
  LiftedResolution dual;
  std::vector<Representation> injectives;  // I_i = D Q_i
  std::vector<DifferentialModule> terms;   // RD(I_i)
  std::vector<DiffMorphism> maps;          // q_0 : D -> RD(I_0), q_i : RD(I_{i-1}) -> RD(I_i)
  std::vector<Quotient> cokernels;         // Coker q_i
  /// is_isomorphic(Coker q_i, D(M'_{i+1}) (+) I_i) for each i.
  std::vector<IsoVerdict> cokernel_checks;

  std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }

  bool is_exact() const {
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const ModuleMorphism& f = maps[i].map();
      if (i == 0) {
        if (!f.is_mono()) return false;
        continue;
      }
      const ModuleMorphism& g = maps[i - 1].map();
      if (!compose(g, f).is_zero()) return false;
      if (f.rank() + g.rank() != terms[i - 1].total_dim()) return false;
    }
    return true;
  }

  bool euler_holds() const {
    if (terms.empty()) return target.total_dim() == 0;
    long long s = 0;
    for (std::size_t i = 0; i < terms.size(); ++i)
      s += (i % 2 ? -1 : 1) * static_cast<long long>(terms[i].total_dim());
    long long k = static_cast<long long>(cokernels.back().module.total_dim());
    return s == static_cast<long long>(target.total_dim()) + (length() % 2 ? -k : k);
  }
};

namespace detail {

// (a, b) -> (b, a) on X (+) X; intertwines the dual of the contractible
// differential with the standard one.
inline ModuleMorphism swap_halves(const Representation& xx, const Representation& yy) {
  const Scalar p = xx.modulus();
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < xx.dims().size(); ++v) {
    const std::size_t n = xx.dim(v) / 2;
    Matrix z(n, n, p);
    maps.push_back(blocks2x2(z, Matrix::identity(n, p), Matrix::identity(n, p), z));
  }
  return ModuleMorphism::trusted(xx, yy, std::move(maps));
}

}  // namespace detail

inline LiftedCoresolution lift_coresolution(const DifferentialModule& d, std::size_t length) {
  LiftedCoresolution out{d, lift_resolution(dualize(d), length), {}, {}, {}, {}, {}};
  const LiftedResolution& r = out.dual;
  std::vector<ModuleMorphism> to_std, from_std;
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    Representation inj = dualize(r.q[i].rep());
    DifferentialModule dual_term = dualize(r.terms[i]);
    DifferentialModule std_term = contractible(inj);
    out.injectives.push_back(inj);
    out.terms.push_back(std_term);
    to_std.push_back(detail::swap_halves(dual_term.underlying(), std_term.underlying()));
    from_std.push_back(detail::swap_halves(std_term.underlying(), dual_term.underlying()));
  }
  for (std::size_t i = 0; i < r.maps.size(); ++i) {
    ModuleMorphism dq = dualize(r.maps[i].map());
    ModuleMorphism f = i == 0 ? ModuleMorphism::trusted(d.underlying(), to_std[0].source(), dq.maps())
                              : compose(from_std[i - 1], dq);
    f = compose(f, to_std[i]);
    DifferentialModule src = i == 0 ? d : out.terms[i - 1];
    DiffMorphism qi(src, out.terms[i], f);
    out.cokernels.push_back(cokernel(qi.map()));
    Representation expected = r.projective_target
                                  ? Representation::zero(d.algebra())
                                  : direct_sum_module(dualize(r.base.syzygy(i + 1)), out.injectives[i]);
    out.cokernel_checks.push_back(is_isomorphic(out.cokernels.back().module, expected));
    out.maps.push_back(std::move(qi));
  }
  require(out.is_exact(), ErrorKind::ValidationFailed, "lifted coresolution is not exact");
  return out;
}

// ---------------------------------------------------------------------------
// Ext

struct Periodicity {
  std::size_t lead;    // first syzygy index of the repeating block
  std::size_t period;  // Omega^{lead + period} ~ Omega^lead
};

struct ExtTable {
  Representation source;
  Representation target;
  std::size_t horizon = 0;
  std::vector<std::size_t> dims;  // dims[i] = dim Ext^i, i = 0..horizon
  std::optional<Periodicity> periodicity;
};

namespace detail {

// Matrix of Hom(c, N) : Hom(C_{i-1}, N) -> Hom(C_i, N) in generator
// coordinates, where c : C_i -> C_{i-1} is a map of free modules.
inline Matrix hom_coboundary(const FreeModule& from, const FreeModule& to, const ModuleMorphism& c,
                             const Representation& n, BasisActions& act) {
  const Algebra& a = *n.algebra();
  const Scalar p = n.modulus();
  std::vector<std::size_t> row_off{0}, col_off{0};
  for (auto v : to.generators()) row_off.push_back(row_off.back() + n.dim(v));
  for (auto v : from.generators()) col_off.push_back(col_off.back() + n.dim(v));
  Matrix out(row_off.back(), col_off.back(), p);
  for (std::size_t g2 = 0; g2 < from.rank(); ++g2) {
    const std::size_t w = from.generators()[g2];
    auto image = c.map(w).row(from.generator_coordinate(g2));
    for (std::size_t g1 = 0; g1 < to.rank(); ++g1)
      for (auto b : a.paths_from(to.generators()[g1])) {
        if (a.basis()[b].target != w) continue;
        Scalar coeff = image[to.coordinate(g1, b)];
        if (coeff == 0) continue;
        const Matrix& nb = act(b);
        for (std::size_t r = 0; r < nb.rows(); ++r)
          for (std::size_t s = 0; s < nb.cols(); ++s)
            if (nb(r, s)) {
              Scalar& e = out.at(row_off[g1] + r, col_off[g2] + s);
              e = fp::add(e, fp::mul(coeff, nb(r, s), p), p);
            }
      }
  }
  return out;
}

inline std::size_t cochain_dim(const FreeModule& f, const Representation& n) {
  std::size_t s = 0;
  for (auto v : f.generators()) s += n.dim(v);
  return s;
}

inline std::optional<Periodicity> detect_periodicity(const ProjectiveResolution& res, std::size_t upto) {
  const std::size_t last = std::min(upto, res.syzygies.size());
  for (std::size_t j = 1; j <= last; ++j) {
    const Representation& sj = res.syzygy(j);
    if (sj.is_zero()) return std::nullopt;
    for (std::size_t i = 0; i < j; ++i)
      if (is_isomorphic(res.syzygy(i), sj) == IsoVerdict::Yes) return Periodicity{i, j - i};
  }
  return std::nullopt;
}

}  // namespace detail

/// dim Ext^i(M, N) for i = 0..horizon from the cochain complex Hom(C_*, N).
inline ExtTable ext_dim(const ProjectiveResolution& res, const Representation& n, std::size_t horizon) {
  require(res.target.same_algebra(n), ErrorKind::AlgebraMismatch, "Ext between modules over different algebras");
  ExtTable t{res.target, n, horizon, std::vector<std::size_t>(horizon + 1, 0), std::nullopt};
  detail::BasisActions act(n);
  std::vector<std::size_t> cdim, rk;  // rk[i] = rank of Hom(C_{i-1}, N) -> Hom(C_i, N)
  for (std::size_t i = 0; i < res.terms.size(); ++i) cdim.push_back(detail::cochain_dim(res.terms[i], n));
  rk.push_back(0);
  for (std::size_t i = 1; i < res.terms.size(); ++i)
    rk.push_back(rank(detail::hom_coboundary(res.terms[i], res.terms[i - 1], res.map(i), n, act)));
  for (std::size_t i = 0; i <= horizon; ++i) {
    if (i >= res.terms.size()) {
      require(res.terminated, ErrorKind::InvalidInput, "resolution is too short for the requested horizon");
      break;
    }
    const std::size_t out = i + 1 < res.terms.size() ? rk[i + 1] : 0;
    require(i + 1 < res.terms.size() || res.terminated, ErrorKind::InvalidInput,
            "resolution is too short for the requested horizon");
    t.dims[i] = cdim[i] - out - rk[i];
  }
  return t;
}

inline ExtTable ext_dim(const Representation& m, const Representation& n, std::size_t horizon) {
  if (m.is_zero()) return {m, n, horizon, std::vector<std::size_t>(horizon + 1, 0), std::nullopt};
  auto res = projective_resolution(m, horizon + 1);
  ExtTable t = ext_dim(res, n, horizon);
  t.periodicity = detail::detect_periodicity(res, horizon);
  return t;
}

inline ExtTable ext_dim(const DifferentialModule& d1, const DifferentialModule& d2, std::size_t horizon) {
  return ext_dim(to_lambda_module(d1), to_lambda_module(d2), horizon);
}

/// Ext^i(M, N) recomputed from the syzygy Omega^i M alone:
/// dim Hom(Omega^i, N) - dim Hom(C_{i-1}, N) + dim Hom(Omega^{i-1}, N) for i >= 1.
inline std::vector<std::size_t> ext_by_dimension_shift(const Representation& m, const Representation& n,
                                                       std::size_t horizon) {
  std::vector<std::size_t> out(horizon + 1, 0);
  out[0] = hom_dim(m, n);
  if (m.is_zero()) return out;
  auto res = projective_resolution(m, horizon, true);
  for (std::size_t i = 1; i <= horizon; ++i) {
    long long v = static_cast<long long>(hom_dim(res.syzygy(i), n)) -
                  static_cast<long long>(hom_dim(res.terms[i - 1].rep(), n)) +
                  static_cast<long long>(hom_dim(res.syzygy(i - 1), n));
    out[i] = static_cast<std::size_t>(v);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Properness of exact sequences

enum class Variance { Covariant, Contravariant };

/// objects[0] -> objects[1] -> ... with maps[i] : objects[i] -> objects[i+1].
/// zero_left / zero_right mark a 0 beyond the respective end.
template <class Obj, class Mor>
struct Sequence {
  std::vector<Obj> objects;
  std::vector<Mor> maps;
  bool zero_left = false;
  bool zero_right = false;
};

using ModuleSequence = Sequence<Representation, ModuleMorphism>;
using DiffSequence = Sequence<DifferentialModule, DiffMorphism>;

struct ProperCertificate {
  bool proper = true;
  std::optional<std::size_t> test_index;  // failing member of the test class
  std::optional<std::size_t> position;    // object index where Hom fails to be exact
};

namespace detail {

inline const ModuleMorphism& module_map(const ModuleMorphism& f) { return f; }
inline const ModuleMorphism& module_map(const DiffMorphism& f) { return f.map(); }
inline const Representation& module_of(const Representation& m) { return m; }
inline const Representation& module_of(const DifferentialModule& d) { return d.underlying(); }

inline std::vector<ModuleMorphism> hom_space(const Representation& a, const Representation& b) { return hom_basis(a, b); }
inline std::vector<ModuleMorphism> hom_space(const DifferentialModule& a, const DifferentialModule& b) {
  std::vector<DiffMorphism> fs;
  if (auto x = contractible_base(a))
    fs = hom_from_contractible(*x, b).basis;
  else if (auto y = contractible_base(b))
    fs = hom_to_contractible(a, *y).basis;
  else
    fs = hom_diff(a, b);
  std::vector<ModuleMorphism> out;
  for (const auto& f : fs) out.push_back(f.map());
  return out;
}

inline std::size_t span_rank(const std::vector<ModuleMorphism>& fs) {
  if (fs.empty()) return 0;
  return rank(flatten_all(fs, flat_width(fs[0].source(), fs[0].target()), fs[0].source().modulus()));
}

template <class Obj, class Mor>
bool sequence_exact(const Sequence<Obj, Mor>& s) {
  const std::size_t n = s.objects.size();
  for (std::size_t j = 0; j < n; ++j) {
    const bool has_in = j > 0, has_out = j + 1 < n;
    if (!has_in && !s.zero_left) continue;
    if (!has_out && !s.zero_right) continue;
    std::size_t r_in = has_in ? module_map(s.maps[j - 1]).rank() : 0;
    std::size_t r_out = has_out ? module_map(s.maps[j]).rank() : 0;
    if (has_in && has_out && !compose(module_map(s.maps[j - 1]), module_map(s.maps[j])).is_zero()) return false;
    if (r_in + r_out != module_of(s.objects[j]).total_dim()) return false;
  }
  return true;
}

}  // namespace detail

template <class Obj, class Mor>
bool is_exact(const Sequence<Obj, Mor>& s) {
  return detail::sequence_exact(s);
}

/// Hom(C, seq) (covariant) or Hom(seq, C) (contravariant) is exact for every C
/// in the test class; the certificate names the first failure.
template <class Obj, class Mor>
ProperCertificate is_proper(const Sequence<Obj, Mor>& s, const std::vector<Obj>& tests, Variance variance) {
  require(detail::sequence_exact(s), ErrorKind::NotExact, "sequence is not exact");
  const std::size_t n = s.objects.size();
  for (std::size_t t = 0; t < tests.size(); ++t) {
    std::vector<std::vector<ModuleMorphism>> homs;
    for (const auto& o : s.objects)
      homs.push_back(variance == Variance::Covariant ? detail::hom_space(tests[t], o) : detail::hom_space(o, tests[t]));
    // Rank of the induced map between Hom groups at objects j and j+1.
    auto induced_rank = [&](std::size_t j) {
      std::vector<ModuleMorphism> images;
      const ModuleMorphism& f = detail::module_map(s.maps[j]);
      if (variance == Variance::Covariant)
        for (const auto& g : homs[j]) images.push_back(compose(g, f));
      else
        for (const auto& g : homs[j + 1]) images.push_back(compose(f, g));
      return detail::span_rank(images);
    };
    std::vector<std::size_t> r;
    for (std::size_t j = 0; j + 1 < n; ++j) r.push_back(induced_rank(j));
    for (std::size_t j = 0; j < n; ++j) {
      const bool has_in = j > 0, has_out = j + 1 < n;
      // Under Hom(-, C) the arrows reverse, and so do the ends.
      if (!has_in && !s.zero_left) continue;
      if (!has_out && !s.zero_right) continue;
      std::size_t through = (has_in ? r[j - 1] : 0) + (has_out ? r[j] : 0);
      if (through != homs[j].size()) return {false, t, j};
    }
  }
  return {};
}

/// The base resolution C_n -> ... -> C_0 -> M -> 0 as a sequence.
inline ModuleSequence as_sequence(const ProjectiveResolution& res) {
  ModuleSequence s;
  for (std::size_t i = res.terms.size(); i-- > 0;) {
    s.objects.push_back(res.terms[i].rep());
    s.maps.push_back(res.map(i));
  }
  s.objects.push_back(res.target);
  s.zero_right = true;
  return s;
}

inline DiffSequence as_sequence(const LiftedResolution& res) {
  DiffSequence s;
  for (std::size_t i = res.terms.size(); i-- > 0;) {
    s.objects.push_back(res.terms[i]);
    s.maps.push_back(res.maps[i]);
  }
  s.objects.push_back(res.target);
  s.zero_right = true;
  return s;
}

inline DiffSequence as_sequence(const LiftedSequence& step) {
  return {{step.left_term, step.middle, step.right}, {step.incl, step.proj}, true, true};
}

inline ModuleSequence underlying_sequence(const DiffSequence& s) {
  ModuleSequence out;
  for (const auto& o : s.objects) out.objects.push_back(o.underlying());
  for (const auto& f : s.maps) out.maps.push_back(f.map());
  out.zero_left = s.zero_left;
  out.zero_right = s.zero_right;
  return out;
}

struct ProperComparison {
  ProperCertificate base;
  ProperCertificate lifted;
  bool agree() const { return base.proper == lifted.proper; }
};

/// Properness of a differential sequence against RD(X) for X in the test
/// class, next to properness of a base sequence against X itself.
inline ProperComparison compare_properness(const ModuleSequence& base, const DiffSequence& lifted,
                                           const std::vector<Representation>& tests, Variance variance) {
  std::vector<DifferentialModule> rd;
  for (const auto& x : tests) rd.push_back(contractible(x));
  return {is_proper(base, tests, variance), is_proper(lifted, rd, variance)};
}

}  // namespace diffmod
