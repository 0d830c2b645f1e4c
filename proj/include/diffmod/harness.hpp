#pragma once

// Module enumeration up to isomorphism and the two-route verification of the
// Gorenstein statements over every enumerated differential module.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "diffmod/diffcat.hpp"
#include "diffmod/gorenstein.hpp"
#include "diffmod/modrep.hpp"
#include "diffmod/resolve.hpp"

namespace diffmod {

// ---------------------------------------------------------------------------
// Subspace enumeration

/// Row-reduced bases of all subspaces of F_p^n of dimension r.
inline std::vector<Matrix> subspaces_of_dim(std::size_t n, std::size_t r, Scalar p) {
  std::vector<Matrix> out;
  if (r > n) return out;
  std::vector<std::size_t> piv(r);
  for (std::size_t i = 0; i < r; ++i) piv[i] = i;
  while (true) {
    // Free slots: entries right of each pivot, in non-pivot columns.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = piv[i] + 1; c < n; ++c)
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) slots.emplace_back(i, c);
    std::vector<Scalar> vals(slots.size(), 0);
    while (true) {
      Matrix m(r, n, p);
      for (std::size_t i = 0; i < r; ++i) m.at(i, piv[i]) = 1;
      for (std::size_t s = 0; s < slots.size(); ++s) m.at(slots[s].first, slots[s].second) = vals[s];
      out.push_back(std::move(m));
      std::size_t s = 0;
      for (; s < vals.size(); ++s) {
        if (++vals[s] < p) break;
        vals[s] = 0;
      }
      if (s == vals.size()) break;
    }
    // Next pivot combination.
    std::size_t i = r;
    while (i > 0 && piv[i - 1] == n - r + i - 1) --i;
    if (i == 0) break;
    ++piv[i - 1];
    for (std::size_t j = i; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Module enumeration

namespace detail {

struct ModuleInvariants {
  std::vector<std::size_t> dims, top, socle, rad;
  std::size_t end_dim;
  auto tie() const { return std::tie(dims, top, socle, rad, end_dim); }
  bool operator<(const ModuleInvariants& o) const { return tie() < o.tie(); }
};

inline ModuleInvariants invariants(const Representation& m) {
  return {m.dims(), top_dims(m), socle_dims(m), radical(m).module.dims(), hom_dim(m, m)};
}

class IsoClassCollector {
 public:
  /// True if m is new up to isomorphism (an undecided comparison counts as new).
  bool add(const Representation& m) {
    auto key = invariants(m);
    auto& bucket = buckets_[key];
    for (auto idx : bucket)
      if (is_isomorphic(out_[idx], m) == IsoVerdict::Yes) return false;
    bucket.push_back(out_.size());
    out_.push_back(m);
    return true;
  }
  std::vector<Representation> take() { return std::move(out_); }

 private:
  std::map<ModuleInvariants, std::vector<std::size_t>> buckets_;
  std::vector<Representation> out_;
};

// All vectors m with sum in [1, limit].
inline void top_vectors(std::size_t nv, std::size_t limit, std::vector<std::size_t>& cur,
                        std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == nv) {
    std::size_t s = 0;
    for (auto x : cur) s += x;
    if (s >= 1 && s <= limit) out.push_back(cur);
    return;
  }
  std::size_t used = 0;
  for (auto x : cur) used += x;
  for (std::size_t k = 0; used + k <= limit; ++k) {
    cur.push_back(k);
    top_vectors(nv, limit, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Nonzero modules of total dimension <= dim_max up to isomorphism, generated
/// as quotients P / K of projectives by submodules K of rad P.
inline std::vector<Representation> enumerate_modules(const AlgebraPtr& a, std::size_t dim_max) {
  const std::size_t nv = a->vertex_count();
  const Scalar p = a->modulus();
  detail::IsoClassCollector seen;
  std::vector<std::vector<std::size_t>> tops;
  std::vector<std::size_t> cur;
  detail::top_vectors(nv, dim_max, cur, tops);
  std::sort(tops.begin(), tops.end(), [](const auto& x, const auto& y) {
    std::size_t sx = 0, sy = 0;
    for (auto v : x) sx += v;
    for (auto v : y) sy += v;
    return std::tie(sx, x) < std::tie(sy, y);
  });
  for (const auto& m : tops) {
    std::vector<std::size_t> gens;
    for (std::size_t v = 0; v < nv; ++v)
      for (std::size_t k = 0; k < m[v]; ++k) gens.push_back(v);
    FreeModule f(a, gens);
    const Representation& pm = f.rep();
    auto rad = radical(pm);
    const std::size_t top_dim = gens.size();
    if (top_dim > dim_max) continue;
    const std::size_t budget = dim_max - top_dim;  // dim rad P - dim K <= budget
    // Per-vertex candidate subspaces of (rad P)_v with their codimension.
    std::vector<std::vector<Matrix>> cands(nv);
    std::vector<std::vector<std::size_t>> codims(nv);
    for (std::size_t v = 0; v < nv; ++v) {
      const std::size_t n = rad.module.dim(v);
      for (std::size_t c = 0; c <= std::min(n, budget); ++c)
        for (auto& s : subspaces_of_dim(n, n - c, p)) {
          cands[v].push_back(std::move(s));
          codims[v].push_back(c);
        }
    }
    std::vector<std::size_t> pick(nv, 0);
    while (true) {
      std::size_t codim = 0;
      for (std::size_t v = 0; v < nv; ++v) codim += codims[v][pick[v]];
      if (codim <= budget) {
        bool closed = true;
        for (std::size_t ar = 0; ar < a->arrow_count() && closed; ++ar) {
          const auto& arr = a->quiver().arrows()[ar];
          const Matrix& ks = cands[arr.source][pick[arr.source]];
          const Matrix& kt = cands[arr.target][pick[arr.target]];
          if (ks.rows() == 0) continue;
          Matrix img = product(ks, rad.module.action(ar));
          closed = solve_through(kt, img).has_value();
        }
        if (closed) {
          std::vector<Matrix> spans;
          for (std::size_t v = 0; v < nv; ++v)
            spans.push_back(product(cands[v][pick[v]], rad.inclusion.map(v)));
          seen.add(quotient(pm, spans).module);
        }
      }
      std::size_t v = 0;
      for (; v < nv; ++v) {
        if (++pick[v] < cands[v].size()) break;
        pick[v] = 0;
      }
      if (v == nv) break;
    }
  }
  return seen.take();
}

/// Raw enumeration over all dimension vectors and all arrow matrices; only
/// feasible for tiny dim_max. Used to cross-check enumerate_modules.
inline std::vector<Representation> enumerate_modules_raw(const AlgebraPtr& a, std::size_t dim_max) {
  const std::size_t nv = a->vertex_count();
  const Scalar p = a->modulus();
  detail::IsoClassCollector seen;
  std::vector<std::vector<std::size_t>> dvs;
  std::vector<std::size_t> cur;
  detail::top_vectors(nv, dim_max, cur, dvs);
  for (const auto& dims : dvs) {
    std::size_t entries = 0;
    for (const auto& arr : a->quiver().arrows()) entries += dims[arr.source] * dims[arr.target];
    std::vector<Scalar> vals(entries, 0);
    while (true) {
      std::vector<Matrix> actions;
      std::size_t t = 0;
      for (const auto& arr : a->quiver().arrows()) {
        Matrix m(dims[arr.source], dims[arr.target], p);
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = vals[t++];
        actions.push_back(std::move(m));
      }
      try {
        Representation rep(a, dims, std::move(actions));
        seen.add(rep);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RelationViolated) throw;
      }
      std::size_t s = 0;
      for (; s < vals.size(); ++s) {
        if (++vals[s] < p) break;
        vals[s] = 0;
      }
      if (s == vals.size()) break;
    }
  }
  return seen.take();
}

// ---------------------------------------------------------------------------
// Theorem verification harness

struct HarnessOptions {
  std::size_t dim_max = 3;
  std::size_t horizon = 6;
  std::size_t injective_cap = 8;
  std::uint64_t enumeration_bound = std::uint64_t{1} << 20;
  std::size_t threads = 0;  // 0: DIFFMOD_THREADS or hardware concurrency
  bool ext_transfer = true;
};

inline std::size_t worker_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0)
    if (const char* env = std::getenv("DIFFMOD_THREADS")) n = static_cast<std::size_t>(std::strtoul(env, nullptr, 10));
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

struct InstanceResult {
  std::size_t module_index = 0;
  std::size_t epsilon_index = 0;
  std::vector<std::size_t> dims;
  std::size_t eps_rank = 0;
  GpPair gp;
  GpPair gi;
  DimensionPair gpd;
  DimensionPair gid;
  std::size_t ext_pairs = 0;
  std::size_t ext_agreements = 0;
  std::size_t ext_degreewise = 0;
  std::vector<std::string> discrepancies;
};

struct HarnessReport {
  std::string algebra;
  GorensteinSetting setting;
  std::size_t modules = 0;
  std::size_t instances = 0;
  std::size_t gp_agreements = 0;
  std::size_t gi_agreements = 0;
  std::size_t gpd_equalities = 0;
  std::size_t gid_equalities = 0;
  std::size_t ext_transfer_pairs = 0;
  std::size_t ext_transfer_agreements = 0;
  std::size_t ext_transfer_degreewise = 0;
  std::size_t ground_truth_checks = 0;
  std::optional<std::size_t> max_gpd_base;
  std::optional<std::size_t> max_gpd_diff;
  std::vector<std::string> discrepancies;
  std::vector<InstanceResult> results;
};

inline std::vector<Representation> ext_test_modules(const AlgebraPtr& a) {
  std::vector<Representation> xs = simple_modules(a);
  for (auto& m : indecomposable_projectives(a)) xs.push_back(m);
  for (auto& m : indecomposable_injectives(a)) xs.push_back(m);
  return xs;
}

namespace detail {

inline std::string instance_key(std::size_t m, std::size_t e) {
  return "M" + std::to_string(m) + ".e" + std::to_string(e);
}

inline std::string dim_string(const std::optional<std::size_t>& d) { return d ? std::to_string(*d) : "inf"; }

inline InstanceResult check_instance(const GorensteinSetting& s, std::size_t mi, std::size_t ei,
                                     const DifferentialModule& d, const std::vector<Representation>& xs,
                                     const HarnessOptions& opts) {
  InstanceResult r;
  r.module_index = mi;
  r.epsilon_index = ei;
  r.dims = d.underlying().dims();
  r.eps_rank = d.epsilon().rank();
  const std::string key = instance_key(mi, ei);
  r.gp = is_gp_diff(d, s.p_lambda, s.p_base);
  r.gi = is_gi_diff(d, s.p_lambda_op, s.p_base_op);
  r.gpd = gpd_diff(d, s);
  r.gid = gid_diff(d, s);
  if (!r.gp.agree()) r.discrepancies.push_back(key + ": GP verdicts differ");
  if (!r.gi.agree()) r.discrepancies.push_back(key + ": GI verdicts differ");
  if (!r.gpd.agree())
    r.discrepancies.push_back(key + ": Gpd " + dim_string(r.gpd.direct) + " vs " + dim_string(r.gpd.via_underlying));
  if (!r.gid.agree())
    r.discrepancies.push_back(key + ": Gid " + dim_string(r.gid.direct) + " vs " + dim_string(r.gid.via_underlying));

  const std::size_t g = std::max(s.p_base.g(), s.p_base_op.g());
  if (g == 0 && !(r.gp.direct.verdict && r.gp.via_underlying.verdict))
    r.discrepancies.push_back(key + ": self-injective algebra but not GP");
  if (s.base->hereditary() && r.gp.via_underlying.verdict != is_projective(d.underlying()))
    r.discrepancies.push_back(key + ": hereditary algebra but GP differs from projective");

  if (opts.ext_transfer) {
    Representation lm = to_lambda_module(d);
    auto lres = projective_resolution(lm, opts.horizon + 1);
    auto bres = projective_resolution(d.underlying(), opts.horizon + 1);
    for (std::size_t xi = 0; xi < xs.size(); ++xi) {
      ExtTable lt = ext_dim(lres, to_lambda_module(contractible(xs[xi])), opts.horizon);
      ExtTable bt = ext_dim(bres, xs[xi], opts.horizon);
      auto vanish = [](const ExtTable& t) {
        return std::all_of(t.dims.begin() + 1, t.dims.end(), [](std::size_t v) { return v == 0; });
      };
      ++r.ext_pairs;
      if (vanish(lt) == vanish(bt))
        ++r.ext_agreements;
      else
        r.discrepancies.push_back(key + ": Ext vanishing differs against X" + std::to_string(xi));
      if (std::equal(lt.dims.begin() + 1, lt.dims.end(), bt.dims.begin() + 1, bt.dims.end())) ++r.ext_degreewise;
    }
  }
  return r;
}

}  // namespace detail

inline HarnessReport verify_theorems(const AlgebraPtr& a, const HarnessOptions& opts = {}) {
  HarnessReport rep;
  rep.algebra = a->key();
  rep.setting = GorensteinSetting::make(a, opts.injective_cap);
  require(rep.setting.finite(), ErrorKind::ProfileInfinite,
          "injective dimension of a regular module exceeds the cap; GP verdicts are undecidable here");
  const GorensteinSetting& s = rep.setting;
  auto modules = enumerate_modules(a, opts.dim_max);
  rep.modules = modules.size();
  std::vector<std::vector<DifferentialModule>> diffs;
  for (const auto& m : modules) diffs.push_back(enumerate_differentials(m, {opts.enumeration_bound}));
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < diffs.size(); ++i)
    for (std::size_t j = 0; j < diffs[i].size(); ++j) jobs.emplace_back(i, j);
  const auto xs = ext_test_modules(a);

  rep.results.resize(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::optional<Error> failure;
  auto work = [&]() {
    while (true) {
      const std::size_t k = next++;
      if (k >= jobs.size()) return;
      auto [mi, ei] = jobs[k];
      try {
        rep.results[k] = detail::check_instance(s, mi, ei, diffs[mi][ei], xs, opts);
      } catch (const Error& e) {
        std::lock_guard lock(err_mu);
        if (!failure) failure = e;
        next = jobs.size();
      }
    }
  };
  const std::size_t nthreads = std::min(worker_count(opts.threads), std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) throw *failure;

  rep.instances = jobs.size();
  const std::size_t cap = s.dimension_cap();
  for (const auto& m : modules) {
    auto g = gpd(m, s.p_base, cap);
    if (g && (!rep.max_gpd_base || *g > *rep.max_gpd_base)) rep.max_gpd_base = g;
  }
  for (const auto& r : rep.results) {
    rep.gp_agreements += r.gp.agree() ? 1 : 0;
    rep.gi_agreements += r.gi.agree() ? 1 : 0;
    rep.gpd_equalities += r.gpd.agree() ? 1 : 0;
    rep.gid_equalities += r.gid.agree() ? 1 : 0;
    rep.ext_transfer_pairs += r.ext_pairs;
    rep.ext_transfer_agreements += r.ext_agreements;
    rep.ext_transfer_degreewise += r.ext_degreewise;
    if (r.gpd.direct && (!rep.max_gpd_diff || *r.gpd.direct > *rep.max_gpd_diff)) rep.max_gpd_diff = r.gpd.direct;
    for (const auto& d : r.discrepancies) rep.discrepancies.push_back(d);
  }
  const std::size_t g = std::max(s.p_base.g(), s.p_base_op.g());
  if (g == 0 || a->hereditary()) rep.ground_truth_checks = rep.instances;
  if (rep.max_gpd_base != rep.max_gpd_diff)
    rep.discrepancies.push_back("max Gpd differs: base " + detail::dim_string(rep.max_gpd_base) + ", differential " +
                                detail::dim_string(rep.max_gpd_diff));
  return rep;
}

}  // namespace diffmod
