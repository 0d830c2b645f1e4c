// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>

#include "diffmod/harness.hpp"
#include "diffmod/io.hpp"

using namespace diffmod;

namespace {

const char* const kAlgebras[] = {"f2_dual_numbers.json", "a2_path.json", "f3_x3.json", "t2_gorenstein.json"};

AlgebraPtr load(const std::string& name) { return io::load_algebra(std::string(DIFFMOD_DATA_DIR) + "/" + name); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

bool run(int id, const std::string& title, double limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.fail(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= limit_s) v.fail("runtime " + std::to_string(s) + " s over the limit");
  std::printf("%s criterion %d: %s | %s| %.2f s (limit %.0f s)\n", v.pass ? "PASS" : "FAIL", id, title.c_str(),
              v.detail.str().c_str(), s, limit_s);
  std::fflush(stdout);
  return v.pass;
}

// The harness corpus: every module of dim <= 3 with every differential.
struct Corpus {
  AlgebraPtr algebra;
  std::vector<Representation> modules;
  std::vector<DifferentialModule> diffs;
};

Corpus corpus(const AlgebraPtr& a) {
  Corpus c{a, enumerate_modules(a, 3), {}};
  for (const auto& m : c.modules)
    for (auto& d : enumerate_differentials(m)) c.diffs.push_back(d);
  return c;
}

}  // namespace

int main() {
  bool ok = true;
  std::map<std::string, Corpus> corpora;
  std::map<std::string, std::vector<LiftedResolution>> lifted;
  std::map<std::string, HarnessReport> reports;

  ok &= run(1, "hom into and out of contractibles matches Hom over A (dim M <= 4, all e, dim X <= 3)", 60,
            [&](Verdict& v) {
              std::size_t checks = 0, eps = 0;
              for (const char* name : kAlgebras) {
                auto a = load(name);
                auto ms = enumerate_modules(a, 4);
                auto xs = enumerate_modules(a, 3);
                std::vector<DifferentialModule> rd;
                for (const auto& x : xs) rd.push_back(contractible(x));
                for (const auto& m : ms) {
                  std::vector<std::size_t> into, from;
                  for (const auto& x : xs) {
                    into.push_back(hom_dim(m, x));
                    from.push_back(hom_dim(x, m));
                  }
                  for (const auto& d : enumerate_differentials(m, {.bound = std::uint64_t{1} << 26})) {
                    ++eps;
                    for (std::size_t i = 0; i < xs.size(); ++i) {
                      checks += 2;
                      if (hom_diff_dim(d, rd[i]) != into[i]) v.fail(std::string(name) + " hom(D, RD(X))");
                      if (hom_diff_dim(rd[i], d) != from[i]) v.fail(std::string(name) + " hom(RD(X), D)");
                    }
                  }
                }
              }
              v.detail << eps << " differential modules, " << checks << " equalities ";
            });

  ok &= run(2, "lifted resolutions to length 6: exact, contractible on projectives, dim Q_i, Ker q_i", 60,
            [&](Verdict& v) {
              std::size_t count = 0, isos = 0;
              for (const char* name : kAlgebras) {
                corpora.emplace(name, corpus(load(name)));
                auto& out = lifted[name];
                for (const auto& d : corpora.at(name).diffs) {
                  out.push_back(lift_resolution(d, 6));
                  const auto& r = out.back();
                  ++count;
                  if (!r.is_exact()) v.fail(std::string(name) + " not exact");
                  if (!r.terms_contractible_on_projectives()) v.fail(std::string(name) + " term shape");
                  if (!r.q_dimensions_match()) v.fail(std::string(name) + " dim Q_i");
                  if (!r.projective_target && r.length() != 6) v.fail(std::string(name) + " short resolution");
                  for (auto k : r.kernel_checks) {
                    ++isos;
                    if (k != IsoVerdict::Yes) v.fail(std::string(name) + " Ker q_i iso " + std::string(to_string(k)));
                  }
                }
              }
              v.detail << count << " resolutions, " << isos << " kernel isomorphisms ";
            });

  ok &= run(3, "properness of base and lifted resolutions agrees for every X with dim <= 3", 60, [&](Verdict& v) {
    std::size_t pairs = 0, proper = 0;
    for (const char* name : kAlgebras) {
      const auto& c = corpora.at(name);
      for (const auto& r : lifted.at(name)) {
        auto base = as_sequence(r.base);
        auto seq = as_sequence(r);
        for (const auto& x : c.modules)
          for (auto var : {Variance::Covariant, Variance::Contravariant}) {
            auto cmp = compare_properness(base, seq, {x}, var);
            ++pairs;
            proper += cmp.lifted.proper;
            if (!cmp.agree()) v.fail(std::string(name) + " properness verdicts differ");
          }
      }
    }
    v.detail << pairs << " comparisons, " << proper << " proper ";
  });

  ok &= run(4, "Ext transfer: vanishing in degrees 1..6 agrees over Lambda and over A", 120, [&](Verdict& v) {
    std::size_t pairs = 0, periodic = 0, vanishing = 0;
    for (const char* name : kAlgebras) {
      const auto& c = corpora.at(name);
      auto xs = ext_test_modules(c.algebra);
      for (const auto& d : c.diffs)
        for (const auto& x : xs) {
          auto r = ext_transfer_check(d, x, 6);
          ++pairs;
          periodic += r.lambda_side.periodicity.has_value();
          vanishing += r.base_vanishes;
          if (!r.agree()) v.fail(std::string(name) + " vanishing patterns differ");
        }
    }
    v.detail << pairs << " pairs, " << vanishing << " vanishing, " << periodic << " with periodic syzygies ";
  });

  ok &= run(5, "GP and GI verdicts agree across routes; self-injective and hereditary ground truth", 180,
            [&](Verdict& v) {
              std::size_t instances = 0;
              for (const char* name : kAlgebras) {
                auto a = load(name);
                auto& rep = reports[name] = verify_theorems(a, {.dim_max = 3, .horizon = 6});
                instances += rep.instances;
                if (rep.gp_agreements != rep.instances) v.fail(std::string(name) + " GP routes disagree");
                if (rep.gi_agreements != rep.instances) v.fail(std::string(name) + " GI routes disagree");
                auto mods = enumerate_modules(a, 3);
                const bool self_injective = rep.setting.p_base.g() == 0;
                for (const auto& r : rep.results) {
                  if (self_injective && !(r.gp.direct.verdict && r.gi.direct.verdict))
                    v.fail(std::string(name) + " non-GP over a self-injective algebra");
                  if (a->hereditary() && r.gp.direct.verdict != is_projective(mods[r.module_index]))
                    v.fail(std::string(name) + " GP differs from projective over a hereditary algebra");
                }
              }
              v.detail << instances << " instances ";
            });

  ok &= run(6, "gpd and gid equal across routes; gpd((S1,0)) = 1 over 1->2; max gpd equal", 60, [&](Verdict& v) {
    std::size_t instances = 0;
    for (const char* name : kAlgebras) {
      const auto& rep = reports.at(name);
      instances += rep.instances;
      if (rep.gpd_equalities != rep.instances) v.fail(std::string(name) + " gpd differs");
      if (rep.gid_equalities != rep.instances) v.fail(std::string(name) + " gid differs");
      for (const auto& r : rep.results)
        if (!r.gpd.agree() || !r.gid.agree() || !r.gpd.direct || !r.gid.direct)
          v.fail(std::string(name) + " dimension pair");
      if (rep.max_gpd_base != rep.max_gpd_diff) v.fail(std::string(name) + " max gpd differs");
      v.detail << name << " max gpd " << detail::dim_string(rep.max_gpd_diff) << ", ";
    }
    auto a2 = load("a2_path.json");
    auto s = GorensteinSetting::make(a2);
    auto spot = gpd_diff(zero_differential(simple_module(a2, 0)), s);
    if (spot.direct != 1u || spot.via_underlying != 1u) v.fail("gpd((S1,0)) is not 1");
    v.detail << instances << " instances ";
  });

  ok &= run(7, "complete resolutions (window 3) verify for every GP verdict", 60, [&](Verdict& v) {
    std::size_t built = 0;
    for (const char* name : kAlgebras) {
      const auto& c = corpora.at(name);
      auto s = GorensteinSetting::make(c.algebra);
      for (const auto& d : c.diffs) {
        auto pair = is_gp_diff(d, s.p_lambda, s.p_base);
        if (!pair.direct.verdict) continue;
        for (const auto& [m, prof] : {std::pair{to_lambda_module(d), s.p_lambda}, std::pair{d.underlying(), s.p_base}}) {
          try {
            auto cr = complete_resolution(m, prof, 3);
            ++built;
            if (!cr.exact || !cr.hom_into_projectives.proper) v.fail(std::string(name) + " window check");
          } catch (const Error& e) {
            v.fail(std::string(name) + " " + e.what());
          }
        }
      }
    }
    if (built < 20) v.fail("fewer than 20 complete resolutions");
    v.detail << built << " complete resolutions ";
  });

  ok &= run(8, "indecomposable projective Lambda-modules are contractibles on projectives", 10, [&](Verdict& v) {
    std::size_t matched = 0;
    for (const char* name : kAlgebras) {
      auto a = load(name);
      auto ps = indecomposable_projectives(a);
      for (const auto& pl : indecomposable_projectives(a->dual_numbers())) {
        bool found = false;
        for (const auto& p : ps)
          if (is_isomorphic(pl, to_lambda_module(contractible(p))) == IsoVerdict::Yes) found = true;
        matched += found;
        if (!found) v.fail(std::string(name) + " unmatched projective");
      }
    }
    v.detail << matched << " projectives matched ";
  });

  std::printf("%s\n", ok ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return ok ? 0 : 1;
}
