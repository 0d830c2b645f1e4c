#include <gtest/gtest.h>

#include <random>

#include "diffmod/diffcat.hpp"
#include "fixtures.hpp"

using namespace diffmod;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

DifferentialModule x_on_regular() {
  auto reg = regular_module(fixtures::dual_numbers());
  return make_differential(reg, ModuleMorphism(reg, reg, {reg.action(0)}));
}

// Every tuple of vertex maps M -> N, as ModuleMorphism candidates that commute with the arrows.
std::vector<ModuleMorphism> brute_force_homs(const Representation& m, const Representation& n) {
  const AlgebraPtr& a = m.algebra();
  const Scalar p = m.modulus();
  const std::size_t width = flat_width(m, n);
  std::vector<Scalar> x(width, 0);
  std::vector<ModuleMorphism> out;
  for (;;) {
    std::vector<Matrix> maps;
    std::size_t off = 0;
    for (std::size_t v = 0; v < a->vertex_count(); ++v) {
      Matrix f(m.dim(v), n.dim(v), p);
      for (std::size_t i = 0; i < m.dim(v); ++i)
        for (std::size_t j = 0; j < n.dim(v); ++j) f.set(i, j, x[off++]);
      maps.push_back(f);
    }
    bool ok = true;
    for (std::size_t e = 0; e < a->arrow_count() && ok; ++e) {
      const auto& arr = a->quiver().arrows()[e];
      ok = product(m.action(e), maps[arr.target]) == product(maps[arr.source], n.action(e));
    }
    if (ok) out.push_back(ModuleMorphism::trusted(m, n, maps));
    std::size_t i = 0;
    while (i < width && ++x[i] == p) x[i++] = 0;
    if (i == width) break;
  }
  return out;
}

std::size_t log_p(std::size_t n, Scalar p) {
  std::size_t e = 0;
  while (n > 1) {
    n /= p;
    ++e;
  }
  return e;
}

std::vector<Representation> small_modules(const AlgebraPtr& a) {
  std::vector<Representation> out = simple_modules(a);
  for (const auto& p : indecomposable_projectives(a)) out.push_back(p);
  for (const auto& i : indecomposable_injectives(a)) out.push_back(i);
  return out;
}

}  // namespace

TEST(MakeDifferential, KnownValues) {
  auto f2 = fixtures::dual_numbers();
  auto reg = regular_module(f2);
  EXPECT_NO_THROW(make_differential(reg, ModuleMorphism::zero(reg, reg)));
  EXPECT_NO_THROW(x_on_regular());
  EXPECT_EQ(kind_of([&] { make_differential(reg, ModuleMorphism::identity(reg)); }), ErrorKind::NotSquareZero);
  auto s = simple_module(f2, 0);
  EXPECT_EQ(kind_of([&] { make_differential(reg, ModuleMorphism::zero(s, s)); }), ErrorKind::NotEndomorphism);
}

TEST(Contractible, KnownValues) {
  auto f2 = fixtures::dual_numbers();
  EXPECT_EQ(contractible(Representation::zero(f2)).total_dim(), 0u);
  auto c = contractible(simple_module(f2, 0));
  EXPECT_EQ(c.total_dim(), 2u);
  EXPECT_EQ(c.epsilon().rank(), 1u);
  EXPECT_TRUE(compose(c.epsilon(), c.epsilon()).is_zero());
  EXPECT_TRUE(is_contractible_shape(c));
  EXPECT_FALSE(is_contractible_shape(x_on_regular()));
}

TEST(Contractible, LiftingMapsMatchHomDimensions) {
  auto d = x_on_regular();
  auto f2 = d.algebra();
  auto s = simple_module(f2, 0);
  auto to_s = hom_to_contractible(d, s);
  EXPECT_EQ(to_s.basis.size(), 1u);
  EXPECT_EQ(hom_diff_dim(d, contractible(s)), 1u);
  auto from_a = hom_from_contractible(regular_module(f2), d);
  EXPECT_EQ(from_a.basis.size(), 2u);
  EXPECT_TRUE(hom_from_contractible(Representation::zero(f2), d).basis.empty());

  auto z = zero_differential(regular_module(f2));
  for (const auto& f : hom_from_contractible(s, z).basis)
    for (std::size_t v = 0; v < f.map().maps().size(); ++v)
      EXPECT_TRUE(submatrix(f.map().map(v), 0, s.dim(v), 0, f.map().map(v).cols()).is_zero());
}

TEST(Contractible, HomIntoAndOutOfContractiblesOnAllSmallModules) {
  std::mt19937_64 gen(21);
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    auto mods = small_modules(a);
    for (const auto& m : mods) {
      for (const auto& d : enumerate_differentials(m)) {
        for (const auto& x : mods) {
          EXPECT_EQ(hom_diff_dim(d, contractible(x)), hom_dim(m, x)) << name;
          EXPECT_EQ(hom_diff_dim(contractible(x), d), hom_dim(x, m)) << name;
          for (const auto& f : hom_to_contractible(d, x).basis)
            EXPECT_NO_THROW(DiffMorphism(f.source(), f.target(), f.map()));
          for (const auto& f : hom_from_contractible(x, d).basis)
            EXPECT_NO_THROW(DiffMorphism(f.source(), f.target(), f.map()));
        }
      }
    }
  }
}

TEST(Contractible, BaseIsRecovered) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    for (const auto& x : small_modules(a)) {
      auto back = contractible_base(contractible(x));
      ASSERT_TRUE(back.has_value()) << name;
      EXPECT_TRUE(*back == x) << name;
      EXPECT_FALSE(contractible_base(zero_differential(direct_sum_module(x, x))).has_value());
    }
  }
  EXPECT_FALSE(contractible_base(x_on_regular()).has_value());
}

namespace {

// Rank of Hom(f, C) or Hom(C, f) as a linear map, computed from spanning sets.
std::size_t induced_rank(const std::vector<ModuleMorphism>& homs, const ModuleMorphism& f, bool precompose) {
  std::vector<ModuleMorphism> images;
  for (const auto& g : homs) images.push_back(precompose ? compose(f, g) : compose(g, f));
  if (images.empty()) return 0;
  return rank(flatten_all(images, flat_width(images[0].source(), images[0].target()), f.source().modulus()));
}

std::vector<ModuleMorphism> maps_of(const std::vector<DiffMorphism>& fs) {
  std::vector<ModuleMorphism> out;
  for (const auto& f : fs) out.push_back(f.map());
  return out;
}

}  // namespace

TEST(Contractible, SurjectivityOfInducedMapsTransfers) {
  std::mt19937_64 gen(5);
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    const Scalar p = a->modulus();
    auto mods = small_modules(a);
    std::vector<DifferentialModule> ds;
    for (const auto& m : mods)
      for (const auto& d : enumerate_differentials(m)) ds.push_back(d);
    for (const auto& d1 : ds)
      for (const auto& d2 : ds) {
        auto hs = hom_diff(d1, d2);
        std::vector<Scalar> c(hs.size());
        for (auto& v : c) v = static_cast<Scalar>(gen() % p);
        std::vector<ModuleMorphism> hm = maps_of(hs);
        ModuleMorphism f = hs.empty() ? ModuleMorphism::zero(d1.underlying(), d2.underlying()) : combine(hm, c);
        const auto& m1 = d1.underlying();
        const auto& m2 = d2.underlying();
        for (const auto& x : mods) {
          auto rdx = contractible(x);
          // Hom(f, -): Hom(D2, RD X) -> Hom(D1, RD X)
          auto lam_in = maps_of(hom_diff(d2, rdx));
          auto base_in = hom_basis(m2, x);
          const bool lam_onto_in = induced_rank(lam_in, f, true) == hom_diff_dim(d1, rdx);
          const bool base_onto_in = induced_rank(base_in, f, true) == hom_dim(m1, x);
          EXPECT_EQ(lam_onto_in, base_onto_in) << name;
          // Hom(-, f): Hom(RD X, D1) -> Hom(RD X, D2)
          auto lam_out = maps_of(hom_diff(rdx, d1));
          auto base_out = hom_basis(x, m1);
          const bool lam_onto_out = induced_rank(lam_out, f, false) == hom_diff_dim(rdx, d2);
          const bool base_onto_out = induced_rank(base_out, f, false) == hom_dim(x, m2);
          EXPECT_EQ(lam_onto_out, base_onto_out) << name;
        }
      }
  }
}

TEST(HomDiff, MatchesBruteForceIntertwiners) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    const Scalar p = a->modulus();
    auto mods = small_modules(a);
    for (const auto& m : mods)
      for (const auto& n : mods) {
        if (flat_width(m, n) > (p == 2 ? 12u : 7u)) continue;
        for (const auto& d1 : enumerate_differentials(m))
          for (const auto& d2 : enumerate_differentials(n)) {
            std::size_t count = 0;
            for (const auto& f : brute_force_homs(m, n))
              if (compose(d1.epsilon(), f) == compose(f, d2.epsilon())) ++count;
            EXPECT_EQ(hom_diff_dim(d1, d2), log_p(count, p)) << name;
          }
      }
  }
}

TEST(Lambda, RoundTripAndHomAgreement) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    auto lam = a->dual_numbers();
    auto mods = small_modules(a);
    for (const auto& m : mods)
      for (const auto& d : enumerate_differentials(m)) {
        auto l = to_lambda_module(d);
        EXPECT_TRUE(l.algebra()->same_as(*lam));
        EXPECT_EQ(l.total_dim(), m.total_dim());
        EXPECT_TRUE(from_lambda_module(l) == d) << name;
        for (const auto& n : mods)
          for (const auto& d2 : enumerate_differentials(n)) {
            auto hs = hom_diff(d, d2);
            EXPECT_EQ(hs.size(), hom_dim(l, to_lambda_module(d2)));
            for (const auto& f : hs) EXPECT_TRUE(from_lambda_morphism(to_lambda_morphism(f)).map() == f.map());
          }
      }
  }
  auto f2 = fixtures::dual_numbers();
  EXPECT_EQ(to_lambda_module(contractible(simple_module(f2, 0))).total_dim(), 2u);
}

TEST(Duality, DualizeIsAnInvolution) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    for (const auto& m : small_modules(a))
      for (const auto& d : enumerate_differentials(m)) {
        auto dd = dualize(d);
        EXPECT_TRUE(compose(dd.epsilon(), dd.epsilon()).is_zero());
        EXPECT_TRUE(dualize(dd) == d) << name;
      }
  }
}

TEST(Enumerate, KnownValues) {
  auto f2 = fixtures::dual_numbers();
  auto s = enumerate_differentials(simple_module(f2, 0));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_TRUE(s[0].epsilon().is_zero());
  auto reg = regular_module(f2);
  auto r = enumerate_differentials(reg);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_TRUE(r[0].epsilon().is_zero());
  EXPECT_TRUE(r[1] == x_on_regular());
}

TEST(Enumerate, CountMatchesBruteForce) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    for (const auto& m : small_modules(a)) {
      auto mm = direct_sum_module(m, simple_module(a, 0));
      for (const auto& x : {m, mm}) {
        if (flat_width(x, x) > (a->modulus() == 2 ? 16u : 9u)) continue;
        std::size_t count = 0;
        for (const auto& f : brute_force_homs(x, x))
          if (compose(f, f).is_zero()) ++count;
        EXPECT_EQ(enumerate_differentials(x).size(), count) << name;
      }
    }
  }
}

TEST(Enumerate, BoundIsEnforced) {
  auto reg = regular_module(fixtures::cubic());
  auto big = direct_sum_module(reg, reg);
  EXPECT_EQ(kind_of([&] { enumerate_differentials(big, {.bound = 1000}); }), ErrorKind::EnumerationBoundExceeded);
}
