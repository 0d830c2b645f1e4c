#include <gtest/gtest.h>

#include "diffmod/quiveralg.hpp"
#include "fixtures.hpp"

using namespace diffmod;

namespace {

AlgebraPtr loop_algebra(Scalar p, std::size_t n, std::size_t cap) {
  Quiver q({"1"}, {{"x", "1", "1"}});
  return build_algebra(q, {Relation{{RelationTerm{1, std::vector<std::string>(n, "x")}}}}, p, cap);
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidInput;
}

// Oracle: dim of kQ/I for a monomial ideal is the number of paths avoiding all relation paths.
std::size_t monomial_dim(const Quiver& q, const std::vector<std::vector<std::size_t>>& forbidden, std::size_t cap) {
  std::size_t count = q.vertex_count();
  std::vector<std::vector<std::size_t>> level;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) level.push_back({a});
  for (std::size_t len = 1; len <= cap && !level.empty(); ++len) {
    std::vector<std::vector<std::size_t>> kept;
    for (auto& p : level) {
      bool bad = false;
      for (const auto& f : forbidden)
        if (f.size() <= p.size() && std::search(p.begin(), p.end(), f.begin(), f.end()) != p.end()) bad = true;
      if (!bad) kept.push_back(p);
    }
    count += kept.size();
    level.clear();
    for (auto& p : kept)
      for (std::size_t a = 0; a < q.arrow_count(); ++a)
        if (q.arrows()[a].source == q.arrows()[p.back()].target) {
          auto np = p;
          np.push_back(a);
          level.push_back(np);
        }
  }
  return count;
}

}  // namespace

TEST(Algebra, BundledDimensions) {
  EXPECT_EQ(fixtures::dual_numbers()->dim(), 2u);
  EXPECT_EQ(fixtures::cubic()->dim(), 3u);
  EXPECT_EQ(fixtures::a2()->dim(), 3u);
  EXPECT_EQ(fixtures::t2()->dim(), 6u);
}

TEST(Algebra, TruncatedPolynomialDimensions) {
  for (Scalar p : {2u, 3u, 5u})
    for (std::size_t n = 2; n <= 5; ++n) EXPECT_EQ(loop_algebra(p, n, n)->dim(), n);
}

TEST(Algebra, CapTooSmallIsReported) {
  EXPECT_EQ(kind_of([] { loop_algebra(2, 3, 2); }), ErrorKind::CapTooSmall);
}

TEST(Algebra, LengthOneRelationIsNonAdmissible) {
  Quiver q({"1"}, {{"x", "1", "1"}});
  EXPECT_EQ(kind_of([&] { build_algebra(q, {Relation{{RelationTerm{1, {"x"}}}}}, 2, 2); }), ErrorKind::NonAdmissible);
}

TEST(Algebra, CompositeFieldIsRejected) {
  EXPECT_EQ(kind_of([] { loop_algebra(6, 2, 2); }), ErrorKind::NotPrime);
}

TEST(Algebra, PathAlgebraOfA2) {
  auto a = fixtures::a2();
  EXPECT_TRUE(a->hereditary());
  EXPECT_EQ(a->vertex_count(), 2u);
  // e1 * a = a, a * e2 = a, a * e1 = 0
  const std::size_t e1 = a->idempotent(0), e2 = a->idempotent(1), x = a->arrow_element(0);
  auto prod = [&](std::size_t i, std::size_t j) { return std::vector<Scalar>(a->multiply(i, j).begin(), a->multiply(i, j).end()); };
  std::vector<Scalar> ex(a->dim(), 0);
  ex[x] = 1;
  EXPECT_EQ(prod(e1, x), ex);
  EXPECT_EQ(prod(x, e2), ex);
  EXPECT_EQ(prod(x, e1), std::vector<Scalar>(a->dim(), 0));
}

TEST(Algebra, MonomialDimensionsMatchPathCount) {
  Quiver q({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}});
  std::vector<std::vector<std::size_t>> forbidden{{0, 1}, {1, 0}};
  auto a = build_algebra(q, {Relation{{RelationTerm{1, {"a", "b"}}}}, Relation{{RelationTerm{1, {"b", "a"}}}}}, 3, 3);
  EXPECT_EQ(a->dim(), monomial_dim(q, forbidden, 3));
  EXPECT_EQ(a->dim(), 4u);

  Quiver q2({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}});
  auto b = build_algebra(q2, {Relation{{RelationTerm{1, {"a", "b", "c"}}}}, Relation{{RelationTerm{1, {"b", "c"}}}},
                              Relation{{RelationTerm{1, {"c", "a", "b"}}}}},
                         2, 4);
  EXPECT_EQ(b->dim(), monomial_dim(q2, {{0, 1, 2}, {1, 2}, {2, 0, 1}}, 4));
}

TEST(Algebra, StructureConstantsAreAssociative) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    const std::size_t n = a->dim();
    const Scalar p = a->modulus();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          std::vector<Scalar> lhs(n, 0), rhs(n, 0);
          auto ij = a->multiply(i, j);
          for (std::size_t m = 0; m < n; ++m)
            if (ij[m])
              for (std::size_t t = 0; t < n; ++t) lhs[t] = fp::add(lhs[t], fp::mul(ij[m], a->structure(m, k, t), p), p);
          auto jk = a->multiply(j, k);
          for (std::size_t m = 0; m < n; ++m)
            if (jk[m])
              for (std::size_t t = 0; t < n; ++t) rhs[t] = fp::add(rhs[t], fp::mul(jk[m], a->structure(i, m, t), p), p);
          ASSERT_EQ(lhs, rhs) << name;
        }
  }
}

TEST(Algebra, OppositeIsAnInvolution) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    auto op = a->opposite();
    EXPECT_EQ(op->dim(), a->dim()) << name;
    EXPECT_TRUE(op->opposite()->same_as(*a)) << name;
    // A path vanishes in A iff its reversal vanishes in A^op.
    auto reversed = [](Path q) {
      std::reverse(q.arrows.begin(), q.arrows.end());
      std::swap(q.source, q.target);
      return q;
    };
    auto vanishes = [](const Algebra& alg, const Path& q) {
      auto nf = alg.normal_form(q);
      return std::all_of(nf.begin(), nf.end(), [](Scalar v) { return v == 0; });
    };
    for (const auto& x : a->basis())
      for (const auto& y : a->basis()) {
        if (x.target != y.source) continue;
        Path xy{x.source, y.target, x.arrows};
        xy.arrows.insert(xy.arrows.end(), y.arrows.begin(), y.arrows.end());
        EXPECT_EQ(vanishes(*a, xy), vanishes(*op, reversed(xy))) << name;
      }
  }
}

TEST(Algebra, DualNumbersExtension) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    auto lam = a->dual_numbers();
    EXPECT_TRUE(lam->is_dual_numbers_extension());
    EXPECT_EQ(lam->dim(), 2 * a->dim()) << name;
    EXPECT_EQ(lam->arrow_count(), a->arrow_count() + a->vertex_count());
    EXPECT_TRUE(lam->base()->same_as(*a));
    EXPECT_EQ(lam.get(), a->dual_numbers().get());
  }
}
