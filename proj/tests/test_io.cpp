#include <gtest/gtest.h>

#include "diffmod/io.hpp"
#include "fixtures.hpp"

using namespace diffmod;
using diffmod::io::json;

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

}  // namespace

TEST(Io, MatrixRoundTrip) {
  auto m = Matrix::from_rows({{1, 2, 0}, {0, 1, 2}}, 3);
  EXPECT_EQ(io::matrix_from_json(io::to_json(m)), m);
  EXPECT_EQ(io::matrix_from_json(json::parse("[[1,2,0],[0,1,2]]"), 3, 2, 3, "m"), m);
  EXPECT_EQ(io::matrix_from_json(json::parse("[[4]]"), 3, 1, 1, "m"), Matrix::from_rows({{1}}, 3));
  EXPECT_THROW(io::matrix_from_json(json::parse("[[1,2]]"), 3, 2, 2, "m"), Error);
  EXPECT_EQ(io::matrix_from_json(json::parse("[]"), 2, 0, 3, "m"), Matrix(0, 3, 2));
}

TEST(Io, AlgebraRoundTrip) {
  for (const char* name : fixtures::kBundled) {
    auto a = fixtures::load(name);
    auto b = io::algebra_from_json(io::to_json(*a));
    EXPECT_TRUE(a->same_as(*b)) << name;
    EXPECT_EQ(a->dim(), b->dim());
  }
}

TEST(Io, BundledModulesLoad) {
  auto s = io::load_module(fixtures::data_path("modules/f2_simple.json"));
  EXPECT_EQ(s.module.total_dim(), 1u);
  EXPECT_FALSE(s.has_epsilon);
  auto x = io::load_module(fixtures::data_path("modules/f2_regular_x.json"));
  EXPECT_TRUE(x.has_epsilon);
  EXPECT_EQ(x.module.epsilon().rank(), 1u);
  EXPECT_TRUE(x.module.underlying() == regular_module(x.algebra));
  auto t = io::load_module(fixtures::data_path("modules/t2_p2_x.json"));
  EXPECT_EQ(t.module.total_dim(), 2u);
  EXPECT_TRUE(is_projective(t.module.underlying()));
  for (const char* f : {"modules/a2_s1.json", "modules/a2_s2.json", "modules/a2_p1.json", "modules/t2_s1.json"})
    EXPECT_NO_THROW(io::load_module(fixtures::data_path(f))) << f;
}

TEST(Io, DifferentialRoundTrip) {
  auto x = io::load_module(fixtures::data_path("modules/f2_regular_x.json"));
  auto j = io::to_json(x.module);
  auto back = io::differential_from_json(j, x.algebra, "roundtrip");
  EXPECT_TRUE(back == x.module);
  auto c = contractible(simple_module(fixtures::t2(), 1));
  EXPECT_TRUE(io::differential_from_json(io::to_json(c), c.algebra(), "c") == c);
}

TEST(Io, InvalidInputsAreRejected) {
  EXPECT_EQ(kind_of([] { io::load_module(fixtures::data_path("invalid/bad_epsilon.json")); }),
            ErrorKind::NotSquareZero);
  EXPECT_EQ(kind_of([] { io::load_algebra(fixtures::data_path("invalid/length_one_relation.json")); }),
            ErrorKind::NonAdmissible);
  EXPECT_EQ(kind_of([] { io::load_module(fixtures::data_path("invalid/missing_algebra.json")); }),
            ErrorKind::InvalidInput);
  auto a = fixtures::a2();
  EXPECT_THROW(io::module_from_json(json::parse(R"({"spaces": {"9": 1}})"), a, "m"), Error);
  EXPECT_THROW(io::module_from_json(json::parse(R"({"spaces": {"1": 1}, "arrows": {"zz": [[1]]}})"), a, "m"), Error);
  EXPECT_THROW(io::algebra_from_json(json::parse(R"({"field": {"p": 4}, "quiver": {"vertices": ["1"], "arrows": []}, "relations": [], "nilpotency_cap": 1})")),
               Error);
}

TEST(Io, ReportsSerialize) {
  auto f2 = fixtures::dual_numbers();
  auto s = simple_module(f2, 0);
  auto t = io::to_json(ext_dim(s, s, 3));
  EXPECT_EQ(t["horizon"], 3);
  auto r = lift_resolution(zero_differential(s), 2);
  EXPECT_TRUE(io::all_checks_pass(r));
  auto j = io::to_json(r);
  EXPECT_FALSE(j.dump().empty());
  auto p = io::to_json(injective_dimension_regular(fixtures::a2()));
  EXPECT_EQ(p["g_left"], 1);
  EXPECT_EQ(p["g_right"], 1);
}
