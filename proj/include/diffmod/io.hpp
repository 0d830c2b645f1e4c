#pragma once

// JSON reading and writing for matrices, algebras, modules, differential
// modules and the various reports.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "diffmod/diffcat.hpp"
#include "diffmod/error.hpp"
#include "diffmod/exactla.hpp"
#include "diffmod/gorenstein.hpp"
#include "diffmod/harness.hpp"
#include "diffmod/modrep.hpp"
#include "diffmod/quiveralg.hpp"
#include "diffmod/resolve.hpp"

namespace diffmod::io {

using json = nlohmann::json;
namespace fs = std::filesystem;

inline json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, path.string() + ": " + e.what());
  }
}

namespace detail {

template <class T>
T get_field(const json& j, const char* key, const std::string& where) {
  require(j.is_object() && j.contains(key), ErrorKind::InvalidInput, where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidInput, where + ": bad \"" + key + "\": " + e.what());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices

inline json to_json(const Matrix& m) {
  return {{"p", m.modulus()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", m.to_rows()}};
}

inline json entries_json(const Matrix& m) {
  json rows = json::array();
  for (const auto& r : m.to_rows()) rows.push_back(r);
  return rows;
}

/// Accepts the wire format {"p","rows","cols","entries"} or a bare list of
/// rows; the expected shape is enforced either way.
inline Matrix matrix_from_json(const json& j, Scalar p, std::size_t rows, std::size_t cols, const std::string& where) {
  std::vector<std::vector<long long>> entries;
  if (j.is_object()) {
    auto jp = detail::get_field<long long>(j, "p", where);
    require(jp == static_cast<long long>(p), ErrorKind::InvalidInput, where + ": matrix over F_" +
                                                                          std::to_string(jp) + ", expected F_" +
                                                                          std::to_string(p));
    auto r = detail::get_field<std::size_t>(j, "rows", where);
    auto c = detail::get_field<std::size_t>(j, "cols", where);
    require(r == rows && c == cols, ErrorKind::DimensionMismatch,
            where + ": matrix is " + std::to_string(r) + "x" + std::to_string(c) + ", expected " +
                std::to_string(rows) + "x" + std::to_string(cols));
    entries = detail::get_field<std::vector<std::vector<long long>>>(j, "entries", where);
  } else {
    try {
      entries = j.get<std::vector<std::vector<long long>>>();
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidInput, where + ": " + e.what());
    }
  }
  if (rows == 0) {
    require(entries.empty(), ErrorKind::DimensionMismatch, where + ": expected no rows");
    return Matrix(0, cols, p);
  }
  require(entries.size() == rows, ErrorKind::DimensionMismatch,
          where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(entries.size()));
  for (const auto& r : entries)
    require(r.size() == cols, ErrorKind::DimensionMismatch, where + ": expected rows of length " + std::to_string(cols));
  return Matrix::from_rows(entries, p, cols);
}

inline Matrix matrix_from_json(const json& j) {
  const std::string where = "matrix";
  auto p = detail::get_field<Scalar>(j, "p", where);
  require(fp::is_prime(p), ErrorKind::NotPrime, where + ": " + std::to_string(p) + " is not prime");
  return matrix_from_json(j, p, detail::get_field<std::size_t>(j, "rows", where),
                          detail::get_field<std::size_t>(j, "cols", where), where);
}

// ---------------------------------------------------------------------------
// Algebras

inline json to_json(const Algebra& a) {
  json arrows = json::array();
  for (const auto& arr : a.quiver().arrows())
    arrows.push_back({{"name", arr.name},
                      {"from", a.quiver().vertices()[arr.source]},
                      {"to", a.quiver().vertices()[arr.target]}});
  json rels = json::array();
  for (const auto& r : a.relations()) {
    json terms = json::array();
    for (const auto& t : r.terms) terms.push_back({{"coeff", t.coeff}, {"path", t.path}});
    rels.push_back({{"terms", terms}});
  }
  return {{"field", {{"p", a.modulus()}}},
          {"quiver", {{"vertices", a.quiver().vertices()}, {"arrows", arrows}}},
          {"relations", rels},
          {"nilpotency_cap", a.nilpotency_cap()}};
}

inline AlgebraPtr algebra_from_json(const json& j, const std::string& where = "algebra") {
  const json& field = j.contains("field") ? j.at("field") : json::object();
  auto p = detail::get_field<long long>(field, "p", where + ".field");
  require(p > 1 && p < 65536 && fp::is_prime(static_cast<Scalar>(p)), ErrorKind::NotPrime,
          where + ": " + std::to_string(p) + " is not a supported prime");
  const json& q = j.contains("quiver") ? j.at("quiver") : json::object();
  auto vertices = detail::get_field<std::vector<std::string>>(q, "vertices", where + ".quiver");
  std::vector<ArrowSpec> arrows;
  if (q.contains("arrows"))
    for (const auto& a : q.at("arrows"))
      arrows.push_back({detail::get_field<std::string>(a, "name", where + ".arrows"),
                        detail::get_field<std::string>(a, "from", where + ".arrows"),
                        detail::get_field<std::string>(a, "to", where + ".arrows")});
  std::vector<Relation> rels;
  if (j.contains("relations"))
    for (const auto& r : j.at("relations")) {
      Relation rel;
      for (const auto& t : detail::get_field<json>(r, "terms", where + ".relations"))
        rel.terms.push_back({detail::get_field<long long>(t, "coeff", where + ".relations"),
                             detail::get_field<std::vector<std::string>>(t, "path", where + ".relations")});
      rels.push_back(std::move(rel));
    }
  auto cap = detail::get_field<std::size_t>(j, "nilpotency_cap", where);
  return build_algebra(Quiver(vertices, arrows), rels, static_cast<Scalar>(p), cap);
}

inline AlgebraPtr load_algebra(const fs::path& path) { return algebra_from_json(read_json_file(path), path.string()); }

// ---------------------------------------------------------------------------
// Modules

inline json module_fields(const Representation& m) {
  const Algebra& a = *m.algebra();
  json spaces = json::object(), arrows = json::object();
  for (std::size_t v = 0; v < a.vertex_count(); ++v) spaces[a.quiver().vertices()[v]] = m.dim(v);
  for (std::size_t k = 0; k < a.arrow_count(); ++k) arrows[a.quiver().arrows()[k].name] = to_json(m.action(k));
  return {{"spaces", spaces}, {"arrows", arrows}};
}

/// Missing arrows act by zero.
inline Representation module_from_json(const json& j, const AlgebraPtr& a, const std::string& where) {
  const Algebra& alg = *a;
  std::vector<std::size_t> dims(alg.vertex_count(), 0);
  auto spaces = detail::get_field<json>(j, "spaces", where);
  for (auto it = spaces.begin(); it != spaces.end(); ++it) {
    auto v = alg.quiver().find_vertex(it.key());
    require(v.has_value(), ErrorKind::InvalidInput, where + ": unknown vertex '" + it.key() + "'");
    dims[*v] = it.value().get<std::size_t>();
  }
  std::vector<std::optional<Matrix>> given(alg.arrow_count());
  if (j.contains("arrows"))
    for (auto it = j.at("arrows").begin(); it != j.at("arrows").end(); ++it) {
      auto k = alg.quiver().find_arrow(it.key());
      require(k.has_value(), ErrorKind::InvalidInput, where + ": unknown arrow '" + it.key() + "'");
      const auto& arr = alg.quiver().arrows()[*k];
      given[*k] = matrix_from_json(it.value(), alg.modulus(), dims[arr.source], dims[arr.target],
                                   where + ".arrows." + it.key());
    }
  std::vector<Matrix> actions;
  for (std::size_t k = 0; k < alg.arrow_count(); ++k) {
    const auto& arr = alg.quiver().arrows()[k];
    actions.push_back(given[k] ? *given[k] : Matrix(dims[arr.source], dims[arr.target], alg.modulus()));
  }
  return Representation(a, dims, std::move(actions));
}

inline DifferentialModule differential_from_json(const json& j, const AlgebraPtr& a, const std::string& where) {
  Representation m = module_from_json(j, a, where);
  if (!j.contains("epsilon")) return zero_differential(m);
  const Algebra& alg = *a;
  std::vector<std::optional<Matrix>> given(alg.vertex_count());
  for (auto it = j.at("epsilon").begin(); it != j.at("epsilon").end(); ++it) {
    auto v = alg.quiver().find_vertex(it.key());
    require(v.has_value(), ErrorKind::InvalidInput, where + ": unknown vertex '" + it.key() + "' in epsilon");
    given[*v] = matrix_from_json(it.value(), alg.modulus(), m.dim(*v), m.dim(*v), where + ".epsilon." + it.key());
  }
  std::vector<Matrix> maps;
  for (std::size_t v = 0; v < alg.vertex_count(); ++v)
    maps.push_back(given[v] ? *given[v] : Matrix(m.dim(v), m.dim(v), alg.modulus()));
  ModuleMorphism e(m, m, std::move(maps));
  return make_differential(m, e);
}

inline json to_json(const DifferentialModule& d) {
  json j = module_fields(d.underlying());
  json eps = json::object();
  const Algebra& a = *d.algebra();
  for (std::size_t v = 0; v < a.vertex_count(); ++v) eps[a.quiver().vertices()[v]] = entries_json(d.epsilon().map(v));
  j["epsilon"] = eps;
  return j;
}

/// A module or differential-module file; the algebra path is resolved
/// relative to the file.
struct LoadedModule {
  AlgebraPtr algebra;
  DifferentialModule module;
  bool has_epsilon;
};

inline LoadedModule load_module(const fs::path& path) {
  json j = read_json_file(path);
  auto alg_path = fs::path(detail::get_field<std::string>(j, "algebra", path.string()));
  if (alg_path.is_relative()) alg_path = path.parent_path() / alg_path;
  AlgebraPtr a = load_algebra(alg_path);
  return {a, differential_from_json(j, a, path.string()), j.contains("epsilon")};
}

// ---------------------------------------------------------------------------
// Reports

inline json dims_json(const Representation& m) { return m.dims(); }

inline json to_json(const ExtTable& t) {
  json j = {{"horizon", t.horizon}, {"dims", t.dims}};
  if (t.periodicity)
    j["periodicity"] = {{"lead", t.periodicity->lead}, {"period", t.periodicity->period}};
  else
    j["periodicity"] = nullptr;
  return j;
}

inline json to_json(const ProperCertificate& c) {
  json j = {{"proper", c.proper}};
  if (c.test_index) j["failing_test"] = *c.test_index;
  if (c.position) j["failing_position"] = *c.position;
  return j;
}

inline json maps_json(const ModuleMorphism& f) {
  json j = json::array();
  for (const auto& m : f.maps()) j.push_back(entries_json(m));
  return j;
}

inline json to_json(const ProjectiveResolution& r) {
  json terms = json::array(), maps = json::array(), syz = json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    terms.push_back({{"dims", r.terms[i].rep().dims()}, {"generators", r.terms[i].generators()}});
    maps.push_back(maps_json(r.map(i)));
    syz.push_back(r.syzygy(i + 1).dims());
  }
  return {{"kind", "projective"}, {"target", r.target.dims()},  {"length", r.length()},
          {"terms", terms},       {"maps", maps},               {"syzygies", syz},
          {"terminated", r.terminated}, {"exact", r.is_exact()}};
}

inline std::string verdict_string(IsoVerdict v) { return std::string(to_string(v)); }

inline json to_json(const LiftedResolution& r) {
  json terms = json::array(), maps = json::array(), kernels = json::array();
  for (std::size_t i = 0; i < r.terms.size(); ++i) {
    terms.push_back({{"dims", r.terms[i].underlying().dims()},
                     {"dim", r.terms[i].total_dim()},
                     {"q_dims", r.q[i].rep().dims()}});
    maps.push_back(maps_json(r.maps[i].map()));
    kernels.push_back({{"dims", r.kernels[i].module.dims()}, {"iso_to_q_plus_syzygy", verdict_string(r.kernel_checks[i])}});
  }
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"lift_equation", s.lift_equation_holds()},
                     {"exact", s.is_exact()},
                     {"intertwining", s.maps_intertwine()},
                     {"left_is_sum", s.left_is_sum()}});
  return {{"kind", "lifted"},
          {"target", r.target.underlying().dims()},
          {"length", r.length()},
          {"projective_target", r.projective_target},
          {"terms", terms},
          {"maps", maps},
          {"kernels", kernels},
          {"steps", steps},
          {"checks",
           {{"exact", r.is_exact()},
            {"contractible_on_projectives", r.terms_contractible_on_projectives()},
            {"q_dimensions", r.q_dimensions_match()},
            {"euler", r.euler_holds()}}}};
}

inline bool all_checks_pass(const LiftedResolution& r) {
  for (const auto& s : r.steps)
    if (!(s.lift_equation_holds() && s.is_exact() && s.maps_intertwine() && s.left_is_sum())) return false;
  for (auto v : r.kernel_checks)
    if (v != IsoVerdict::Yes) return false;
  return r.is_exact() && r.terms_contractible_on_projectives() && r.q_dimensions_match() && r.euler_holds();
}

inline json to_json(const GorensteinProfile& p) {
  auto opt = [](const std::optional<std::size_t>& v) { return v ? json(*v) : json("ExceededCap"); };
  return {{"g_left", opt(p.g_left)}, {"g_right", opt(p.g_right)}, {"cap", p.cap}};
}

inline json to_json(const GpReport& r) {
  return {{"verdict", r.verdict}, {"ext_witness", r.ext_witness}, {"route", std::string(to_string(r.route))}};
}

inline json dimension_json(const std::optional<std::size_t>& d) { return d ? json(*d) : json("ExceededCap"); }

inline json to_json(const HarnessReport& r) {
  json profiles = {{"base", to_json(r.setting.p_base)},
                   {"base_op", to_json(r.setting.p_base_op)},
                   {"lambda", to_json(r.setting.p_lambda)},
                   {"lambda_op", to_json(r.setting.p_lambda_op)}};
  return {{"algebra", r.algebra},
          {"modules", r.modules},
          {"instances", r.instances},
          {"gp_agreements", r.gp_agreements},
          {"gi_agreements", r.gi_agreements},
          {"gpd_equalities", r.gpd_equalities},
          {"gid_equalities", r.gid_equalities},
          {"ext_transfer_pairs", r.ext_transfer_pairs},
          {"ext_transfer_agreements", r.ext_transfer_agreements},
          {"ext_transfer_degreewise", r.ext_transfer_degreewise},
          {"ground_truth_checks", r.ground_truth_checks},
          {"discrepancies", r.discrepancies},
          {"profiles", profiles},
          {"max_gpd", {{"base", dimension_json(r.max_gpd_base)}, {"diff", dimension_json(r.max_gpd_diff)}}}};
}

}  // namespace diffmod::io
