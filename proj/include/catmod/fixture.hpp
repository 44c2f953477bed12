#pragma once

// JSON fixture documents. Top-level keys:
//   field        "rational" | {"prime": p}
//   group        n x n multiplication table of indices      (or)
//   algebra      {"dim": d, "unit": [..], "structure": [[..] per (i, j)]}
//   idempotents  {"e": [..], ...}   coordinates as "p/q" strings
//   modules      [{"name": .., "regular": true}
//                 | {"name": .., "generators": {"<element>": matrix}}
//                 | {"name": .., "action": [matrix per basis element]}]
//                 optional "tuples": false keeps a module out of tuple sampling
//   suites, samples, seed
//   expect       {"<suite>": "<ErrorName>"}  an error the suite must raise
//   mutations    ["epsilon" | "epsilon@NAME" | "m" | "b" | "s" | "sr" | "compose"]
//                corrupt the transported data; see catmod/mutation.hpp

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

using Json = nlohmann::json;

struct ModuleSpec {
  std::string name;
  bool regular = false;
  bool tuples = true;
  std::map<std::size_t, std::vector<std::vector<std::string>>> generators;
  std::vector<std::vector<std::vector<std::string>>> action;
};

struct FixtureSpec {
  std::optional<std::uint64_t> prime;  // empty: rationals
  std::optional<GroupTable> group;
  std::size_t dim = 0;                 // for "algebra"
  std::vector<std::string> unit;
  std::vector<std::vector<std::string>> structure;
  std::map<std::string, std::vector<std::string>> idempotents;
  std::vector<ModuleSpec> modules;
  std::vector<std::string> suites;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
  std::map<std::string, std::string> expect;
  std::vector<std::string> mutations;
};

namespace detail {

inline std::string scalar_text(const Json& j, const std::string& where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw ParseError(where + ": expected a scalar string \"p/q\" or an integer");
}

inline std::vector<std::string> scalar_list(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_text(j[i], where + "/" + std::to_string(i)));
  return out;
}

inline std::vector<std::vector<std::string>> scalar_matrix(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected a matrix (array of rows)");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_list(j[i], where + "/" + std::to_string(i)));
  return out;
}

template <class T>
T get_as(const Json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": wrong type");
  }
}

}  // namespace detail

/// Parses a fixture document; errors name the offending JSON path.
inline bool is_known_mutation(const std::string& m) {
  if (m.rfind("epsilon@", 0) == 0) return m.size() > 8;
  return m == "epsilon" || m == "m" || m == "b" || m == "s" || m == "sr" || m == "compose";
}

inline FixtureSpec parse_fixture(const Json& doc) {
  using detail::get_as;
  if (!doc.is_object()) throw ParseError("/: fixture must be a JSON object");
  static const std::vector<std::string> known{"field",   "group",   "algebra", "idempotents", "modules", "suites",
                                              "samples", "seed",    "expect",  "mutations",   "description"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ParseError("/" + key + ": unknown key");

  FixtureSpec f;
  if (doc.contains("field")) {
    const auto& fld = doc["field"];
    if (fld.is_string() && fld.get<std::string>() == "rational") {
    } else if (fld.is_object() && fld.contains("prime")) {
      f.prime = get_as<std::uint64_t>(fld["prime"], "/field/prime");
      if (!is_prime(*f.prime)) throw ParseError("/field/prime: " + std::to_string(*f.prime) + " is not prime");
    } else {
      throw ParseError("/field: expected \"rational\" or {\"prime\": p}");
    }
  }
  if (doc.contains("group") == doc.contains("algebra")) throw ParseError("/: exactly one of group, algebra required");
  if (doc.contains("group")) {
    f.group = get_as<GroupTable>(doc["group"], "/group");
  } else {
    const auto& alg = doc["algebra"];
    if (!alg.is_object() || !alg.contains("dim") || !alg.contains("unit") || !alg.contains("structure"))
      throw ParseError("/algebra: needs dim, unit, structure");
    f.dim = get_as<std::size_t>(alg["dim"], "/algebra/dim");
    f.unit = detail::scalar_list(alg["unit"], "/algebra/unit");
    f.structure = detail::scalar_matrix(alg["structure"], "/algebra/structure");
    if (f.unit.size() != f.dim) throw ParseError("/algebra/unit: length differs from dim");
    if (f.structure.size() != f.dim * f.dim) throw ParseError("/algebra/structure: expected dim*dim rows");
    for (std::size_t k = 0; k < f.structure.size(); ++k)
      if (f.structure[k].size() != f.dim)
        throw ParseError("/algebra/structure/" + std::to_string(k) + ": length differs from dim");
  }
  if (doc.contains("idempotents")) {
    if (!doc["idempotents"].is_object()) throw ParseError("/idempotents: expected an object");
    for (const auto& [name, v] : doc["idempotents"].items())
      f.idempotents[name] = detail::scalar_list(v, "/idempotents/" + name);
  }
  if (doc.contains("modules")) {
    const auto& mods = doc["modules"];
    if (!mods.is_array()) throw ParseError("/modules: expected an array");
    for (std::size_t i = 0; i < mods.size(); ++i) {
      std::string where = "/modules/" + std::to_string(i);
      const auto& m = mods[i];
      if (!m.is_object() || !m.contains("name")) throw ParseError(where + ": needs a name");
      ModuleSpec ms;
      ms.name = get_as<std::string>(m["name"], where + "/name");
      if (ms.name.empty() || ms.name.find_first_of(" \t\n,()") != std::string::npos)
        throw ParseError(where + "/name: names may not contain spaces, commas or parentheses");
      if (m.contains("tuples")) ms.tuples = get_as<bool>(m["tuples"], where + "/tuples");
      int kinds = m.contains("regular") + m.contains("generators") + m.contains("action");
      if (kinds != 1) throw ParseError(where + ": exactly one of regular, generators, action required");
      if (m.contains("regular")) {
        ms.regular = get_as<bool>(m["regular"], where + "/regular");
        if (!ms.regular) throw ParseError(where + "/regular: must be true when present");
      } else if (m.contains("generators")) {
        if (!m["generators"].is_object()) throw ParseError(where + "/generators: expected an object");
        for (const auto& [k, v] : m["generators"].items()) {
          std::size_t idx = 0;
          try {
            std::size_t used = 0;
            idx = std::stoul(k, &used);
            if (used != k.size()) throw std::invalid_argument(k);
          } catch (const std::exception&) {
            throw ParseError(where + "/generators/" + k + ": key must be a group element index");
          }
          ms.generators[idx] = detail::scalar_matrix(v, where + "/generators/" + k);
        }
      } else {
        const auto& act = m["action"];
        if (!act.is_array()) throw ParseError(where + "/action: expected an array of matrices");
        for (std::size_t b = 0; b < act.size(); ++b)
          ms.action.push_back(detail::scalar_matrix(act[b], where + "/action/" + std::to_string(b)));
      }
      for (const auto& other : f.modules)
        if (other.name == ms.name) throw ParseError(where + "/name: duplicate module " + ms.name);
      f.modules.push_back(std::move(ms));
    }
  }
  if (doc.contains("suites")) f.suites = get_as<std::vector<std::string>>(doc["suites"], "/suites");
  if (doc.contains("samples")) f.samples = get_as<std::size_t>(doc["samples"], "/samples");
  if (doc.contains("seed")) f.seed = get_as<std::uint64_t>(doc["seed"], "/seed");
  if (doc.contains("expect")) f.expect = get_as<std::map<std::string, std::string>>(doc["expect"], "/expect");
  if (doc.contains("mutations")) {
    f.mutations = get_as<std::vector<std::string>>(doc["mutations"], "/mutations");
    for (const auto& m : f.mutations)
      if (!is_known_mutation(m)) throw ParseError("/mutations: unknown mutation " + m);
  }
  return f;
}

inline FixtureSpec load_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
  try {
    return parse_fixture(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Inverse of parse_fixture up to defaults: parse_fixture(fixture_json(f))
/// reproduces f.
inline Json fixture_json(const FixtureSpec& f) {
  Json doc = Json::object();
  doc["field"] = f.prime ? Json{{"prime", *f.prime}} : Json("rational");
  if (f.group) {
    doc["group"] = *f.group;
  } else {
    doc["algebra"] = Json{{"dim", f.dim}, {"unit", f.unit}, {"structure", f.structure}};
  }
  if (!f.idempotents.empty()) doc["idempotents"] = f.idempotents;
  if (!f.modules.empty()) {
    Json mods = Json::array();
    for (const auto& m : f.modules) {
      Json j = Json{{"name", m.name}};
      if (!m.tuples) j["tuples"] = false;
      if (m.regular) {
        j["regular"] = true;
      } else if (!m.generators.empty()) {
        Json gens = Json::object();
        for (const auto& [g, mat] : m.generators) gens[std::to_string(g)] = mat;
        j["generators"] = gens;
      } else {
        j["action"] = m.action;
      }
      mods.push_back(std::move(j));
    }
    doc["modules"] = mods;
  }
  if (!f.suites.empty()) doc["suites"] = f.suites;
  doc["samples"] = f.samples;
  doc["seed"] = f.seed;
  if (!f.expect.empty()) doc["expect"] = f.expect;
  if (!f.mutations.empty()) doc["mutations"] = f.mutations;
  return doc;
}

/// A fixture with its scalars parsed into the field S.
template <ExactScalar S>
struct Loaded {
  FixtureSpec spec;
  FieldOf<S> field;
  AlgebraPtr<S> algebra;
  std::vector<Module<S>> modules;
  std::map<std::string, Mat<S>> idempotents;  // coordinates, not yet checked
};

template <ExactScalar S>
Mat<S> parse_matrix(const std::vector<std::vector<std::string>>& rows, const FieldOf<S>& field) {
  std::vector<std::vector<S>> vals;
  for (const auto& r : rows) {
    std::vector<S> row;
    for (const auto& x : r) row.push_back(ScalarTraits<S>::parse(field, x));
    vals.push_back(std::move(row));
  }
  return Mat<S>::from_rows(vals, field);
}

template <ExactScalar S>
Mat<S> parse_vector(const std::vector<std::string>& entries, const FieldOf<S>& field) {
  std::vector<S> vals;
  for (const auto& x : entries) vals.push_back(ScalarTraits<S>::parse(field, x));
  return Mat<S>::column(vals, field);
}

/// Builds the algebra, modules and idempotent vectors; any failure here is
/// a malformed fixture.
template <ExactScalar S>
Loaded<S> materialize(const FixtureSpec& spec, const FieldOf<S>& field) {
  Loaded<S> out{spec, field, nullptr, {}, {}};
  if (spec.group) {
    out.algebra = make_group_algebra<S>(*spec.group, field, field.name() + "G");
  } else {
    AlgebraData<S> data{spec.dim, field, {}, {}};
    for (const auto& row : spec.structure)
      for (const auto& x : row) data.structure.push_back(ScalarTraits<S>::parse(field, x));
    for (const auto& x : spec.unit) data.unit.push_back(ScalarTraits<S>::parse(field, x));
    out.algebra = Algebra<S>::create(std::move(data), field.name() + "A");
  }
  for (const auto& [name, coords] : spec.idempotents) {
    auto v = parse_vector<S>(coords, field);
    if (v.rows() != out.algebra->dim())
      throw ParseError("/idempotents/" + name + ": expected " + std::to_string(out.algebra->dim()) + " entries");
    out.idempotents[name] = std::move(v);
  }
  for (const auto& ms : spec.modules) {
    if (ms.regular) {
      out.modules.push_back(regular_module(out.algebra).renamed(ms.name));
    } else if (!ms.generators.empty()) {
      std::map<std::size_t, Mat<S>> images;
      for (const auto& [g, m] : ms.generators) images[g] = parse_matrix<S>(m, field);
      out.modules.push_back(module_from_group_generators(out.algebra, images, ms.name));
    } else {
      std::vector<Mat<S>> action;
      for (const auto& m : ms.action) action.push_back(parse_matrix<S>(m, field));
      out.modules.push_back(Module<S>::create(out.algebra, std::move(action), ms.name));
    }
  }
  return out;
}

/// Serializes a matrix as rows of "p/q" strings.
template <ExactScalar S>
Json matrix_json(const Mat<S>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ScalarTraits<S>::to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <ExactScalar S>
Json vector_json(const Mat<S>& v) {
  Json out = Json::array();
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(ScalarTraits<S>::to_string(v(i, 0)));
  return out;
}

}  // namespace catmod
