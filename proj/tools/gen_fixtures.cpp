// Writes the bundled fixtures: gen_fixtures OUTPUT_DIR

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "catmod/catmod.hpp"
#include "catmod/fixture.hpp"

using namespace catmod;
using Q = Rational;

namespace {

Json module_by_generators(const Module<Q>& m) {
  Json gens = Json::object();
  for (auto g : m.algebra().generators()) gens[std::to_string(g)] = matrix_json(m.action(g));
  return {{"name", m.name()}, {"generators", gens}};
}

Json group_fixture(std::size_t n, const AlgebraPtr<Q>& a) {
  Json doc;
  doc["field"] = "rational";
  doc["group"] = *a->group_table();
  Json mods = Json::array();
  for (const auto& s : symmetric_simples(a, n)) mods.push_back(module_by_generators(s));
  mods.push_back({{"name", "A"}, {"regular", true}, {"tuples", false}});
  doc["modules"] = mods;
  return doc;
}

void write(const std::string& dir, const std::string& name, const Json& doc) {
  std::ofstream out(dir + "/" + name);
  out << doc.dump(1) << "\n";
  std::cout << "wrote " << dir << "/" << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures OUTPUT_DIR\n";
    return 2;
  }
  std::string dir = argv[1];

  auto s3 = symmetric_group_algebra<Q>(3);
  Json s3doc = group_fixture(3, s3);
  s3doc["description"] = "QS3 with one primitive idempotent per block";
  s3doc["idempotents"] = {{"e", vector_json(s3_basic_idempotent(s3))}};
  s3doc["suites"] = Json::array({"algebra", "monoidal", "nilpotency", "modcat", "transport", "truncation"});
  s3doc["samples"] = 20;
  s3doc["seed"] = 1;
  write(dir, "s3.json", s3doc);

  Json f7 = s3doc;
  f7["description"] = "S3 over F7 with the same idempotent";
  f7["field"] = {{"prime", 7}};
  write(dir, "s3_f7.json", f7);

  Json mutated = s3doc;
  mutated["description"] = "QS3 with epsilon perturbed by a non-natural automorphism";
  mutated["suites"] = Json::array({"transport"});
  mutated["mutations"] = Json::array({"epsilon"});
  write(dir, "s3_mutated_epsilon.json", mutated);

  // one corruption per checker family
  const std::vector<std::pair<std::string, std::string>> targeted{
      {"b", "middle constraint b with one entry bumped"},
      {"s", "module functor constraint s of F with one entry bumped"},
      {"sr", "right constraint sr of F with one entry bumped"},
      {"compose", "both s of F and t of G bumped before composing"},
      {"epsilon@V", "epsilon replaced at the object V only"}};
  for (const auto& [kind, what] : targeted) {
    Json doc = mutated;
    doc["description"] = "QS3, " + what;
    doc["mutations"] = Json::array({kind});
    std::string file = kind == "epsilon@V" ? "epsilon_at_v" : kind;
    write(dir, "s3_mutated_" + file + ".json", doc);
  }

  Json c2;
  c2["description"] = "QC2 with e = (1+g)/2, which is not full";
  c2["field"] = "rational";
  c2["group"] = Json::array({Json::array({0, 1}), Json::array({1, 0})});
  c2["idempotents"] = {{"e", Json::array({"1/2", "1/2"})}};
  auto one_by_one = [](const char* x) {
    Json gens = Json::object();
    gens["1"] = Json::array({Json::array({x})});
    return gens;
  };
  c2["modules"] = Json::array({Json{{"name", "triv"}, {"generators", one_by_one("1")}},
                               Json{{"name", "sgn"}, {"generators", one_by_one("-1")}},
                               Json{{"name", "A"}, {"regular", true}, {"tuples", false}}});
  c2["suites"] = Json::array({"algebra", "truncation"});
  c2["expect"] = {{"truncation", "FullnessFailure"}};
  write(dir, "c2_nonfull.json", c2);

  auto s4 = symmetric_group_algebra<Q>(4);
  Json s4doc = group_fixture(4, s4);
  s4doc["description"] = "QS4 with nested idempotents of block ranks (1,1,1,2,2) and (1,1,1,1,1)";
  s4doc["idempotents"] = {{"e1", vector_json(s4_rank_two_idempotent(s4))},
                          {"e2", vector_json(s4_rank_one_idempotent(s4))}};
  s4doc["suites"] = Json::array({"stages"});
  s4doc["samples"] = 4;
  s4doc["seed"] = 1;
  write(dir, "s4_stages.json", s4doc);

  // 2x2 matrices: basis E11, E12, E21, E22; E_ij E_kl = δ_jk E_il
  Json m2;
  m2["description"] = "2x2 matrix algebra from structure constants, e = E11";
  m2["field"] = "rational";
  Json structure = Json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Json row = Json::array({"0", "0", "0", "0"});
      int a = i / 2, b = i % 2, c = j / 2, d = j % 2;
      if (b == c) row[a * 2 + d] = "1";
      structure.push_back(row);
    }
  m2["algebra"] = {{"dim", 4}, {"unit", Json::array({"1", "0", "0", "1"})}, {"structure", structure}};
  m2["idempotents"] = {{"e", Json::array({"1", "0", "0", "0"})}};
  Json col_action = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json m = Json::array({Json::array({"0", "0"}), Json::array({"0", "0"})});
    m[i / 2][i % 2] = "1";
    col_action.push_back(m);
  }
  m2["modules"] = Json::array({Json{{"name", "col"}, {"action", col_action}}, Json{{"name", "A"}, {"regular", true}}});
  m2["suites"] = Json::array({"algebra"});
  write(dir, "m2.json", m2);
  return 0;
}
