#include <catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <set>

#include "catmod/suites.hpp"

using namespace catmod;
using Q = Rational;

namespace {

std::string path(const std::string& name) { return std::string(CATMOD_FIXTURE_DIR) + "/" + name + ".json"; }

Json minimal() {
  return Json::parse(R"({"field": "rational", "group": [[0, 1], [1, 0]],
                         "idempotents": {"e": ["1", "0"]},
                         "modules": [{"name": "triv", "generators": {"1": [["1"]]}}]})");
}

std::string parse_error(const Json& doc) {
  try {
    parse_fixture(doc);
  } catch (const ParseError& e) {
    std::string what = e.what();
    const std::string prefix = "ParseError: ";
    CHECK(what.rfind(prefix, 0) == 0);
    return what.substr(prefix.size());
  }
  return "";
}

std::vector<Record> run_rational(const std::string& fixture, const std::string& suite, std::size_t samples,
                                 std::uint64_t seed) {
  auto spec = load_fixture(path(fixture));
  SuiteRunner<Q> runner(materialize<Q>(spec, RationalField{}), samples, seed);
  return runner.run(suite);
}

bool fails(const std::vector<Record>& records, const std::string& diagram) {
  return std::any_of(records.begin(), records.end(),
                     [&](const Record& r) { return !r.pass && r.diagram == diagram; });
}

}  // namespace

TEST_CASE("parse errors name the JSON path") {
  auto doc = minimal();
  CHECK(parse_error(doc).empty());

  auto unknown = doc;
  unknown["colour"] = "red";
  CHECK(parse_error(unknown) == "/colour: unknown key");

  auto bad_entry = doc;
  bad_entry["idempotents"]["e"][1] = true;
  CHECK(parse_error(bad_entry).rfind("/idempotents/e/1:", 0) == 0);

  auto bad_prime = doc;
  bad_prime["field"] = Json{{"prime", 8}};
  CHECK(parse_error(bad_prime).rfind("/field/prime:", 0) == 0);

  auto both = doc;
  both["algebra"] = Json::object();
  CHECK_FALSE(parse_error(both).empty());

  auto spaced = doc;
  spaced["modules"][0]["name"] = "two words";
  CHECK(parse_error(spaced).rfind("/modules/0/name:", 0) == 0);

  auto duplicate = doc;
  duplicate["modules"].push_back(doc["modules"][0]);
  CHECK(parse_error(duplicate).rfind("/modules/1/name:", 0) == 0);

  auto bad_key = doc;
  bad_key["modules"][0]["generators"] = Json{{"g", Json::array({Json::array({"1"})})}};
  CHECK(parse_error(bad_key).rfind("/modules/0/generators/g:", 0) == 0);

  auto mutation = doc;
  mutation["mutations"] = Json::array({"epsilon", "teleport"});
  CHECK(parse_error(mutation) == "/mutations: unknown mutation teleport");
  mutation["mutations"] = Json::array({"epsilon@V", "sr", "compose"});
  CHECK(parse_error(mutation).empty());
}

TEST_CASE("malformed scalars and shapes surface as parse errors") {
  auto doc = minimal();
  doc["idempotents"]["e"] = Json::array({"1/2", "1/0"});
  auto spec = parse_fixture(doc);
  CHECK_THROWS_AS(materialize<Q>(spec, RationalField{}), ParseError);

  doc["idempotents"]["e"] = Json::array({"1"});
  CHECK_THROWS_AS(materialize<Q>(parse_fixture(doc), RationalField{}), ParseError);

  CHECK_THROWS_AS(load_fixture(path("does_not_exist")), ParseError);
  auto broken = std::string(CATMOD_FIXTURE_DIR) + "/../build_fixture_truncated.json";
  {
    std::ofstream out(broken);
    out << "{\"field\": ";
  }
  CHECK_THROWS_AS(load_fixture(broken), ParseError);
  std::remove(broken.c_str());
}

TEST_CASE("shipped fixtures round-trip") {
  for (const auto* name : {"s3", "s3_f7", "c2_nonfull", "s4_stages", "m2", "s3_mutated_epsilon",
                           "s3_mutated_epsilon_at_v", "s3_mutated_compose"}) {
    auto spec = load_fixture(path(name));
    auto once = fixture_json(spec);
    auto twice = fixture_json(parse_fixture(once));
    CHECK(once == twice);
    std::ifstream in(path(name));
    auto original = Json::parse(in);
    original.erase("description");
    for (const auto& [key, value] : original.items()) CHECK(once.at(key) == value);
  }
}

TEST_CASE("suite list") {
  std::vector<std::string> names;
  for (const auto& s : list_suites()) names.push_back(s.name);
  CHECK(names == std::vector<std::string>{"algebra", "monoidal", "nilpotency", "modcat", "transport", "truncation",
                                          "stages"});
  CHECK(is_suite("stages"));
  CHECK_FALSE(is_suite("nosuch"));
}

TEST_CASE("runs are deterministic and independent of suite order") {
  auto a = run_rational("s3", "modcat", 4, 9);
  auto b = run_rational("s3", "modcat", 4, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(machine_line(a[i]) == machine_line(b[i]));

  auto spec = load_fixture(path("s3"));
  SuiteRunner<Q> runner(materialize<Q>(spec, RationalField{}), 4, 9);
  runner.run("transport");
  auto after = runner.run("modcat");
  REQUIRE(after.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(machine_line(after[i]) == machine_line(a[i]));

  for (const auto& r : a) {
    CHECK(r.pass);
    CHECK(r.diagram.find(' ') == std::string::npos);
    CHECK(r.tuple.find(' ') == std::string::npos);
  }
}

TEST_CASE("expected errors") {
  auto records = run_rational("c2_nonfull", "truncation", 3, 1);
  REQUIRE(records.size() == 1);
  CHECK(records[0].diagram == "expected-error");
  CHECK(records[0].pass);

  // the same expectation on a full idempotent is not met
  auto spec = load_fixture(path("s3"));
  spec.expect["truncation"] = "FullnessFailure";
  SuiteRunner<Q> runner(materialize<Q>(spec, RationalField{}), 2, 1);
  auto unmet = runner.run("truncation");
  CHECK(fails(unmet, "expected-error"));
}

TEST_CASE("each mutated fixture fails its own checker family") {
  CHECK(fails(run_rational("s3_mutated_epsilon", "transport", 20, 1), "pentagon"));
  auto b = run_rational("s3_mutated_b", "transport", 6, 1);
  CHECK((fails(b, "bimodule-left") || fails(b, "bimodule-right")));
  CHECK(fails(run_rational("s3_mutated_s", "transport", 6, 1), "F[mutated-s]:module-functor"));
  CHECK(fails(run_rational("s3_mutated_sr", "transport", 6, 1), "F[mutated-sr]:bimodule-functor"));
  CHECK(fails(run_rational("s3_mutated_compose", "transport", 6, 1), "G[mutated-s]∘F[mutated-s]:module-functor"));
  CHECK(fails(run_rational("s3_mutated_epsilon_at_v", "transport", 6, 1), "epsilon-naturality"));

  // and the unmutated fixture is green
  auto clean = run_rational("s3", "transport", 6, 1);
  CHECK(std::all_of(clean.begin(), clean.end(), [](const Record& r) { return r.pass; }));
}
