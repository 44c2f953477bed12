// Batch verifier: loads a fixture, runs suites, prints a report.
// Exit status: 0 all checks pass, 1 some check fails, 2 malformed input.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "catmod/catmod.hpp"
#include "catmod/suites.hpp"

namespace {

struct Options {
  std::vector<std::string> suites;
  std::string fixture;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string report = "text";
  bool list = false;
};

template <catmod::ExactScalar S>
int run(const catmod::FixtureSpec& spec, const catmod::FieldOf<S>& field, const Options& opt) {
  using namespace catmod;
  std::vector<std::string> suites = opt.suites.empty() ? spec.suites : opt.suites;
  if (suites.empty())
    for (const auto& s : list_suites()) suites.push_back(s.name);
  for (const auto& s : suites)
    if (!is_suite(s)) {
      std::cerr << "error: unknown suite '" << s << "'\n";
      return 2;
    }
  Loaded<S> loaded = materialize<S>(spec, field);
  SuiteRunner<S> runner(std::move(loaded), opt.samples.value_or(spec.samples), opt.seed.value_or(spec.seed));

  std::size_t total = 0, failed = 0;
  const Record* first_failure = nullptr;
  std::vector<std::vector<Record>> all;
  for (const auto& s : suites) all.push_back(runner.run(s));
  for (std::size_t i = 0; i < suites.size(); ++i) {
    std::size_t suite_failed = 0;
    for (const auto& r : all[i]) {
      ++total;
      if (!r.pass) {
        ++failed;
        ++suite_failed;
        if (!first_failure) first_failure = &r;
      }
      if (opt.report == "machine") std::cout << machine_line(r) << "\n";
    }
    if (opt.report == "text") {
      std::cout << suites[i] << ": " << all[i].size() << " checks, " << suite_failed << " failed\n";
      for (const auto& r : all[i])
        if (!r.pass) std::cout << "  FAIL " << r.diagram << " " << r.tuple << "\n";
    }
  }
  if (opt.report == "text") {
    if (first_failure) {
      std::cout << "first counterexample: " << first_failure->diagram << " " << first_failure->tuple << "\n";
      if (!first_failure->detail.empty()) std::cout << first_failure->detail << "\n";
    }
    std::cout << total << " checks, " << failed << " failed\n";
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"Exact coherence checks for module categories over A-mod"};
  app.add_option("--suite", opt.suites, "Suite to run (repeatable); default: the fixture's list");
  app.add_option("--fixture", opt.fixture, "Fixture JSON file");
  app.add_option("--seed", opt.seed, "Sampling seed (overrides the fixture)");
  app.add_option("--samples", opt.samples, "Sampled tuples per check (overrides the fixture)");
  app.add_option("--report", opt.report, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--list", opt.list, "List suites (restricted to --suite names if given) and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (opt.list) {
    int status = 0;
    for (const auto& s : opt.suites)
      if (!catmod::is_suite(s)) {
        std::cerr << "error: unknown suite '" << s << "'\n";
        status = 2;
      }
    for (const auto& s : catmod::list_suites())
      if (opt.suites.empty() || std::find(opt.suites.begin(), opt.suites.end(), s.name) != opt.suites.end())
        std::cout << s.name << "  " << s.description << "\n";
    return status;
  }
  if (opt.fixture.empty()) {
    std::cerr << "error: --fixture is required\n";
    return 2;
  }
  try {
    auto spec = catmod::load_fixture(opt.fixture);
    if (spec.prime) return run<catmod::ModP>(spec, catmod::make_prime_field(*spec.prime), opt);
    return run<catmod::Rational>(spec, catmod::RationalField{}, opt);
  } catch (const catmod::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
