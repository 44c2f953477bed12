#include <catch_amalgamated.hpp>

#include "catmod/mutation.hpp"
#include "catmod/symmetric.hpp"

using namespace catmod;
using Q = Rational;
using M = Mat<Q>;

namespace {

struct Fixture {
  AlgebraPtr<Q> a = symmetric_group_algebra<Q>(3);
  std::shared_ptr<const MonoidalContext<Q>> ctx = std::make_shared<const MonoidalContext<Q>>(hopf_from_group(a));
  StructurePtr<Q> st = tensor_bimodule_structure(ctx);
  std::vector<Module<Q>> simples = symmetric_simples(a, 3);
  Module<Q> v = simples[2];
};

StructurePtr<Q> left_only(const StructurePtr<Q>& st) {
  auto out = std::make_shared<ActionStructure<Q>>(*st);
  out->right.reset();
  out->b = nullptr;
  return out;
}

}  // namespace

TEST_CASE("tensor action of C on itself is coherent") {
  Fixture f;
  std::size_t checked = 0;
  for (const auto& x : f.simples)
    for (const auto& y : f.simples)
      for (const auto& z : f.simples)
        for (const auto& m : f.simples) {
          CHECK(check_pentagon(*f.st, x, y, z, m).pass);
          CHECK(check_right_pentagon(*f.st, m, x, y, z).pass);
          auto [left, right] = check_bimodule_axioms(*f.st, x, y, m, z, x);
          CHECK(left.pass);
          CHECK(right.pass);
          ++checked;
        }
  CHECK(checked == 81);
  for (const auto& g : hom_basis(direct_sum(f.v, f.simples[0]), f.v)) {
    CHECK(check_unitor(*f.st, g, false).pass);
    CHECK(check_unitor(*f.st, g, true).pass);
  }
}

TEST_CASE("reports carry both composites only on failure") {
  Fixture f;
  auto ok = check_pentagon(*f.st, f.v, f.v, f.v, f.v);
  CHECK(ok.pass);
  CHECK(ok.diagram == "pentagon");
  CHECK(ok.tuple == "(V,V,V,V)");
  CHECK_FALSE(ok.lhs.has_value());

  auto bad = check_pentagon(*mutate_m(f.st), f.v, f.v, f.v, f.v);
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.lhs.has_value());
  REQUIRE(bad.rhs.has_value());
  CHECK(*bad.lhs != *bad.rhs);
}

TEST_CASE("mutated middle constraint breaks the bimodule diagrams") {
  Fixture f;
  auto mutated = mutate_b(f.st);
  auto [left, right] = check_bimodule_axioms(*mutated, f.v, f.v, f.v, f.v, f.v);
  CHECK_FALSE((left.pass && right.pass));
}

TEST_CASE("identity module functor") {
  Fixture f;
  auto id = identity_module_functor(f.st);
  for (const auto& x : f.simples)
    for (const auto& m : f.simples) {
      auto [pent, tri] = check_module_functor(id, x, f.v, m);
      CHECK(pent.pass);
      CHECK(tri.pass);
      auto [rpent, rtri] = check_right_module_functor(id, m, x, f.v);
      CHECK(rpent.pass);
      CHECK(rtri.pass);
      CHECK(check_bimodule_functor(id, x, m, f.v).pass);
    }
}

TEST_CASE("mutated functor data fail") {
  Fixture f;
  auto id = identity_module_functor(f.st);
  auto bad_s = mutate_s(id);
  auto [pent, tri] = check_module_functor(bad_s, f.v, f.v, f.v);
  CHECK_FALSE(pent.pass);
  CHECK_FALSE(tri.pass);
  CHECK(pent.diagram == "Id[mutated-s]:module-functor");

  auto bad_sr = mutate_sr(id);
  CHECK_FALSE(check_bimodule_functor(bad_sr, f.v, f.v, f.v).pass);
  CHECK_FALSE(check_right_module_functor(bad_sr, f.v, f.v, f.v).first.pass);
}

TEST_CASE("composition of module functors") {
  Fixture f;
  auto id = identity_module_functor(f.st);
  auto twice = compose_module_functors(id, id);
  for (const auto& x : f.simples)
    for (const auto& m : f.simples) {
      CHECK(twice.s(x, m).mat == id.s(x, m).mat);
      CHECK(twice.sr(m, x).mat == id.sr(m, x).mat);
      CHECK(check_module_functor(twice, x, f.v, m).first.pass);
    }
  auto broken = compose_module_functors(mutate_s(id), mutate_s(id));
  CHECK_FALSE(check_module_functor(broken, f.v, f.v, f.v).first.pass);

  auto other = tensor_bimodule_structure(f.ctx);
  auto foreign = identity_module_functor(other);
  CHECK_THROWS_AS(compose_module_functors(id, foreign), CompositionMismatch);
}

TEST_CASE("naturality squares") {
  Fixture f;
  Family1<Q> ids = [](const Module<Q>& m) { return identity_morphism(m); };
  auto reg = regular_module(f.a);
  for (const auto& g : hom_basis(reg, f.v)) {
    CHECK(check_naturality<Q>("identity", ids, identity_functor<Q>().mor, identity_functor<Q>().mor, g).pass);
    // associator m_{X,Y,-} against the action on morphisms
    Family1<Q> assoc = [&](const Module<Q>& m) { return f.st->left->m(f.v, f.v, m); };
    MorphismMap<Q> p = [&](const Morphism<Q>& h) {
      return f.st->left->mor(identity_morphism(f.ctx->tensor(f.v, f.v)), h);
    };
    MorphismMap<Q> q = [&](const Morphism<Q>& h) {
      return f.st->left->mor(identity_morphism(f.v), f.st->left->mor(identity_morphism(f.v), h));
    };
    CHECK(check_naturality<Q>("associator", assoc, p, q, g).pass);
  }
  // a family that is not natural: doubling only at the regular module
  Family1<Q> uneven = [&](const Module<Q>& m) {
    auto out = identity_morphism(m);
    if (m.key() == reg.key()) out.mat = Q(2) * out.mat;
    return out;
  };
  auto g = hom_basis(reg, f.v).front();
  CHECK_FALSE(check_naturality<Q>("uneven", uneven, identity_functor<Q>().mor, identity_functor<Q>().mor, g).pass);
}

TEST_CASE("module transformations") {
  Fixture f;
  auto id = identity_module_functor(f.st);
  Family1<Q> ids = [](const Module<Q>& m) { return identity_morphism(m); };
  Family1<Q> twos = [](const Module<Q>& m) {
    auto out = identity_morphism(m);
    out.mat = Q(2) * out.mat;
    return out;
  };
  for (const auto& x : f.simples) {
    CHECK(check_module_transformation("id", ids, id, id, x, f.v).pass);
    // a scalar family: θ_{X⊗M} and X⊗θ_M are both 2
    CHECK(check_module_transformation("two", twos, id, id, x, f.v).pass);
  }
}

TEST_CASE("malformed structures are rejected") {
  Fixture f;
  auto lonely = left_only(f.st);
  CHECK_THROWS_AS(check_bimodule_axioms(*lonely, f.v, f.v, f.v, f.v, f.v), MalformedConstraint);
  CHECK_THROWS_AS(check_right_pentagon(*lonely, f.v, f.v, f.v, f.v), MalformedConstraint);
  auto id = identity_module_functor(lonely);
  CHECK_THROWS_AS(check_bimodule_functor(id, f.v, f.v, f.v), MalformedConstraint);

  // a constraint landing in the wrong object; objects are compared by
  // their actions, so a rename alone would not count
  auto wrong = std::make_shared<ActionStructure<Q>>(*f.st);
  auto reg = regular_module(f.a);
  wrong->left->m = [&](const Module<Q>& x, const Module<Q>& y, const Module<Q>& m) {
    auto g = f.st->left->m(x, y, m);
    g.target = reg;
    return g;
  };
  CHECK_THROWS_AS(check_pentagon(*wrong, f.v, f.v, f.v, f.v), MalformedConstraint);

  auto a = identity_morphism(f.v);
  auto b = identity_morphism(f.simples[0]);
  CHECK_THROWS_AS(compare<Q>("parallel", "()", a, b), MalformedConstraint);
  CHECK_THROWS_AS(compose(a, b), MalformedConstraint);
}
