#include <catch_amalgamated.hpp>

#include "catmod/mutation.hpp"
#include "support.hpp"

using namespace catmod;
using support::Q;

namespace {

Morphism<Q> doubled(Morphism<Q> f) {
  f.mat = Q(2) * f.mat;
  return f;
}

}  // namespace

TEST_CASE("transport through the identity equivalence changes nothing") {
  support::S3 s;
  auto st = tensor_bimodule_structure(s.ctx);
  auto tr = transport(st, identity_equivalence(s.a));
  for (const auto& x : s.simples)
    for (const auto& y : s.simples)
      for (const auto& m : s.simples) {
        CHECK(tr.structure->left->m(x, y, m).mat == st->left->m(x, y, m).mat);
        CHECK(tr.structure->right->mr(m, x, y).mat == st->right->mr(m, x, y).mat);
        CHECK(tr.structure->b(x, m, y).mat == st->b(x, m, y).mat);
      }
  for (const auto& x : s.simples)
    for (const auto& m : s.simples) {
      CHECK(tr.F.s(x, m).mat.is_identity());
      CHECK(tr.G.s(x, m).mat.is_identity());
      CHECK(tr.F.sr(m, x).mat.is_identity());
      CHECK(tr.G.sr(m, x).mat.is_identity());
    }
}

TEST_CASE("structure transported to the ℚS3 corner") {
  support::S3 s;
  auto tr = corner_bimodule_structure(s.td, s.ctx);
  const auto& n_triv = s.corner[0];

  SECTION("pentagons at (V, V, -, N_triv)") {
    for (const auto& z : s.simples) {
      CHECK(check_pentagon(*tr.structure, s.v, s.v, z, n_triv).pass);
      CHECK(check_right_pentagon(*tr.structure, n_triv, s.v, s.v, z).pass);
    }
  }
  SECTION("mixed pentagons") {
    for (const auto& n : s.corner)
      for (const auto& x : s.simples) {
        auto [left, right] = check_bimodule_axioms(*tr.structure, x, s.v, n, s.v, x);
        CHECK(left.pass);
        CHECK(right.pass);
      }
  }
  SECTION("functor data") {
    for (const auto& x : s.simples)
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& m = s.simples[i];
        const auto& n = s.corner[i];
        auto [fs, ft] = check_module_functor(tr.F, x, s.v, m);
        auto [gs, gt] = check_module_functor(tr.G, x, s.v, n);
        CHECK((fs.pass && ft.pass && gs.pass && gt.pass));
        CHECK(check_right_module_functor(tr.F, m, x, s.v).first.pass);
        CHECK(check_right_module_functor(tr.G, n, x, s.v).first.pass);
        CHECK(check_bimodule_functor(tr.F, x, m, s.v).pass);
        CHECK(check_bimodule_functor(tr.G, x, n, s.v).pass);
      }
  }
  SECTION("constraints are invertible intertwiners") {
    auto n = tr.structure->left->m(s.v, s.v, s.corner[2]);
    CHECK(is_intertwiner(n));
    CHECK(is_invertible(n.mat));
    auto nr = tr.structure->right->mr(s.corner[2], s.v, s.sgn);
    CHECK(is_intertwiner(nr));
    CHECK(is_invertible(nr.mat));
  }
}

TEST_CASE("a corrupted counit is detected") {
  support::S3 s;
  auto eq = mutate_epsilon(s.td.equivalence());
  auto tr = transport(tensor_bimodule_structure(s.ctx), eq);
  bool any_failure = false;
  for (const auto& n : s.corner) {
    any_failure |= !check_pentagon(*tr.structure, s.v, s.v, s.v, n).pass;
    auto [left, right] = check_bimodule_axioms(*tr.structure, s.v, s.v, n, s.v, s.v);
    any_failure |= !left.pass || !right.pass;
  }
  CHECK(any_failure);
}

TEST_CASE("a singular counit is refused") {
  support::S3 s;
  auto eq = identity_equivalence(s.a);
  eq.epsilon = [](const Module<Q>& m) {
    auto f = identity_morphism(m);
    f.mat = Mat<Q>(m.dim(), m.dim());
    return f;
  };
  auto tr = transport(tensor_bimodule_structure(s.ctx), eq);
  CHECK_THROWS_AS(tr.structure->left->m(s.v, s.v, s.v), DegenerateEquivalence);
  CHECK_THROWS_AS(tr.F.s(s.v, s.v), DegenerateEquivalence);

  auto c2 = make_group_algebra<Q>({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(transport(tensor_bimodule_structure(s.ctx), identity_equivalence(c2)), AlgebraMismatch);
}

TEST_CASE("transported constraints ignore the unit") {
  support::S3 s;
  auto st = tensor_bimodule_structure(s.ctx);
  auto eq = s.td.equivalence();
  auto other = eq;
  other.eta = [eta = eq.eta](const Module<Q>& n) { return doubled(eta(n)); };
  auto a = transport(st, eq);
  auto b = transport(st, other);
  for (const auto& x : s.simples)
    for (const auto& y : s.simples)
      for (std::size_t i = 0; i < 3; ++i) {
        const auto& n = s.corner[i];
        const auto& m = s.simples[i];
        CHECK(a.structure->left->obj(x, n).actions() == b.structure->left->obj(x, n).actions());
        CHECK(a.structure->left->m(x, y, n).mat == b.structure->left->m(x, y, n).mat);
        CHECK(a.structure->right->mr(n, x, y).mat == b.structure->right->mr(n, x, y).mat);
        CHECK(a.structure->b(x, n, y).mat == b.structure->b(x, n, y).mat);
        CHECK(a.F.s(x, m).mat == b.F.s(x, m).mat);
        CHECK(a.F.sr(m, x).mat == b.F.sr(m, x).mat);
        CHECK(a.G.s(x, n).mat == b.G.s(x, n).mat);
        CHECK(a.G.sr(n, x).mat == b.G.sr(n, x).mat);
      }
  // the unit comparison is where η enters
  CHECK(b.structure->left->unitor(s.corner[2]).mat == Q(2) * a.structure->left->unitor(s.corner[2]).mat);
}

TEST_CASE("composites of the induced functor data") {
  support::S3 s;
  auto st = tensor_bimodule_structure(s.ctx);
  const auto& eq = s.td.equivalence();
  auto tr = transport(st, eq);
  auto gf = compose_module_functors(tr.F, tr.G);
  auto id = identity_module_functor(st);
  for (const auto& x : s.simples)
    for (const auto& m : s.simples) {
      // u_{X,M} = (id_X ⊗ ε_M⁻¹) ∘ ε_{X ⊗ M}
      auto expected = compose(s.ctx->tensor(identity_morphism(x), inverse_morphism(eq.epsilon(m))),
                              eq.epsilon(s.ctx->tensor(x, m)));
      CHECK(gf.s(x, m).mat == expected.mat);
      CHECK(check_module_transformation("epsilon", eq.epsilon, gf, id, x, m).pass);
      auto [pent, tri] = check_module_functor(gf, x, s.v, m);
      CHECK(pent.pass);
      CHECK(tri.pass);
    }

  // associativity of composition on the structure maps
  auto left = compose_module_functors(compose_module_functors(tr.F, tr.G), tr.F);
  auto right = compose_module_functors(tr.F, compose_module_functors(tr.G, tr.F));
  for (const auto& x : s.simples) {
    CHECK(left.s(x, s.v).mat == right.s(x, s.v).mat);
    CHECK(left.sr(s.v, x).mat == right.sr(s.v, x).mat);
  }
  CHECK_THROWS_AS(compose_module_functors(tr.F, tr.F), CompositionMismatch);
}

TEST_CASE("translation is additive") {
  support::S3 s;
  auto tr = corner_bimodule_structure(s.td, s.ctx);
  for (const auto& x : s.simples)
    for (const auto& n1 : s.corner)
      for (const auto& n2 : s.corner) {
        auto sum = translate_left(tr, x, direct_sum(n1, n2));
        CHECK(sum.dim() == translate_left(tr, x, n1).dim() + translate_left(tr, x, n2).dim());
      }
}

TEST_CASE("transport through a composite equals transporting twice") {
  support::S4 s;
  auto sd = build_staged(s.e1, s.e2);
  auto st = tensor_bimodule_structure(s.ctx);
  auto eq1 = sd.td1.equivalence();
  auto eq0 = sd.td0.equivalence();
  auto once = transport(st, compose_equivalences(eq0, eq1));
  auto twice = transport(transport(st, eq1).structure, eq0);
  const auto& triv = s.simples[0];
  const auto& v = s.simples[3];
  auto n = eq0.F.obj(eq1.F.obj(s.simples[2]));
  for (const auto& x : {triv, v}) {
    auto a = once.structure->left->m(x, v, n);
    auto b = twice.structure->left->m(x, v, n);
    CHECK(a.source.actions() == b.source.actions());
    CHECK(a.mat == b.mat);
    CHECK(once.structure->right->mr(n, x, v).mat == twice.structure->right->mr(n, x, v).mat);
  }
  CHECK_THROWS_AS(compose_equivalences(eq1, eq0), CompositionMismatch);
}
