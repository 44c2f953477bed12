#include <catch_amalgamated.hpp>

#include "catmod/algebra.hpp"
#include "catmod/symmetric.hpp"
#include "oracle.hpp"

using namespace catmod;
using Q = Rational;
using M = Mat<Q>;

namespace {

const GroupTable c2_table{{0, 1}, {1, 0}};

AlgebraPtr<Q> c2() { return make_group_algebra<Q>(c2_table, {}, "QC2"); }

std::vector<mpq_class> coords(const M& v) {
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < v.rows(); ++i) out.push_back(v(i, 0));
  return out;
}

std::vector<mpq_class> add(std::vector<mpq_class> a, const std::vector<mpq_class>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// The 2x2 matrix algebra on E11, E12, E21, E22.
AlgebraPtr<Q> m2() {
  AlgebraData<Q> d{4, {}, std::vector<Q>(64, Q(0)), {Q(1), Q(0), Q(0), Q(1)}};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i % 2 == j / 2) d.structure[(i * 4 + j) * 4 + (i / 2) * 2 + j % 2] = 1;
  return Algebra<Q>::create(std::move(d), "M2");
}

Module<Q> column_module(const AlgebraPtr<Q>& a) {
  std::vector<M> action;
  for (std::size_t i = 0; i < 4; ++i) {
    M e(2, 2);
    e(i / 2, i % 2) = 1;
    action.push_back(e);
  }
  return Module<Q>::create(a, action, "col");
}

// Ae ⊗_{eAe} eM -> M, a ⊗ m ↦ a m, written out from the pieces.
M multiplication_map(const Idempotent<Q>& e, const Module<Q>& m) {
  auto corner = corner_algebra(e);
  auto ae = corner_bimodule(corner);
  auto cm = corner_module(corner, m);
  auto bt = balanced_tensor(ae.bimodule, cm.module);
  std::size_t dp = ae.bimodule.dim, dn = cm.module.dim();
  M plain(m.dim(), dp * dn);
  for (std::size_t p = 0; p < dp; ++p)
    for (std::size_t j = 0; j < dn; ++j) {
      M v = m.act(ae.inclusion.col(p)) * cm.inclusion.col(j);
      for (std::size_t r = 0; r < m.dim(); ++r) plain(r, p * dn + j) = v(r, 0);
    }
  return plain * bt.section;
}

}  // namespace

TEST_CASE("group algebras") {
  auto trivial = make_group_algebra<Q>({{0}});
  CHECK(trivial->dim() == 1);
  CHECK(trivial->unit() == M::from_ints({{1}}));

  auto a = c2();
  CHECK(a->dim() == 2);
  CHECK(a->multiply(a->basis_vector(1), a->basis_vector(1)) == a->basis_vector(0));

  auto s3 = symmetric_group_algebra<Q>(3);
  CHECK(s3->dim() == 6);
  CHECK(validate_algebra(s3->data()).empty());
  CHECK(s3->name() == "QS3");
}

TEST_CASE("tables that are not groups") {
  CHECK_THROWS_AS(make_group_algebra<Q>({{0, 1}, {1, 1}}), NotAGroup);  // 1 has no inverse
  CHECK_THROWS_AS(make_group_algebra<Q>({{0, 1}, {0, 1}}), NotAGroup);
  CHECK_THROWS_AS(make_group_algebra<Q>({{0, 2}, {1, 0}}), NotAGroup);
  // associativity fails: a Latin square with identity 0 that is not a group
  GroupTable loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_AS(make_group_algebra<Q>(loop), NotAGroup);
}

TEST_CASE("validate_algebra reports failing triples") {
  // over C2, bumping g g to 1 + g still gives an associative algebra
  // (k[g]/(g² - g - 1)), so the perturbation is made in S3
  auto data = symmetric_group_algebra<Q>(3)->data();
  CHECK(validate_algebra(data).empty());
  data.structure[(1 * 6 + 2) * 6 + 4] += 1;
  auto issues = validate_algebra(data);
  REQUIRE_FALSE(issues.empty());
  CHECK(issues.front().kind == "associativity");
  CHECK_FALSE(issues.front().to_string().empty());
  CHECK_THROWS_AS(Algebra<Q>::create(data, "broken"), InvalidAlgebra);

  AlgebraData<Q> zero_unit{1, {}, {Q(1)}, {Q(0)}};
  auto u = validate_algebra(zero_unit);
  REQUIRE_FALSE(u.empty());
  CHECK((u.front().kind == "left-unit" || u.front().kind == "right-unit"));
}

TEST_CASE("modules validate their action") {
  auto a = c2();
  auto sgn = module_from_group_generators<Q>(a, {{1, M::from_ints({{-1}})}}, "sgn");
  CHECK(sgn.validate().empty());
  CHECK(sgn.action(1) == M::from_ints({{-1}}));
  CHECK_THROWS_AS(Module<Q>::create(a, {M::identity(1), M::from_ints({{2}})}, "bad"), InvalidModule);
  CHECK_THROWS_AS(module_from_group_generators<Q>(a, {{1, M::from_ints({{2}})}}, "bad"), InvalidModule);
}

TEST_CASE("hom spaces") {
  auto a = c2();
  auto reg = regular_module(a);
  auto triv = module_from_group_generators<Q>(a, {{1, M::from_ints({{1}})}}, "triv");
  for (const auto& m : {reg, triv}) {
    auto basis = hom_basis(m, m);
    std::vector<M> flat;
    for (const auto& b : basis) flat.push_back(M::column(b.mat.entries()));
    auto id = M::identity(m.dim());
    CHECK(solve(hstack(flat, m.dim() * m.dim(), RationalField{}), M::column(id.entries())).has_value());
  }
  CHECK(hom_basis(reg, triv).size() == 1);
  for (const auto& f : hom_basis(reg, triv)) CHECK(is_intertwiner(f));

  auto s3 = symmetric_group_algebra<Q>(3);
  auto chars = oracle::characters(3);
  auto v = symmetric_simple(s3, 3, "V");
  auto t = symmetric_simple(s3, 3, "triv");
  CHECK(mpq_class(static_cast<long>(hom_basis(v, t).size())) == oracle::inner(chars.at("V"), chars.at("triv")));
  CHECK(mpq_class(static_cast<long>(hom_basis(v, v).size())) == oracle::inner(chars.at("V"), chars.at("V")));
  CHECK_THROWS_AS(hom_basis(v, triv), AlgebraMismatch);
}

TEST_CASE("symmetric group characters agree with the oracle") {
  for (int n : {3, 4}) {
    auto perms = permutations(n);
    auto expected = oracle::characters(n);
    auto chars = symmetric_characters(n);
    REQUIRE(chars.size() == expected.size());
    for (const auto& c : chars) {
      const auto& want = expected.at(c.name);
      for (std::size_t g = 0; g < perms.size(); ++g)
        CHECK(mpq_class(static_cast<long>(c.values.at(cycle_type(perms[g])))) == want[g]);
    }
  }
}

TEST_CASE("simple modules carry the right characters") {
  for (int n : {3, 4}) {
    auto a = symmetric_group_algebra<Q>(n);
    auto expected = oracle::characters(n);
    for (const auto& s : symmetric_simples(a, n)) {
      CHECK(s.validate().empty());
      const auto& chi = expected.at(s.name());
      for (std::size_t g = 0; g < a->dim(); ++g) CHECK(s.action(g).trace() == chi[g]);
    }
  }
}

TEST_CASE("bundled idempotents match the oracle construction") {
  using oracle::Perm;
  auto s3 = symmetric_group_algebra<Q>(3);
  auto c3 = oracle::characters(3);
  auto e3 = add(add(oracle::central(c3.at("triv")), oracle::central(c3.at("sgn"))),
                oracle::multiply(3, oracle::central(c3.at("V")), oracle::average(3, {{0, 1, 2}, {1, 0, 2}}, false)));
  CHECK(coords(s3_basic_idempotent(s3)) == e3);

  auto s4 = symmetric_group_algebra<Q>(4);
  auto c4 = oracle::characters(4);
  std::vector<Perm> klein_pair{{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}};
  std::vector<Perm> s3_in_s4, c2_in_s4{{0, 1, 2, 3}, {1, 0, 2, 3}};
  for (const auto& p : oracle::perms(3)) s3_in_s4.push_back({p[0], p[1], p[2], 3});
  auto base = add(add(oracle::central(c4.at("triv")), oracle::central(c4.at("sgn"))),
                  oracle::multiply(4, oracle::central(c4.at("W")), oracle::average(4, klein_pair, false)));
  auto e2 = add(add(base, oracle::multiply(4, oracle::central(c4.at("V")), oracle::average(4, s3_in_s4, false))),
                oracle::multiply(4, oracle::central(c4.at("V'")), oracle::average(4, s3_in_s4, true)));
  auto e1 = add(add(base, oracle::multiply(4, oracle::central(c4.at("V")), oracle::average(4, c2_in_s4, false))),
                oracle::multiply(4, oracle::central(c4.at("V'")), oracle::average(4, c2_in_s4, true)));
  CHECK(coords(s4_rank_one_idempotent(s4)) == e2);
  CHECK(coords(s4_rank_two_idempotent(s4)) == e1);
  // block ranks as traces on the simples
  std::vector<long> r2, r1;
  for (const auto& name : {"triv", "sgn", "W", "V", "V'"}) {
    r2.push_back(oracle::trace(e2, c4.at(name)).get_num().get_si());
    r1.push_back(oracle::trace(e1, c4.at(name)).get_num().get_si());
  }
  CHECK(r2 == std::vector<long>{1, 1, 1, 1, 1});
  CHECK(r1 == std::vector<long>{1, 1, 1, 2, 2});
}

TEST_CASE("balanced tensor over the ground field is the plain tensor") {
  auto a = c2();
  auto k = make_group_algebra<Q>({{0}}, {}, "Q");
  Bimodule<Q> p{a, k, 2, {}, {M::identity(2)}, "A"};
  for (std::size_t i = 0; i < 2; ++i) p.left_action.push_back(a->left_mult(a->basis_vector(i)));
  CHECK(validate_bimodule(p).empty());
  auto n = Module<Q>::create(k, {M::identity(3)}, "Q3");
  auto bt = balanced_tensor(p, n);
  CHECK(bt.relation_rank == 0);
  CHECK(bt.module.dim() == 6);
  CHECK(bt.module.validate().empty());
  CHECK_THROWS_AS(balanced_tensor(p, regular_module(a)), AlgebraMismatch);
}

TEST_CASE("A ⊗_A N is N") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto p = regular_bimodule(s3);
  CHECK(validate_bimodule(p).empty());
  auto n = symmetric_simple(s3, 3, "V");
  auto bt = balanced_tensor(p, n);
  CHECK(bt.module.dim() == n.dim());
  M act(n.dim(), p.dim * n.dim());
  for (std::size_t g = 0; g < p.dim; ++g)
    for (std::size_t j = 0; j < n.dim(); ++j) {
      M v = n.action(g).col(j);
      for (std::size_t r = 0; r < n.dim(); ++r) act(r, g * n.dim() + j) = v(r, 0);
    }
  Morphism<Q> mult{bt.module, n, act * bt.section};
  CHECK(is_intertwiner(mult));
  CHECK(is_invertible(mult.mat));
}

TEST_CASE("matrix algebra corner") {
  auto a = m2();
  auto e = make_idempotent(a, M::from_ints({{1}, {0}, {0}, {0}}));
  CHECK(is_full_idempotent(e).full);
  auto corner = corner_algebra(e);
  CHECK(corner.algebra->dim() == 1);
  auto col = column_module(a);
  auto cm = corner_module(corner, col);
  CHECK(cm.module.dim() == 1);
  auto ae = corner_bimodule(corner);
  CHECK(ae.bimodule.dim == 2);
  auto bt = balanced_tensor(ae.bimodule, cm.module);
  CHECK(bt.relation_rank == 0);
  CHECK(bt.module.dim() == 2);
  M mult = multiplication_map(e, col);
  CHECK(is_invertible(mult));
  CHECK(is_intertwiner(Morphism<Q>{bt.module, col, mult}));
}

TEST_CASE("fullness") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto one = make_idempotent(s3, s3->unit());
  CHECK(is_full_idempotent(one).full);

  auto a = c2();
  auto half = make_idempotent(a, M::from_rows({{Q(1, 2)}, {Q(1, 2)}}));
  auto f = is_full_idempotent(half);
  CHECK_FALSE(f.full);
  CHECK(f.span_dim == 1);

  auto basic = make_idempotent(s3, s3_basic_idempotent(s3));
  auto g = is_full_idempotent(basic);
  CHECK(g.full);
  CHECK(g.span_dim == 6);

  CHECK_THROWS_AS(make_idempotent(a, M::from_ints({{1}, {1}})), NotIdempotent);
  CHECK_THROWS_AS(make_idempotent(a, M::from_ints({{1}})), ShapeError);
}

TEST_CASE("corner algebras") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto whole = corner_algebra(make_idempotent(s3, s3->unit()));
  CHECK(whole.algebra->dim() == 6);
  CHECK(whole.inclusion.is_identity());

  auto e = s3_basic_idempotent(s3);
  auto corner = corner_algebra(make_idempotent(s3, e));
  CHECK(mpq_class(static_cast<long>(corner.algebra->dim())) == oracle::corner_dim(3, coords(e)));
  CHECK(corner.algebra->dim() == 3);
  const auto& b = *corner.algebra;
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      CHECK(b.multiply(b.basis_vector(i), b.basis_vector(j)) == b.multiply(b.basis_vector(j), b.basis_vector(i)));
  // the unit of eAe is e
  CHECK(corner.inclusion * b.unit() == e);
  // the inclusion is multiplicative
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      CHECK(corner.inclusion * b.multiply(b.basis_vector(i), b.basis_vector(j)) ==
            s3->multiply(corner.inclusion.col(i), corner.inclusion.col(j)));
}

TEST_CASE("corner modules have dimension rank ρ(e)") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto e = s3_basic_idempotent(s3);
  auto corner = corner_algebra(make_idempotent(s3, e));
  auto reg = regular_module(s3);
  auto cm = corner_module(corner, reg);
  // trace of e on the regular module = 6 e(1)
  CHECK(mpq_class(static_cast<long>(cm.module.dim())) == oracle::trace(coords(e), oracle::regular(3)));
  CHECK(cm.module.dim() == 4);
  CHECK(cm.module.dim() == rank(reg.act(e)));
  CHECK(cm.module.validate().empty());
  CHECK(cm.compression * cm.inclusion == M::identity(cm.module.dim()));

  auto chars = oracle::characters(3);
  for (const auto& s : symmetric_simples(s3, 3)) {
    auto cs = corner_module(corner, s);
    CHECK(mpq_class(static_cast<long>(cs.module.dim())) == oracle::trace(coords(e), chars.at(s.name())));
  }

  auto id_corner = corner_algebra(make_idempotent(s3, s3->unit()));
  CHECK(corner_module(id_corner, reg).module.dim() == 6);
}

TEST_CASE("balanced tensor is functorial") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto corner = corner_algebra(make_idempotent(s3, s3_basic_idempotent(s3)));
  auto ae = corner_bimodule(corner);
  CHECK(validate_bimodule(ae.bimodule).empty());
  auto reg = regular_module(s3);
  auto n1 = corner_module(corner, reg).module;
  auto n2 = corner_module(corner, symmetric_simple(s3, 3, "V")).module;
  auto b1 = balanced_tensor(ae.bimodule, n1);
  auto b2 = balanced_tensor(ae.bimodule, n2);
  for (const auto& f : hom_basis(n1, n2)) {
    // id ⊗ f on plain tensors descends: q2 (id ⊗ f) = G(f) q1 with G(f) = q2 (id ⊗ f) s1
    M plain = kronecker(M::identity(ae.bimodule.dim), f.mat);
    M gf = b2.quotient * plain * b1.section;
    CHECK(gf * b1.quotient == b2.quotient * plain);
    CHECK(is_intertwiner(Morphism<Q>{b1.module, b2.module, gf}));
  }
}

TEST_CASE("multiplication map is an isomorphism exactly when e is full") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto basic = make_idempotent(s3, s3_basic_idempotent(s3));
  auto reg = regular_module(s3);
  M mult = multiplication_map(basic, reg);
  CHECK(mult.rows() == mult.cols());
  CHECK(is_invertible(mult));

  auto a = c2();
  auto half = make_idempotent(a, M::from_rows({{Q(1, 2)}, {Q(1, 2)}}));
  M bad = multiplication_map(half, regular_module(a));
  CHECK(rank(bad) < 2);
}

TEST_CASE("direct sums") {
  auto s3 = symmetric_group_algebra<Q>(3);
  auto v = symmetric_simple(s3, 3, "V");
  auto t = symmetric_simple(s3, 3, "triv");
  auto sum = direct_sum(v, t);
  CHECK(sum.dim() == 3);
  CHECK(sum.name() == "V+triv");
  CHECK(sum.validate().empty());
  CHECK(is_intertwiner(projection_first(sum, v)));
}
