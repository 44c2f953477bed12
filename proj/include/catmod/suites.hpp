#pragma once

// Named verification suites over a loaded fixture. Each suite produces
// records "SUITE DIAGRAM TUPLE PASS|FAIL"; sampling is seeded per suite so
// reports do not depend on which other suites run.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "catmod/fixture.hpp"
#include "catmod/mutation.hpp"
#include "catmod/stages.hpp"

namespace catmod {

struct SuiteInfo {
  std::string name;
  std::string description;
};

inline const std::vector<SuiteInfo>& list_suites() {
  static const std::vector<SuiteInfo> suites{
      {"algebra", "structure constants, module axioms, idempotents and corners"},
      {"monoidal", "Hopf axioms, strict associator, unit, bifunctoriality of the tensor product"},
      {"nilpotency", "expansion of (y - psi)^k on tensors and nilpotency of Kronecker sums"},
      {"modcat", "coherence of the tensor action of A-mod on itself"},
      {"transport", "structure transported to eAe-mod: pentagons, bimodule axioms, functor data"},
      {"truncation", "the equivalence A-mod ~ eAe-mod: epsilon, eta, translation functors"},
      {"stages", "nested idempotents e2 <= e1: factorization and the stage functors"},
  };
  return suites;
}

inline bool is_suite(const std::string& name) {
  for (const auto& s : list_suites())
    if (s.name == name) return true;
  return false;
}

struct Record {
  std::string suite;
  std::string diagram;
  std::string tuple;
  bool pass = false;
  std::string detail;  // composites or error text on failure
};

/// Seeded draws with a fixed reduction, so that reports are identical
/// across standard library implementations.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(gen_() % n); }
  long long between(long long lo, long long hi) {
    return lo + static_cast<long long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 gen_;
};

inline std::uint64_t suite_seed(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ull;
  return seed ^ h;
}

template <ExactScalar S>
class SuiteRunner {
 public:
  SuiteRunner(Loaded<S> fx, std::size_t samples, std::uint64_t seed)
      : fx_(std::move(fx)), samples_(samples), seed_(seed) {
    for (const auto& m : fx_.modules) {
      const ModuleSpec* ms = nullptr;
      for (const auto& s : fx_.spec.modules)
        if (s.name == m.name()) ms = &s;
      if (!ms || ms->tuples) pool_.push_back(m);
    }
  }

  std::vector<Record> run(const std::string& suite) {
    records_.clear();
    suite_ = suite;
    Sampler rng(suite_seed(seed_, suite));
    auto expected = fx_.spec.expect.find(suite);
    try {
      if (suite == "algebra") algebra_suite(rng);
      else if (suite == "monoidal") monoidal_suite(rng);
      else if (suite == "nilpotency") nilpotency_suite(rng);
      else if (suite == "modcat") modcat_suite(rng);
      else if (suite == "transport") transport_suite(rng);
      else if (suite == "truncation") truncation_suite(rng);
      else if (suite == "stages") stages_suite(rng);
      else throw ParseError("unknown suite " + suite);
      if (expected != fx_.spec.expect.end())
        add("expected-error", "(" + expected->second + ")", false, "suite completed without raising it");
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      std::string what = err.what();
      if (expected != fx_.spec.expect.end() && what.rfind(expected->second + ":", 0) == 0)
        add("expected-error", "(" + expected->second + ")", true, "");
      else
        add("error", "()", false, what);
    }
    return records_;
  }

 private:
  // -- plumbing ------------------------------------------------------------

  void add(std::string diagram, std::string tuple, bool pass, std::string detail) {
    records_.push_back({suite_, std::move(diagram), std::move(tuple), pass, std::move(detail)});
  }

  void add(const DiagramReport<S>& r) {
    std::string detail;
    if (!r.pass && r.lhs && r.rhs) detail = "lhs = " + r.lhs->to_string() + "\nrhs = " + r.rhs->to_string();
    add(r.diagram, r.tuple, r.pass, std::move(detail));
  }

  void add(const std::pair<DiagramReport<S>, DiagramReport<S>>& rs) {
    add(rs.first);
    add(rs.second);
  }

  const std::vector<Module<S>>& pool() const {
    if (pool_.empty()) throw ParseError("fixture defines no modules for tuple sampling");
    return pool_;
  }

  std::shared_ptr<const MonoidalContext<S>> context() {
    if (!fx_.algebra->group_table()) throw ParseError("suite " + suite_ + " needs a group fixture");
    if (!ctx_) ctx_ = std::make_shared<const MonoidalContext<S>>(hopf_from_group(fx_.algebra));
    return ctx_;
  }

  Idempotent<S> idempotent(const std::string& name) {
    auto it = fx_.idempotents.find(name);
    if (it == fx_.idempotents.end()) {
      if (name == "e" && fx_.idempotents.size() == 1) return make_idempotent(fx_.algebra, fx_.idempotents.begin()->second);
      throw ParseError("suite " + suite_ + " needs idempotent \"" + name + "\"");
    }
    return make_idempotent(fx_.algebra, it->second);
  }

  Module<S> random_object(Sampler& rng, const std::vector<Module<S>>& objs) {
    if (rng.below(2) == 0) return rng.pick(objs);
    const auto& a = rng.pick(objs);
    const auto& b = rng.pick(objs);
    return direct_sum(a, b);
  }

  Mat<S> random_combination(Sampler& rng, const std::vector<Morphism<S>>& basis, std::size_t rows, std::size_t cols) {
    Mat<S> m(rows, cols, fx_.field);
    for (const auto& b : basis) {
      long long c = rng.between(-2, 2);
      if (c != 0) m += ScalarTraits<S>::from_int(fx_.field, c) * b.mat;
    }
    return m;
  }

  /// A random intertwiner between small random objects built from objs.
  Morphism<S> random_morphism(Sampler& rng, const std::vector<Module<S>>& objs) {
    for (int attempt = 0; attempt < 8; ++attempt) {
      auto m = random_object(rng, objs);
      auto n = random_object(rng, objs);
      auto basis = hom_basis(m, n);
      if (basis.empty()) continue;
      auto mat = random_combination(rng, basis, n.dim(), m.dim());
      if (mat.is_zero()) mat = basis.front().mat;
      return {m, n, std::move(mat)};
    }
    auto m = rng.pick(objs);
    return identity_morphism(m);
  }

  Morphism<S> random_endomorphism(Sampler& rng, const Module<S>& m) {
    auto basis = hom_basis(m, m);
    return {m, m, random_combination(rng, basis, m.dim(), m.dim())};
  }

  // -- suites ----------------------------------------------------------------

  void algebra_suite(Sampler&) {
    const auto& a = *fx_.algebra;
    add("validate-algebra", tuple_name({a.name()}), validate_algebra(a.data()).empty(), "");
    for (const auto& m : fx_.modules) {
      auto issues = m.validate();
      add("module-axioms", tuple_name({m.name()}), issues.empty(), issues.empty() ? "" : issues.front());
      auto basis = hom_basis(m, m);
      std::vector<Mat<S>> cols;
      for (const auto& b : basis) {
        Mat<S> v(m.dim() * m.dim(), 1, fx_.field);
        for (std::size_t i = 0; i < m.dim() * m.dim(); ++i) v(i, 0) = b.mat.entries()[i];
        cols.push_back(std::move(v));
      }
      auto id = Mat<S>::identity(m.dim(), fx_.field);
      Mat<S> idv(m.dim() * m.dim(), 1, fx_.field);
      for (std::size_t i = 0; i < m.dim() * m.dim(); ++i) idv(i, 0) = id.entries()[i];
      bool has_id = !cols.empty() && solve(hstack(cols, idv.rows(), fx_.field), idv).has_value();
      add("hom-identity", tuple_name({m.name()}), has_id, "");
    }
    for (const auto& [name, coords] : fx_.idempotents) {
      bool idem = a.multiply(coords, coords) == coords;
      add("idempotent", tuple_name({name}), idem, idem ? "" : "e * e != e");
      if (!idem) continue;
      auto e = make_idempotent(fx_.algebra, coords);
      auto full = is_full_idempotent(e);
      auto corner = corner_algebra(e);
      add("corner", tuple_name({name}), validate_algebra(corner.algebra->data()).empty(),
          "dim eAe = " + std::to_string(corner.algebra->dim()) + ", dim AeA = " + std::to_string(full.span_dim));
      for (const auto& m : fx_.modules) {
        auto cm = corner_module(corner, m);
        add("corner-rank", tuple_name({name, m.name()}), cm.module.dim() == rank(m.act(coords)), "");
      }
    }
  }

  void monoidal_suite(Sampler& rng) {
    auto ctx = context();
    auto issues = validate_hopf(ctx->hopf());
    add("hopf-axioms", tuple_name({fx_.algebra->name()}), issues.empty(), issues.empty() ? "" : issues.front());
    const auto& objs = pool();
    for (std::size_t k = 0; k < samples_; ++k) {
      const auto& x = rng.pick(objs);
      const auto& y = rng.pick(objs);
      const auto& z = rng.pick(objs);
      bool strict = ctx->tensor(ctx->tensor(x, y), z).actions() == ctx->tensor(x, ctx->tensor(y, z)).actions();
      add("strict-associator", tuple_name({x.name(), y.name(), z.name()}), strict, "");
    }
    for (const auto& x : objs) {
      bool unit = ctx->tensor(ctx->unit_object(), x).actions() == x.actions() &&
                  ctx->tensor(x, ctx->unit_object()).actions() == x.actions();
      add("unit", tuple_name({x.name()}), unit, "");
    }
    for (std::size_t k = 0; k < samples_; ++k) {
      auto m = random_object(rng, objs);
      auto n = random_object(rng, objs);
      auto f1 = random_endomorphism(rng, m), f2 = random_endomorphism(rng, m);
      auto g1 = random_endomorphism(rng, n), g2 = random_endomorphism(rng, n);
      auto lhs = ctx->tensor(compose(f1, f2), compose(g1, g2));
      auto rhs = compose(ctx->tensor(f1, g1), ctx->tensor(f2, g2));
      add(compare<S>("bifunctor", tuple_name({m.name(), n.name()}), lhs, rhs));
      add("tensor-intertwiner", tuple_name({m.name(), n.name()}), is_intertwiner(ctx->tensor(f1, g1)), "");
    }
  }

  Mat<S> random_nilpotent(Sampler& rng, std::size_t n) {
    Mat<S> u(n, n, fx_.field);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) u(i, j) = ScalarTraits<S>::from_int(fx_.field, rng.between(-2, 2));
    // conjugate by a product of elementary matrices
    Mat<S> p = Mat<S>::identity(n, fx_.field);
    for (std::size_t k = 0; k < 2 * n && n > 1; ++k) {
      std::size_t i = rng.below(n), j = rng.below(n);
      if (i == j) continue;
      Mat<S> el = Mat<S>::identity(n, fx_.field);
      el(i, j) = ScalarTraits<S>::from_int(fx_.field, rng.between(-1, 1));
      p = p * el;
    }
    return p * u * inverse(p);
  }

  void nilpotency_suite(Sampler& rng) {
    using T = ScalarTraits<S>;
    for (std::size_t k = 0; k < samples_; ++k) {
      std::size_t dx = 1 + rng.below(6), dz = 1 + rng.below(6);
      while (dx * dz > 24) dz = 1 + rng.below(dz);
      Mat<S> yx = random_nilpotent(rng, dx), yz = random_nilpotent(rng, dz);
      S psi = T::from_int(fx_.field, rng.between(-3, 3));
      std::vector<Mat<S>> px, pz;
      for (int i = 0; i < 2; ++i) {
        Mat<S> x(dx, 1, fx_.field), z(dz, 1, fx_.field);
        for (std::size_t r = 0; r < dx; ++r) x(r, 0) = T::from_int(fx_.field, rng.between(-3, 3));
        for (std::size_t r = 0; r < dz; ++r) z(r, 0) = T::from_int(fx_.field, rng.between(-3, 3));
        px.push_back(std::move(x));
        pz.push_back(std::move(z));
      }
      Mat<S> alpha(2, 2, fx_.field);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) alpha(i, j) = T::from_int(fx_.field, rng.between(-2, 2));
      std::size_t p = nilpotency_index(yx).value_or(dx), q = nilpotency_index(yz).value_or(dz);
      std::string pair = "pair" + std::to_string(k) + ":" + std::to_string(dx) + "x" + std::to_string(dz);
      for (std::size_t power = 0; power <= p + q; ++power) {
        auto r = nilpotent_expansion_check(yx, yz, psi, power, px, pz, alpha);
        add("expansion", tuple_name({pair, "k=" + std::to_string(power)}), r.binomial && r.double_sum, "");
        if (power == 0) add("index-bound", tuple_name({pair}), r.index_bound.value_or(false), "");
      }
    }
  }

  void modcat_suite(Sampler& rng) {
    auto ctx = context();
    auto st = tensor_bimodule_structure(ctx);
    const auto& objs = pool();
    auto idf = identity_module_functor(st);
    for (std::size_t k = 0; k < samples_; ++k) {
      const auto& x = rng.pick(objs);
      const auto& y = rng.pick(objs);
      const auto& z = rng.pick(objs);
      const auto& m = rng.pick(objs);
      add(check_pentagon(*st, x, y, z, m));
      add(check_right_pentagon(*st, m, x, y, z));
      add(check_bimodule_axioms(*st, x, y, m, z, x));
      add(check_module_functor(idf, x, y, m));
      add(check_right_module_functor(idf, m, x, y));
      add(check_bimodule_functor(idf, x, m, y));
      auto f = random_morphism(rng, objs);
      Family1<S> assoc = [&](const Module<S>& mm) { return st->left->m(x, y, mm); };
      MorphismMap<S> p = [&](const Morphism<S>& g) { return st->left->mor(ctx->tensor(identity_morphism(x), identity_morphism(y)), g); };
      MorphismMap<S> q = [&](const Morphism<S>& g) {
        return st->left->mor(identity_morphism(x), st->left->mor(identity_morphism(y), g));
      };
      add(check_naturality("associator-naturality", assoc, p, q, f));
      add(check_unitor(*st, f, false));
      add(check_unitor(*st, f, true));
    }
  }

  bool mutated(const std::string& kind) const {
    const auto& ms = fx_.spec.mutations;
    return std::find(ms.begin(), ms.end(), kind) != ms.end();
  }

  EquivalenceDatum<S> maybe_mutated(const EquivalenceDatum<S>& eq) const {
    auto out = mutated("epsilon") ? mutate_epsilon(eq) : eq;
    for (const auto& m : fx_.spec.mutations)
      if (m.rfind("epsilon@", 0) == 0) out = mutate_epsilon_at(out, m.substr(8));
    return out;
  }

  Transported<S> maybe_mutated(Transported<S> tr) const {
    if (mutated("m") || mutated("b")) {
      tr.structure = mutated("m") ? mutate_m(tr.structure) : tr.structure;
      tr.structure = mutated("b") ? mutate_b(tr.structure) : tr.structure;
      tr.F.target = tr.structure;
      tr.G.source = tr.structure;
    }
    if (mutated("s") || mutated("compose")) tr.F = mutate_s(tr.F);
    if (mutated("compose")) tr.G = mutate_s(tr.G);
    if (mutated("sr")) tr.F = mutate_sr(tr.F);
    return tr;
  }

  void transport_suite(Sampler& rng) {
    auto ctx = context();
    auto td = Truncation<S>::build(idempotent("e"));
    auto eq = maybe_mutated(td.equivalence());
    auto tr = maybe_mutated(transport(tensor_bimodule_structure(ctx), eq));
    const auto& objs = pool();
    std::vector<Module<S>> corner;
    for (const auto& m : objs) corner.push_back(eq.F.obj(m));
    auto gf = compose_module_functors(tr.F, tr.G);  // G ∘ F on A-mod
    auto fg = compose_module_functors(tr.G, tr.F);  // F ∘ G on eAe-mod
    for (std::size_t k = 0; k < samples_; ++k) {
      const auto& x = rng.pick(objs);
      const auto& y = rng.pick(objs);
      const auto& z = rng.pick(objs);
      const auto& n = rng.pick(corner);
      const auto& m = rng.pick(objs);
      add(check_pentagon(*tr.structure, x, y, z, n));
      add(check_right_pentagon(*tr.structure, n, x, y, z));
      add(check_bimodule_axioms(*tr.structure, x, y, n, z, x));
      add(check_module_functor(tr.F, x, y, m));
      add(check_module_functor(tr.G, x, y, n));
      add(check_right_module_functor(tr.F, m, x, y));
      add(check_right_module_functor(tr.G, n, x, y));
      add(check_bimodule_functor(tr.F, x, m, y));
      add(check_bimodule_functor(tr.G, x, n, y));
      add(check_module_functor(gf, x, y, m));
      add(check_module_functor(fg, x, y, n));
      auto f = random_morphism(rng, objs);
      add(check_naturality("epsilon-naturality", eq.epsilon, compose_functors(eq.G, eq.F).mor,
                           identity_functor<S>().mor, f));
    }
    // every simple against every other, so that a corruption confined to one
    // object is met by a morphism in and out of it
    for (const auto& p : objs)
      for (const auto& q : objs) {
        auto sum = direct_sum(p, q);
        auto proj = projection_first(sum, p);
        add(check_naturality("epsilon-naturality", eq.epsilon, compose_functors(eq.G, eq.F).mor,
                             identity_functor<S>().mor, proj));
      }
  }

  void truncation_suite(Sampler& rng) {
    auto ctx = context();
    auto td = Truncation<S>::build(idempotent("e"));
    const auto& eq = td.equivalence();
    auto tr = corner_bimodule_structure(td, ctx);
    for (const auto& m : fx_.modules) {
      auto eps = eq.epsilon(m);
      add("epsilon-iso", tuple_name({m.name()}), is_intertwiner(eps) && is_invertible(eps.mat), "");
      auto n = eq.F.obj(m);
      auto eta = eq.eta(n);
      add("eta-iso", tuple_name({n.name()}), is_intertwiner(eta) && is_invertible(eta.mat), "");
    }
    const auto& objs = pool();
    std::vector<Module<S>> corner;
    for (const auto& m : objs) corner.push_back(eq.F.obj(m));
    for (const auto& n : corner) {
      auto lam = unit_translation_comparison(tr, n);
      bool ok = is_invertible(lam.mat) && is_intertwiner(lam) &&
                eq.G.mor(lam).mat == eq.epsilon(eq.G.obj(n)).mat;
      add("unit-translation", tuple_name({n.name()}), ok, "");
    }
    for (std::size_t k = 0; k < samples_; ++k) {
      auto f = random_morphism(rng, objs);
      add(check_naturality("epsilon-naturality", eq.epsilon, compose_functors(eq.G, eq.F).mor,
                           identity_functor<S>().mor, f));
      auto g = eq.F.mor(f);
      add(check_naturality("eta-naturality", eq.eta, compose_functors(eq.F, eq.G).mor, identity_functor<S>().mor,
                           g));
      const auto& x = rng.pick(objs);
      const auto& n = rng.pick(corner);
      auto tn = translate_left(tr, x, n);
      auto plain = ctx->tensor(x, eq.G.obj(n));
      add("translation-dimension", tuple_name({x.name(), n.name()}),
          tn.dim() == rank(plain.act(td.idempotent().coords)), "");
      auto rn = translate_right(tr, n, x);
      add("translation-symmetry", tuple_name({x.name(), n.name()}), rn.dim() == tn.dim(), "");
    }
  }

  void stages_suite(Sampler& rng) {
    auto ctx = context();
    auto sd = build_staged(idempotent("e1"), idempotent("e2"));
    auto sf = staged_equivalence_functors(sd, ctx);
    for (const auto& m : fx_.modules) add(check_stage_factorization(sd, m));
    const auto& objs = pool();
    for (std::size_t k = 0; k < samples_; ++k) add(check_stage_factorization(sd, random_object(rng, objs)));

    std::vector<Module<S>> n2, n1;  // corner objects for B2 and B1
    for (const auto& m : objs) {
      n2.push_back(sd.td2.equivalence().F.obj(m));
      n1.push_back(sd.td1.equivalence().F.obj(m));
    }
    auto id2 = identity_module_functor(sf.tr2.structure);
    auto id1 = identity_module_functor(sf.tr1.structure);
    auto round2 = compose_module_functors(sf.q0, sf.wh0);
    auto round1 = compose_module_functors(sf.wh0, sf.q0);
    for (std::size_t k = 0; k < samples_; ++k) {
      const auto& x = rng.pick(objs);
      const auto& y = rng.pick(objs);
      const auto& b2 = rng.pick(n2);
      const auto& b1 = rng.pick(n1);
      add(check_module_functor(sf.q0, x, y, b2));
      add(check_module_functor(sf.wh0, x, y, b1));
      add(compare<S>("u-formula", tuple_name({x.name(), b2.name()}), sf.q0.s(x, b2), stage_u_formula(sd, *ctx, x, b2)));
      add(check_module_transformation("q0-wh0-identity", sf.q0_wh0_to_id, round2, id2, x, b2));
      add(check_module_transformation("wh0-q0-identity", sf.wh0_q0_to_id, round1, id1, x, b1));
      auto f = random_morphism(rng, objs);
      auto ff = sd.td0.equivalence().F.mor(sd.td1.equivalence().F.mor(f));
      auto f2 = sd.td2.equivalence().F.mor(f);
      Mat<S> lhs = stage_comparison(sd, f.target) * ff.mat;
      Mat<S> rhs = f2.mat * stage_comparison(sd, f.source);
      DiagramReport<S> nat{"stage-comparison-naturality", tuple_name({f.source.name(), f.target.name()}), lhs == rhs,
                           std::nullopt, std::nullopt};
      if (!nat.pass) {
        nat.lhs = lhs;
        nat.rhs = rhs;
      }
      add(nat);
    }
    for (const auto& n : n2) {
      auto n0 = relabel_to_b0(sd, n);
      auto cmp = stage_induction_comparison(sd, n0);
      add("induction-comparison", tuple_name({n.name()}), is_intertwiner(cmp) && is_invertible(cmp.mat), "");
      auto unit = stage_unit_map(sd, n0);
      auto eta0 = sd.td0.equivalence().eta(n0);
      bool inverse_pair = (eta0.mat * unit.mat).is_identity() && (unit.mat * eta0.mat).is_identity();
      add("stage-unit-inverse", tuple_name({n.name()}), inverse_pair, "");
    }
  }

  Loaded<S> fx_;
  std::size_t samples_;
  std::uint64_t seed_;
  std::vector<Module<S>> pool_;
  std::shared_ptr<const MonoidalContext<S>> ctx_;
  std::string suite_;
  std::vector<Record> records_;
};

inline std::string machine_line(const Record& r) {
  return r.suite + " " + r.diagram + " " + r.tuple + " " + (r.pass ? "PASS" : "FAIL");
}

}  // namespace catmod
