#pragma once

// Transport of (bi)module category structure along an equivalence
// F : M -> N, G : N -> M with ε : G F ⇒ id and η : F G ⇒ id.
//
//   X ⊗ N      := F(X ⊗ G(N))
//   n_{X,Y,N}  := F((id_X ⊗ ε⁻¹_{Y ⊗ G(N)}) ∘ m_{X,Y,G(N)})
//   N ⊗ X      := F(G(N) ⊗ X)
//   nr_{N,X,Y} := F(mr_{G(N),X,Y} ∘ (ε_{G(N) ⊗ X} ⊗ id_Y))
//   p_{X,N,Z}  := F((id_X ⊗ ε⁻¹_{G(N) ⊗ Z}) ∘ b_{X,G(N),Z} ∘ (ε_{X ⊗ G(N)} ⊗ id_Z))
//
// The associativity constraints use ε only. The unit constraints
// 1 ⊗ N -> N are the one place η enters: λ_N := η_N ∘ F(λ_{G(N)}).

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>

#include "catmod/modcat.hpp"

namespace catmod {

/// Thread-safe memo table keyed by module identity. Keys are kept alive by
/// storing the module alongside the value.
template <ExactScalar S, class V>
class ModuleMemo {
 public:
  template <class Make>
  V get(const Module<S>& m, Make&& make) {
    {
      std::lock_guard lock(mutex_);
      auto it = table_.find(m.key());
      if (it != table_.end()) return it->second.second;
    }
    V value = make();
    std::lock_guard lock(mutex_);
    auto [it, inserted] = table_.try_emplace(m.key(), m, std::move(value));
    return it->second.second;
  }

 private:
  std::mutex mutex_;
  std::map<const void*, std::pair<Module<S>, V>> table_;
};

template <ExactScalar S>
struct EquivalenceDatum {
  std::string name;
  AlgebraPtr<S> source;  // M = source-mod
  AlgebraPtr<S> target;  // N = target-mod
  Functor<S> F;          // M -> N
  Functor<S> G;          // N -> M
  Family1<S> epsilon;    // G(F(M)) -> M
  Family1<S> eta;        // F(G(N)) -> N
};

template <ExactScalar S>
EquivalenceDatum<S> identity_equivalence(const AlgebraPtr<S>& a) {
  auto id = [](const Module<S>& m) { return identity_morphism(m); };
  return {"id", a, a, identity_functor<S>(), identity_functor<S>(), id, id};
}

/// eq2 ∘ eq1: F = F2 F1, G = G1 G2, ε_M = ε1_M ∘ G1(ε2_{F1 M}),
/// η_P = η2_P ∘ F2(η1_{G2 P}).
template <ExactScalar S>
EquivalenceDatum<S> compose_equivalences(const EquivalenceDatum<S>& eq2, const EquivalenceDatum<S>& eq1) {
  if (!same_algebra(eq1.target, eq2.source))
    throw CompositionMismatch(eq1.name + " lands in " + eq1.target->name() + "-mod, " + eq2.name + " starts from " +
                              eq2.source->name() + "-mod");
  EquivalenceDatum<S> out;
  out.name = eq2.name + "∘" + eq1.name;
  out.source = eq1.source;
  out.target = eq2.target;
  out.F = compose_functors(eq2.F, eq1.F);
  out.G = compose_functors(eq1.G, eq2.G);
  out.epsilon = [eq1, eq2](const Module<S>& m) {
    return compose(eq1.epsilon(m), eq1.G.mor(eq2.epsilon(eq1.F.obj(m))));
  };
  out.eta = [eq1, eq2](const Module<S>& p) { return compose(eq2.eta(p), eq2.F.mor(eq1.eta(eq2.G.obj(p)))); };
  return out;
}

/// ε'_M = ε_M ∘ D_M with D_M = I + E_{0,1} (or 2 on 1-dimensional modules):
/// invertible at every object, natural at none of interest.
template <ExactScalar S>
EquivalenceDatum<S> mutate_epsilon(const EquivalenceDatum<S>& eq) {
  EquivalenceDatum<S> out = eq;
  out.name = eq.name + "[mutated-ε]";
  out.epsilon = [eps = eq.epsilon](const Module<S>& m) {
    Morphism<S> e = eps(m);
    std::size_t n = e.source.dim();
    Mat<S> d = Mat<S>::identity(n, e.source.field());
    if (n >= 2)
      d(0, 1) = ScalarTraits<S>::one(d.field());
    else if (n == 1)
      d(0, 0) = ScalarTraits<S>::from_int(d.field(), 2);
    e.mat = e.mat * d;
    return e;
  };
  return out;
}

/// The structure transported to N together with the induced module functors
/// (F, s, sr) : M -> N and (G, t, tr) : N -> M.
template <ExactScalar S>
struct Transported {
  StructurePtr<S> structure;
  ModuleFunctorDatum<S> F;
  ModuleFunctorDatum<S> G;
};

namespace detail {

template <ExactScalar S>
class TransportState {
 public:
  TransportState(StructurePtr<S> src, EquivalenceDatum<S> eq) : src_(std::move(src)), eq_(std::move(eq)) {}

  const ActionStructure<S>& src() const { return *src_; }
  const EquivalenceDatum<S>& eq() const { return eq_; }

  Morphism<S> eps(const Module<S>& m) { return eq_.epsilon(m); }

  Morphism<S> eps_inv(const Module<S>& m) {
    return inverses_.get(m, [&] {
      auto e = eq_.epsilon(m);
      try {
        return inverse_morphism(e);
      } catch (const SingularMatrix&) {
        throw DegenerateEquivalence("ε is not invertible at " + m.name() + " (" + e.mat.shape() + ")");
      }
    });
  }

 private:
  StructurePtr<S> src_;
  EquivalenceDatum<S> eq_;
  ModuleMemo<S, Morphism<S>> inverses_;
};

}  // namespace detail

template <ExactScalar S>
Transported<S> transport(StructurePtr<S> src, const EquivalenceDatum<S>& eq) {
  if (!same_algebra(src->base, eq.source))
    throw AlgebraMismatch(src->name + " lives on " + src->base->name() + "-mod, " + eq.name + " starts from " +
                          eq.source->name() + "-mod");
  auto st = std::make_shared<detail::TransportState<S>>(src, eq);
  auto out = std::make_shared<ActionStructure<S>>();
  out->name = src->name + "⇒" + eq.name;
  out->base = eq.target;
  out->left_ctx = src->left_ctx;
  out->right_ctx = src->right_ctx;

  if (src->left) {
    LeftAction<S> l;
    l.obj = [st](const Module<S>& x, const Module<S>& n) {
      const auto& e = st->eq();
      return e.F.obj(st->src().left->obj(x, e.G.obj(n)));
    };
    l.mor = [st](const Morphism<S>& f, const Morphism<S>& g) {
      const auto& e = st->eq();
      return e.F.mor(st->src().left->mor(f, e.G.mor(g)));
    };
    l.m = [st](const Module<S>& x, const Module<S>& y, const Module<S>& n) {
      const auto& e = st->eq();
      const auto& sl = *st->src().left;
      Module<S> gn = e.G.obj(n);
      auto inner = compose(sl.mor(identity_morphism(x), st->eps_inv(sl.obj(y, gn))), sl.m(x, y, gn));
      return e.F.mor(inner);
    };
    l.unitor = [st](const Module<S>& n) {
      const auto& e = st->eq();
      return compose(e.eta(n), e.F.mor(st->src().left->unitor(e.G.obj(n))));
    };
    out->left = std::move(l);
  }

  if (src->right) {
    RightAction<S> r;
    r.obj = [st](const Module<S>& n, const Module<S>& x) {
      const auto& e = st->eq();
      return e.F.obj(st->src().right->obj(e.G.obj(n), x));
    };
    r.mor = [st](const Morphism<S>& g, const Morphism<S>& f) {
      const auto& e = st->eq();
      return e.F.mor(st->src().right->mor(e.G.mor(g), f));
    };
    r.mr = [st](const Module<S>& n, const Module<S>& x, const Module<S>& y) {
      const auto& e = st->eq();
      const auto& sr = *st->src().right;
      Module<S> gn = e.G.obj(n);
      auto inner = compose(sr.mr(gn, x, y), sr.mor(st->eps(sr.obj(gn, x)), identity_morphism(y)));
      return e.F.mor(inner);
    };
    r.unitor = [st](const Module<S>& n) {
      const auto& e = st->eq();
      return compose(e.eta(n), e.F.mor(st->src().right->unitor(e.G.obj(n))));
    };
    out->right = std::move(r);
  }

  if (src->is_bimodule()) {
    out->b = [st](const Module<S>& x, const Module<S>& n, const Module<S>& z) {
      const auto& e = st->eq();
      const auto& s = st->src();
      Module<S> gn = e.G.obj(n);
      auto inner = detail::chain<S>({s.right->mor(st->eps(s.left->obj(x, gn)), identity_morphism(z)), s.b(x, gn, z),
                                     s.left->mor(identity_morphism(x), st->eps_inv(s.right->obj(gn, z)))});
      return e.F.mor(inner);
    };
  }

  StructurePtr<S> target = out;
  ModuleFunctorDatum<S> fd{eq.F, src, target, {}, {}};
  ModuleFunctorDatum<S> gd{eq.G, target, src, {}, {}};
  if (src->left) {
    fd.s = [st](const Module<S>& x, const Module<S>& m) {
      return st->eq().F.mor(st->src().left->mor(identity_morphism(x), st->eps_inv(m)));
    };
    gd.s = [st](const Module<S>& x, const Module<S>& n) {
      return st->eps(st->src().left->obj(x, st->eq().G.obj(n)));
    };
  }
  if (src->right) {
    fd.sr = [st](const Module<S>& m, const Module<S>& x) {
      return st->eq().F.mor(st->src().right->mor(st->eps_inv(m), identity_morphism(x)));
    };
    gd.sr = [st](const Module<S>& n, const Module<S>& x) {
      return st->eps(st->src().right->obj(st->eq().G.obj(n), x));
    };
  }
  return {target, fd, gd};
}

}  // namespace catmod
