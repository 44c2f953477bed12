#pragma once

// Idempotent truncation: for a full idempotent e in A, the equivalence
//   F = e·(−) : A-mod -> eAe-mod,   G = Ae ⊗_{eAe} (−) : eAe-mod -> A-mod
// with
//   ε_M : Ae ⊗ eM -> M,      a ⊗ m ↦ a·m
//   η_N : e(Ae ⊗ N) -> N,    e(a ⊗ n) ↦ (e a)·n
// Transporting the tensor action of C = A-mod along it gives the
// translation functors X ⊗̇ N = e(X ⊗ (Ae ⊗ N)) on eAe-mod.

#include <memory>
#include <string>
#include <utility>

#include "catmod/transport.hpp"

namespace catmod {

template <ExactScalar S>
class Truncation {
 public:
  /// Throws NotIdempotent, or FullnessFailure when AeA != A.
  static Truncation build(const Idempotent<S>& e, Pivoting pivoting = Pivoting::leftmost) {
    auto full = is_full_idempotent(e);
    if (!full.full)
      throw FullnessFailure("AeA has dimension " + std::to_string(full.span_dim) + " < " +
                            std::to_string(e.algebra->dim()) + " in " + e.algebra->name());
    auto st = std::make_shared<State>(e, pivoting);
    Truncation t;
    t.state_ = st;
    auto& eq = t.eq_;
    eq.name = "trunc";
    eq.source = e.algebra;
    eq.target = st->corner.algebra;
    eq.F = {"F", [st](const Module<S>& m) { return st->f_obj(m).module; },
            [st](const Morphism<S>& f) { return st->f_mor(f); }};
    eq.G = {"G", [st](const Module<S>& n) { return st->g_obj(n).module; },
            [st](const Morphism<S>& g) { return st->g_mor(g); }};
    eq.epsilon = [st](const Module<S>& m) { return st->epsilon(m); };
    eq.eta = [st](const Module<S>& n) { return st->eta(n); };
    return t;
  }

  const Idempotent<S>& idempotent() const { return state_->e; }
  const Corner<S>& corner() const { return state_->corner; }
  const AlgebraPtr<S>& algebra() const { return state_->e.algebra; }
  const AlgebraPtr<S>& corner_ring() const { return state_->corner.algebra; }
  const CornerBimodule<S>& ae() const { return state_->ae; }
  const EquivalenceDatum<S>& equivalence() const { return eq_; }

  CornerModule<S> truncate(const Module<S>& m) const { return state_->f_obj(m); }
  BalancedTensor<S> induce(const Module<S>& n) const { return state_->g_obj(n); }

 private:
  struct State {
    State(const Idempotent<S>& idem, Pivoting piv)
        : e(idem), pivoting(piv), corner(catmod::corner_algebra(idem, piv)), ae(corner_bimodule(corner)) {}

    CornerModule<S> f_obj(const Module<S>& m) {
      return f_memo.get(m, [&] {
        auto cm = corner_module(corner, m, pivoting);
        cm.module = cm.module.renamed("e" + m.name());
        return cm;
      });
    }

    BalancedTensor<S> g_obj(const Module<S>& n) {
      return g_memo.get(n, [&] { return balanced_tensor(ae.bimodule, n, "Ae⊗" + n.name()); });
    }

    Morphism<S> f_mor(const Morphism<S>& f) {
      auto src = f_obj(f.source);
      auto tgt = f_obj(f.target);
      return {src.module, tgt.module, tgt.compression * f.mat * src.inclusion};
    }

    Morphism<S> g_mor(const Morphism<S>& g) {
      auto src = g_obj(g.source);
      auto tgt = g_obj(g.target);
      auto id = Mat<S>::identity(ae.bimodule.dim, g.mat.field());
      return {src.module, tgt.module, tgt.quotient * (kronecker(id, g.mat) * src.section)};
    }

    // a ⊗ m ↦ a·m on the plain tensor Ae ⊗ eM, then restricted along the
    // section of the quotient.
    Morphism<S> epsilon(const Module<S>& m) {
      auto fm = f_obj(m);
      auto gfm = g_obj(fm.module);
      std::size_t dp = ae.bimodule.dim, dn = fm.module.dim();
      Mat<S> plain(m.dim(), dp * dn, m.field());
      for (std::size_t p = 0; p < dp; ++p) {
        Mat<S> block = m.act(ae.inclusion.col(p)) * fm.inclusion;
        for (std::size_t i = 0; i < m.dim(); ++i)
          for (std::size_t j = 0; j < dn; ++j) plain(i, p * dn + j) = block(i, j);
      }
      return {gfm.module, m, plain * gfm.section};
    }

    // e(a ⊗ n) ↦ (e a)·n, with e a read in corner coordinates.
    Morphism<S> eta(const Module<S>& n) {
      auto gn = g_obj(n);
      auto fgn = f_obj(gn.module);
      std::size_t dp = ae.bimodule.dim, dn = n.dim();
      const auto& a = *e.algebra;
      Mat<S> plain(dn, dp * dn, n.field());
      for (std::size_t p = 0; p < dp; ++p) {
        Mat<S> ea = corner.selector * a.multiply(e.coords, ae.inclusion.col(p));
        Mat<S> block = n.act(ea);
        for (std::size_t i = 0; i < dn; ++i)
          for (std::size_t j = 0; j < dn; ++j) plain(i, p * dn + j) = block(i, j);
      }
      return {fgn.module, n, plain * gn.section * fgn.inclusion};
    }

    Idempotent<S> e;
    Pivoting pivoting;
    Corner<S> corner;
    CornerBimodule<S> ae;
    ModuleMemo<S, CornerModule<S>> f_memo;
    ModuleMemo<S, BalancedTensor<S>> g_memo;
  };

  std::shared_ptr<State> state_;
  EquivalenceDatum<S> eq_;
};

/// The tensor bimodule structure of A-mod transported to eAe-mod, with the
/// functor data (F, s, sr) and (G, t, tr).
template <ExactScalar S>
Transported<S> corner_bimodule_structure(const Truncation<S>& td, std::shared_ptr<const MonoidalContext<S>> ctx) {
  if (!same_algebra(ctx->algebra(), td.algebra()))
    throw AlgebraMismatch("monoidal context over " + ctx->algebra()->name() + ", truncation of " +
                          td.algebra()->name());
  return transport(tensor_bimodule_structure(std::move(ctx)), td.equivalence());
}

/// X ⊗̇ N = e(X ⊗ (Ae ⊗ N)).
template <ExactScalar S>
Module<S> translate_left(const Transported<S>& tr, const Module<S>& x, const Module<S>& n) {
  return tr.structure->left->obj(x, n);
}

/// N ⊗̇ X = e((Ae ⊗ N) ⊗ X).
template <ExactScalar S>
Module<S> translate_right(const Transported<S>& tr, const Module<S>& n, const Module<S>& x) {
  return tr.structure->right->obj(n, x);
}

/// Comparison 1 ⊗̇ N = F(G(N)) -> N. For the truncation equivalence its
/// image under G is ε_{G(N)}.
template <ExactScalar S>
Morphism<S> unit_translation_comparison(const Transported<S>& tr, const Module<S>& n) {
  return tr.structure->left->unitor(n);
}

}  // namespace catmod
