#pragma once

// Reduction by stages for nested idempotents e2 ≤ e1 (e1 e2 = e2 e1 = e2):
//   td1 : A-mod  ≃ B1-mod, B1 = e1 A e1
//   td0 : B1-mod ≃ B0-mod, B0 = e2' B1 e2', e2' = e2 read in B1
//   td2 : A-mod  ≃ B2-mod, B2 = e2 A e2
// B0 and B2 are the same subspace e2 A e2 of A in two bases; phi converts
// B0 coordinates to B2 coordinates.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "catmod/truncation.hpp"

namespace catmod {

template <ExactScalar S>
struct Staged {
  Idempotent<S> e1, e2, e2_in_b1;
  Truncation<S> td1, td0, td2;
  Mat<S> phi;      // B0 coordinates -> B2 coordinates
  Mat<S> phi_inv;  // B2 coordinates -> B0 coordinates
};

/// Throws StageIncompatible unless e1 e2 = e2 e1 = e2, and FullnessFailure
/// naming the stage whose idempotent is not full.
template <ExactScalar S>
Staged<S> build_staged(const Idempotent<S>& e1, const Idempotent<S>& e2) {
  if (!same_algebra(e1.algebra, e2.algebra)) throw StageIncompatible("idempotents live in different algebras");
  const auto& a = *e1.algebra;
  if (!(a.multiply(e1.coords, e1.coords) == e1.coords)) throw NotIdempotent("e1 * e1 != e1");
  if (!(a.multiply(e2.coords, e2.coords) == e2.coords)) throw NotIdempotent("e2 * e2 != e2");
  if (!(a.multiply(e1.coords, e2.coords) == e2.coords) || !(a.multiply(e2.coords, e1.coords) == e2.coords))
    throw StageIncompatible("e1 e2 = e2 e1 = e2 fails");
  auto stage = [](const char* which, const Idempotent<S>& e) {
    try {
      return Truncation<S>::build(e);
    } catch (const FullnessFailure& err) {
      throw FullnessFailure(std::string(which) + ": " + err.what());
    }
  };
  auto td1 = stage("stage 1 (e1 in A)", e1);
  auto td2 = stage("direct stage (e2 in A)", e2);
  auto e2p = make_idempotent(td1.corner_ring(), td1.corner().selector * e2.coords);
  auto td0 = stage("stage 0 (e2 in e1Ae1)", e2p);
  // B0 basis in A coordinates, then read in the B2 basis
  Mat<S> b0_in_a = td1.corner().inclusion * td0.corner().inclusion;
  Mat<S> phi = td2.corner().selector * b0_in_a;
  if (!(td2.corner().inclusion * phi == b0_in_a))
    throw StageIncompatible("e2' B1 e2' and e2 A e2 differ as subspaces of A");
  Mat<S> phi_inv = inverse(phi);
  return {e1, e2, e2p, std::move(td1), std::move(td0), std::move(td2), std::move(phi), std::move(phi_inv)};
}

/// A B2-module read as a B0-module: u_a acts as Σ_k phi(k, a) b_k.
template <ExactScalar S>
Module<S> relabel_to_b0(const Staged<S>& sd, const Module<S>& n) {
  std::vector<Mat<S>> action;
  for (std::size_t a = 0; a < sd.phi.cols(); ++a) action.push_back(n.act(sd.phi.col(a)));
  return Module<S>::trusted(sd.td0.corner_ring(), std::move(action), n.name());
}

template <ExactScalar S>
Module<S> relabel_to_b2(const Staged<S>& sd, const Module<S>& n) {
  std::vector<Mat<S>> action;
  for (std::size_t a = 0; a < sd.phi_inv.cols(); ++a) action.push_back(n.act(sd.phi_inv.col(a)));
  return Module<S>::trusted(sd.td2.corner_ring(), std::move(action), n.name());
}

/// The change of basis T : e2'(e1 M) -> e2 M, Inc1 Inc0 = Inc2 T.
template <ExactScalar S>
Mat<S> stage_comparison(const Staged<S>& sd, const Module<S>& m) {
  auto f1 = sd.td1.truncate(m);
  auto f0 = sd.td0.truncate(f1.module);
  auto f2 = sd.td2.truncate(m);
  return f2.compression * f1.inclusion * f0.inclusion;
}

/// e2 M = e2'(e1 M) as subspaces of M, and the two corner actions agree
/// through phi: T ρ_{F0 F1 M}(u_a) = ρ_{F2 M}(phi u_a) T.
template <ExactScalar S>
DiagramReport<S> check_stage_factorization(const Staged<S>& sd, const Module<S>& m) {
  auto f1 = sd.td1.truncate(m);
  auto f0 = sd.td0.truncate(f1.module);
  auto f2 = sd.td2.truncate(m);
  Mat<S> nested = f1.inclusion * f0.inclusion;
  DiagramReport<S> r{"stage-factorization", tuple_name({m.name()}), false, std::nullopt, std::nullopt};
  if (!same_column_space(nested, f2.inclusion)) {
    r.lhs = column_basis(nested).basis;
    r.rhs = column_basis(f2.inclusion).basis;
    return r;
  }
  Mat<S> t = f2.compression * nested;
  std::vector<Mat<S>> lhs, rhs;
  for (std::size_t a = 0; a < sd.phi.cols(); ++a) {
    lhs.push_back(t * f0.module.action(a));
    rhs.push_back(f2.module.act(sd.phi.col(a)) * t);
  }
  r.pass = lhs == rhs && is_invertible(t);
  if (!r.pass) {
    r.lhs = vstack(lhs, t.cols(), t.field());
    r.rhs = vstack(rhs, t.cols(), t.field());
  }
  return r;
}

/// The module functors of the stage theorem, against the structures
/// transported from the tensor action of A-mod:
///   q0 = (F1 ∘ G2, u) : B2-mod -> B1-mod, u = s1 ∘ F1(t2)
///   wh0 = (F2 ∘ G1, v) : B1-mod -> B2-mod, v = s2 ∘ F2(t1)
template <ExactScalar S>
struct StageFunctors {
  Transported<S> tr1, tr2;
  ModuleFunctorDatum<S> q0, wh0;
  Family1<S> q0_wh0_to_id;  // F2 G1 F1 G2 ⇒ id on B2-mod: η2_N ∘ F2(ε1_{G2 N})
  Family1<S> wh0_q0_to_id;  // F1 G2 F2 G1 ⇒ id on B1-mod: η1_N ∘ F1(ε2_{G1 N})
};

template <ExactScalar S>
StageFunctors<S> staged_equivalence_functors(const Staged<S>& sd, std::shared_ptr<const MonoidalContext<S>> ctx) {
  auto base = tensor_bimodule_structure(ctx);
  auto tr1 = transport(base, sd.td1.equivalence());
  auto tr2 = transport(base, sd.td2.equivalence());
  auto q0 = compose_module_functors(tr2.G, tr1.F);
  q0.F.name = "Q0";
  auto wh0 = compose_module_functors(tr1.G, tr2.F);
  wh0.F.name = "Wh0";
  const auto eq1 = sd.td1.equivalence();
  const auto eq2 = sd.td2.equivalence();
  Family1<S> a = [eq1, eq2](const Module<S>& n) {
    return compose(eq2.eta(n), eq2.F.mor(eq1.epsilon(eq2.G.obj(n))));
  };
  Family1<S> b = [eq1, eq2](const Module<S>& n) {
    return compose(eq1.eta(n), eq1.F.mor(eq2.epsilon(eq1.G.obj(n))));
  };
  return {std::move(tr1), std::move(tr2), std::move(q0), std::move(wh0), std::move(a), std::move(b)};
}

/// u_{X,N} written out directly: F1((id_X ⊗ ε1⁻¹_{G2 N}) ∘ ε2_{X ⊗ G2 N}).
template <ExactScalar S>
Morphism<S> stage_u_formula(const Staged<S>& sd, const MonoidalContext<S>& ctx, const Module<S>& x,
                            const Module<S>& n) {
  const auto& eq1 = sd.td1.equivalence();
  const auto& eq2 = sd.td2.equivalence();
  Module<S> g2n = eq2.G.obj(n);
  auto e2 = eq2.epsilon(ctx.tensor(x, g2n));
  auto e1_inv = inverse_morphism(eq1.epsilon(g2n));
  return eq1.F.mor(compose(ctx.tensor(identity_morphism(x), e1_inv), e2));
}

/// Comparison G1(G0(N)) -> G2(N) for a B0-module N (N read through phi on
/// the right): p ⊗ (x ⊗ n) ↦ (p x) ⊗ n.
template <ExactScalar S>
Morphism<S> stage_induction_comparison(const Staged<S>& sd, const Module<S>& n) {
  const auto& a = *sd.e1.algebra;
  auto g0 = sd.td0.induce(n);
  auto g1 = sd.td1.induce(g0.module);
  Module<S> n2 = relabel_to_b2(sd, n);
  auto g2 = sd.td2.induce(n2);
  const auto& ae1 = sd.td1.ae();
  const auto& b1e = sd.td0.ae();
  const auto& ae2 = sd.td2.ae();
  std::size_t dp = ae1.bimodule.dim, dx = b1e.bimodule.dim, dn = n.dim();
  Mat<S> prod(ae2.bimodule.dim, dp * dx, a.field());
  for (std::size_t p = 0; p < dp; ++p)
    for (std::size_t x = 0; x < dx; ++x) {
      Mat<S> xa = sd.td1.corner().inclusion * b1e.inclusion.col(x);
      Mat<S> px = ae2.selector * a.multiply(ae1.inclusion.col(p), xa);
      for (std::size_t k = 0; k < px.rows(); ++k) prod(k, p * dx + x) = px(k, 0);
    }
  auto id_n = Mat<S>::identity(dn, a.field());
  auto id_p = Mat<S>::identity(dp, a.field());
  Mat<S> mat = g2.quotient * (kronecker(prod, id_n) * (kronecker(id_p, g0.section) * g1.section));
  return {g1.module, g2.module, std::move(mat)};
}

/// The unit map N -> F0(G0(N)), n ↦ e2' ⊗ n.
template <ExactScalar S>
Morphism<S> stage_unit_map(const Staged<S>& sd, const Module<S>& n) {
  auto g0 = sd.td0.induce(n);
  auto f0g0 = sd.td0.truncate(g0.module);
  const auto& b1e = sd.td0.ae();
  Mat<S> e_coords = b1e.selector * sd.e2_in_b1.coords;
  Mat<S> plain = kronecker(e_coords, Mat<S>::identity(n.dim(), n.field()));
  return {n, f0g0.module, f0g0.compression * (g0.quotient * plain)};
}

}  // namespace catmod
