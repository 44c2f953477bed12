#pragma once

// Module and bimodule category structures on A-mod, given as families of
// morphisms produced on demand, and exact checkers for their coherence
// diagrams and for module functors between them.
//
// Direction conventions:
//   m_{X,Y,M}  : (X ⊗ Y) ⊗ M -> X ⊗ (Y ⊗ M)
//   mr_{M,X,Y} : (M ⊗ X) ⊗ Y -> M ⊗ (X ⊗ Y)
//   b_{X,M,Y}  : (X ⊗ M) ⊗ Y -> X ⊗ (M ⊗ Y)
//   s_{X,M}    : F(X ⊗ M) -> X ⊗ F(M),   sr_{M,X} : F(M ⊗ X) -> F(M) ⊗ X

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catmod/monoidal.hpp"

namespace catmod {

template <ExactScalar S>
using ObjectMap = std::function<Module<S>(const Module<S>&)>;
template <ExactScalar S>
using MorphismMap = std::function<Morphism<S>(const Morphism<S>&)>;
template <ExactScalar S>
using Family1 = std::function<Morphism<S>(const Module<S>&)>;
template <ExactScalar S>
using Family2 = std::function<Morphism<S>(const Module<S>&, const Module<S>&)>;
template <ExactScalar S>
using Family3 = std::function<Morphism<S>(const Module<S>&, const Module<S>&, const Module<S>&)>;

template <ExactScalar S>
struct Functor {
  std::string name;
  ObjectMap<S> obj;
  MorphismMap<S> mor;
};

template <ExactScalar S>
Functor<S> identity_functor() {
  return {"Id", [](const Module<S>& m) { return m; }, [](const Morphism<S>& f) { return f; }};
}

/// G ∘ F.
template <ExactScalar S>
Functor<S> compose_functors(const Functor<S>& g, const Functor<S>& f) {
  return {g.name + "∘" + f.name, [g, f](const Module<S>& m) { return g.obj(f.obj(m)); },
          [g, f](const Morphism<S>& h) { return g.mor(f.mor(h)); }};
}

template <ExactScalar S>
struct LeftAction {
  std::function<Module<S>(const Module<S>&, const Module<S>&)> obj;          // (X, M)
  std::function<Morphism<S>(const Morphism<S>&, const Morphism<S>&)> mor;    // (f in C, g in M)
  Family3<S> m;                                                              // (X, Y, M)
  Family1<S> unitor;                                                         // 1 ⊗ M -> M
};

template <ExactScalar S>
struct RightAction {
  std::function<Module<S>(const Module<S>&, const Module<S>&)> obj;          // (M, X)
  std::function<Morphism<S>(const Morphism<S>&, const Morphism<S>&)> mor;    // (g in M, f in D)
  Family3<S> mr;                                                             // (M, X, Y)
  Family1<S> unitor;                                                         // M ⊗ 1 -> M
};

/// A left, right or bimodule category structure on base-mod.
template <ExactScalar S>
struct ActionStructure {
  std::string name;
  AlgebraPtr<S> base;
  std::shared_ptr<const MonoidalContext<S>> left_ctx;
  std::shared_ptr<const MonoidalContext<S>> right_ctx;
  std::optional<LeftAction<S>> left;
  std::optional<RightAction<S>> right;
  Family3<S> b;  // (X, M, Y); set iff bimodule

  bool is_bimodule() const { return left && right && static_cast<bool>(b); }
};

template <ExactScalar S>
using StructurePtr = std::shared_ptr<const ActionStructure<S>>;

/// C = A-mod acting on itself from both sides by the tensor product; every
/// constraint is an identity matrix.
template <ExactScalar S>
StructurePtr<S> tensor_bimodule_structure(std::shared_ptr<const MonoidalContext<S>> ctx) {
  auto s = std::make_shared<ActionStructure<S>>();
  s->name = "tensor";
  s->base = ctx->algebra();
  s->left_ctx = ctx;
  s->right_ctx = ctx;
  const MonoidalContext<S>* c = ctx.get();
  auto obj = [c](const Module<S>& x, const Module<S>& y) { return c->tensor(x, y); };
  auto mor = [c](const Morphism<S>& f, const Morphism<S>& g) { return c->tensor(f, g); };
  auto assoc = [c](const Module<S>& x, const Module<S>& y, const Module<S>& z) { return c->associator(x, y, z); };
  s->left = LeftAction<S>{obj, mor, assoc, [c](const Module<S>& m) {
                            return Morphism<S>{c->tensor(c->unit_object(), m), m,
                                               Mat<S>::identity(m.dim(), m.field())};
                          }};
  s->right = RightAction<S>{obj, mor, assoc, [c](const Module<S>& m) {
                              return Morphism<S>{c->tensor(m, c->unit_object()), m,
                                                 Mat<S>::identity(m.dim(), m.field())};
                            }};
  s->b = assoc;
  // the structure keeps its context alive through left_ctx
  return s;
}

// ---------------------------------------------------------------------------
// Reports

template <ExactScalar S>
struct DiagramReport {
  std::string diagram;
  std::string tuple;
  bool pass = false;
  std::optional<Mat<S>> lhs, rhs;  // filled on failure
};

inline std::string tuple_name(std::initializer_list<std::string> names) {
  std::string t = "(";
  bool first = true;
  for (const auto& n : names) {
    t += (first ? "" : ",") + n;
    first = false;
  }
  return t + ")";
}

/// Compares two parallel composites. Mismatched endpoints mean a constraint
/// was supplied with the wrong source or target.
template <ExactScalar S>
DiagramReport<S> compare(std::string diagram, std::string tuple, const Morphism<S>& lhs, const Morphism<S>& rhs) {
  if (!same_object(lhs.source, rhs.source) || !same_object(lhs.target, rhs.target))
    throw MalformedConstraint(diagram + " " + tuple + ": composites are not parallel (" + lhs.mat.shape() + " vs " +
                              rhs.mat.shape() + ")");
  DiagramReport<S> r{std::move(diagram), std::move(tuple), lhs.mat == rhs.mat, std::nullopt, std::nullopt};
  if (!r.pass) {
    r.lhs = lhs.mat;
    r.rhs = rhs.mat;
  }
  return r;
}

namespace detail {

template <ExactScalar S>
const LeftAction<S>& need_left(const ActionStructure<S>& a) {
  if (!a.left) throw MalformedConstraint(a.name + " has no left action");
  return *a.left;
}

template <ExactScalar S>
const RightAction<S>& need_right(const ActionStructure<S>& a) {
  if (!a.right) throw MalformedConstraint(a.name + " has no right action");
  return *a.right;
}

// Composition that reports misplaced constraints as MalformedConstraint.
template <ExactScalar S>
Morphism<S> chain(std::initializer_list<Morphism<S>> maps) {
  auto it = maps.begin();
  Morphism<S> acc = *it++;
  for (; it != maps.end(); ++it) acc = compose(*it, acc);
  return acc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Module category axioms

/// Left pentagon on ((X ⊗ Y) ⊗ Z) ⊗ M.
template <ExactScalar S>
DiagramReport<S> check_pentagon(const ActionStructure<S>& a, const Module<S>& x, const Module<S>& y,
                                const Module<S>& z, const Module<S>& m) {
  const auto& l = detail::need_left(a);
  const auto& c = *a.left_ctx;
  auto lhs = detail::chain<S>({l.mor(c.associator(x, y, z), identity_morphism(m)),
                               l.m(x, c.tensor(y, z), m),
                               l.mor(identity_morphism(x), l.m(y, z, m))});
  auto rhs = detail::chain<S>({l.m(c.tensor(x, y), z, m), l.m(x, y, l.obj(z, m))});
  return compare("pentagon", tuple_name({x.name(), y.name(), z.name(), m.name()}), lhs, rhs);
}

/// Right pentagon on ((M ⊗ X) ⊗ Y) ⊗ Z.
template <ExactScalar S>
DiagramReport<S> check_right_pentagon(const ActionStructure<S>& a, const Module<S>& m, const Module<S>& x,
                                      const Module<S>& y, const Module<S>& z) {
  const auto& r = detail::need_right(a);
  const auto& c = *a.right_ctx;
  auto lhs = detail::chain<S>({r.mr(r.obj(m, x), y, z), r.mr(m, x, c.tensor(y, z))});
  auto rhs = detail::chain<S>({r.mor(r.mr(m, x, y), identity_morphism(z)), r.mr(m, c.tensor(x, y), z),
                               r.mor(identity_morphism(m), c.associator(x, y, z))});
  return compare("right-pentagon", tuple_name({m.name(), x.name(), y.name(), z.name()}), lhs, rhs);
}

/// Left and right unit constraints are isomorphisms natural enough to be
/// checked against the action on morphisms: λ_M' ∘ (1 ⊗ f) = f ∘ λ_M.
template <ExactScalar S>
DiagramReport<S> check_unitor(const ActionStructure<S>& a, const Morphism<S>& f, bool right_side) {
  const auto& c = right_side ? *a.right_ctx : *a.left_ctx;
  auto one = identity_morphism(c.unit_object());
  Morphism<S> lhs, rhs;
  if (right_side) {
    const auto& r = detail::need_right(a);
    lhs = compose(r.unitor(f.target), r.mor(f, one));
    rhs = compose(f, r.unitor(f.source));
  } else {
    const auto& l = detail::need_left(a);
    lhs = compose(l.unitor(f.target), l.mor(one, f));
    rhs = compose(f, l.unitor(f.source));
  }
  return compare(right_side ? "right-unitor" : "left-unitor", tuple_name({f.source.name(), f.target.name()}), lhs,
                 rhs);
}

/// Middle diagrams of a bimodule category: the first mixes m and b on
/// ((X ⊗ Y) ⊗ M) ⊗ Z, the second mixes b and mr on ((X ⊗ M) ⊗ W) ⊗ Z.
template <ExactScalar S>
std::pair<DiagramReport<S>, DiagramReport<S>> check_bimodule_axioms(const ActionStructure<S>& a, const Module<S>& x,
                                                                    const Module<S>& y, const Module<S>& m,
                                                                    const Module<S>& w, const Module<S>& z) {
  if (!a.is_bimodule()) throw MalformedConstraint(a.name + " is not a bimodule structure");
  const auto& l = *a.left;
  const auto& r = *a.right;
  const auto& cl = *a.left_ctx;
  const auto& cr = *a.right_ctx;

  auto lhs1 = detail::chain<S>({r.mor(l.m(x, y, m), identity_morphism(z)), a.b(x, l.obj(y, m), z),
                                l.mor(identity_morphism(x), a.b(y, m, z))});
  auto rhs1 = detail::chain<S>({a.b(cl.tensor(x, y), m, z), l.m(x, y, r.obj(m, z))});
  auto first = compare("bimodule-left", tuple_name({x.name(), y.name(), m.name(), z.name()}), lhs1, rhs1);

  auto lhs2 = detail::chain<S>({r.mr(l.obj(x, m), w, z), a.b(x, m, cr.tensor(w, z))});
  auto rhs2 = detail::chain<S>({r.mor(a.b(x, m, w), identity_morphism(z)), a.b(x, r.obj(m, w), z),
                                l.mor(identity_morphism(x), r.mr(m, w, z))});
  auto second = compare("bimodule-right", tuple_name({x.name(), m.name(), w.name(), z.name()}), lhs2, rhs2);
  return {std::move(first), std::move(second)};
}

// ---------------------------------------------------------------------------
// Module functors

template <ExactScalar S>
struct ModuleFunctorDatum {
  Functor<S> F;
  StructurePtr<S> source;
  StructurePtr<S> target;
  Family2<S> s;   // (X, M): F(X ⊗ M) -> X ⊗ F(M)
  Family2<S> sr;  // (M, X): F(M ⊗ X) -> F(M) ⊗ X; may be empty
};

template <ExactScalar S>
ModuleFunctorDatum<S> identity_module_functor(StructurePtr<S> structure) {
  ModuleFunctorDatum<S> d{identity_functor<S>(), structure, structure, {}, {}};
  const ActionStructure<S>* a = structure.get();
  if (a->left) d.s = [a](const Module<S>& x, const Module<S>& m) { return identity_morphism(a->left->obj(x, m)); };
  if (a->right)
    d.sr = [a](const Module<S>& m, const Module<S>& x) { return identity_morphism(a->right->obj(m, x)); };
  return d;
}

/// Diagram on F((X ⊗ Y) ⊗ M) and the unit triangle.
template <ExactScalar S>
std::pair<DiagramReport<S>, DiagramReport<S>> check_module_functor(const ModuleFunctorDatum<S>& fd,
                                                                   const Module<S>& x, const Module<S>& y,
                                                                   const Module<S>& m) {
  if (!fd.s) throw MalformedConstraint(fd.F.name + " has no left structure map");
  const auto& src = detail::need_left(*fd.source);
  const auto& tgt = detail::need_left(*fd.target);
  const auto& c = *fd.source->left_ctx;
  auto lhs = detail::chain<S>({fd.F.mor(src.m(x, y, m)), fd.s(x, src.obj(y, m)),
                               tgt.mor(identity_morphism(x), fd.s(y, m))});
  auto rhs = detail::chain<S>({fd.s(c.tensor(x, y), m), tgt.m(x, y, fd.F.obj(m))});
  auto pent = compare(fd.F.name + ":module-functor", tuple_name({x.name(), y.name(), m.name()}), lhs, rhs);

  const auto& one = c.unit_object();
  auto tri_l = compose(tgt.unitor(fd.F.obj(m)), fd.s(one, m));
  auto tri_r = fd.F.mor(src.unitor(m));
  auto tri = compare(fd.F.name + ":unit-triangle", tuple_name({m.name()}), tri_l, tri_r);
  return {std::move(pent), std::move(tri)};
}

/// Right-handed counterpart on F((M ⊗ X) ⊗ Y).
template <ExactScalar S>
std::pair<DiagramReport<S>, DiagramReport<S>> check_right_module_functor(const ModuleFunctorDatum<S>& fd,
                                                                         const Module<S>& m, const Module<S>& x,
                                                                         const Module<S>& y) {
  if (!fd.sr) throw MalformedConstraint(fd.F.name + " has no right structure map");
  const auto& src = detail::need_right(*fd.source);
  const auto& tgt = detail::need_right(*fd.target);
  const auto& c = *fd.source->right_ctx;
  auto lhs = detail::chain<S>({fd.sr(src.obj(m, x), y), tgt.mor(fd.sr(m, x), identity_morphism(y)),
                               tgt.mr(fd.F.obj(m), x, y)});
  auto rhs = detail::chain<S>({fd.F.mor(src.mr(m, x, y)), fd.sr(m, c.tensor(x, y))});
  auto pent = compare(fd.F.name + ":right-module-functor", tuple_name({m.name(), x.name(), y.name()}), lhs, rhs);

  const auto& one = c.unit_object();
  auto tri_l = compose(tgt.unitor(fd.F.obj(m)), fd.sr(m, one));
  auto tri_r = fd.F.mor(src.unitor(m));
  auto tri = compare(fd.F.name + ":right-unit-triangle", tuple_name({m.name()}), tri_l, tri_r);
  return {std::move(pent), std::move(tri)};
}

/// Compatibility of s, sr with the middle constraints on F((X ⊗ M) ⊗ Y).
template <ExactScalar S>
DiagramReport<S> check_bimodule_functor(const ModuleFunctorDatum<S>& fd, const Module<S>& x, const Module<S>& m,
                                        const Module<S>& y) {
  if (!fd.s || !fd.sr) throw MalformedConstraint(fd.F.name + " needs both s and sr");
  if (!fd.source->is_bimodule() || !fd.target->is_bimodule())
    throw MalformedConstraint(fd.F.name + " does not connect bimodule structures");
  const auto& src = *fd.source;
  const auto& tgt = *fd.target;
  auto lhs = detail::chain<S>({fd.sr(src.left->obj(x, m), y),
                               tgt.right->mor(fd.s(x, m), identity_morphism(y)), tgt.b(x, fd.F.obj(m), y)});
  auto rhs = detail::chain<S>({fd.F.mor(src.b(x, m, y)), fd.s(x, src.right->obj(m, y)),
                               tgt.left->mor(identity_morphism(x), fd.sr(m, y))});
  return compare(fd.F.name + ":bimodule-functor", tuple_name({x.name(), m.name(), y.name()}), lhs, rhs);
}

/// (G ∘ F, u) with u_{X,M} = t_{X,F(M)} ∘ G(s_{X,M}), and likewise on the
/// right.
template <ExactScalar S>
ModuleFunctorDatum<S> compose_module_functors(const ModuleFunctorDatum<S>& fd1, const ModuleFunctorDatum<S>& fd2) {
  if (fd1.target != fd2.source)
    throw CompositionMismatch(fd1.F.name + " lands in " + fd1.target->name + ", " + fd2.F.name + " starts from " +
                              fd2.source->name);
  ModuleFunctorDatum<S> out{compose_functors(fd2.F, fd1.F), fd1.source, fd2.target, {}, {}};
  if (fd1.s && fd2.s)
    out.s = [fd1, fd2](const Module<S>& x, const Module<S>& m) {
      return compose(fd2.s(x, fd1.F.obj(m)), fd2.F.mor(fd1.s(x, m)));
    };
  if (fd1.sr && fd2.sr)
    out.sr = [fd1, fd2](const Module<S>& m, const Module<S>& x) {
      return compose(fd2.sr(fd1.F.obj(m), x), fd2.F.mor(fd1.sr(m, x)));
    };
  return out;
}

// ---------------------------------------------------------------------------
// Naturality

/// family(target) ∘ P(f) = Q(f) ∘ family(source) for a family P ⇒ Q.
template <ExactScalar S>
DiagramReport<S> check_naturality(const std::string& diagram, const Family1<S>& family, const MorphismMap<S>& p,
                                  const MorphismMap<S>& q, const Morphism<S>& f) {
  auto lhs = compose(family(f.target), p(f));
  auto rhs = compose(q(f), family(f.source));
  return compare(diagram, tuple_name({f.source.name(), f.target.name()}), lhs, rhs);
}

/// A natural transformation θ: (F, s) ⇒ (G, t) is a module transformation
/// when t_{X,M} ∘ θ_{X⊗M} = (id_X ⊗ θ_M) ∘ s_{X,M}.
template <ExactScalar S>
DiagramReport<S> check_module_transformation(const std::string& diagram, const Family1<S>& theta,
                                             const ModuleFunctorDatum<S>& from, const ModuleFunctorDatum<S>& to,
                                             const Module<S>& x, const Module<S>& m) {
  const auto& src = detail::need_left(*from.source);
  const auto& tgt = detail::need_left(*from.target);
  auto lhs = compose(to.s(x, m), theta(src.obj(x, m)));
  auto rhs = compose(tgt.mor(identity_morphism(x), theta(m)), from.s(x, m));
  return compare(diagram, tuple_name({x.name(), m.name()}), lhs, rhs);
}

}  // namespace catmod
