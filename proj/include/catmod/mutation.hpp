#pragma once

// Deliberate corruptions of valid data. A checker that cannot be made to
// fail proves nothing, so every checker family has a mutation it must catch.

#include <string>
#include <utility>

#include "catmod/transport.hpp"

namespace catmod {

/// f with its (0, 0) entry increased by one.
template <ExactScalar S>
Morphism<S> bump(Morphism<S> f) {
  if (f.mat.rows() > 0 && f.mat.cols() > 0) f.mat(0, 0) += ScalarTraits<S>::one(f.mat.field());
  return f;
}

template <ExactScalar S>
StructurePtr<S> mutate_m(const StructurePtr<S>& st) {
  auto out = std::make_shared<ActionStructure<S>>(*st);
  out->name = st->name + "[mutated-m]";
  out->left->m = [m = st->left->m](const Module<S>& x, const Module<S>& y, const Module<S>& n) {
    return bump(m(x, y, n));
  };
  return out;
}

template <ExactScalar S>
StructurePtr<S> mutate_b(const StructurePtr<S>& st) {
  auto out = std::make_shared<ActionStructure<S>>(*st);
  out->name = st->name + "[mutated-b]";
  out->b = [b = st->b](const Module<S>& x, const Module<S>& n, const Module<S>& y) { return bump(b(x, n, y)); };
  return out;
}

template <ExactScalar S>
ModuleFunctorDatum<S> mutate_s(ModuleFunctorDatum<S> fd) {
  fd.F.name += "[mutated-s]";
  fd.s = [s = fd.s](const Module<S>& x, const Module<S>& m) { return bump(s(x, m)); };
  return fd;
}

template <ExactScalar S>
ModuleFunctorDatum<S> mutate_sr(ModuleFunctorDatum<S> fd) {
  fd.F.name += "[mutated-sr]";
  fd.sr = [sr = fd.sr](const Module<S>& m, const Module<S>& x) { return bump(sr(m, x)); };
  return fd;
}

/// ε with its component at objects named `name` precomposed by a
/// non-natural automorphism; every other component is untouched.
template <ExactScalar S>
EquivalenceDatum<S> mutate_epsilon_at(const EquivalenceDatum<S>& eq, const std::string& name) {
  auto everywhere = mutate_epsilon(eq);
  EquivalenceDatum<S> out = eq;
  out.name = eq.name + "[mutated-ε@" + name + "]";
  out.epsilon = [eps = eq.epsilon, bad = everywhere.epsilon, name](const Module<S>& m) {
    return m.name() == name ? bad(m) : eps(m);
  };
  return out;
}

}  // namespace catmod
