#pragma once

// Symmetric groups S_n as permutation tables, the character tables of S_3
// and S_4, central idempotents, (sign-twisted) subgroup averages and the
// standard idempotent fixtures built from them.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

using Permutation = std::vector<std::size_t>;

/// All permutations of {0..n-1} in lexicographic order; index 0 is the
/// identity.
inline std::vector<Permutation> permutations(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// (p q)(i) = p(q(i)).
inline GroupTable symmetric_group_table(std::size_t n) {
  auto perms = permutations(n);
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  GroupTable t(perms.size(), std::vector<std::size_t>(perms.size()));
  for (std::size_t i = 0; i < perms.size(); ++i)
    for (std::size_t j = 0; j < perms.size(); ++j) {
      Permutation c(n);
      for (std::size_t k = 0; k < n; ++k) c[k] = perms[i][perms[j][k]];
      t[i][j] = index.at(c);
    }
  return t;
}

inline std::size_t permutation_index(const Permutation& p) {
  auto perms = permutations(p.size());
  return static_cast<std::size_t>(std::find(perms.begin(), perms.end(), p) - perms.begin());
}

/// Cycle lengths in decreasing order, e.g. {2, 1, 1} for a transposition in S_4.
inline std::vector<std::size_t> cycle_type(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

inline int sign(const Permutation& p) {
  int s = 1;
  for (auto len : cycle_type(p))
    if (len % 2 == 0) s = -s;
  return s;
}

struct Character {
  std::string name;
  std::map<std::vector<std::size_t>, long long> values;  // by cycle type
  long long degree() const { return values.begin()->second; }
};

/// Irreducible characters of S_3 (n = 3) and S_4 (n = 4).
inline std::vector<Character> symmetric_characters(std::size_t n) {
  using CT = std::vector<std::size_t>;
  if (n == 3) {
    CT e{1, 1, 1}, t{2, 1}, c{3};
    return {{"triv", {{e, 1}, {t, 1}, {c, 1}}},
            {"sgn", {{e, 1}, {t, -1}, {c, 1}}},
            {"V", {{e, 2}, {t, 0}, {c, -1}}}};
  }
  if (n == 4) {
    CT e{1, 1, 1, 1}, t{2, 1, 1}, tt{2, 2}, c3{3, 1}, c4{4};
    return {{"triv", {{e, 1}, {t, 1}, {tt, 1}, {c3, 1}, {c4, 1}}},
            {"sgn", {{e, 1}, {t, -1}, {tt, 1}, {c3, 1}, {c4, -1}}},
            {"W", {{e, 2}, {t, 0}, {tt, 2}, {c3, -1}, {c4, 0}}},
            {"V", {{e, 3}, {t, 1}, {tt, -1}, {c3, 0}, {c4, -1}}},
            {"V'", {{e, 3}, {t, -1}, {tt, -1}, {c3, 0}, {c4, 1}}}};
  }
  throw NotAGroup("character tables are bundled for S_3 and S_4 only");
}

/// e_χ = (χ(1)/|G|) Σ_g χ(g⁻¹) g; characters of S_n are real and constant
/// on classes, so χ(g⁻¹) = χ(g).
template <ExactScalar S>
Mat<S> central_idempotent(const AlgebraPtr<S>& a, std::size_t n, const Character& chi) {
  using T = ScalarTraits<S>;
  auto perms = permutations(n);
  Mat<S> z(a->dim(), 1, a->field());
  auto order = static_cast<long long>(perms.size());
  for (std::size_t g = 0; g < perms.size(); ++g)
    z(g, 0) = T::from_fraction(a->field(), chi.degree() * chi.values.at(cycle_type(perms[g])), order);
  return z;
}

/// (1/|H|) Σ_{h in H} c(h) h, c = 1 or the sign; H given by permutation
/// indices and closed under multiplication.
template <ExactScalar S>
Mat<S> subgroup_average(const AlgebraPtr<S>& a, std::size_t n, const std::vector<std::size_t>& subgroup,
                        bool sign_twisted) {
  using T = ScalarTraits<S>;
  auto perms = permutations(n);
  Mat<S> v(a->dim(), 1, a->field());
  auto order = static_cast<long long>(subgroup.size());
  for (auto h : subgroup) v(h, 0) = T::from_fraction(a->field(), sign_twisted ? sign(perms[h]) : 1, order);
  return v;
}

/// The subgroup generated by the given permutations.
inline std::vector<std::size_t> generated_subgroup(std::size_t n, const std::vector<Permutation>& gens) {
  auto table = symmetric_group_table(n);
  std::vector<std::size_t> g_idx;
  for (const auto& g : gens) g_idx.push_back(permutation_index(g));
  std::vector<std::size_t> elems{0};
  std::vector<bool> in(table.size(), false);
  in[0] = true;
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (auto g : g_idx) {
      auto p = table[elems[k]][g];
      if (!in[p]) {
        in[p] = true;
        elems.push_back(p);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

/// A block summand of an idempotent: central idempotent of `character`
/// times the (twisted) average over the subgroup generated by `subgroup`.
struct BlockPiece {
  std::string character;
  std::vector<Permutation> subgroup;
  bool sign_twisted = false;
};

template <ExactScalar S>
Mat<S> assemble_idempotent(const AlgebraPtr<S>& a, std::size_t n, const std::vector<BlockPiece>& pieces) {
  auto chars = symmetric_characters(n);
  Mat<S> e(a->dim(), 1, a->field());
  for (const auto& piece : pieces) {
    auto it = std::find_if(chars.begin(), chars.end(), [&](const Character& c) { return c.name == piece.character; });
    if (it == chars.end()) throw InvalidAlgebra("unknown character " + piece.character);
    Mat<S> z = central_idempotent(a, n, *it);
    if (!piece.subgroup.empty())
      z = a->multiply(z, subgroup_average(a, n, generated_subgroup(n, piece.subgroup), piece.sign_twisted));
    e += z;
  }
  return e;
}

/// ℚS_3: one primitive idempotent per Wedderburn block,
/// e = e_triv + e_sgn + e_V (1 + (01))/2.
template <ExactScalar S>
Mat<S> s3_basic_idempotent(const AlgebraPtr<S>& a) {
  return assemble_idempotent(a, 3, {{"triv", {}, false}, {"sgn", {}, false}, {"V", {{1, 0, 2}}, false}});
}

/// ℚS_4, block ranks (1,1,1,1,1) over (triv, sgn, W, V, V').
template <ExactScalar S>
Mat<S> s4_rank_one_idempotent(const AlgebraPtr<S>& a) {
  Permutation t01{1, 0, 2, 3}, t23{0, 1, 3, 2}, t12{0, 2, 1, 3};
  return assemble_idempotent(a, 4,
                             {{"triv", {}, false},
                              {"sgn", {}, false},
                              {"W", {t01, t23}, false},
                              {"V", {t01, t12}, false},
                              {"V'", {t01, t12}, true}});
}

/// ℚS_4, block ranks (1,1,1,2,2); dominates s4_rank_one_idempotent.
template <ExactScalar S>
Mat<S> s4_rank_two_idempotent(const AlgebraPtr<S>& a) {
  Permutation t01{1, 0, 2, 3}, t23{0, 1, 3, 2};
  return assemble_idempotent(a, 4,
                             {{"triv", {}, false},
                              {"sgn", {}, false},
                              {"W", {t01, t23}, false},
                              {"V", {t01}, false},
                              {"V'", {t01}, true}});
}

/// The simple module with character chi, realized as the left ideal A f
/// for a primitive idempotent f inside the block of chi.
template <ExactScalar S>
Module<S> symmetric_simple(const AlgebraPtr<S>& a, std::size_t n, const std::string& name) {
  Mat<S> f;
  if (n == 3) {
    std::map<std::string, BlockPiece> pieces{{"triv", {"triv", {}, false}},
                                             {"sgn", {"sgn", {}, false}},
                                             {"V", {"V", {{1, 0, 2}}, false}}};
    f = assemble_idempotent(a, 3, {pieces.at(name)});
  } else if (n == 4) {
    Permutation t01{1, 0, 2, 3}, t23{0, 1, 3, 2}, t12{0, 2, 1, 3};
    std::map<std::string, BlockPiece> pieces{{"triv", {"triv", {}, false}},
                                             {"sgn", {"sgn", {}, false}},
                                             {"W", {"W", {t01, t23}, false}},
                                             {"V", {"V", {t01, t12}, false}},
                                             {"V'", {"V'", {t01, t12}, true}}};
    f = assemble_idempotent(a, 4, {pieces.at(name)});
  } else {
    throw NotAGroup("simple modules are bundled for S_3 and S_4 only");
  }
  auto reg = regular_module(a);
  return submodule(reg, a->right_mult(f), name).module;
}

template <ExactScalar S>
std::vector<Module<S>> symmetric_simples(const AlgebraPtr<S>& a, std::size_t n) {
  std::vector<Module<S>> out;
  for (const auto& c : symmetric_characters(n)) out.push_back(symmetric_simple(a, n, c.name));
  return out;
}

template <ExactScalar S>
AlgebraPtr<S> symmetric_group_algebra(std::size_t n, FieldOf<S> field = FieldOf<S>{}) {
  std::string name = "S" + std::to_string(n);
  return make_group_algebra<S>(symmetric_group_table(n), field, field.name() + name);
}

}  // namespace catmod
