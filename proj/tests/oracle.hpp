#pragma once

// Reference values computed without the library: characters of S_3 and S_4
// from permutation counting, traces of idempotents as ranks, and
// multiplicities from character inner products. Nothing here includes a
// catmod header.

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Perm = std::vector<int>;
using Char = std::vector<mpq_class>;  // indexed like perms(n)

inline std::vector<Perm> perms(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<Perm> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int fixed_points(const Perm& p) {
  int k = 0;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) k += p[i] == i;
  return k;
}

// parity by counting inversions
inline int parity(const Perm& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
  return inv % 2 ? -1 : 1;
}

inline Char times(const Char& a, const Char& b) {
  Char c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * b[i];
  return c;
}

// ⟨a, b⟩ = (1/|G|) Σ a(g) b(g); characters of S_n are real
inline mpq_class inner(const Char& a, const Char& b) {
  mpq_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s / static_cast<long>(a.size());
}

/// Irreducible characters by name. The standard character is the permutation
/// character minus the trivial one; for S_4 the 2-dimensional W is what is
/// left of the regular character after removing the others.
inline std::map<std::string, Char> characters(int n) {
  auto ps = perms(n);
  Char triv(ps.size(), 1), sgn, std_, reg(ps.size(), 0);
  for (const auto& p : ps) {
    sgn.push_back(parity(p));
    std_.push_back(fixed_points(p) - 1);
  }
  reg[0] = static_cast<long>(ps.size());
  if (n == 3) return {{"triv", triv}, {"sgn", sgn}, {"V", std_}};
  if (n != 4) throw std::invalid_argument("oracle covers S_3 and S_4");
  Char twisted = times(std_, sgn), w(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) w[i] = (reg[i] - triv[i] - sgn[i] - 3 * std_[i] - 3 * twisted[i]) / 2;
  return {{"triv", triv}, {"sgn", sgn}, {"W", w}, {"V", std_}, {"V'", twisted}};
}

/// Multiplication in the group algebra on coefficient vectors indexed like
/// perms(n), with (p q)(i) = p(q(i)).
inline std::vector<mpq_class> multiply(int n, const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  auto ps = perms(n);
  std::map<Perm, std::size_t> index;
  for (std::size_t i = 0; i < ps.size(); ++i) index[ps[i]] = i;
  std::vector<mpq_class> c(ps.size(), 0);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < ps.size(); ++j) {
      if (b[j] == 0) continue;
      Perm q(n);
      for (int k = 0; k < n; ++k) q[k] = ps[i][ps[j][k]];
      c[index.at(q)] += a[i] * b[j];
    }
  }
  return c;
}

/// dim e·S for the module with character chi: the trace of an idempotent
/// is its rank, and tr ρ(e) = Σ_g e(g) χ(g).
inline mpq_class trace(const std::vector<mpq_class>& e, const Char& chi) {
  mpq_class t = 0;
  for (std::size_t i = 0; i < e.size(); ++i) t += e[i] * chi[i];
  return t;
}

/// The regular character: |G| at the identity, 0 elsewhere.
inline Char regular(int n) {
  Char reg(perms(n).size(), 0);
  reg[0] = static_cast<long>(reg.size());
  return reg;
}

/// dim eAe = Σ over irreducibles of (rank of e on the simple)².
inline mpq_class corner_dim(int n, const std::vector<mpq_class>& e) {
  mpq_class d = 0;
  for (const auto& [name, chi] : characters(n)) {
    auto r = trace(e, chi);
    d += r * r;
  }
  return d;
}

/// e_χ = (χ(1)/|G|) Σ_g χ(g) g.
inline std::vector<mpq_class> central(const Char& chi) {
  std::vector<mpq_class> z(chi.size());
  for (std::size_t i = 0; i < chi.size(); ++i) z[i] = chi[0] * chi[i] / static_cast<long>(chi.size());
  return z;
}

/// (1/|H|) Σ_{h in H} c(h) h over an explicitly listed subgroup H.
inline std::vector<mpq_class> average(int n, const std::vector<Perm>& subgroup, bool twisted) {
  auto ps = perms(n);
  std::vector<mpq_class> v(ps.size(), 0);
  for (const auto& h : subgroup) {
    auto i = std::find(ps.begin(), ps.end(), h) - ps.begin();
    v[i] = mpq_class(twisted ? parity(h) : 1, static_cast<long>(subgroup.size()));
  }
  return v;
}

}  // namespace oracle
