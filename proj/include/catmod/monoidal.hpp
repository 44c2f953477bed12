#pragma once

// The acting monoidal category: modules over a Hopf algebra with the
// diagonal tensor product. Iterated tensors are flattened with the row-major
// Kronecker convention, so the associator is the identity matrix.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "catmod/algebra.hpp"

namespace catmod {

/// comul is dim^2 x dim: column b holds Δ(b_b) in the basis b_i ⊗ b_j
/// (index i * dim + j). counit is 1 x dim, antipode dim x dim.
template <ExactScalar S>
struct HopfData {
  AlgebraPtr<S> algebra;
  Mat<S> comul;
  Mat<S> counit;
  Mat<S> antipode;
};

namespace detail {

template <ExactScalar S>
SparseVec<S> sparse_column(const Mat<S>& m, std::size_t c) {
  SparseVec<S> v;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!ScalarTraits<S>::is_zero(m(r, c))) v.emplace_back(r, m(r, c));
  return v;
}

}  // namespace detail

template <ExactScalar S>
std::vector<std::string> validate_hopf(const HopfData<S>& h) {
  using T = ScalarTraits<S>;
  std::vector<std::string> issues;
  const auto& a = *h.algebra;
  std::size_t n = a.dim();
  const auto f = a.field();
  if (h.comul.rows() != n * n || h.comul.cols() != n || h.counit.rows() != 1 || h.counit.cols() != n ||
      h.antipode.rows() != n || h.antipode.cols() != n) {
    issues.push_back("shape");
    return issues;
  }
  std::vector<detail::SparseVec<S>> delta(n);
  for (std::size_t b = 0; b < n; ++b) delta[b] = detail::sparse_column(h.comul, b);
  auto name = [](const char* what, std::size_t b) { return std::string(what) + " fails at b" + std::to_string(b); };

  for (std::size_t b = 0; b < n; ++b) {
    // coassociativity, on coordinates of A ⊗ A ⊗ A
    std::map<std::size_t, S> left, right;
    for (const auto& [ij, c] : delta[b]) {
      std::size_t i = ij / n, j = ij % n;
      for (const auto& [kl, d] : delta[i]) left[kl * n + j] += c * d;
      for (const auto& [kl, d] : delta[j]) right[i * n * n + kl] += c * d;
    }
    std::erase_if(left, [](const auto& kv) { return T::is_zero(kv.second); });
    std::erase_if(right, [](const auto& kv) { return T::is_zero(kv.second); });
    if (left != right) issues.push_back(name("coassociativity", b));

    // counit laws and antipode laws
    Mat<S> cl(n, 1, f), cr(n, 1, f), sl(n, 1, f), sr(n, 1, f);
    for (const auto& [ij, c] : delta[b]) {
      std::size_t i = ij / n, j = ij % n;
      cl(j, 0) += c * h.counit(0, i);
      cr(i, 0) += c * h.counit(0, j);
      sl += c * a.multiply(h.antipode.col(i), a.basis_vector(j));
      sr += c * a.multiply(a.basis_vector(i), h.antipode.col(j));
    }
    if (!(cl == a.basis_vector(b)) || !(cr == a.basis_vector(b))) issues.push_back(name("counit law", b));
    Mat<S> expect = h.counit(0, b) * a.unit();
    if (!(sl == expect) || !(sr == expect)) issues.push_back(name("antipode law", b));
  }

  // Δ and ε are algebra maps
  Mat<S> unit = a.unit();
  Mat<S> unit_delta = h.comul * unit;
  if (!(unit_delta == kronecker(unit, unit))) issues.push_back("Δ(1) != 1 ⊗ 1");
  if (!((h.counit * unit)(0, 0) == T::one(f))) issues.push_back("ε(1) != 1");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto prod = a.multiply(a.basis_vector(i), a.basis_vector(j));
      Mat<S> lhs = h.comul * prod;
      std::map<std::size_t, S> rhs;
      for (const auto& [pq, c] : delta[i])
        for (const auto& [rs, d] : delta[j]) {
          std::size_t p = pq / n, q = pq % n, r = rs / n, s = rs % n;
          S cd = c * d;
          for (std::size_t u = 0; u < n; ++u) {
            const S& x = a.coeff(p, r, u);
            if (T::is_zero(x)) continue;
            for (std::size_t v = 0; v < n; ++v) {
              const S& y = a.coeff(q, s, v);
              if (!T::is_zero(y)) rhs[u * n + v] += cd * x * y;
            }
          }
        }
      Mat<S> rhs_m(n * n, 1, f);
      for (const auto& [k, v] : rhs) rhs_m(k, 0) = v;
      if (!(lhs == rhs_m)) {
        issues.push_back("Δ not multiplicative at (b" + std::to_string(i) + ", b" + std::to_string(j) + ")");
        return issues;
      }
      if (!((h.counit * prod)(0, 0) == h.counit(0, i) * h.counit(0, j))) {
        issues.push_back("ε not multiplicative");
        return issues;
      }
    }
  return issues;
}

template <ExactScalar S>
HopfData<S> make_hopf(AlgebraPtr<S> a, Mat<S> comul, Mat<S> counit, Mat<S> antipode) {
  HopfData<S> h{std::move(a), std::move(comul), std::move(counit), std::move(antipode)};
  auto issues = validate_hopf(h);
  if (!issues.empty()) throw InvalidHopf(issues.front());
  return h;
}

/// Group-like Hopf structure on a group algebra: Δ(g) = g ⊗ g, ε(g) = 1,
/// S(g) = g⁻¹.
template <ExactScalar S>
HopfData<S> hopf_from_group(const AlgebraPtr<S>& a) {
  using T = ScalarTraits<S>;
  if (!a->group_table()) throw NotAGroup(a->name() + " carries no group table");
  auto inv = group_inverses(*a->group_table());
  std::size_t n = a->dim();
  const auto f = a->field();
  Mat<S> comul(n * n, n, f), counit(1, n, f), antipode(n, n, f);
  for (std::size_t g = 0; g < n; ++g) {
    comul(g * n + g, g) = T::one(f);
    counit(0, g) = T::one(f);
    antipode(inv[g], g) = T::one(f);
  }
  return make_hopf(a, std::move(comul), std::move(counit), std::move(antipode));
}

/// A-mod as a strict monoidal category. Tensor products of objects are
/// memoized so that repeated requests return the same object.
template <ExactScalar S>
class MonoidalContext {
 public:
  explicit MonoidalContext(HopfData<S> hopf) : hopf_(std::move(hopf)), cache_(std::make_shared<Cache>()) {
    std::size_t n = hopf_.algebra->dim();
    for (std::size_t b = 0; b < n; ++b) delta_.push_back(detail::sparse_column(hopf_.comul, b));
    std::vector<Mat<S>> action;
    for (std::size_t b = 0; b < n; ++b) {
      Mat<S> m(1, 1, field());
      m(0, 0) = hopf_.counit(0, b);
      action.push_back(std::move(m));
    }
    unit_ = Module<S>::trusted(hopf_.algebra, std::move(action), "1");
  }

  const HopfData<S>& hopf() const { return hopf_; }
  const AlgebraPtr<S>& algebra() const { return hopf_.algebra; }
  const FieldOf<S>& field() const { return hopf_.algebra->field(); }
  const Module<S>& unit_object() const { return unit_; }

  Module<S> tensor(const Module<S>& x, const Module<S>& y) const {
    if (!same_algebra(x.algebra_ptr(), algebra()) || !same_algebra(y.algebra_ptr(), algebra()))
      throw AlgebraMismatch(x.name() + " ⊗ " + y.name() + " outside " + algebra()->name() + "-mod");
    std::pair<const void*, const void*> key{x.key(), y.key()};
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->tensors.find(key);
      if (it != cache_->tensors.end()) return it->second.result;
    }
    std::size_t n = algebra()->dim();
    std::vector<Mat<S>> action;
    action.reserve(n);
    for (std::size_t b = 0; b < n; ++b) {
      Mat<S> m(x.dim() * y.dim(), x.dim() * y.dim(), field());
      for (const auto& [ij, c] : delta_[b]) {
        auto k = kronecker(x.action(ij / n), y.action(ij % n));
        m += (c == ScalarTraits<S>::one(field())) ? k : c * k;
      }
      action.push_back(std::move(m));
    }
    auto result = Module<S>::trusted(algebra(), std::move(action), "(" + x.name() + "⊗" + y.name() + ")");
    std::lock_guard lock(cache_->mutex);
    auto [it, inserted] = cache_->tensors.try_emplace(key, Entry{x, y, result});
    return it->second.result;
  }

  Morphism<S> tensor(const Morphism<S>& f, const Morphism<S>& g) const {
    return {tensor(f.source, g.source), tensor(f.target, g.target), kronecker(f.mat, g.mat)};
  }

  /// Identity on flattened coordinates.
  Morphism<S> associator(const Module<S>& x, const Module<S>& y, const Module<S>& z) const {
    return {tensor(tensor(x, y), z), tensor(x, tensor(y, z)),
            Mat<S>::identity(x.dim() * y.dim() * z.dim(), field())};
  }

 private:
  struct Entry {
    Module<S> x, y, result;  // x, y keep the key pointers alive
  };
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<const void*, const void*>, Entry> tensors;
  };

  HopfData<S> hopf_;
  std::vector<detail::SparseVec<S>> delta_;
  Module<S> unit_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Nilpotent actions on tensor products

/// yX ⊗ 1 + 1 ⊗ yZ.
template <ExactScalar S>
Mat<S> diagonal_operator(const Mat<S>& yx, const Mat<S>& yz) {
  if (!yx.is_square() || !yz.is_square())
    throw ShapeError("diagonal_operator needs square inputs, got " + yx.shape() + " and " + yz.shape());
  yx.check_field(yz);
  return kronecker(yx, Mat<S>::identity(yz.rows(), yz.field())) +
         kronecker(Mat<S>::identity(yx.rows(), yx.field()), yz);
}

/// Smallest k with m^k = 0, or nullopt if m is not nilpotent.
template <ExactScalar S>
std::optional<std::size_t> nilpotency_index(const Mat<S>& m) {
  if (!m.is_square()) throw ShapeError("nilpotency_index of " + m.shape());
  auto p = Mat<S>::identity(m.rows(), m.field());
  for (std::size_t k = 0; k <= m.rows(); ++k) {
    if (p.is_zero()) return k;
    p = p * m;
  }
  return std::nullopt;
}

struct ExpansionReport {
  bool binomial = false;     // (D-ψ)^k (x⊗z) = Σ_j C(k,j) (y-ψ)^j x ⊗ y^{k-j} z
  bool double_sum = false;   // the same, by linearity, on general tensors
  bool without_binomials = false;  // the identity with every C(k,j) replaced by 1
  std::optional<bool> index_bound;  // when both inputs are nilpotent
  bool holds() const { return binomial && double_sum && index_bound.value_or(true); }
};

/// Checks the expansion of (D - ψ)^k, D = diagonal_operator(yx, yz), on the
/// decomposable probes x ⊗ z and on the general tensors
/// Σ alpha(i, j) x_i ⊗ z_j built from all probes. probes_x and probes_z are
/// column vectors; alpha is probes_x.size() x probes_z.size().
template <ExactScalar S>
ExpansionReport nilpotent_expansion_check(const Mat<S>& yx, const Mat<S>& yz, const S& psi, std::size_t k,
                                          const std::vector<Mat<S>>& probes_x, const std::vector<Mat<S>>& probes_z,
                                          const Mat<S>& alpha) {
  using T = ScalarTraits<S>;
  const auto f = yx.field();
  Mat<S> d = diagonal_operator(yx, yz);
  Mat<S> shifted_d = d - psi * Mat<S>::identity(d.rows(), f);
  Mat<S> shifted_x = yx - psi * Mat<S>::identity(yx.rows(), f);
  Mat<S> lhs_op = power(shifted_d, k);
  std::vector<Mat<S>> px, pz;  // (y-ψ)^j on X and y^j on Z, j = 0..k
  for (std::size_t j = 0; j <= k; ++j) {
    px.push_back(power(shifted_x, j));
    pz.push_back(power(yz, j));
  }
  // Pascal's rule, so no division by j (j can be a multiple of p over F_p)
  std::vector<S> binom(k + 1, T::zero(f));
  binom[0] = T::one(f);
  for (std::size_t row = 1; row <= k; ++row)
    for (std::size_t j = row; j >= 1; --j) binom[j] += binom[j - 1];

  auto expand = [&](const Mat<S>& x, const Mat<S>& z, bool with_binomials) {
    Mat<S> out(d.rows(), 1, f);
    for (std::size_t j = 0; j <= k; ++j) {
      Mat<S> term = kronecker(px[j] * x, pz[k - j] * z);
      out += with_binomials ? binom[j] * term : term;
    }
    return out;
  };

  ExpansionReport r;
  r.binomial = true;
  r.without_binomials = true;
  for (const auto& x : probes_x)
    for (const auto& z : probes_z) {
      Mat<S> lhs = lhs_op * kronecker(x, z);
      r.binomial = r.binomial && lhs == expand(x, z, true);
      r.without_binomials = r.without_binomials && lhs == expand(x, z, false);
    }
  Mat<S> general(d.rows(), 1, f), rhs(d.rows(), 1, f);
  for (std::size_t i = 0; i < probes_x.size(); ++i)
    for (std::size_t j = 0; j < probes_z.size(); ++j) {
      if (T::is_zero(alpha(i, j))) continue;
      general += alpha(i, j) * kronecker(probes_x[i], probes_z[j]);
      rhs += alpha(i, j) * expand(probes_x[i], probes_z[j], true);
    }
  r.double_sum = lhs_op * general == rhs;

  auto p = nilpotency_index(yx);
  auto q = nilpotency_index(yz);
  if (p && q) {
    auto idx = nilpotency_index(d);
    std::size_t bound = (*p == 0 || *q == 0) ? 0 : *p + *q - 1;
    r.index_bound = idx.has_value() && *idx <= bound;
  }
  return r;
}

}  // namespace catmod
