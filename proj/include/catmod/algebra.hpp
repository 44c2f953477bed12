#pragma once

// Finite-dimensional algebras given by structure constants, their modules,
// intertwiners, bimodules, balanced tensor products, idempotents and corner
// algebras eAe.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catmod/errors.hpp"
#include "catmod/linalg.hpp"

namespace catmod {

using GroupTable = std::vector<std::vector<std::size_t>>;

/// Unvalidated algebra description: c[(i * dim + j) * dim + k] is the k-th
/// coordinate of b_i * b_j.
template <ExactScalar S>
struct AlgebraData {
  std::size_t dim = 0;
  FieldOf<S> field{};
  std::vector<S> structure;
  std::vector<S> unit;
};

struct AlgebraIssue {
  std::string kind;  // "associativity", "left-unit", "right-unit", "shape"
  std::size_t i = 0, j = 0, k = 0;

  std::string to_string() const {
    if (kind == "associativity")
      return kind + " (b" + std::to_string(i) + " b" + std::to_string(j) + ") b" + std::to_string(k);
    return kind + " at b" + std::to_string(i);
  }
};

namespace detail {

template <ExactScalar S>
using SparseVec = std::vector<std::pair<std::size_t, S>>;

template <ExactScalar S>
std::vector<SparseVec<S>> sparse_products(const AlgebraData<S>& a) {
  std::vector<SparseVec<S>> prod(a.dim * a.dim);
  for (std::size_t ij = 0; ij < a.dim * a.dim; ++ij)
    for (std::size_t k = 0; k < a.dim; ++k) {
      const S& c = a.structure[ij * a.dim + k];
      if (!ScalarTraits<S>::is_zero(c)) prod[ij].emplace_back(k, c);
    }
  return prod;
}

}  // namespace detail

/// Every failing associativity triple and unit law; empty iff the data
/// defines a unital associative algebra.
template <ExactScalar S>
std::vector<AlgebraIssue> validate_algebra(const AlgebraData<S>& a) {
  using T = ScalarTraits<S>;
  std::vector<AlgebraIssue> issues;
  std::size_t n = a.dim;
  if (a.structure.size() != n * n * n || a.unit.size() != n) {
    issues.push_back({"shape", 0, 0, 0});
    return issues;
  }
  auto prod = detail::sparse_products(a);
  std::vector<S> lhs(n, T::zero(a.field)), rhs(n, T::zero(a.field));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        std::fill(lhs.begin(), lhs.end(), T::zero(a.field));
        std::fill(rhs.begin(), rhs.end(), T::zero(a.field));
        for (const auto& [l, c] : prod[i * n + j])
          for (const auto& [m, d] : prod[l * n + k]) lhs[m] += c * d;
        for (const auto& [l, c] : prod[j * n + k])
          for (const auto& [m, d] : prod[i * n + l]) rhs[m] += c * d;
        if (lhs != rhs) issues.push_back({"associativity", i, j, k});
      }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<S> left(n, T::zero(a.field)), right(n, T::zero(a.field));
    for (std::size_t u = 0; u < n; ++u) {
      if (T::is_zero(a.unit[u])) continue;
      for (const auto& [m, d] : prod[u * n + i]) left[m] += a.unit[u] * d;
      for (const auto& [m, d] : prod[i * n + u]) right[m] += a.unit[u] * d;
    }
    std::vector<S> basis(n, T::zero(a.field));
    basis[i] = T::one(a.field);
    if (left != basis) issues.push_back({"left-unit", i, 0, 0});
    if (right != basis) issues.push_back({"right-unit", i, 0, 0});
  }
  return issues;
}

template <ExactScalar S>
class Algebra;
template <ExactScalar S>
using AlgebraPtr = std::shared_ptr<const Algebra<S>>;

template <ExactScalar S>
class Algebra {
 public:
  using Field = FieldOf<S>;

  /// Validates and freezes the data; throws InvalidAlgebra naming the first
  /// failures.
  static AlgebraPtr<S> create(AlgebraData<S> data, std::string name,
                              std::optional<GroupTable> group = std::nullopt) {
    auto issues = validate_algebra(data);
    if (!issues.empty()) {
      std::string msg = name + ": ";
      for (std::size_t k = 0; k < issues.size() && k < 3; ++k) msg += (k ? ", " : "") + issues[k].to_string();
      throw InvalidAlgebra(msg);
    }
    return std::shared_ptr<const Algebra>(new Algebra(std::move(data), std::move(name), std::move(group)));
  }

  std::size_t dim() const { return data_.dim; }
  const Field& field() const { return data_.field; }
  const std::string& name() const { return name_; }
  const AlgebraData<S>& data() const { return data_; }
  const std::optional<GroupTable>& group_table() const { return group_; }
  /// Basis indices generating the algebra (with the unit).
  const std::vector<std::size_t>& generators() const { return generators_; }

  const S& coeff(std::size_t i, std::size_t j, std::size_t k) const {
    return data_.structure[(i * dim() + j) * dim() + k];
  }

  Mat<S> unit() const { return Mat<S>::column(data_.unit, field()); }

  Mat<S> basis_vector(std::size_t i) const {
    Mat<S> v(dim(), 1, field());
    v(i, 0) = ScalarTraits<S>::one(field());
    return v;
  }

  /// Coordinates of x * y for coordinate columns x, y.
  Mat<S> multiply(const Mat<S>& x, const Mat<S>& y) const {
    using T = ScalarTraits<S>;
    Mat<S> out(dim(), 1, field());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (T::is_zero(x(i, 0))) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (T::is_zero(y(j, 0))) continue;
        S xy = x(i, 0) * y(j, 0);
        for (const auto& [k, c] : products_[i * dim() + j]) out(k, 0) += xy * c;
      }
    }
    return out;
  }

  /// Matrix of v -> x * v.
  Mat<S> left_mult(const Mat<S>& x) const {
    Mat<S> m(dim(), dim(), field());
    for (std::size_t j = 0; j < dim(); ++j) {
      auto col = multiply(x, basis_vector(j));
      for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col(k, 0);
    }
    return m;
  }

  /// Matrix of v -> v * y.
  Mat<S> right_mult(const Mat<S>& y) const {
    Mat<S> m(dim(), dim(), field());
    for (std::size_t i = 0; i < dim(); ++i) {
      auto col = multiply(basis_vector(i), y);
      for (std::size_t k = 0; k < dim(); ++k) m(k, i) = col(k, 0);
    }
    return m;
  }

  bool same_as(const Algebra& o) const {
    if (this == &o) return true;
    return data_.dim == o.data_.dim && data_.field == o.data_.field && data_.structure == o.data_.structure &&
           data_.unit == o.data_.unit;
  }

 private:
  Algebra(AlgebraData<S> data, std::string name, std::optional<GroupTable> group)
      : data_(std::move(data)), name_(std::move(name)), group_(std::move(group)) {
    products_ = detail::sparse_products(data_);
    generators_ = compute_generators();
  }

  // Greedy: add the first basis element outside the subalgebra generated so
  // far, until everything is reached.
  std::vector<std::size_t> compute_generators() const {
    std::vector<std::size_t> gens;
    auto closure = [&](const std::vector<std::size_t>& g) {
      Mat<S> span = unit();
      for (;;) {
        auto basis = column_basis(span);
        std::vector<Mat<S>> cols{basis.basis};
        for (std::size_t c = 0; c < basis.dim(); ++c)
          for (auto gi : g) cols.push_back(multiply(basis.basis.col(c), basis_vector(gi)));
        Mat<S> grown = hstack(cols, dim(), field());
        auto next = column_basis(grown);
        if (next.dim() == basis.dim()) return basis;
        span = next.basis;
      }
    };
    auto current = closure(gens);
    for (std::size_t i = 0; i < dim() && current.dim() < dim(); ++i) {
      Mat<S> probe = hstack<S>({current.basis, basis_vector(i)}, dim(), field());
      if (rank(probe) == current.dim()) continue;
      gens.push_back(i);
      current = closure(gens);
    }
    return gens;
  }

  AlgebraData<S> data_;
  std::string name_;
  std::optional<GroupTable> group_;
  std::vector<detail::SparseVec<S>> products_;
  std::vector<std::size_t> generators_;
};

template <ExactScalar S>
bool same_algebra(const AlgebraPtr<S>& a, const AlgebraPtr<S>& b) {
  return a == b || (a && b && a->same_as(*b));
}

// ---------------------------------------------------------------------------
// Modules

template <ExactScalar S>
std::vector<std::string> validate_representation(const Algebra<S>& a, const std::vector<Mat<S>>& action,
                                                  std::size_t dim) {
  std::vector<std::string> issues;
  if (action.size() != a.dim()) {
    issues.push_back("expected " + std::to_string(a.dim()) + " action matrices, got " +
                     std::to_string(action.size()));
    return issues;
  }
  for (std::size_t i = 0; i < action.size(); ++i)
    if (action[i].rows() != dim || action[i].cols() != dim || !(action[i].field() == a.field())) {
      issues.push_back("action matrix " + std::to_string(i) + " has shape " + action[i].shape());
      return issues;
    }
  auto act = [&](const Mat<S>& coords) {
    Mat<S> m(dim, dim, a.field());
    for (std::size_t k = 0; k < a.dim(); ++k)
      if (!ScalarTraits<S>::is_zero(coords(k, 0))) m += coords(k, 0) * action[k];
    return m;
  };
  if (!act(a.unit()).is_identity()) issues.push_back("unit does not act as identity");
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto prod = a.multiply(a.basis_vector(i), a.basis_vector(j));
      if (!(action[i] * action[j] == act(prod)))
        issues.push_back("rho(b" + std::to_string(i) + ") rho(b" + std::to_string(j) + ") != rho(b" +
                         std::to_string(i) + " b" + std::to_string(j) + ")");
    }
  return issues;
}

/// A left module: one action matrix per basis element of its algebra.
/// Cheap to copy; the underlying data is shared and immutable.
template <ExactScalar S>
class Module {
 public:
  Module() = default;

  static Module create(AlgebraPtr<S> algebra, std::vector<Mat<S>> action, std::string name) {
    std::size_t dim = action.empty() ? 0 : action.front().rows();
    auto issues = validate_representation(*algebra, action, dim);
    if (!issues.empty()) throw InvalidModule(name + ": " + issues.front());
    return trusted(std::move(algebra), std::move(action), std::move(name));
  }

  /// No validation; for modules produced by constructions that guarantee
  /// the axioms.
  static Module trusted(AlgebraPtr<S> algebra, std::vector<Mat<S>> action, std::string name) {
    Module m;
    auto d = std::make_shared<Data>();
    d->dim = action.empty() ? 0 : action.front().rows();
    d->algebra = std::move(algebra);
    d->action = std::move(action);
    m.data_ = std::move(d);
    m.name_ = std::move(name);
    return m;
  }

  explicit operator bool() const { return static_cast<bool>(data_); }
  std::size_t dim() const { return data_->dim; }
  const Algebra<S>& algebra() const { return *data_->algebra; }
  const AlgebraPtr<S>& algebra_ptr() const { return data_->algebra; }
  const FieldOf<S>& field() const { return data_->algebra->field(); }
  const Mat<S>& action(std::size_t i) const { return data_->action[i]; }
  const std::vector<Mat<S>>& actions() const { return data_->action; }
  const std::string& name() const { return name_; }
  /// Identity of the shared data, used as a memoization key.
  const void* key() const { return data_.get(); }
  std::shared_ptr<const void> keep_alive() const { return data_; }

  Module renamed(std::string name) const {
    Module m = *this;
    m.name_ = std::move(name);
    return m;
  }

  /// Action of an algebra element given by coordinates.
  Mat<S> act(const Mat<S>& coords) const {
    Mat<S> m(dim(), dim(), field());
    for (std::size_t k = 0; k < algebra().dim(); ++k)
      if (!ScalarTraits<S>::is_zero(coords(k, 0))) m += coords(k, 0) * action(k);
    return m;
  }

  std::vector<std::string> validate() const { return validate_representation(algebra(), actions(), dim()); }

  /// Same algebra, same dimension, identical action matrices.
  friend bool same_object(const Module& a, const Module& b) {
    if (a.data_ == b.data_) return true;
    return a.dim() == b.dim() && same_algebra(a.algebra_ptr(), b.algebra_ptr()) && a.actions() == b.actions();
  }

 private:
  struct Data {
    AlgebraPtr<S> algebra;
    std::size_t dim = 0;
    std::vector<Mat<S>> action;
  };
  std::shared_ptr<const Data> data_;
  std::string name_;
};

template <ExactScalar S>
struct Morphism {
  Module<S> source;
  Module<S> target;
  Mat<S> mat;
};

template <ExactScalar S>
Morphism<S> identity_morphism(const Module<S>& m) {
  return {m, m, Mat<S>::identity(m.dim(), m.field())};
}

/// g ∘ f; the target of f must be the source of g.
template <ExactScalar S>
Morphism<S> compose(const Morphism<S>& g, const Morphism<S>& f) {
  if (!same_object(f.target, g.source))
    throw MalformedConstraint("cannot compose: target " + f.target.name() + " (dim " +
                              std::to_string(f.target.dim()) + ") is not source " + g.source.name() + " (dim " +
                              std::to_string(g.source.dim()) + ")");
  return {f.source, g.target, g.mat * f.mat};
}

template <ExactScalar S>
bool is_intertwiner(const Morphism<S>& f) {
  const auto& a = f.source.algebra();
  if (!same_algebra(f.source.algebra_ptr(), f.target.algebra_ptr())) return false;
  if (f.mat.rows() != f.target.dim() || f.mat.cols() != f.source.dim()) return false;
  for (auto g : a.generators())
    if (!(f.mat * f.source.action(g) == f.target.action(g) * f.mat)) return false;
  return true;
}

template <ExactScalar S>
Morphism<S> inverse_morphism(const Morphism<S>& f) {
  return {f.target, f.source, inverse(f.mat)};
}

template <ExactScalar S>
Module<S> regular_module(const AlgebraPtr<S>& a) {
  std::vector<Mat<S>> action;
  for (std::size_t i = 0; i < a->dim(); ++i) action.push_back(a->left_mult(a->basis_vector(i)));
  return Module<S>::trusted(a, std::move(action), "A");
}

template <ExactScalar S>
Module<S> direct_sum(const Module<S>& m, const Module<S>& n) {
  if (!same_algebra(m.algebra_ptr(), n.algebra_ptr())) throw AlgebraMismatch(m.name() + " ⊕ " + n.name());
  std::vector<Mat<S>> action;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) action.push_back(direct_sum(m.action(i), n.action(i)));
  return Module<S>::trusted(m.algebra_ptr(), std::move(action), m.name() + "+" + n.name());
}

/// The projection M ⊕ N -> M onto the first summand.
template <ExactScalar S>
Morphism<S> projection_first(const Module<S>& sum, const Module<S>& first) {
  Mat<S> p(first.dim(), sum.dim(), first.field());
  for (std::size_t i = 0; i < first.dim(); ++i) p(i, i) = ScalarTraits<S>::one(first.field());
  return {sum, first, std::move(p)};
}

/// The submodule spanned by the columns of `span`, in its echelon basis.
template <ExactScalar S>
struct Submodule {
  Module<S> module;
  Mat<S> inclusion;
  Mat<S> selector;
};

template <ExactScalar S>
Submodule<S> submodule(const Module<S>& m, const Mat<S>& span, std::string name) {
  auto cb = column_basis(span);
  auto sel = cb.selector();
  std::vector<Mat<S>> action;
  for (std::size_t i = 0; i < m.algebra().dim(); ++i) {
    Mat<S> image = m.action(i) * cb.basis;
    Mat<S> coords = sel * image;
    if (!(cb.basis * coords == image)) throw InvalidModule(name + ": subspace is not stable");
    action.push_back(std::move(coords));
  }
  return {Module<S>::trusted(m.algebra_ptr(), std::move(action), std::move(name)), cb.basis, sel};
}

/// Basis of Hom_A(m, n), from the kernel of the stacked intertwining
/// equations for the algebra generators.
template <ExactScalar S>
std::vector<Morphism<S>> hom_basis(const Module<S>& m, const Module<S>& n) {
  using T = ScalarTraits<S>;
  if (!same_algebra(m.algebra_ptr(), n.algebra_ptr())) throw AlgebraMismatch(m.name() + " vs " + n.name());
  std::size_t dm = m.dim(), dn = n.dim();
  const auto& gens = m.algebra().generators();
  Mat<S> sys(gens.size() * dn * dm, dn * dm, m.field());
  std::size_t block = 0;
  for (auto g : gens) {
    const auto& rm = m.action(g);
    const auto& rn = n.action(g);
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) {
        std::size_t row = block + i * dm + j;
        for (std::size_t c = 0; c < dm; ++c)
          if (!T::is_zero(rm(c, j))) sys(row, i * dm + c) += rm(c, j);
        for (std::size_t r = 0; r < dn; ++r)
          if (!T::is_zero(rn(i, r))) sys(row, r * dm + j) -= rn(i, r);
      }
    block += dn * dm;
  }
  auto k = kernel_matrix(sys);
  std::vector<Morphism<S>> out;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    Mat<S> t(dn, dm, m.field());
    for (std::size_t i = 0; i < dn; ++i)
      for (std::size_t j = 0; j < dm; ++j) t(i, j) = k(i * dm + j, c);
    out.push_back({m, n, std::move(t)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group algebras

/// Checks the group axioms; returns the identity index.
inline std::size_t check_group_table(const GroupTable& table) {
  std::size_t n = table.size();
  if (n == 0) throw NotAGroup("empty table");
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) throw NotAGroup("row " + std::to_string(i) + " has wrong length");
    for (auto v : table[i])
      if (v >= n) throw NotAGroup("closure fails in row " + std::to_string(i));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw NotAGroup("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                          std::to_string(c) + ")");
  std::optional<std::size_t> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = table[e][g] == g && table[g][e] == g;
    if (ok) id = e;
  }
  if (!id) throw NotAGroup("no identity element");
  for (std::size_t g = 0; g < n; ++g) {
    bool has_inverse = false;
    for (std::size_t h = 0; h < n && !has_inverse; ++h) has_inverse = table[g][h] == *id && table[h][g] == *id;
    if (!has_inverse) throw NotAGroup("element " + std::to_string(g) + " has no inverse");
  }
  return *id;
}

inline std::vector<std::size_t> group_inverses(const GroupTable& table) {
  std::size_t id = check_group_table(table);
  std::vector<std::size_t> inv(table.size());
  for (std::size_t g = 0; g < table.size(); ++g)
    for (std::size_t h = 0; h < table.size(); ++h)
      if (table[g][h] == id) inv[g] = h;
  return inv;
}

template <ExactScalar S>
AlgebraPtr<S> make_group_algebra(const GroupTable& table, FieldOf<S> field = FieldOf<S>{},
                                 std::string name = "kG") {
  using T = ScalarTraits<S>;
  std::size_t id = check_group_table(table);
  std::size_t n = table.size();
  AlgebraData<S> data{n, field, std::vector<S>(n * n * n, T::zero(field)), std::vector<S>(n, T::zero(field))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) data.structure[(i * n + j) * n + table[i][j]] = T::one(field);
  data.unit[id] = T::one(field);
  return Algebra<S>::create(std::move(data), std::move(name), table);
}

/// Extends images of some group elements multiplicatively to the whole
/// group, then validates the resulting representation.
template <ExactScalar S>
Module<S> module_from_group_generators(const AlgebraPtr<S>& a, const std::map<std::size_t, Mat<S>>& images,
                                       std::string name) {
  if (!a->group_table()) throw InvalidModule(name + ": algebra has no group table");
  const auto& table = *a->group_table();
  std::size_t id = check_group_table(table);
  std::size_t dim = images.empty() ? 0 : images.begin()->second.rows();
  std::vector<std::optional<Mat<S>>> rho(table.size());
  rho[id] = Mat<S>::identity(dim, a->field());
  std::vector<std::size_t> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (auto g : frontier)
      for (const auto& [s, m] : images) {
        if (s >= table.size()) throw InvalidModule(name + ": generator index out of range");
        std::size_t gs = table[g][s];
        Mat<S> val = *rho[g] * m;
        if (!rho[gs]) {
          rho[gs] = std::move(val);
          next.push_back(gs);
        } else if (!(*rho[gs] == val)) {
          throw InvalidModule(name + ": generator images violate the group relations");
        }
      }
    frontier = std::move(next);
  }
  std::vector<Mat<S>> action;
  for (std::size_t g = 0; g < table.size(); ++g) {
    if (!rho[g]) throw InvalidModule(name + ": given elements do not generate the group");
    action.push_back(*rho[g]);
  }
  return Module<S>::create(a, std::move(action), std::move(name));
}

// ---------------------------------------------------------------------------
// Bimodules and balanced tensor products

/// An (A, B)-bimodule. right_action[b] is the matrix of v -> v * b_b.
template <ExactScalar S>
struct Bimodule {
  AlgebraPtr<S> left;
  AlgebraPtr<S> right;
  std::size_t dim = 0;
  std::vector<Mat<S>> left_action;
  std::vector<Mat<S>> right_action;
  std::string name;
};

template <ExactScalar S>
std::vector<std::string> validate_bimodule(const Bimodule<S>& p) {
  auto issues = validate_representation(*p.left, p.left_action, p.dim);
  for (std::size_t i = 0; i < p.right->dim() && issues.empty(); ++i)
    for (std::size_t j = 0; j < p.right->dim(); ++j) {
      auto prod = p.right->multiply(p.right->basis_vector(i), p.right->basis_vector(j));
      Mat<S> m(p.dim, p.dim, p.right->field());
      for (std::size_t k = 0; k < p.right->dim(); ++k)
        if (!ScalarTraits<S>::is_zero(prod(k, 0))) m += prod(k, 0) * p.right_action[k];
      if (!(p.right_action[j] * p.right_action[i] == m)) {
        issues.push_back("right action is not a representation");
        break;
      }
    }
  for (std::size_t i = 0; i < p.left->dim() && issues.empty(); ++i)
    for (std::size_t j = 0; j < p.right->dim(); ++j)
      if (!(p.left_action[i] * p.right_action[j] == p.right_action[j] * p.left_action[i])) {
        issues.push_back("left and right actions do not commute");
        break;
      }
  return issues;
}

/// P ⊗_B N presented as a complement of the relation span inside the plain
/// tensor P ⊗ N (index p * dim N + n).
template <ExactScalar S>
struct BalancedTensor {
  Module<S> module;
  Mat<S> quotient;  // plain tensor -> module coordinates
  Mat<S> section;   // module coordinates -> plain tensor, quotient * section = I
  std::size_t relation_rank = 0;
};

template <ExactScalar S>
BalancedTensor<S> balanced_tensor(const Bimodule<S>& p, const Module<S>& n, std::string name = {}) {
  using T = ScalarTraits<S>;
  if (!same_algebra(p.right, n.algebra_ptr()))
    throw AlgebraMismatch("bimodule " + p.name + " acts on the right by " + p.right->name() + ", module " +
                          n.name() + " is over " + n.algebra().name());
  const auto field = n.field();
  std::size_t dp = p.dim, dn = n.dim(), big = dp * dn;
  auto id_n = Mat<S>::identity(dn, field);
  auto id_p = Mat<S>::identity(dp, field);
  // relations p b ⊗ x - p ⊗ b x, one block of rows per generator of B
  std::vector<Mat<S>> blocks;
  for (auto g : p.right->generators())
    blocks.push_back((kronecker(p.right_action[g], id_n) - kronecker(id_p, n.action(g))).transpose());
  // Eliminate from the right so the free columns come first: when P has a
  // unit-like first basis vector the quotient basis is p_0 ⊗ n_j.
  std::vector<std::size_t> rev(big);
  for (std::size_t c = 0; c < big; ++c) rev[c] = big - 1 - c;
  auto ech = echelonize(vstack(blocks, big, field).select_cols(rev));
  for (auto& c : ech.pivots) c = big - 1 - c;
  std::vector<bool> is_pivot(big, false);
  for (auto c : ech.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free;
  std::vector<std::size_t> free_index(big, 0);
  for (std::size_t c = 0; c < big; ++c)
    if (!is_pivot[c]) {
      free_index[c] = free.size();
      free.push_back(c);
    }
  Mat<S> quotient(free.size(), big, field);
  Mat<S> section(big, free.size(), field);
  for (std::size_t f = 0; f < free.size(); ++f) {
    quotient(f, free[f]) = T::one(field);
    section(free[f], f) = T::one(field);
  }
  for (std::size_t r = 0; r < ech.rank; ++r)
    for (auto c : free)
      if (!T::is_zero(ech.form(r, big - 1 - c))) quotient(free_index[c], ech.pivots[r]) = -ech.form(r, big - 1 - c);
  std::vector<Mat<S>> action;
  for (std::size_t i = 0; i < p.left->dim(); ++i)
    action.push_back(quotient * (kronecker(p.left_action[i], id_n) * section));
  if (name.empty()) name = p.name + "⊗" + n.name();
  return {Module<S>::trusted(p.left, std::move(action), std::move(name)), std::move(quotient), std::move(section),
          ech.rank};
}

/// The regular (A, A)-bimodule.
template <ExactScalar S>
Bimodule<S> regular_bimodule(const AlgebraPtr<S>& a) {
  Bimodule<S> p{a, a, a->dim(), {}, {}, "A"};
  for (std::size_t i = 0; i < a->dim(); ++i) {
    p.left_action.push_back(a->left_mult(a->basis_vector(i)));
    p.right_action.push_back(a->right_mult(a->basis_vector(i)));
  }
  return p;
}

// ---------------------------------------------------------------------------
// Idempotents and corners

template <ExactScalar S>
struct Idempotent {
  AlgebraPtr<S> algebra;
  Mat<S> coords;
};

template <ExactScalar S>
Idempotent<S> make_idempotent(AlgebraPtr<S> a, Mat<S> coords) {
  if (coords.rows() != a->dim() || coords.cols() != 1) throw ShapeError("idempotent coordinates " + coords.shape());
  if (!(a->multiply(coords, coords) == coords)) throw NotIdempotent("e * e != e in " + a->name());
  return {std::move(a), std::move(coords)};
}

struct Fullness {
  bool full = false;
  std::size_t span_dim = 0;
};

/// Whether the two-sided ideal AeA is all of A.
template <ExactScalar S>
Fullness is_full_idempotent(const Idempotent<S>& e) {
  const auto& a = *e.algebra;
  if (!(a.multiply(e.coords, e.coords) == e.coords)) throw NotIdempotent("e * e != e");
  std::vector<Mat<S>> left_e;  // b_i e
  for (std::size_t i = 0; i < a.dim(); ++i) left_e.push_back(a.multiply(a.basis_vector(i), e.coords));
  std::vector<Mat<S>> cols;  // columns of left_mult(b_i e) are b_i e b_j
  for (const auto& be : left_e) cols.push_back(a.left_mult(be));
  auto r = rank(hstack(cols, a.dim(), a.field()));
  return {r == a.dim(), r};
}

template <ExactScalar S>
struct Corner {
  AlgebraPtr<S> algebra;  // eAe with unit e
  Mat<S> inclusion;       // corner coordinates -> A coordinates
  Mat<S> selector;        // A coordinates of eAe elements -> corner coordinates
  Idempotent<S> e;
};

template <ExactScalar S>
Corner<S> corner_algebra(const Idempotent<S>& e, Pivoting pivoting = Pivoting::leftmost) {
  using T = ScalarTraits<S>;
  const auto& a = *e.algebra;
  if (!(a.multiply(e.coords, e.coords) == e.coords)) throw NotIdempotent("e * e != e");
  std::vector<Mat<S>> cols;
  for (std::size_t i = 0; i < a.dim(); ++i)
    cols.push_back(a.multiply(a.multiply(e.coords, a.basis_vector(i)), e.coords));
  auto cb = column_basis(hstack(cols, a.dim(), a.field()), pivoting);
  std::size_t k = cb.dim();
  AlgebraData<S> data{k, a.field(), std::vector<S>(k * k * k, T::zero(a.field())), {}};
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto prod = cb.coordinates(a.multiply(cb.basis.col(i), cb.basis.col(j)));
      for (std::size_t l = 0; l < k; ++l) data.structure[(i * k + j) * k + l] = prod(l, 0);
    }
  auto unit = cb.coordinates(e.coords);
  for (std::size_t l = 0; l < k; ++l) data.unit.push_back(unit(l, 0));
  auto corner = Algebra<S>::create(std::move(data), "e" + a.name() + "e");
  return {corner, cb.basis, cb.selector(), e};
}

/// eM as an eAe-module, with its inclusion into M and the compression
/// M -> eM, v -> coordinates of e v.
template <ExactScalar S>
struct CornerModule {
  Module<S> module;
  Mat<S> inclusion;
  Mat<S> compression;
};

template <ExactScalar S>
CornerModule<S> corner_module(const Corner<S>& corner, const Module<S>& m, Pivoting pivoting = Pivoting::leftmost) {
  if (!same_algebra(corner.e.algebra, m.algebra_ptr()))
    throw AlgebraMismatch("idempotent lives in " + corner.e.algebra->name() + ", module " + m.name() + " over " +
                          m.algebra().name());
  Mat<S> rho_e = m.act(corner.e.coords);
  if (!(rho_e * rho_e == rho_e)) throw NotIdempotent("rho(e) is not a projection on " + m.name());
  auto cb = column_basis(rho_e, pivoting);
  auto sel = cb.selector();
  std::vector<Mat<S>> action;
  for (std::size_t a = 0; a < corner.algebra->dim(); ++a) {
    Mat<S> image = m.act(corner.inclusion.col(a)) * cb.basis;
    Mat<S> coords = sel * image;
    if (!(cb.basis * coords == image)) throw Error("internal: eM not stable under eAe");
    action.push_back(std::move(coords));
  }
  return {Module<S>::trusted(corner.algebra, std::move(action), "e" + m.name()), cb.basis, sel * rho_e};
}

/// Ae as an (A, eAe)-bimodule, with the A-coordinates of its basis.
template <ExactScalar S>
struct CornerBimodule {
  Bimodule<S> bimodule;
  Mat<S> inclusion;
  Mat<S> selector;
};

template <ExactScalar S>
CornerBimodule<S> corner_bimodule(const Corner<S>& corner) {
  const auto& a = *corner.e.algebra;
  auto cb = column_basis(a.right_mult(corner.e.coords));
  auto sel = cb.selector();
  Bimodule<S> p{corner.e.algebra, corner.algebra, cb.dim(), {}, {}, "Ae"};
  for (std::size_t i = 0; i < a.dim(); ++i) p.left_action.push_back(sel * a.left_mult(a.basis_vector(i)) * cb.basis);
  for (std::size_t j = 0; j < corner.algebra->dim(); ++j)
    p.right_action.push_back(sel * a.right_mult(corner.inclusion.col(j)) * cb.basis);
  return {std::move(p), cb.basis, sel};
}

}  // namespace catmod
