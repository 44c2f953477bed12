#pragma once

#include <memory>
#include <vector>

#include "catmod/stages.hpp"
#include "catmod/symmetric.hpp"

namespace support {

using namespace catmod;
using Q = Rational;

inline std::shared_ptr<const MonoidalContext<Q>> context(const AlgebraPtr<Q>& a) {
  return std::make_shared<const MonoidalContext<Q>>(hopf_from_group(a));
}

/// ℚS_3 with its basic idempotent, the simples and their corner images.
struct S3 {
  AlgebraPtr<Q> a = symmetric_group_algebra<Q>(3);
  std::shared_ptr<const MonoidalContext<Q>> ctx = context(a);
  std::vector<Module<Q>> simples = symmetric_simples(a, 3);
  Module<Q> triv = simples[0], sgn = simples[1], v = simples[2];
  Idempotent<Q> e = make_idempotent(a, s3_basic_idempotent(a));
  Truncation<Q> td = Truncation<Q>::build(e);
  std::vector<Module<Q>> corner = [this] {
    std::vector<Module<Q>> out;
    for (const auto& s : simples) out.push_back(td.equivalence().F.obj(s));
    return out;
  }();
};

/// ℚS_4 with the nested idempotents of block ranks (1,1,1,2,2) ≥ (1,1,1,1,1).
struct S4 {
  AlgebraPtr<Q> a = symmetric_group_algebra<Q>(4);
  std::shared_ptr<const MonoidalContext<Q>> ctx = context(a);
  std::vector<Module<Q>> simples = symmetric_simples(a, 4);
  Idempotent<Q> e1 = make_idempotent(a, s4_rank_two_idempotent(a));
  Idempotent<Q> e2 = make_idempotent(a, s4_rank_one_idempotent(a));
};

}  // namespace support
