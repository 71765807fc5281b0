#pragma once

#include "tdlc/universe.hpp"

namespace tdlc {

class PairSubgroupVal : public SubgroupVal {
 public:
  PairSubgroupVal(Subgroup a, Subgroup b) : first(std::move(a)), second(std::move(b)) {}
  Subgroup first;
  Subgroup second;
};

class PairAut : public AutVal {
 public:
  PairAut(AutHandle a, AutHandle b) : first(std::move(a)), second(std::move(b)) {}
  AutHandle first;
  AutHandle second;
};

// Direct product of two universes. Subgroups are pairs (abelian factors, so
// pairs of subgroups exhaust a cofinal family of compact open subgroups),
// operations act componentwise and indices multiply.
std::shared_ptr<const Universe> make_product_universe(
    std::shared_ptr<const Universe> u1, std::shared_ptr<const Universe> u2);

Subgroup make_pair_subgroup(Subgroup a, Subgroup b);
const PairSubgroupVal& pair_subgroup_of(const Subgroup& s);

Automorphism make_pair_automorphism(const std::shared_ptr<const Universe>& product,
                                    const Automorphism& a, const Automorphism& b);

// The two factor universes of a product universe.
std::pair<std::shared_ptr<const Universe>, std::shared_ptr<const Universe>>
product_factors(const std::shared_ptr<const Universe>& u);

}  // namespace tdlc
