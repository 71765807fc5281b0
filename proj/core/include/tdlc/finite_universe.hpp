#pragma once

#include "tdlc/finite_abelian.hpp"
#include "tdlc/universe.hpp"

namespace tdlc {

class FinSubgroupVal : public SubgroupVal {
 public:
  explicit FinSubgroupVal(FinAbSubgroup s) : subgroup(std::move(s)) {}
  FinAbSubgroup subgroup;
};

class FinMatrixAut : public AutVal {
 public:
  FinMatrixAut(FinAbGroup g, IntMat m, IntMat m_inv)
      : group(std::move(g)), mat(std::move(m)), inv(std::move(m_inv)) {}
  FinAbGroup group;
  IntMat mat;
  IntMat inv;
};

// Finite abelian group as a (trivially compact) universe. Every automorphism
// has zero entropy; the closed form backs the engine's cross-check, and the
// subgroup chain length bounds stabilization.
std::shared_ptr<const Universe> make_finite_universe(const FinAbGroup& g);

Automorphism make_finite_automorphism(const std::shared_ptr<const Universe>& u,
                                      const IntMat& m);

Subgroup make_finite_subgroup(const FinAbSubgroup& s);
const FinAbSubgroup& finite_subgroup_of(const Subgroup& s);
const FinAbGroup& finite_group_of(const std::shared_ptr<const Universe>& u);

}  // namespace tdlc
