#pragma once

#include "tdlc/finite_abelian.hpp"
#include "tdlc/universe.hpp"

namespace tdlc {

// Decomposition of a block upper-triangular matrix automorphism on Q_p^n
// along the invariant coordinate subspace N = span(e_1..e_k): a restriction
// automorphism on Q_p^k and a quotient automorphism on Q_p^(n-k), together
// with the subgroup maps U -> U cap N and U -> q(U).
class InvariantSubquotient {
 public:
  InvariantSubquotient(const Automorphism& phi, std::size_t k);

  const Automorphism& parent() const { return parent_; }
  const Automorphism& restriction() const { return restriction_; }
  const Automorphism& quotient() const { return quotient_; }

  // U cap span(e_1..e_k) as a lattice in the restriction universe.
  Subgroup restrict_subgroup(const Subgroup& s) const;
  // Image of U under dropping the first k coordinates, in the quotient universe.
  Subgroup project_subgroup(const Subgroup& s) const;

 private:
  Automorphism parent_;
  Automorphism restriction_;
  Automorphism quotient_;
  Int p_;
  std::size_t k_ = 0;
  std::size_t n_ = 0;
};

// Quotient of a product universe G1 x G2 (finite G2) by a psi-invariant
// subgroup N of the finite factor: the universe G1 x (G2/N) carrying the
// induced automorphism, with the projection on subgroups.
class CompactFactorQuotient {
 public:
  CompactFactorQuotient(const Automorphism& phi, const FinAbSubgroup& n);

  const std::shared_ptr<const Universe>& universe() const { return universe_; }
  const Automorphism& induced() const { return induced_; }

  // (S1, S2) -> (S1, image of S2 in G2/N).
  Subgroup project_subgroup(const Subgroup& s) const;

 private:
  std::shared_ptr<const Universe> universe_;
  Automorphism induced_;
  std::shared_ptr<const Universe> parent_first_;
  std::shared_ptr<const Universe> quotient_finite_;
  FinAbGroup quotient_group_;
  IntMat projection_;
};

}  // namespace tdlc
