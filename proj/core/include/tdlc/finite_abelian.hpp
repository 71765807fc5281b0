#pragma once

#include <optional>
#include <vector>

#include "tdlc/factored.hpp"
#include "tdlc/matrix.hpp"

namespace tdlc {

// Finite abelian group Z_m1 x ... x Z_mk. Elements are integer tuples taken
// mod the moduli. Doubles as the coordinate calculus for shift constraints
// and the quotient backend for inverse-limit towers.
class FinAbGroup {
 public:
  explicit FinAbGroup(std::vector<Int> moduli);

  const std::vector<Int>& moduli() const { return moduli_; }
  std::size_t arity() const { return moduli_.size(); }
  Int order() const;
  Int exponent() const;  // lcm of the moduli

  std::vector<Int> reduce(std::vector<Int> x) const;  // entries into [0, m_i)

  bool operator==(const FinAbGroup& o) const { return moduli_ == o.moduli_; }
  bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

  // All elements, coordinate-lexicographic; nullopt when order() > cap.
  std::optional<std::vector<std::vector<Int>>> enumerate_elements(const Int& cap) const;

 private:
  std::vector<Int> moduli_;
};

// Subgroup in canonical form: the preimage lattice in Z^k (generators plus
// relation columns m_i e_i) reduced to a lower-triangular column HNF with
// positive diagonal and below-diagonal entries in [0, diagonal of their row).
class FinAbSubgroup {
 public:
  static FinAbSubgroup from_generators(const FinAbGroup& parent,
                                       const std::vector<std::vector<Int>>& gens);
  static FinAbSubgroup trivial(const FinAbGroup& parent);
  static FinAbSubgroup whole(const FinAbGroup& parent);

  const FinAbGroup& parent() const { return parent_; }
  const IntMat& basis() const { return basis_; }
  Int order() const;

  bool contains_element(const std::vector<Int>& x) const;
  bool contains(const FinAbSubgroup& other) const;
  bool operator==(const FinAbSubgroup& o) const;
  bool operator!=(const FinAbSubgroup& o) const { return !(*this == o); }

  // Generators of the subgroup as group elements (basis columns mod moduli).
  std::vector<std::vector<Int>> generators() const;

 private:
  FinAbSubgroup(FinAbGroup parent, IntMat basis)
      : parent_(std::move(parent)), basis_(std::move(basis)) {}
  FinAbGroup parent_;
  IntMat basis_;  // k x k lower-triangular preimage lattice in Z^k
};

FinAbSubgroup fa_canonicalize(const FinAbGroup& parent,
                              const std::vector<std::vector<Int>>& gens);
IndexValue fa_index(const FinAbSubgroup& sub, const FinAbSubgroup& sup);
FinAbSubgroup fa_meet(const FinAbSubgroup& a, const FinAbSubgroup& b);
FinAbSubgroup fa_join(const FinAbSubgroup& a, const FinAbSubgroup& b);

// Image of S under the automorphism induced by integer matrix M.
FinAbSubgroup fa_apply(const IntMat& m, const FinAbSubgroup& s);
FinAbSubgroup fa_apply_inverse(const IntMat& m, const FinAbSubgroup& s);

// Throws NotAutomorphism unless M induces a well-defined bijection; returns
// an integer matrix inducing the inverse map.
IntMat fa_invert_automorphism(const FinAbGroup& g, const IntMat& m);

// Quotient G/N presented as a new FinAbGroup with projection matrix q, so
// that q maps old coordinates to new ones (used for the gi(d) law and the
// compact-factor quotient universe).
struct FinAbQuotient {
  FinAbGroup group;
  IntMat projection;  // new_arity x old_arity
};
FinAbQuotient fa_quotient(const FinAbGroup& g, const FinAbSubgroup& n);

// Column echelon over Z via repeated gcd reduction; returns rank, accumulates
// column ops into transform when non-null.
std::size_t int_echelon_columns(IntMat& m, IntMat* transform);

}  // namespace tdlc
