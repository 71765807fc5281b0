#pragma once

#include <optional>
#include <vector>

#include "tdlc/factored.hpp"
#include "tdlc/matrix.hpp"

namespace tdlc {

// Full-rank Z_(p)-lattice in Q^n, where Z_(p) is the localization of Z at p
// (denominators prime to p). These model compact open subgroups of Q_p^n:
// commensurability, indices and automorphism images all happen here.
//
// Canonical basis: lower-triangular columns, diagonal entries p^(e_j) with
// units divided out, below-diagonal entries reduced to the canonical residue
// mod p^(e_i) of their row. Two lattices are equal iff their canonical bases
// are identical matrices.
class Lattice {
 public:
  static Lattice from_generators(const Int& p, const RatMat& generators);
  static Lattice standard(const Int& p, std::size_t dim);  // Z_(p)^n
  static Lattice diagonal(const Int& p, const std::vector<long>& exponents);

  const Int& p() const { return p_; }
  std::size_t dim() const { return dim_; }
  const RatMat& basis() const { return basis_; }
  std::vector<long> diagonal_exponents() const;
  long det_valuation() const;

  bool contains_vector(const std::vector<Rat>& x) const;
  bool contains(const Lattice& other) const;  // other subset of this
  bool operator==(const Lattice& other) const;
  bool operator!=(const Lattice& other) const { return !(*this == other); }

  // Elementary divisor exponents a_1 <= ... <= a_n of sub inside this,
  // i.e. this/sub is the direct sum of Z/p^(a_i). Requires sub subset.
  std::vector<long> smith_exponents(const Lattice& sub) const;

  // Independent coset-count oracle: breadth-first enumeration of this/sub
  // with canonical labels. Returns nullopt when the count exceeds cap.
  std::optional<Int> enumerate_cosets(const Lattice& sub, const Int& cap) const;

 private:
  Lattice(Int p, std::size_t dim, RatMat basis)
      : p_(std::move(p)), dim_(dim), basis_(std::move(basis)) {}
  Int p_;
  std::size_t dim_;
  RatMat basis_;
};

// Canonical form of the lattice spanned by arbitrary generator columns.
Lattice hnf_normalize(const Int& p, const RatMat& generators);

Lattice lattice_sum(const Lattice& a, const Lattice& b);
Lattice lattice_intersect(const Lattice& a, const Lattice& b);

// [sup : sub] as a power of p; throws NotContained unless sub subset of sup.
IndexValue lattice_index(const Lattice& sub, const Lattice& sup);

// [K·H : H] = [K : K cap H]; defined for any pair, no containment needed.
IndexValue generalized_index(const Lattice& k, const Lattice& h);

// Image lattice A(L) for invertible A.
Lattice apply_matrix(const RatMat& a, const Lattice& l);

// Column echelon over Z_(p) by minimum-valuation pivoting. Returns the rank;
// when transform is non-null it accumulates the column operations, so that
// input * transform == output at all times.
std::size_t echelon_columns(RatMat& m, const Int& p, RatMat* transform);

}  // namespace tdlc
