#pragma once

#include "tdlc/lattice.hpp"
#include "tdlc/universe.hpp"

namespace tdlc {

// Subgroup value: a full-rank lattice.
class LatticeSubgroup : public SubgroupVal {
 public:
  explicit LatticeSubgroup(Lattice l) : lattice(std::move(l)) {}
  Lattice lattice;
};

// Automorphism value: invertible rational matrix with cached inverse.
class MatrixAut : public AutVal {
 public:
  MatrixAut(RatMat a, RatMat a_inv) : mat(std::move(a)), inv(std::move(a_inv)) {}
  RatMat mat;
  RatMat inv;
};

// G = Q_p^n. Compact open subgroups are the full-rank Z_(p)-lattices;
// automorphisms are invertible rational matrices. Not compact; the global
// entropy is the value at any single lattice (constant across the base).
std::shared_ptr<const Universe> make_padic_universe(const Int& p, std::size_t dim);

// Automorphism from an invertible matrix; Singular when det = 0.
Automorphism make_matrix_automorphism(const std::shared_ptr<const Universe>& u,
                                      const RatMat& a);

// Convenience wrappers for lattice-backed subgroups.
Subgroup make_lattice_subgroup(const Lattice& l);
const Lattice& lattice_of(const Subgroup& s);
const MatrixAut& matrix_of(const AutHandle& a);

// Modulus via the index ratio [phi(U) : U cap phi(U)] / [U : U cap phi(U)].
IndexValue padic_modulus(const Automorphism& phi, const Lattice& u);

}  // namespace tdlc
