#pragma once

#include <map>

#include "tdlc/universe.hpp"

namespace tdlc {

// Compact open subgroup of Z_m^Z: finitely many coordinates constrained to a
// subgroup of Z_m. Subgroups of Z_m are cyclic <d> for divisors d | m, so a
// constraint is stored as its divisor; d = m is the zero constraint, d = 1
// (no constraint) is normalized away.
class CylinderSubgroup : public SubgroupVal {
 public:
  CylinderSubgroup(Int m, std::map<long, Int> constraints)
      : m(std::move(m)), constraints(std::move(constraints)) {}
  Int m;
  std::map<long, Int> constraints;  // coordinate -> divisor d, 1 < d <= m
};

// sigma^k composed with coordinatewise multiplication by a unit u of Z_m:
// x maps to (u * x_{i+k})_i.
class ShiftAut : public AutVal {
 public:
  ShiftAut(Int m, long k, Int u, Int u_inv)
      : m(std::move(m)), k(k), unit(std::move(u)), unit_inv(std::move(u_inv)) {}
  Int m;
  long k;
  Int unit;
  Int unit_inv;
};

// G = Z_m^Z, compact; whole_group is the unconstrained cylinder; the base
// enumerates zero-constraint windows [-r, r]. Cotrajectory stabilization has
// a proven translation bound, exposed via stabilization_bound.
std::shared_ptr<const Universe> make_shift_universe(const Int& m);

Automorphism make_shift_automorphism(const std::shared_ptr<const Universe>& u,
                                     long k, const Int& unit);

// Cylinder subgroup with zero constraints at the given coordinates.
Subgroup make_zero_cylinder(const std::shared_ptr<const Universe>& u,
                            const std::vector<long>& coords);

const CylinderSubgroup& cylinder_of(const Subgroup& s);

}  // namespace tdlc
