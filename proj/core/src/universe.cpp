#include "tdlc/universe.hpp"

namespace tdlc {

Automorphism Automorphism::inverse() const {
  return Automorphism(universe_, universe_->invert(value_));
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  if (universe_ != other.universe_)
    fail(ErrorKind::MixedUniverse, "composing automorphisms of different universes");
  return Automorphism(universe_, universe_->compose(value_, other.value_));
}

Automorphism Automorphism::power(long k) const {
  AutHandle base = k >= 0 ? value_ : universe_->invert(value_);
  long reps = k >= 0 ? k : -k;
  AutHandle acc = universe_->identity();
  for (long i = 0; i < reps; ++i) acc = universe_->compose(base, acc);
  return Automorphism(universe_, acc);
}

Subgroup Automorphism::apply(const Subgroup& s) const {
  return universe_->apply(value_, s);
}

Subgroup Automorphism::apply_inverse(const Subgroup& s) const {
  return universe_->apply_inverse(value_, s);
}

IndexValue Universe::generalized_index(const Subgroup& k, const Subgroup& h) const {
  Subgroup meet = intersect(k, h);
  IndexValue via_meet = index(meet, k);
  Subgroup join = sum(k, h);
  IndexValue via_join = index(h, join);
  if (via_meet != via_join)
    fail(ErrorKind::CrossCheckMismatch, "generalized index routes disagree");
  return via_meet;
}

}  // namespace tdlc
