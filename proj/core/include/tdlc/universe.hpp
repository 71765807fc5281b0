#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tdlc/factored.hpp"

namespace tdlc {

// Polymorphic value types. Concrete universes downcast; a failed downcast is
// a MixedUniverse error (value fed to a universe it does not belong to).
class SubgroupVal {
 public:
  virtual ~SubgroupVal() = default;
};
using Subgroup = std::shared_ptr<const SubgroupVal>;

class AutVal {
 public:
  virtual ~AutVal() = default;
};
using AutHandle = std::shared_ptr<const AutVal>;

class Universe;

// Exact automorphism handle: composition, inverse and integer powers, tied
// to the universe it acts on.
class Automorphism {
 public:
  Automorphism() = default;
  Automorphism(std::shared_ptr<const Universe> universe, AutHandle value)
      : universe_(std::move(universe)), value_(std::move(value)) {}

  const std::shared_ptr<const Universe>& universe() const { return universe_; }
  const AutHandle& value() const { return value_; }

  Automorphism inverse() const;
  Automorphism compose(const Automorphism& other) const;  // this after other
  Automorphism power(long k) const;                       // k may be negative

  Subgroup apply(const Subgroup& s) const;
  Subgroup apply_inverse(const Subgroup& s) const;

 private:
  std::shared_ptr<const Universe> universe_;
  AutHandle value_;
};

// The subgroup calculus: the set of operations every concrete group model
// provides. All subgroups handed in and out are compact open subgroups of
// the modeled group; all operations are pure.
class Universe : public std::enable_shared_from_this<Universe> {
 public:
  virtual ~Universe() = default;

  virtual std::string kind() const = 0;
  virtual bool is_compact() const = 0;

  virtual Subgroup intersect(const Subgroup& a, const Subgroup& b) const = 0;
  virtual Subgroup sum(const Subgroup& a, const Subgroup& b) const = 0;
  virtual Subgroup apply(const AutHandle& phi, const Subgroup& s) const = 0;
  virtual Subgroup apply_inverse(const AutHandle& phi, const Subgroup& s) const = 0;
  // [sup : sub]; requires sub contained in sup.
  virtual IndexValue index(const Subgroup& sub, const Subgroup& sup) const = 0;
  virtual bool equal(const Subgroup& a, const Subgroup& b) const = 0;
  virtual bool contains(const Subgroup& big, const Subgroup& small) const = 0;

  // [K·H : H] = [K : K cap H]; total, no containment required.
  IndexValue generalized_index(const Subgroup& k, const Subgroup& h) const;

  // Finite sample of the local base at 1, at most `budget` members, ordered
  // so that a shrinking cofinal subfamily appears as the budget grows.
  virtual std::vector<Subgroup> base_enumerator(int budget) const = 0;
  // Defined exactly when the group is compact.
  virtual std::optional<Subgroup> whole_group() const = 0;
  // Canonical subgroup for default computations (standard lattice, single
  // zero-constraint cylinder, ...).
  virtual Subgroup default_subgroup() const = 0;

  virtual AutHandle identity() const = 0;
  virtual AutHandle compose(const AutHandle& f, const AutHandle& g) const = 0;
  virtual AutHandle invert(const AutHandle& f) const = 0;

  // Closed-form entropy for this automorphism when the universe has one;
  // used as a mandatory cross-check by the engine.
  virtual std::optional<EntropyValue> entropy_oracle(const AutHandle&) const {
    return std::nullopt;
  }
  // Proven index by which the cotrajectory quotients stabilize, when the
  // universe's structure yields one.
  virtual std::optional<int> stabilization_bound(const AutHandle&, const Subgroup&) const {
    return std::nullopt;
  }
  virtual int default_window() const { return 2; }

  virtual nlohmann::json descriptor() const = 0;
  virtual nlohmann::json subgroup_to_json(const Subgroup& s) const = 0;
  virtual Subgroup subgroup_from_json(const nlohmann::json& j) const = 0;
  virtual nlohmann::json automorphism_to_json(const AutHandle& a) const = 0;
  virtual AutHandle automorphism_from_json(const nlohmann::json& j) const = 0;
};

// Downcast helper: MixedUniverse on mismatch.
template <typename T, typename Base>
const T& cast_value(const std::shared_ptr<const Base>& v, const char* what) {
  if (!v) fail(ErrorKind::InvalidArgument, std::string("null ") + what);
  const T* out = dynamic_cast<const T*>(v.get());
  if (!out) fail(ErrorKind::MixedUniverse, std::string(what) + " belongs to a different universe");
  return *out;
}

}  // namespace tdlc
